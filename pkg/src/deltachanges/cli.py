"""Batch command line runner: one subcommand per core operation.

Every subcommand reads flat files, builds a :class:`~deltachanges.report.Report`
and writes it (``--format text|csv|json``, ``--out PATH`` or stdout).  Exit
status is 0 on success and 1 on any parse, validation or range error, with
``error: <ErrorName>: <message>`` on stderr.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional, Sequence

from . import construct as C
from . import cost as K
from . import machine as M
from . import trace as T
from .dyadic import Dyadic
from .errors import DeltaChangesError, TraceError
from .report import FORMATS, Report, emit_report


class ValidationFailed(DeltaChangesError):
    pass


def _read(path: str) -> str:
    return Path(path).read_text()


def _machine(path: str) -> M.PrefixFreeMachine:
    return M.parse_machine(_read(path), identifier=Path(path).stem)


def _trace(path: str) -> T.ApproximationTrace:
    return T.parse_trace(_read(path))


def _int_list(text: str) -> list[int]:
    return [int(v) for v in text.replace(",", " ").split()]


def _fractions(text: str) -> list[Fraction]:
    return [Fraction(v) for v in text.replace(",", " ").split()]


def cmd_validate(a) -> Report:
    if a.machine:
        m = _machine(a.machine)
        return Report("validate", fields={"target": "machine", "computations": len(m), "kraft": m.kraft, "holds": True})
    if a.trace:
        tr = _trace(a.trace)
        v = T.verify_kind(tr)
        if not v:
            raise ValidationFailed(f"declared kind {tr.kind.value} refuted at stage {v.where}: {v.reason}")
        return Report("validate", fields={"target": "trace", "kind": tr.kind.value, "holds": True})
    if a.cost:
        spec = K.parse_cost_spec(a.cost)
        v = K.validate_monotone(spec, a.X, a.S)
        if not v:
            raise ValidationFailed(f"cost function not monotone: {v.reason}")
        return Report("validate", fields={"target": "cost", "X": a.X, "S": a.S, "holds": True})
    raise ValidationFailed("validate needs --machine, --trace or --cost")


def cmd_omega(a) -> Report:
    m = _machine(a.machine)
    stages = [a.stage] if a.stage is not None else list(range(a.stages))
    return Report("omega", ("stage", "omega"), [(s, M.omega_at(m, s)) for s in stages])


def cmd_ktrace(a) -> Report:
    m = _machine(a.machine)
    tr = M.omega_trace(m, a.stages, a.width)
    if a.trace_out:
        Path(a.trace_out).write_text(T.serialize_trace(tr))
    rows = [(s, M.omega_at(m, s), tr.row(s)) for s in range(tr.stages)]
    return Report("ktrace", ("stage", "omega", "row"), rows, {"kind": tr.kind.value})


def cmd_kcomplexity(a) -> Report:
    m = _machine(a.machine)
    if a.natural is not None:
        w = M.encode_natural(a.natural)
    else:
        w = "" if a.string in (None, "-") else a.string
    stage = a.stage if a.stage is not None else m.max_stage
    return Report("kcomplexity", ("string", "stage", "k"), [(w, stage, M.k_at(m, w, stage))])


def cmd_changes(a) -> Report:
    prof = T.change_profile(_trace(a.trace))
    return Report("changes", ("n", "count"), list(enumerate(prof.counts, start=1)))


def cmd_gcheck(a) -> Report:
    tr = _trace(a.trace)
    g = _int_list(a.bound if a.bound is not None else _read(a.bound_file))
    v = T.is_g_change(tr, g)
    counts = T.change_profile(tr).counts
    rows = [(n, counts[n - 1], g[n - 1]) for n in range(1, tr.width + 1)]
    return Report("gcheck", ("n", "count", "bound"), rows, {"holds": v.holds, "violation": v.where})


def cmd_leftce_bound(a) -> Report:
    rep = T.left_ce_change_bound(_trace(a.trace), a.k)
    return Report("leftce-bound", ("n", "count", "bound", "ok"), rep.checks,
                  {"k": rep.k, "t": rep.t, "all_hold": rep.all_hold})


def cmd_change_lower(a) -> Report:
    tr = _trace(a.trace)
    q = _fractions(a.q if a.q is not None else _read(a.q_file))
    if len(q) == 1:
        q = q * tr.width
    rows = T.change_lower_experiment(tr, q)
    return Report("change-lower", ("n", "count", "bound", "respected"), rows,
                  {"horizon_only": True})


def cmd_cost_eval(a) -> Report:
    spec = K.parse_cost_spec(a.cost)
    return Report("cost-eval", ("x", "s", "cost"), [(a.x, a.s, K.evaluate(spec, a.x, a.s))])


def cmd_obey(a) -> Report:
    ledger = K.total_cost(_trace(a.trace), K.parse_cost_spec(a.cost))
    return Report("obey", ("stage", "position", "charge"), ledger.charges, {"total": ledger.total})


def cmd_limit_probe(a) -> Report:
    spec = K.parse_cost_spec(a.cost)
    x = K.limit_condition_probe(spec, Dyadic.parse(a.epsilon), a.X, a.S)
    return Report("limit-probe", fields={"epsilon": Dyadic.parse(a.epsilon), "X": a.X, "S": a.S,
                                         "found": x is not None, "x": x})


def _require_monotone(spec, X: int, S: int) -> None:
    v = K.validate_monotone(spec, X, S)
    if not v:
        raise ValidationFailed(f"cost function not monotone: {v.reason}")


def cmd_benign(a) -> Report:
    spec = K.parse_cost_spec(a.cost)
    _require_monotone(spec, a.horizon, a.horizon)
    ks = [a.k] if a.k is not None else list(range(a.k_max + 1))
    rows = [(k, K.benignity_count(spec, k, a.horizon)) for k in ks]
    return Report("benign", ("k", "count"), rows, {"horizon": a.horizon})


def cmd_construct_ps(a) -> Report:
    spec = K.parse_cost_spec(a.cost)
    family = C.parse_family(_read(a.family))
    _require_monotone(spec, a.width - 1, a.stages - 1)
    rep = C.prompt_simple(spec, family, a.stages, a.width)
    if a.trace_out:
        Path(a.trace_out).write_text(T.serialize_trace(rep.trace))
    if a.construction_out:
        Path(a.construction_out).write_text(C.serialize_construction(rep))
    rows = [(r.e, "met" if r.met else "unmet", r.element, r.stage) for r in rep.requirements]
    return Report("construct-ps", ("e", "status", "element", "stage"), rows,
                  {"charges": len(rep.ledger.charges), "total": rep.ledger.total,
                   "final": rep.trace.final_row})


def cmd_solovay(a) -> Report:
    test = C.solovay_extract(_trace(a.trace))
    return Report("solovay", ("i", "string"), list(enumerate(test.strings)), {"weight": test.weight})


def cmd_hits(a) -> Report:
    if a.strings is not None:
        test = C.SolovayTest(tuple(a.strings.replace(",", " ").split()))
    else:
        test = C.solovay_extract(_trace(a.trace))
    if a.row is not None:
        row = a.row
    elif a.trace:
        row = _trace(a.trace).final_row
    else:
        raise TraceError("hits needs --row or --trace")
    return Report("hits", fields={"row": row, "strings": len(test.strings), "weight": test.weight,
                                  "hits": C.hit_count(test, row)})


def cmd_ktriv(a) -> Report:
    m = _machine(a.machine)
    A = a.set if a.set is not None else _trace(a.trace).final_row
    n_max = a.nmax if a.nmax is not None else len(A)
    rep = C.k_trivial_deficiency(m, A, n_max)
    return Report("ktriv", ("n", "k_prefix", "k_length", "deficiency"), rep.rows,
                  {"comparable": sum(r.deficiency is not None for r in rep.rows), "b": rep.b})


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="deltachanges", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=FORMATS, default="text")
        p.add_argument("--out", help="write the report here instead of stdout")
        p.set_defaults(func=func)
        return p

    p = add("validate", cmd_validate, "validate a machine, a trace's declared kind, or cost monotonicity")
    p.add_argument("--machine")
    p.add_argument("--trace")
    p.add_argument("--cost")
    p.add_argument("--X", type=int, default=16)
    p.add_argument("--S", type=int, default=16)

    p = add("omega", cmd_omega, "stagewise Omega of a machine")
    p.add_argument("--machine", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--stage", type=int)
    g.add_argument("--stages", type=int, help="report stages 0..STAGES-1")

    p = add("ktrace", cmd_ktrace, "left-c.e. trace of Omega's binary digits")
    p.add_argument("--machine", required=True)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--trace-out")

    p = add("kcomplexity", cmd_kcomplexity, "K_s of a string or natural on a machine")
    p.add_argument("--machine", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--string")
    g.add_argument("--natural", type=int)
    p.add_argument("--stage", type=int, help="defaults to the machine's last halting stage")

    p = add("changes", cmd_changes, "change profile of a trace")
    p.add_argument("--trace", required=True)

    p = add("gcheck", cmd_gcheck, "check a trace against a change bound g")
    p.add_argument("--trace", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--bound", help="comma separated g(1..N)")
    g.add_argument("--bound-file")

    p = add("leftce-bound", cmd_leftce_bound, "stabilisation bound for left-c.e. traces")
    p.add_argument("--trace", required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("change-lower", cmd_change_lower, "compare changes with floor(q(n) 2^n)")
    p.add_argument("--trace", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--q", help="comma separated rationals q(1..N); one value is repeated")
    g.add_argument("--q-file")

    p = add("cost-eval", cmd_cost_eval, "evaluate a cost function")
    p.add_argument("--cost", required=True)
    p.add_argument("--x", type=int, required=True)
    p.add_argument("--s", type=int, required=True)

    p = add("obey", cmd_obey, "obedience ledger of a trace under a cost function")
    p.add_argument("--trace", required=True)
    p.add_argument("--cost", required=True)

    p = add("limit-probe", cmd_limit_probe, "finite probe of the limit condition")
    p.add_argument("--cost", required=True)
    p.add_argument("--epsilon", required=True)
    p.add_argument("--X", type=int, required=True)
    p.add_argument("--S", type=int, required=True)

    p = add("benign", cmd_benign, "count disjoint intervals with cost >= 2^-k")
    p.add_argument("--cost", required=True)
    p.add_argument("--horizon", type=int, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=int)
    g.add_argument("--k-max", type=int)

    p = add("construct-ps", cmd_construct_ps, "promptly simple set obeying a cost function")
    p.add_argument("--cost", required=True)
    p.add_argument("--family", required=True)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--trace-out")
    p.add_argument("--construction-out")

    p = add("solovay", cmd_solovay, "Solovay test from the changes of a trace")
    p.add_argument("--trace", required=True)

    p = add("hits", cmd_hits, "count test strings that are prefixes of a row")
    p.add_argument("--trace")
    p.add_argument("--strings", help="comma separated test strings (default: extract from --trace)")
    p.add_argument("--row", help="default: final row of --trace")

    p = add("ktriv", cmd_ktriv, "K-triviality deficiency table")
    p.add_argument("--machine", required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--set", help="bit string A")
    g.add_argument("--trace", help="use the final row of this trace as A")
    p.add_argument("--nmax", type=int)

    return parser


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout if stdout is not None else sys.stdout.buffer
    stderr = stderr if stderr is not None else sys.stderr
    args = build_parser().parse_args(argv)
    try:
        report = args.func(args)
    except DeltaChangesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: FileNotFound: {exc.filename}", file=stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return 1
    data = emit_report(report, args.format)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        stdout.write(data)
        stdout.flush()
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
