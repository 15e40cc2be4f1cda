"""Effective constructions run at a finite horizon.

* :func:`prompt_simple` enumerates a c.e. set that meets the prompt
  simplicity requirements ``PS_e`` while paying at most ``2**-e`` per
  requirement under a given cost function.
* :func:`solovay_extract` turns the changes of a trace into a Solovay test.
* :func:`k_trivial_deficiency` tabulates ``K(A|n) - K(n)`` on a toy machine.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .cost import Charge, CostFunctionSpec, ObedienceLedger, evaluate, total_cost
from .dyadic import ZERO, Dyadic, power_of_two
from .errors import FamilyError, ParseError
from .machine import PrefixFreeMachine, encode_natural, k_at
from .trace import ApproximationTrace, TraceKind, first_changes, parse_trace, serialize_trace

__all__ = [
    "CEFamily",
    "SolovayTest",
    "Requirement",
    "ConstructionReport",
    "DeficiencyRow",
    "DeficiencyReport",
    "prompt_simple",
    "solovay_extract",
    "hit_count",
    "k_trivial_deficiency",
    "parse_family",
    "serialize_family",
    "serialize_construction",
    "parse_construction",
]


class CEFamily:
    """Finite stagewise enumerations ``W_{e,s}``.

    ``enumerations[e]`` lists ``(element, stage)`` pairs: the element enters
    ``W_e`` exactly at that stage.
    """

    __slots__ = ("enumerations",)

    def __init__(self, enumerations: Sequence[Iterable[tuple[int, int]]]):
        enums = []
        for e, pairs in enumerate(enumerations):
            pairs = tuple(sorted((int(x), int(st)) for x, st in pairs))
            seen = set()
            for x, st in pairs:
                if x < 0:
                    raise FamilyError(f"W_{e}: negative element {x}")
                if st < 1:
                    raise FamilyError(f"W_{e}: element {x} enters at stage {st}; stages start at 1")
                if x in seen:
                    raise FamilyError(f"W_{e}: element {x} enumerated twice")
                seen.add(x)
            enums.append(pairs)
        self.enumerations = tuple(enums)

    @classmethod
    def from_dict(cls, d: dict[int, Iterable[tuple[int, int]]]) -> "CEFamily":
        size = max(d, default=-1) + 1
        return cls([d.get(e, ()) for e in range(size)])

    def __len__(self):
        return len(self.enumerations)

    def __eq__(self, other):
        return isinstance(other, CEFamily) and self.enumerations == other.enumerations

    def __repr__(self):
        return f"CEFamily({list(self.enumerations)!r})"


@dataclass(frozen=True)
class SolovayTest:
    strings: tuple[str, ...]
    weight: Dyadic = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "strings", tuple(self.strings))
        exact = sum((power_of_two(len(w)) for w in self.strings), ZERO)
        object.__setattr__(self, "weight", exact)


class Requirement(NamedTuple):
    e: int
    element: Optional[int] = None
    stage: Optional[int] = None

    @property
    def met(self) -> bool:
        return self.element is not None


@dataclass(frozen=True)
class ConstructionReport:
    trace: ApproximationTrace
    requirements: tuple[Requirement, ...]
    ledger: ObedienceLedger

    @property
    def enumerated(self) -> list[int]:
        return sorted({r.element for r in self.requirements if r.met})


def prompt_simple(spec: CostFunctionSpec, family: CEFamily, stages: int, width: int) -> ConstructionReport:
    """Build ``A_0 = {} <= A_1 <= ...`` for stages ``0..stages-1``.

    At stage ``s > 0``, requirements ``e < s`` are visited in increasing
    order.  An unmet ``PS_e`` fires if some ``x >= 2e`` enters ``W_e``
    exactly at stage ``s`` with ``c(x, s) <= 2**-e``; the least such ``x``
    goes into ``A_s``.  Several requirements may fire at one stage.
    """
    for e, pairs in enumerate(family.enumerations):
        for x, st in pairs:
            if x >= width:
                raise FamilyError(f"W_{e}: element {x} does not fit width {width}")
            if st >= stages:
                raise FamilyError(f"W_{e}: stage {st} is beyond the horizon {stages}")

    arrivals: dict[tuple[int, int], list[int]] = {}
    for e, pairs in enumerate(family.enumerations):
        for x, st in pairs:
            if x >= 2 * e:
                arrivals.setdefault((e, st), []).append(x)

    E = len(family)
    met: list[Optional[tuple[int, int]]] = [None] * E
    bits = np.zeros((stages, width), dtype=np.uint8)
    for s in range(1, stages):
        bits[s] = bits[s - 1]
        for e in range(min(s, E)):
            if met[e] is not None:
                continue
            budget = power_of_two(e)
            for x in arrivals.get((e, s), ()):  # sorted ascending
                if evaluate(spec, x, s) <= budget:
                    bits[s, x] = 1
                    met[e] = (x, s)
                    break
    trace = ApproximationTrace(bits, TraceKind.CE)
    reqs = tuple(Requirement(e, *m) if m else Requirement(e) for e, m in enumerate(met))
    return ConstructionReport(trace, reqs, total_cost(trace, spec))


def solovay_extract(trace: ApproximationTrace) -> SolovayTest:
    """Add ``Z_s|(p+1)`` whenever ``p`` is the least position changing at stage ``s``."""
    strings = []
    for i, p in enumerate(first_changes(trace)):
        if p >= 0:
            strings.append(trace.row(i + 1)[: p + 1])
    return SolovayTest(tuple(strings))


def hit_count(test: SolovayTest, final_row: str) -> int:
    return sum(1 for w in test.strings if final_row.startswith(w))


class DeficiencyRow(NamedTuple):
    n: int
    k_prefix: Optional[int]
    k_length: Optional[int]
    deficiency: Optional[int]  # None when either K value is undefined


@dataclass(frozen=True)
class DeficiencyReport:
    rows: tuple[DeficiencyRow, ...]
    b: Optional[int]  # None when no length is comparable


def k_trivial_deficiency(machine: PrefixFreeMachine, A: str, n_max: int) -> DeficiencyReport:
    """``d(n) = K(A|n) - K(n)`` for ``1 <= n <= n_max`` using final-stage K.

    Lengths where the toy machine describes neither value are reported
    as incomparable and left out of ``b``.
    """
    if n_max > len(A):
        raise ValueError(f"n_max={n_max} exceeds |A|={len(A)}")
    final = machine.max_stage
    rows = []
    for n in range(1, n_max + 1):
        ka = k_at(machine, A[:n], final)
        kn = k_at(machine, encode_natural(n), final)
        d = ka - kn if ka is not None and kn is not None else None
        rows.append(DeficiencyRow(n, ka, kn, d))
    comparable = [r.deficiency for r in rows if r.deficiency is not None]
    return DeficiencyReport(tuple(rows), max(comparable) if comparable else None)


def parse_family(text: str) -> CEFamily:
    buckets: dict[int, list[tuple[int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected 'e element stage', got {line!r}")
        try:
            e, x, st = (int(p) for p in parts)
        except ValueError:
            raise ParseError(f"line {lineno}: non-integer field in {line!r}") from None
        if e < 0:
            raise ParseError(f"line {lineno}: negative index {e}")
        buckets.setdefault(e, []).append((x, st))
    return CEFamily.from_dict(buckets)


def serialize_family(family: CEFamily) -> str:
    lines = [f"{e} {x} {st}" for e, pairs in enumerate(family.enumerations) for x, st in pairs]
    return "\n".join(lines) + ("\n" if lines else "")


def serialize_construction(report: ConstructionReport) -> str:
    """Trace file, then a flat ``key value`` block with requirements and ledger."""
    out = [serialize_trace(report.trace).rstrip("\n")]
    out.append(f"requirements {len(report.requirements)}")
    for r in report.requirements:
        out.append(f"ps {r.e} met {r.element} {r.stage}" if r.met else f"ps {r.e} unmet")
    out.append(f"charges {len(report.ledger.charges)}")
    for c in report.ledger.charges:
        out.append(f"charge {c.stage} {c.position} {c.amount}")
    out.append(f"total {report.ledger.total}")
    return "\n".join(out) + "\n"


def parse_construction(text: str) -> ConstructionReport:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
    try:
        head = lines[0].split()
        S = int(head[1])
        trace = parse_trace("\n".join(lines[: S + 1]))
        rest = lines[S + 1 :]
        key, count = rest[0].split()
        if key != "requirements":
            raise ParseError("expected 'requirements' block")
        reqs = []
        for line in rest[1 : 1 + int(count)]:
            parts = line.split()
            if parts[0] != "ps":
                raise ParseError(f"expected 'ps' line, got {line!r}")
            if parts[2] == "met":
                reqs.append(Requirement(int(parts[1]), int(parts[3]), int(parts[4])))
            else:
                reqs.append(Requirement(int(parts[1])))
        rest = rest[1 + int(count) :]
        key, count = rest[0].split()
        if key != "charges":
            raise ParseError("expected 'charges' block")
        charges = []
        for line in rest[1 : 1 + int(count)]:
            tag, s, x, amount = line.split()
            if tag != "charge":
                raise ParseError(f"expected 'charge' line, got {line!r}")
            charges.append(Charge(int(s), int(x), Dyadic.parse(amount)))
        tag, total = rest[1 + int(count)].split()
        if tag != "total":
            raise ParseError("expected 'total' line")
    except (IndexError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed construction report: {exc}") from None
    return ConstructionReport(trace, tuple(reqs), ObedienceLedger(tuple(charges), Dyadic.parse(total)))
