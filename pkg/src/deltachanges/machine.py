"""Toy prefix-free machines given as explicit halting tables.

A machine is a finite list of computations ``(program, output, stage)``.
Stagewise Omega and K are exact functions of that table; there is no
interpreter behind it.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterable, Optional

from .dyadic import ZERO, ONE, Dyadic, power_of_two
from .errors import DuplicateProgram, KraftViolation, MachineError, ParseError, PrefixViolation
from .trace import ApproximationTrace, TraceKind

__all__ = [
    "Computation",
    "PrefixFreeMachine",
    "validate",
    "omega_at",
    "omega_trace",
    "k_at",
    "encode_natural",
    "decode_natural",
    "parse_machine",
    "serialize_machine",
]


def _check_bits(s: str, what: str) -> None:
    if set(s) - {"0", "1"}:
        raise MachineError(f"{what} {s!r} is not a bit string")


@dataclass(frozen=True, order=True)
class Computation:
    program: str
    output: str
    stage: int


def _check_table(comps: list[Computation]) -> Dyadic:
    for c in comps:
        _check_bits(c.program, "program")
        _check_bits(c.output, "output")
        if c.stage < 1:
            raise MachineError(f"program {c.program!r} halts at stage {c.stage}; stages start at 1")
    # after sorting, any prefix pair has the shorter string immediately
    # followed (possibly after other extensions) by strings extending it;
    # checking neighbours is enough for prefix-freeness
    programs = sorted(c.program for c in comps)
    for a, b in zip(programs, programs[1:]):
        if a == b:
            raise DuplicateProgram(a)
        if b.startswith(a):
            raise PrefixViolation(a, b)
    total = sum((power_of_two(len(p)) for p in programs), ZERO)
    if total > ONE:
        raise KraftViolation(total)
    return total


class PrefixFreeMachine:
    """Validated, immutable halting table.

    Construction raises :class:`DuplicateProgram`, :class:`PrefixViolation`
    or :class:`KraftViolation` when the table is not a prefix-free machine.
    """

    __slots__ = ("computations", "identifier", "kraft", "_stages", "_omega", "_best")

    def __init__(self, computations: Iterable, identifier: str = "M"):
        comps = []
        for c in computations:
            if not isinstance(c, Computation):
                program, output, stage = c
                c = Computation(str(program), str(output), int(stage))
            comps.append(c)
        self.kraft = _check_table(comps)
        self.computations = tuple(sorted(comps, key=lambda c: c.program))
        self.identifier = identifier

        # cumulative Omega at each distinct halting stage
        by_stage = sorted(comps, key=lambda c: c.stage)
        stages, omegas, acc = [], [], ZERO
        for c in by_stage:
            acc = acc + power_of_two(len(c.program))
            if stages and stages[-1] == c.stage:
                omegas[-1] = acc
            else:
                stages.append(c.stage)
                omegas.append(acc)
        self._stages = tuple(stages)
        self._omega = tuple(omegas)

        # per output: (stage, running minimum program length) in stage order
        best: dict[str, list[tuple[int, int]]] = {}
        for c in by_stage:
            hist = best.setdefault(c.output, [])
            n = len(c.program)
            if hist and hist[-1][1] <= n:
                continue
            if hist and hist[-1][0] == c.stage:
                hist[-1] = (c.stage, n)
            else:
                hist.append((c.stage, n))
        self._best = {w: (tuple(s for s, _ in h), tuple(n for _, n in h)) for w, h in best.items()}

    @property
    def max_stage(self) -> int:
        return self._stages[-1] if self._stages else 0

    @property
    def outputs(self) -> tuple[str, ...]:
        return tuple(sorted(self._best))

    def __len__(self):
        return len(self.computations)

    def __eq__(self, other):
        if not isinstance(other, PrefixFreeMachine):
            return NotImplemented
        return self.computations == other.computations

    def __hash__(self):
        return hash(self.computations)

    def __repr__(self):
        return f"PrefixFreeMachine({self.identifier!r}, {len(self)} computations)"


def validate(machine: PrefixFreeMachine | Iterable) -> Dyadic:
    """Return the exact Kraft sum, raising a :class:`MachineError` subclass if invalid."""
    if isinstance(machine, PrefixFreeMachine):
        return _check_table(list(machine.computations))
    return PrefixFreeMachine(machine).kraft


def omega_at(machine: PrefixFreeMachine, s: int) -> Dyadic:
    """Measure of the programs that have halted by stage ``s``."""
    i = bisect_right(machine._stages, s)
    return machine._omega[i - 1] if i else ZERO


def omega_trace(machine: PrefixFreeMachine, stages: int, width: int) -> ApproximationTrace:
    """Rows ``0..stages-1`` hold the first ``width`` binary digits of ``omega_at``.

    Truncation may merge distinct values; that is allowed.  A Kraft sum of
    exactly 1 is written as all ones.
    """
    rows = [omega_at(machine, s).binary_digits(width) for s in range(stages)]
    return ApproximationTrace(rows, TraceKind.LEFT_CE)


def k_at(machine: PrefixFreeMachine, w: str, s: int) -> Optional[int]:
    """Shortest program that outputs ``w`` by stage ``s``, or ``None``."""
    entry = machine._best.get(w)
    if entry is None:
        return None
    stages, lengths = entry
    i = bisect_right(stages, s)
    return lengths[i - 1] if i else None


def encode_natural(n: int) -> str:
    """Length-lexicographic bijection: 0 -> '', 1 -> '0', 2 -> '1', 3 -> '00', ..."""
    if n < 0:
        raise ValueError("naturals only")
    return bin(n + 1)[3:]


def decode_natural(w: str) -> int:
    _check_bits(w, "string")
    return int("1" + w, 2) - 1


def parse_machine(text: str, identifier: str = "M") -> PrefixFreeMachine:
    comps = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "machine":
                identifier = parts[1]
            continue
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ParseError(f"line {lineno}: expected '<program> <output> <stage>', got {line!r}")
        program, output, stage = parts
        program = "" if program == "-" else program
        output = "" if output == "-" else output
        try:
            st = int(stage)
        except ValueError:
            raise ParseError(f"line {lineno}: stage {stage!r} is not an integer") from None
        for token, what in ((program, "program"), (output, "output")):
            if set(token) - {"0", "1"}:
                raise ParseError(f"line {lineno}: {what} {token!r} is not a bit string")
        comps.append(Computation(program, output, st))
    return PrefixFreeMachine(comps, identifier)


def serialize_machine(machine: PrefixFreeMachine) -> str:
    out = [f"# machine {machine.identifier}"]
    for c in machine.computations:
        out.append(f"{c.program or '-'} {c.output or '-'} {c.stage}")
    return "\n".join(out) + "\n"
