"""Cost functions, obedience ledgers, the limit-condition probe and benignity.

A cost function ``c(x, s)`` is nonnegative, nondecreasing in the stage ``s``
and nonincreasing in the position ``x``.  Four variants are built in:

``OmegaCost``      ``Omega_s - Omega_x`` for a fixed toy machine (0 when ``x > s``)
``StandardKCost``  ``sum_{w=x+1}^{s} 2**-K_s(w)`` with undefined K contributing 0
``ExpDecayCost``   ``2**-x``
``TableCost``      explicit finite matrix
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Optional, Union

from .dyadic import ZERO, Dyadic, power_of_two
from .errors import CostRangeError, ParseError
from .machine import PrefixFreeMachine, decode_natural, k_at, omega_at, parse_machine
from .trace import ApproximationTrace, Verdict, first_changes

__all__ = [
    "OmegaCost",
    "StandardKCost",
    "ExpDecayCost",
    "TableCost",
    "CostFunctionSpec",
    "Charge",
    "ObedienceLedger",
    "evaluate",
    "validate_monotone",
    "total_cost",
    "limit_condition_probe",
    "benignity_count",
    "parse_cost_spec",
    "parse_cost_table",
    "serialize_cost_table",
]


@dataclass(frozen=True)
class OmegaCost:
    machine: PrefixFreeMachine

    def __call__(self, x: int, s: int) -> Dyadic:
        if x >= s:
            return ZERO
        return omega_at(self.machine, s) - omega_at(self.machine, x)

    def describe(self) -> str:
        return f"omega:{self.machine.identifier}"


@dataclass(frozen=True)
class StandardKCost:
    machine: PrefixFreeMachine

    def __post_init__(self):
        # naturals that the machine can ever describe, in increasing order
        pairs = sorted((decode_natural(w), w) for w in self.machine.outputs)
        object.__setattr__(self, "_described", tuple(pairs))

    def __call__(self, x: int, s: int) -> Dyadic:
        total = ZERO
        for n, w in self._described:
            if n <= x:
                continue
            if n > s:
                break
            k = k_at(self.machine, w, s)
            if k is not None:
                total = total + power_of_two(k)
        return total

    def describe(self) -> str:
        return f"stdk:{self.machine.identifier}"


@dataclass(frozen=True)
class ExpDecayCost:
    def __call__(self, x: int, s: int) -> Dyadic:
        return power_of_two(x)

    def describe(self) -> str:
        return "exp"


@dataclass(frozen=True)
class TableCost:
    """``values[x][s]`` for ``x < X``, ``s < S``."""

    values: tuple[tuple[Dyadic, ...], ...]

    def __post_init__(self):
        vals = tuple(tuple(Dyadic.coerce(v) for v in row) for row in self.values)
        if not vals or not vals[0]:
            raise ValueError("cost table must be nonempty")
        if any(len(r) != len(vals[0]) for r in vals):
            raise ValueError("cost table rows have unequal length")
        object.__setattr__(self, "values", vals)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.values), len(self.values[0])

    def __call__(self, x: int, s: int) -> Dyadic:
        X, S = self.shape
        if not (0 <= x < X and 0 <= s < S):
            raise CostRangeError(f"table cost defined for x < {X}, s < {S}; asked ({x}, {s})")
        return self.values[x][s]

    def describe(self) -> str:
        X, S = self.shape
        return f"table:{X}x{S}"


CostFunctionSpec = Union[OmegaCost, StandardKCost, ExpDecayCost, TableCost]


def evaluate(spec: CostFunctionSpec, x: int, s: int) -> Dyadic:
    if x < 0 or s < 0:
        raise CostRangeError(f"negative argument ({x}, {s})")
    return spec(x, s)


def validate_monotone(spec: CostFunctionSpec, X: int, S: int) -> Verdict:
    """Scan the ``(X+1) x (S+1)`` grid; ``where`` is the offending ``x``."""
    grid = [[evaluate(spec, x, s) for s in range(S + 1)] for x in range(X + 1)]
    for x in range(X + 1):
        for s in range(S + 1):
            if s < S and grid[x][s] > grid[x][s + 1]:
                return Verdict(False, x, f"c({x},{s})={grid[x][s]} > c({x},{s + 1})={grid[x][s + 1]}: decreasing in s")
            if x < X and grid[x + 1][s] > grid[x][s]:
                return Verdict(False, x, f"c({x + 1},{s})={grid[x + 1][s]} > c({x},{s})={grid[x][s]}: increasing in x")
    return Verdict(True)


class Charge(NamedTuple):
    stage: int
    position: int
    amount: Dyadic


@dataclass(frozen=True)
class ObedienceLedger:
    charges: tuple[Charge, ...]
    total: Dyadic


def total_cost(trace: ApproximationTrace, spec: CostFunctionSpec) -> ObedienceLedger:
    """Charge ``c(x_s, s)`` at every stage where the trace changes.

    ``x_s`` is the least position whose bit differs from the previous stage;
    one charge per changing stage, however many bits move.
    """
    charges = []
    total = ZERO
    for i, p in enumerate(first_changes(trace)):
        if p < 0:
            continue
        s = i + 1
        amount = evaluate(spec, int(p), s)
        charges.append(Charge(s, int(p), amount))
        total = total + amount
    return ObedienceLedger(tuple(charges), total)


def limit_condition_probe(spec: CostFunctionSpec, epsilon, X: int, S: int) -> Optional[int]:
    """Least ``x <= X`` whose horizon supremum ``max_{s<=S} c(x, s)`` is ``<= epsilon``.

    ``None`` means nothing was found at this horizon, which says nothing
    about the limit condition itself.
    """
    epsilon = Dyadic.coerce(epsilon) if not isinstance(epsilon, str) else Dyadic.parse(epsilon)
    if not epsilon:
        raise ValueError("epsilon must be positive")
    for x in range(X + 1):
        # monotone in s, yet we take the max so unvalidated tables are probed honestly
        sup = max(evaluate(spec, x, s) for s in range(S + 1))
        if sup <= epsilon:
            return x
    return None


def benignity_count(spec: CostFunctionSpec, k: int, horizon: int) -> int:
    """Most pairwise disjoint intervals ``[x, s)`` in ``[0, horizon)`` with ``c(x, s) >= 2**-k``.

    Greedy by earliest right endpoint.  With ``c`` nonincreasing in ``x`` the
    best left end for a candidate right end ``s`` is the end of the last
    chosen interval, so each ``s`` needs a single evaluation.
    """
    threshold = power_of_two(k)
    count, left = 0, 0
    for s in range(1, horizon + 1):
        if evaluate(spec, left, s) >= threshold:
            count += 1
            left = s
    return count


def parse_cost_table(text: str) -> TableCost:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty cost table")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "cost":
        raise ParseError(f"bad cost table header {lines[0]!r}; expected 'cost X S'")
    try:
        X, S = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError(f"bad cost table header {lines[0]!r}") from None
    body = lines[1:]
    if len(body) != X:
        raise ParseError(f"header announces {X} rows, found {len(body)}")
    rows = []
    for i, line in enumerate(body):
        cells = line.replace(",", " ").split()
        if len(cells) != S:
            raise ParseError(f"row {i} has {len(cells)} values, expected {S}")
        rows.append(tuple(Dyadic.parse(c) for c in cells))
    return TableCost(tuple(rows))


def serialize_cost_table(table: TableCost) -> str:
    X, S = table.shape
    out = [f"cost {X} {S}"]
    out.extend(" ".join(str(v) for v in row) for row in table.values)
    return "\n".join(out) + "\n"


def _load_machine(path: str) -> PrefixFreeMachine:
    p = Path(path)
    return parse_machine(p.read_text(), identifier=p.stem)


def parse_cost_spec(text: str) -> CostFunctionSpec:
    """``omega:<machine-file>``, ``stdk:<machine-file>``, ``exp`` or ``table:<file>``."""
    head, _, arg = text.partition(":")
    if head == "exp" and not arg:
        return ExpDecayCost()
    if not arg:
        raise ParseError(f"cost spec {text!r} needs a file argument")
    if head == "omega":
        return OmegaCost(_load_machine(arg))
    if head == "stdk":
        return StandardKCost(_load_machine(arg))
    if head == "table":
        return parse_cost_table(Path(arg).read_text())
    raise ParseError(f"unknown cost spec {text!r}")
