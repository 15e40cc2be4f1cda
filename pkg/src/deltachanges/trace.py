"""Finite-horizon computable approximations and their initial-segment changes.

A trace is an ``S x N`` bit matrix: row ``s`` is the stage-``s`` guess ``Z_s``
restricted to positions ``0..N-1``.  Every statement computed here is about
the horizon only; nothing is claimed about the infinite object.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .errors import ParseError, TraceError

__all__ = [
    "TraceKind",
    "ApproximationTrace",
    "ChangeProfile",
    "GrowthBound",
    "Verdict",
    "LeftCEBoundReport",
    "ChangeLowerRow",
    "change_profile",
    "first_changes",
    "is_g_change",
    "verify_kind",
    "left_ce_change_bound",
    "change_lower_experiment",
    "parse_trace",
    "serialize_trace",
]


class TraceKind(str, enum.Enum):
    GENERAL = "general"
    CE = "ce"
    LEFT_CE = "leftce"

    @classmethod
    def from_token(cls, token: str) -> "TraceKind":
        token = token.strip().lower()
        if token == "left-ce":
            token = "leftce"
        try:
            return cls(token)
        except ValueError:
            raise ParseError(f"unknown trace kind {token!r}") from None


class Verdict(NamedTuple):
    """Outcome of a check; truthy iff it holds.

    ``where`` locates the first violation (a stage or a length, depending on
    the check) and ``reason`` describes it.
    """

    holds: bool
    where: Optional[int] = None
    reason: str = ""

    def __bool__(self):
        return self.holds


class ApproximationTrace:
    """Immutable stage x position bit matrix with a declared kind.

    The declared kind is *not* enforced at construction; use
    :func:`verify_kind` to confirm it.
    """

    __slots__ = ("_bits", "kind")

    def __init__(self, rows, kind: TraceKind | str = TraceKind.GENERAL):
        if isinstance(rows, np.ndarray):
            bits = np.array(rows, dtype=np.uint8, copy=True)
            if bits.ndim != 2 or not np.isin(bits, (0, 1)).all():
                raise TraceError("bit matrix must be 2-d with entries 0/1")
        else:
            rows = list(rows)
            if not rows:
                raise TraceError("a trace needs at least one stage")
            width = len(rows[0])
            for s, row in enumerate(rows):
                if len(row) != width:
                    raise TraceError(f"row {s} has {len(row)} entries, expected {width}")
                if isinstance(row, str) and set(row) - {"0", "1"}:
                    raise TraceError(f"row {s} contains a non-binary digit")
            if isinstance(rows[0], str):
                bits = np.array([[int(c) for c in r] for r in rows], dtype=np.uint8).reshape(len(rows), width)
            else:
                bits = np.array(rows, dtype=np.int64).reshape(len(rows), width)
                if not np.isin(bits, (0, 1)).all():
                    raise TraceError("trace entries must be 0 or 1")
                bits = bits.astype(np.uint8)
        if bits.shape[0] < 1 or bits.shape[1] < 1:
            raise TraceError("a trace needs positive stage count and width")
        bits.setflags(write=False)
        self._bits = bits
        self.kind = kind if isinstance(kind, TraceKind) else TraceKind.from_token(kind)

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    @property
    def stages(self) -> int:
        return self._bits.shape[0]

    @property
    def width(self) -> int:
        return self._bits.shape[1]

    def row(self, s: int) -> str:
        return "".join("1" if b else "0" for b in self._bits[s])

    def rows(self) -> list[str]:
        return [self.row(s) for s in range(self.stages)]

    @property
    def final_row(self) -> str:
        return self.row(self.stages - 1)

    def __eq__(self, other):
        if not isinstance(other, ApproximationTrace):
            return NotImplemented
        return self.kind == other.kind and np.array_equal(self._bits, other._bits)

    def __hash__(self):
        return hash((self.kind, self._bits.tobytes(), self._bits.shape))

    def __repr__(self):
        return f"ApproximationTrace({self.rows()!r}, kind={self.kind.value!r})"


@dataclass(frozen=True)
class ChangeProfile:
    """``counts[n-1]`` is the number of stages at which ``Z_s|n`` changed."""

    counts: tuple[int, ...]

    def count(self, n: int) -> int:
        if not 1 <= n <= len(self.counts):
            raise IndexError(f"length {n} outside 1..{len(self.counts)}")
        return self.counts[n - 1]


@dataclass(frozen=True)
class GrowthBound:
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if any(v < 0 for v in self.values):
            raise ValueError("growth bound entries must be nonnegative")

    def __call__(self, n: int) -> int:
        return self.values[n - 1]


def first_changes(trace: ApproximationTrace) -> np.ndarray:
    """Least changed position for each stage ``1..S-1``; ``-1`` at stable stages."""
    bits = trace.bits
    if trace.stages < 2:
        return np.empty(0, dtype=np.int64)
    diff = bits[1:] != bits[:-1]
    first = np.argmax(diff, axis=1).astype(np.int64)
    first[~diff.any(axis=1)] = -1
    return first


def change_profile(trace: ApproximationTrace) -> ChangeProfile:
    """Count prefix changes between consecutive stages.

    A change of ``Z_s|n`` at stage ``s >= 1`` means rows ``s-1`` and ``s``
    differ somewhere below ``n``, i.e. their least differing position is
    ``< n``.  The stage-0 row is free.
    """
    first = first_changes(trace)
    hist = np.bincount(first[first >= 0], minlength=trace.width)
    return ChangeProfile(tuple(int(c) for c in np.cumsum(hist)))


def is_g_change(trace: ApproximationTrace, g: GrowthBound | Sequence[int]) -> Verdict:
    if not isinstance(g, GrowthBound):
        g = GrowthBound(tuple(g))
    if len(g.values) < trace.width:
        raise TraceError(f"bound covers {len(g.values)} lengths but the trace has width {trace.width}")
    profile = change_profile(trace)
    for n, c in enumerate(profile.counts, start=1):
        if c > g(n):
            return Verdict(False, n, f"Z|{n} changes {c} times, bound {g(n)}")
    return Verdict(True)


def verify_kind(trace: ApproximationTrace) -> Verdict:
    """Check the declared kind; ``where`` is the stage ``s+1`` that breaks it."""
    if trace.kind is TraceKind.GENERAL or trace.stages < 2:
        return Verdict(True)
    prev, nxt = trace.bits[:-1], trace.bits[1:]
    if trace.kind is TraceKind.CE:
        bad = (prev > nxt).any(axis=1)
        if bad.any():
            s = int(np.argmax(bad)) + 1
            x = int(np.argmax(prev[s - 1] > nxt[s - 1]))
            return Verdict(False, s, f"position {x} left the set at stage {s}")
        return Verdict(True)
    first = first_changes(trace)
    for i in np.flatnonzero(first >= 0):
        p = first[i]
        if prev[i, p] > nxt[i, p]:
            s = int(i) + 1
            return Verdict(False, s, f"row {s} is lexicographically below row {s - 1}")
    return Verdict(True)


@dataclass(frozen=True)
class LeftCEBoundReport:
    """Per-length checks ``counts[n] <= t + 2**(n-k)`` for ``t < n <= N``."""

    k: int
    t: int
    checks: tuple[tuple[int, int, int, bool], ...]  # (n, count, bound, ok)

    @property
    def all_hold(self) -> bool:
        return all(ok for *_, ok in self.checks)


def left_ce_change_bound(trace: ApproximationTrace, k: int) -> LeftCEBoundReport:
    """Stabilisation stage of ``Z|k`` and the resulting change bound for longer prefixes.

    ``t`` is the least stage after which ``Z_s|k`` does not change within the
    horizon.  Once the first ``k`` bits are frozen, a left-c.e. approximation
    can only move the remaining ``n-k`` bits upward, which caps the changes
    of ``Z|n`` at ``t + 2**(n-k)``.
    """
    if trace.kind is not TraceKind.LEFT_CE:
        raise TraceError(f"trace is declared {trace.kind.value}, not leftce")
    verdict = verify_kind(trace)
    if not verdict:
        raise TraceError(f"trace is not left-c.e.: {verdict.reason}")
    if not 1 <= k <= trace.width:
        raise TraceError(f"k={k} outside 1..{trace.width}")
    first = first_changes(trace)
    below_k = np.flatnonzero((first >= 0) & (first < k))
    t = int(below_k[-1]) + 1 if below_k.size else 0
    counts = change_profile(trace).counts
    checks = []
    for n in range(t + 1, trace.width + 1):
        # for n < k, 2**(n-k) < 1 and counts are integers, so the bound floors to t
        bound = t + (1 << (n - k)) if n >= k else t
        c = counts[n - 1]
        checks.append((n, c, bound, c <= bound))
    return LeftCEBoundReport(k, t, tuple(checks))


class ChangeLowerRow(NamedTuple):
    n: int
    count: int
    bound: int
    respected: bool


def change_lower_experiment(trace: ApproximationTrace, q: Sequence) -> list[ChangeLowerRow]:
    """Compare ``counts[n]`` with ``floor(q(n) * 2**n)`` at every length.

    ``q[n-1]`` holds ``q(n)``; entries may be ints, Fractions or strings such
    as ``"1/3"``.  The result says nothing about ``lim q(n)``.
    """
    qs = [Fraction(v) if not hasattr(v, "to_fraction") else v.to_fraction() for v in q]
    if len(qs) < trace.width:
        raise TraceError(f"q covers {len(qs)} lengths but the trace has width {trace.width}")
    if any(v <= 0 for v in qs):
        raise ValueError("q must be positive")
    if any(b > a for a, b in zip(qs, qs[1:])):
        raise ValueError("q must be nonincreasing")
    counts = change_profile(trace).counts
    out = []
    for n in range(1, trace.width + 1):
        bound = math.floor(qs[n - 1] * (1 << n))
        out.append(ChangeLowerRow(n, counts[n - 1], bound, counts[n - 1] <= bound))
    return out


def parse_trace(text: str) -> ApproximationTrace:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty trace file")
    head = lines[0].split()
    if len(head) != 4 or head[0] != "trace":
        raise ParseError(f"bad trace header {lines[0]!r}; expected 'trace S N kind'")
    try:
        S, N = int(head[1]), int(head[2])
    except ValueError:
        raise ParseError(f"bad trace header {lines[0]!r}") from None
    kind = TraceKind.from_token(head[3])
    rows = lines[1:]
    if S < 1 or N < 1:
        raise ParseError("S and N must be positive")
    if len(rows) != S:
        raise ParseError(f"header announces {S} rows, found {len(rows)}")
    for i, r in enumerate(rows):
        if len(r) != N or set(r) - {"0", "1"}:
            raise ParseError(f"row {i} is not a {N}-digit bit string: {r!r}")
    return ApproximationTrace(rows, kind)


def serialize_trace(trace: ApproximationTrace) -> str:
    out = [f"trace {trace.stages} {trace.width} {trace.kind.value}"]
    out.extend(trace.rows())
    return "\n".join(out) + "\n"

