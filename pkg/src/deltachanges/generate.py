"""Seeded random instances for experiments and property tests."""

from __future__ import annotations

import numpy as np

from .construct import CEFamily
from .cost import TableCost
from .dyadic import Dyadic
from .machine import PrefixFreeMachine
from .trace import ApproximationTrace, TraceKind


def random_bits(rng: np.random.Generator, lo: int, hi: int) -> str:
    n = int(rng.integers(lo, hi + 1))
    return "".join("1" if b else "0" for b in rng.integers(0, 2, n))


def random_machine(
    rng: np.random.Generator,
    size: int,
    max_program: int = 10,
    max_output: int = 4,
    max_stage: int = 20,
    identifier: str = "R",
) -> PrefixFreeMachine:
    """Up to ``size`` computations with prefix-free programs.

    Candidates that clash with an already chosen program are dropped, so the
    result can be smaller than ``size``.
    """
    programs: list[str] = []
    for _ in range(size * 8):
        if len(programs) == size:
            break
        p = random_bits(rng, 1, max_program)
        if any(p.startswith(q) or q.startswith(p) for q in programs):
            continue
        programs.append(p)
    comps = [(p, random_bits(rng, 0, max_output), int(rng.integers(1, max_stage + 1))) for p in programs]
    return PrefixFreeMachine(comps, identifier)


def random_trace(rng: np.random.Generator, stages: int, width: int, p_flip: float = 0.1) -> ApproximationTrace:
    flips = rng.random((stages, width)) < p_flip
    flips[0] = rng.integers(0, 2, width).astype(bool)
    bits = np.bitwise_xor.accumulate(flips.astype(np.uint8), axis=0)
    return ApproximationTrace(bits, TraceKind.GENERAL)


def random_left_ce_trace(rng: np.random.Generator, stages: int, width: int) -> ApproximationTrace:
    """Rows read as ``width``-bit numbers that never decrease."""
    top = (1 << width) - 1
    value = int(rng.integers(0, 4)) << max(0, width - 2) if width >= 2 else int(rng.integers(0, 2))
    rows = []
    for _ in range(stages):
        rows.append(format(min(value, top), f"0{width}b"))
        if rng.random() < 0.5:
            # increments of every magnitude, so both high and low bits move
            shift = int(rng.integers(0, width))
            value = min(top, value + (int(rng.integers(1, 4)) << shift))
    return ApproximationTrace(rows, TraceKind.LEFT_CE)


def random_monotone_table(rng: np.random.Generator, X: int, S: int, exponent: int = 8) -> TableCost:
    """Sum of nonnegative increments over ``x' >= x`` and ``s' <= s``.

    Such sums are nondecreasing in ``s`` and nonincreasing in ``x`` by
    construction.
    """
    inc = rng.integers(0, 4, size=(X, S)) * (rng.random((X, S)) < 0.3)
    acc = np.cumsum(np.cumsum(inc[::-1], axis=0)[::-1], axis=1)
    return TableCost(tuple(tuple(Dyadic(int(v), exponent) for v in row) for row in acc))


def random_family(rng: np.random.Generator, size: int, stages: int, width: int, per_set: int = 6) -> CEFamily:
    enums = []
    for _ in range(size):
        k = int(rng.integers(0, per_set + 1))
        elems = rng.choice(width, size=min(k, width), replace=False)
        enums.append([(int(x), int(rng.integers(1, stages))) for x in elems])
    return CEFamily(enums)
