"""Brute-force reference implementations.

These deliberately avoid the package's fast paths (numpy, Dyadic, the
precomputed machine tables, the greedy sweep) and use Fractions and plain
loops over the definitions.
"""

from fractions import Fraction
from functools import lru_cache


def naive_profile(rows):
    width = len(rows[0])
    counts = []
    for n in range(1, width + 1):
        counts.append(sum(1 for s in range(1, len(rows)) if rows[s][:n] != rows[s - 1][:n]))
    return counts


def naive_omega(computations, s):
    return sum((Fraction(1, 2 ** len(p)) for p, _, st in computations if st <= s), Fraction(0))


def naive_k(computations, w, s):
    lengths = [len(p) for p, out, st in computations if out == w and st <= s]
    return min(lengths) if lengths else None


def naive_encode(n):
    # walk the length-lexicographic enumeration
    i, length = 0, 0
    while True:
        for v in range(2 ** length):
            w = format(v, f"0{length}b") if length else ""
            if i == n:
                return w
            i += 1
        length += 1


def naive_stdk(computations, x, s):
    total = Fraction(0)
    for w in range(x + 1, s + 1):
        k = naive_k(computations, naive_encode(w), s)
        if k is not None:
            total += Fraction(1, 2 ** k)
    return total


def naive_ledger(rows, cost):
    """``cost`` maps (x, s) to a Fraction."""
    charges = []
    for s in range(1, len(rows)):
        changed = [x for x in range(len(rows[s])) if rows[s][x] != rows[s - 1][x]]
        if changed:
            charges.append((s, changed[0], cost(changed[0], s)))
    return charges


def exhaustive_benignity(cost, threshold, horizon):
    """Max size of a family of disjoint [x, s) in [0, horizon) with cost >= threshold.

    Tries every eligible interval at every left end; no monotonicity assumed.
    """
    eligible = {(x, s) for x in range(horizon) for s in range(x + 1, horizon + 1) if cost(x, s) >= threshold}

    @lru_cache(maxsize=None)
    def best(left):
        if left >= horizon:
            return 0
        result = best(left + 1)
        for s in range(left + 1, horizon + 1):
            if (left, s) in eligible:
                result = max(result, 1 + best(s))
        return result

    return best(0)


def is_prefix_free(programs):
    for a in programs:
        for b in programs:
            if a != b and b.startswith(a):
                return False
    return len(set(programs)) == len(programs)
