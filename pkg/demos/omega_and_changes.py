"""
Omega of a toy machine and the changes of its binary expansion
==============================================================

A three-program machine is enough to see a left-c.e. approximation at work:
its stagewise halting probability only moves up, so early digits stabilise
and later digits change a bounded number of times.
"""

# %%
import math
from fractions import Fraction

import numpy as np

from deltachanges import (
    PrefixFreeMachine,
    change_lower_experiment,
    change_profile,
    left_ce_change_bound,
    omega_at,
    omega_trace,
    verify_kind,
)
from deltachanges.generate import random_machine

m0 = PrefixFreeMachine([("0", "1", 2), ("10", "00", 1), ("110", "1", 5)], "M0")
print("Kraft sum:", m0.kraft)
for s in range(7):
    print(f"Omega_{s} = {omega_at(m0, s)}")

# %%
# Three binary digits per stage.  The trace is declared left-c.e. and the
# declaration checks out.
trace = omega_trace(m0, 6, 3)
print(trace.rows())
print("left-c.e.:", bool(verify_kind(trace)))
print("changes of Z|n:", change_profile(trace).counts)

# %%
# Once Z|k is frozen at stage t, Z|n changes at most t + 2^(n-k) times.
rep = left_ce_change_bound(trace, 1)
print("t =", rep.t, "checks (n, count, bound, ok):", rep.checks)

# %%
# A larger random machine gives a longer, more interesting approximation.
rng = np.random.default_rng(0)
big = random_machine(rng, 60, max_program=14, max_stage=200, identifier="R60")
wide = omega_trace(big, 201, 16)
counts = change_profile(wide).counts
print("Omega =", omega_at(big, 200))
print("counts:", counts)
for k in (2, 4, 8):
    r = left_ce_change_bound(wide, k)
    print(f"k={k}: t={r.t}, all bounds hold: {r.all_hold}")

# %%
# Compare the changes with floor(q(n) 2^n) for a slowly vanishing q.  At a
# finite horizon this is only a snapshot.
q = [Fraction(1 / math.log(math.log(n + 3))).limit_denominator(1000) for n in range(1, 17)]
q = [min(q[: i + 1]) for i in range(len(q))]
for row in change_lower_experiment(wide, q):
    print(row)
