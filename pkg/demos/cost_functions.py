"""
Cost functions and the tax a trace pays
=======================================

Four cost functions, one trace per idea: evaluate, check monotonicity,
charge an approximation, probe the limit condition, count disjoint
expensive intervals.
"""

# %%
import numpy as np

from deltachanges import (
    ApproximationTrace,
    ExpDecayCost,
    OmegaCost,
    PrefixFreeMachine,
    StandardKCost,
    benignity_count,
    evaluate,
    limit_condition_probe,
    total_cost,
    validate_monotone,
)
from deltachanges.dyadic import Dyadic
from deltachanges.generate import random_machine, random_monotone_table, random_trace

m0 = PrefixFreeMachine([("0", "1", 2), ("10", "00", 1), ("110", "1", 5)], "M0")
specs = {
    "omega": OmegaCost(m0),
    "stdk": StandardKCost(m0),
    "exp": ExpDecayCost(),
    "table": random_monotone_table(np.random.default_rng(1), 8, 8),
}
for name, spec in specs.items():
    print(name, "c(1,5) =", evaluate(spec, 1, 5), "monotone on 7x7:", bool(validate_monotone(spec, 6, 6)))

# %%
# One charge per changing stage, at the least position that moved.
trace = ApproximationTrace(["000", "100", "110", "110"])
ledger = total_cost(trace, specs["exp"])
for charge in ledger.charges:
    print(charge)
print("total:", ledger.total)

# %%
# Finite evidence for the limit condition: the first x whose cost never
# exceeds epsilon within the horizon.
for name in ("omega", "exp"):
    print(name, limit_condition_probe(specs[name], Dyadic(1, 3), 10, 10))

# %%
# Omega increments over disjoint intervals add up to at most 1, so at most
# 2^k of them can reach 2^-k each.
rng = np.random.default_rng(2)
machine = random_machine(rng, 64, max_program=9, max_stage=80)
omega = OmegaCost(machine)
print([(k, benignity_count(omega, k, 85), 2**k) for k in range(9)])

# %%
# A random trace pays a lot under exp; a slowly changing one pays little.
for p in (0.3, 0.02):
    t = random_trace(rng, 100, 20, p_flip=p)
    print(f"p_flip={p}: exp tax = {total_cost(t, specs['exp']).total.to_fraction()}")
