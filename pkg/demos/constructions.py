"""
Promptly simple sets, Solovay tests and K-triviality at a finite horizon
=======================================================================

Build a c.e. set that answers each W_e once while paying at most 2^-e for
it, read a Solovay test off any trace, and tabulate K(A|n) - K(n) on a toy
machine.
"""

# %%
import numpy as np

from deltachanges import (
    CEFamily,
    ExpDecayCost,
    OmegaCost,
    hit_count,
    k_trivial_deficiency,
    prompt_simple,
    solovay_extract,
    total_cost,
)
from deltachanges.construct import serialize_construction
from deltachanges.generate import random_family, random_machine, random_trace

rng = np.random.default_rng(3)
machine = random_machine(rng, 40, max_program=8, max_output=5, max_stage=60, identifier="R40")
family = random_family(rng, 8, 80, 40, per_set=10)

# %%
for spec in (ExpDecayCost(), OmegaCost(machine)):
    report = prompt_simple(spec, family, 80, 40)
    met = [r for r in report.requirements if r.met]
    print(spec.describe(), f"met {len(met)}/{len(report.requirements)}", "tax", report.ledger.total.to_fraction())

# %%
# The full construction report is a flat text block that parses back.
print(serialize_construction(prompt_simple(ExpDecayCost(), CEFamily([[(5, 3)]]), 5, 8)))

# %%
# Every change contributes Z_s|(p+1); the test weighs exactly half the exp tax.
trace = random_trace(rng, 60, 12, p_flip=0.05)
test = solovay_extract(trace)
print(len(test.strings), "strings, weight", test.weight, "half exp tax", total_cost(trace, ExpDecayCost()).total.to_fraction() / 2)
print("hits on the final row:", hit_count(test, trace.final_row))

# %%
# K(A|n) - K(n) where both are described by the toy machine.
A = prompt_simple(OmegaCost(machine), family, 80, 40).trace.final_row
rep = k_trivial_deficiency(machine, A, 12)
for row in rep.rows:
    print(row)
print("b over comparable lengths:", rep.b)
