"""Finite-horizon laboratory for changes of Delta^0_2 approximations.

Traces (stage x position bit matrices), toy prefix-free machines with exact
stagewise Omega and K, cost functions with obedience ledgers, and the
effective constructions built on top of them.
"""

from .dyadic import ONE, ZERO, Dyadic, power_of_two
from .errors import (
    CostRangeError,
    DeltaChangesError,
    DuplicateProgram,
    FamilyError,
    KraftViolation,
    MachineError,
    ParseError,
    PrefixViolation,
    TraceError,
)
from .trace import (
    ApproximationTrace,
    ChangeProfile,
    GrowthBound,
    TraceKind,
    Verdict,
    change_lower_experiment,
    change_profile,
    is_g_change,
    left_ce_change_bound,
    parse_trace,
    serialize_trace,
    verify_kind,
)
from .machine import (
    Computation,
    PrefixFreeMachine,
    decode_natural,
    encode_natural,
    k_at,
    omega_at,
    omega_trace,
    parse_machine,
    serialize_machine,
    validate,
)
from .cost import (
    ExpDecayCost,
    ObedienceLedger,
    OmegaCost,
    StandardKCost,
    TableCost,
    benignity_count,
    evaluate,
    limit_condition_probe,
    parse_cost_spec,
    total_cost,
    validate_monotone,
)
from .construct import (
    CEFamily,
    ConstructionReport,
    SolovayTest,
    hit_count,
    k_trivial_deficiency,
    prompt_simple,
    solovay_extract,
)
from .report import Report, emit_report, parse_report

__version__ = "0.1.0"
