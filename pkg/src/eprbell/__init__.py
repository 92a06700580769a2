"""Executable checks for the EPR-Bell nonlocality argument.

Singlet predictions (:mod:`.quantum`), per-hidden-state locality checks and
the completeness contradiction (:mod:`.locality`), and the local-polytope
analysis behind Bell's theorem (:mod:`.lhv`).
"""

from .errors import (
    EPRBellError,
    ModelError,
    ParseError,
    ScenarioError,
    ShapeMismatch,
    TooLarge,
    ZeroVector,
)
from .lhv import (
    DeterministicStrategy,
    LPResult,
    Verdict,
    chsh_value,
    enumerate_strategies,
    local_polytope_membership,
    max_abs_chsh,
    mix_strategies,
    strategy_behavior,
    two_part_argument,
)
from .locality import (
    DerivationReport,
    GeneralState,
    LambdaModel,
    LocalityReport,
    LocalState,
    epr_bell_derivation,
    factorization_check,
    oi_check,
    orthodox_model,
    pi_check,
)
from .quantum import (
    JointOutcomeProbabilities,
    SampleCounts,
    correlation,
    sample_pairs,
    singlet_behavior,
    singlet_joint,
    singlet_marginal,
    sweep,
)
from .scenario import (
    Behavior,
    MeasurementDirection,
    Outcome,
    Scenario,
    Side,
    ValidationReport,
    angle_between,
    make_direction,
    no_signalling_check,
    planar_direction,
    uniform_behavior,
    validate_behavior,
)

__version__ = "0.1.0"
