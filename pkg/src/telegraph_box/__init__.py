"""Analytics and exact Monte Carlo for a telegraph process confined to [0, H]
with partially absorbing boundaries."""

from .core import Boundary, ModelParams, RandomSource, SwitchingProb, exp_draw, validate_params
from .errors import (
    AlphaOutOfRange,
    DegenerateRates,
    DomainError,
    IdentityViolation,
    InvalidIndex,
    MaxPhasesExceeded,
    NonPositiveParameter,
    ReversalCapExceeded,
    TelegraphBoxError,
)
from .mgf import (
    RootPair,
    conditional_cycle_means,
    conditional_hit_prob,
    omega_bound,
    omega_of_theta,
    theta_roots,
    transform_from_H,
    transform_from_origin,
    wald_statistic,
)
from .analytics import (
    AbsorptionReport,
    CycleMeans,
    PhaseMatrix,
    TruncatedTimeMeans,
    expected_absorption_time,
    expected_cycles,
    expected_length_L,
    expected_truncated_times,
    matrix_power,
    phase_probabilities,
    q_sum,
)
from .simulate import (
    DualCheck,
    PathRecord,
    PhaseRecord,
    dual_representation_check,
    path_dump_csv,
    simulate_phase,
    simulate_until_absorption,
)
from .montecarlo import (
    MCSummary,
    QuantityRecord,
    ValidationReport,
    estimate,
    validate,
    validation_report_json,
    validation_report_table,
)
from .scaling import ScalingSpec, SweepRow, scaled_params, scaling_sweep, sweep_csv

__all__ = [
    "Boundary",
    "ModelParams",
    "RandomSource",
    "SwitchingProb",
    "exp_draw",
    "validate_params",
    "TelegraphBoxError",
    "NonPositiveParameter",
    "AlphaOutOfRange",
    "DomainError",
    "DegenerateRates",
    "InvalidIndex",
    "MaxPhasesExceeded",
    "IdentityViolation",
    "ReversalCapExceeded",
    "RootPair",
    "omega_bound",
    "omega_of_theta",
    "theta_roots",
    "transform_from_origin",
    "transform_from_H",
    "conditional_hit_prob",
    "conditional_cycle_means",
    "wald_statistic",
    "PhaseMatrix",
    "TruncatedTimeMeans",
    "CycleMeans",
    "AbsorptionReport",
    "phase_probabilities",
    "expected_truncated_times",
    "expected_cycles",
    "matrix_power",
    "q_sum",
    "expected_length_L",
    "expected_absorption_time",
    "PhaseRecord",
    "PathRecord",
    "DualCheck",
    "simulate_phase",
    "simulate_until_absorption",
    "dual_representation_check",
    "path_dump_csv",
    "MCSummary",
    "QuantityRecord",
    "ValidationReport",
    "estimate",
    "validate",
    "validation_report_json",
    "validation_report_table",
    "ScalingSpec",
    "SweepRow",
    "scaled_params",
    "scaling_sweep",
    "sweep_csv",
]

__version__ = "0.1.0"
