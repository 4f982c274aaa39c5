"""Deployment-comparison toolkit for received RF power ("pollution") under
regular cellular coverage layouts.

Closed-form comparison ratios between paired deployments, validated by
brute-force geometric and lattice-field oracles.
"""

from .comparison import (
    CLOSED_FORM_RTOL,
    ClosedFormCheck,
    ComparisonResult,
    DeploymentPair,
    Metric,
    closed_form_delta,
    delta_avg,
    delta_emitted,
    delta_fixed,
    evaluate_pair,
    verify_closed_forms,
)
from .errors import (
    BetaOutOfRangeError,
    BoundNotValidError,
    NoTessellationError,
    PlausibilityWarning,
    RfpError,
    ScenarioError,
    ScenarioSchemaError,
    ScenarioSyntaxError,
    ScenarioValidationError,
    SingularDistanceError,
    UnsupportedParameterChangeError,
)
from .geometry import (
    Layout,
    LayoutKind,
    TESSELLATING_KINDS,
    cell_contains,
    estimate_alpha_monte_carlo,
    layout_alpha,
    layout_neighbor_count,
    layout_zeta,
)
from .gridsim import (
    Region,
    RfpField,
    SiteLattice,
    UpperBoundViolation,
    compute_field,
    default_region,
    empirical_alpha,
    export_field_csv,
    generate_sites,
    verify_upper_bound,
)
from .propagation import (
    Deployment,
    GAMMA_PLAUSIBLE_RANGE,
    NeighborMode,
    emitted_power,
    received_power,
    rfp_at_pixel,
    rfp_avg,
    rfp_fixed,
    rfp_upper_bound,
)
from .scenarios import (
    DEFAULT_BETA1,
    Scenario,
    Violation,
    builtin_scenario,
    builtin_scenario_ids,
    pair_for,
    parse_scenario_file,
    scenario_to_dict,
    serialize_scenario,
    sweep_beta,
    validate_scenario,
)
from .selfcheck import CheckResult, run_validation

__version__ = "0.1.0"

__all__ = [
    "BetaOutOfRangeError",
    "BoundNotValidError",
    "CheckResult",
    "CLOSED_FORM_RTOL",
    "ClosedFormCheck",
    "ComparisonResult",
    "DEFAULT_BETA1",
    "Deployment",
    "DeploymentPair",
    "GAMMA_PLAUSIBLE_RANGE",
    "Layout",
    "LayoutKind",
    "Metric",
    "NeighborMode",
    "NoTessellationError",
    "PlausibilityWarning",
    "Region",
    "RfpError",
    "RfpField",
    "Scenario",
    "ScenarioError",
    "ScenarioSchemaError",
    "ScenarioSyntaxError",
    "ScenarioValidationError",
    "SingularDistanceError",
    "SiteLattice",
    "TESSELLATING_KINDS",
    "UnsupportedParameterChangeError",
    "UpperBoundViolation",
    "Violation",
    "builtin_scenario",
    "builtin_scenario_ids",
    "cell_contains",
    "closed_form_delta",
    "compute_field",
    "default_region",
    "delta_avg",
    "delta_emitted",
    "delta_fixed",
    "empirical_alpha",
    "emitted_power",
    "estimate_alpha_monte_carlo",
    "evaluate_pair",
    "export_field_csv",
    "generate_sites",
    "layout_alpha",
    "layout_neighbor_count",
    "layout_zeta",
    "pair_for",
    "parse_scenario_file",
    "received_power",
    "rfp_at_pixel",
    "rfp_avg",
    "rfp_fixed",
    "rfp_upper_bound",
    "run_validation",
    "scenario_to_dict",
    "serialize_scenario",
    "sweep_beta",
    "validate_scenario",
    "verify_closed_forms",
    "verify_upper_bound",
]
