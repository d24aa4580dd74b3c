"""Two-tier femtocell downlink analysis.

Closed-form SIR distributions per geographic zone, per-tier throughput for
closed/open access, optimal shared-access time-slot allocation, and a seeded
Monte Carlo simulator serving as the correctness oracle.
"""

from ._core import (
    Access,
    Backend,
    ConfigError,
    DerivedConstants,
    EmpiricalCdf,
    McConfig,
    ModelValidityError,
    SharedAccessResult,
    SirCdf,
    SystemParams,
    TierThroughput,
    UserCounts,
    Zone,
    ZoneUndefinedError,
    classify_zone,
    coverage_radius,
    default_gamma_grid,
    derive_constants,
    empirical_cdf,
    expint_ei,
    grid_search_eta,
    hyp2f1_neg,
    load_params,
    load_params_file,
    network_throughput,
    optimal_eta,
    run_validation,
    tier_throughput_closed,
    tier_throughput_open,
    user_counts,
    zone_throughput,
)

__all__ = [
    "Access",
    "Backend",
    "ConfigError",
    "DerivedConstants",
    "EmpiricalCdf",
    "McConfig",
    "ModelValidityError",
    "SharedAccessResult",
    "SirCdf",
    "SystemParams",
    "TierThroughput",
    "UserCounts",
    "Zone",
    "ZoneUndefinedError",
    "classify_zone",
    "coverage_radius",
    "default_gamma_grid",
    "derive_constants",
    "empirical_cdf",
    "expint_ei",
    "grid_search_eta",
    "hyp2f1_neg",
    "load_params",
    "load_params_file",
    "network_throughput",
    "optimal_eta",
    "run_validation",
    "tier_throughput_closed",
    "tier_throughput_open",
    "user_counts",
    "zone_throughput",
]
