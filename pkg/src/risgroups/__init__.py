"""Grouped self-sustainable RIS link simulator.

Closed-form outage and feasibility analysis for a relay-style reflecting
surface whose elements are partitioned into groups, with one group serving
the data link while all groups harvest RF energy, plus a seeded Monte Carlo
engine that validates every closed form.
"""

from .bounds import (
    ChannelSnapshot,
    FeasibleInterval,
    rho_bounds_linear,
    rho_bounds_nonlinear,
    zeta_bounds_linear,
    zeta_bounds_nonlinear,
)
from .channel import (
    CorrelationMatrix,
    DegenerateFitError,
    GammaFit,
    SystemParams,
    build_correlation_matrix,
    composite,
    composite_moments,
    correlate,
    fit_gamma_product,
    gamma_cdf,
    sample_rician_vector,
)
from .energy import (
    EhModel,
    LINEAR_DEFAULT,
    NONLINEAR_DEFAULT,
    PowerBudget,
    harvest,
    harvest_rate,
    required_energy_ps,
    required_energy_ts,
)
from .evt import (
    BisectionError,
    EvtConstants,
    check_gumbel_domain,
    gumbel_cdf,
    kth_limit_cdf,
    normalizing_constants,
    outage_evt,
)
from .selection import (
    EnergyFitError,
    GroupObservation,
    RisMode,
    SelectionStrategy,
    eligible_set,
    fit_energy_distribution,
    kth_best_index,
    kth_best_pdf,
    mean_snr_scale,
    outage_ebgs,
    outage_rgs,
    outage_sbgs,
)
from .sim import (
    OutageCurve,
    OutageEstimate,
    TrialConfig,
    analytic_outage,
    estimate_outage,
    run_trial,
    simulate_block,
    sweep,
)
from .specfun import (
    ConvergenceError,
    Tolerance,
    bessel_i,
    reg_incomplete_beta,
    reg_lower_incomplete_gamma,
    sinc_corr,
)

__version__ = "0.1.0"

__all__ = [
    "BisectionError",
    "ChannelSnapshot",
    "ConvergenceError",
    "CorrelationMatrix",
    "DegenerateFitError",
    "EhModel",
    "EnergyFitError",
    "EvtConstants",
    "FeasibleInterval",
    "GammaFit",
    "GroupObservation",
    "LINEAR_DEFAULT",
    "NONLINEAR_DEFAULT",
    "OutageCurve",
    "OutageEstimate",
    "PowerBudget",
    "RisMode",
    "SelectionStrategy",
    "SystemParams",
    "Tolerance",
    "TrialConfig",
    "analytic_outage",
    "bessel_i",
    "build_correlation_matrix",
    "check_gumbel_domain",
    "composite",
    "composite_moments",
    "correlate",
    "eligible_set",
    "estimate_outage",
    "fit_energy_distribution",
    "fit_gamma_product",
    "gamma_cdf",
    "gumbel_cdf",
    "harvest",
    "harvest_rate",
    "kth_best_index",
    "kth_best_pdf",
    "kth_limit_cdf",
    "mean_snr_scale",
    "normalizing_constants",
    "outage_ebgs",
    "outage_evt",
    "outage_rgs",
    "outage_sbgs",
    "reg_incomplete_beta",
    "reg_lower_incomplete_gamma",
    "required_energy_ps",
    "required_energy_ts",
    "rho_bounds_linear",
    "rho_bounds_nonlinear",
    "run_trial",
    "sample_rician_vector",
    "simulate_block",
    "sinc_corr",
    "sweep",
    "zeta_bounds_linear",
    "zeta_bounds_nonlinear",
]
