"""Simulation and limit-theorem verification for Hawkes processes with
signed, compactly supported reproduction kernels.

The package covers exact thinning simulation with pathwise couplings,
decomposition into i.i.d. regeneration windows, estimators for the
long-run rate and CLT variance, exponential-moment bounds, and
large-deviation rate functions computed against closed-form oracles.
"""

__version__ = "0.1.0"

from .kernel import (
    Kernel,
    KernelError,
    canceling_kernel,
    delayed_kernel,
    make_kernel,
    positive_envelope,
    positive_part,
)
from .engine import (
    DominationError,
    DriverState,
    EventStream,
    RunawayError,
    SimulationError,
    intensity_at,
    simulate,
    simulate_coupled,
)
from .renewal import RenewalWindow, WindowSample, decompose, first_offsets, residual_trace
from .estimators import (
    LimitEstimates,
    Moment,
    clt_normality_check,
    clt_sigma2,
    ks_exponential,
    ks_two_sample,
    lln_estimate,
    poisson_gof,
)
from .rates import (
    CancelingLogMgf,
    CramerValue,
    DelayedLogMgf,
    DeviationBounds,
    EmpiricalLogMgf,
    LogMgfSurface,
    OracleRecord,
    RateCurve,
    RatePoint,
    alpha0,
    analytic_cancel_log_mgf,
    analytic_delayed_log_mgf,
    borel_mgf,
    cramer_transform,
    deviation_bounds,
    empirical_log_mgf,
    oracle_cancel,
    oracle_delayed,
    oracle_linear,
    rate_J,
    rate_curve,
    theta0,
)

__all__ = [
    "Kernel",
    "KernelError",
    "make_kernel",
    "positive_part",
    "positive_envelope",
    "canceling_kernel",
    "delayed_kernel",
    "EventStream",
    "DriverState",
    "SimulationError",
    "RunawayError",
    "DominationError",
    "simulate",
    "simulate_coupled",
    "intensity_at",
    "RenewalWindow",
    "WindowSample",
    "decompose",
    "first_offsets",
    "residual_trace",
    "LimitEstimates",
    "Moment",
    "lln_estimate",
    "clt_sigma2",
    "clt_normality_check",
    "ks_exponential",
    "ks_two_sample",
    "poisson_gof",
    "LogMgfSurface",
    "CancelingLogMgf",
    "DelayedLogMgf",
    "EmpiricalLogMgf",
    "CramerValue",
    "RatePoint",
    "RateCurve",
    "OracleRecord",
    "DeviationBounds",
    "alpha0",
    "borel_mgf",
    "theta0",
    "analytic_cancel_log_mgf",
    "analytic_delayed_log_mgf",
    "empirical_log_mgf",
    "cramer_transform",
    "rate_J",
    "rate_curve",
    "oracle_cancel",
    "oracle_delayed",
    "oracle_linear",
    "deviation_bounds",
]
