"""Point estimates for the long-run rate and CLT variance, plus GOF utilities."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import special, stats

from .engine import simulate
from .renewal import WindowSample, decompose


class Moment(NamedTuple):
    value: float
    se: float


@dataclass(frozen=True)
class LimitEstimates:
    """Sample moments of (tau, w) and the derived limit-theorem quantities.

    ``m_hat`` is the ratio-of-means rate estimate with a delta-method
    standard error; ``sigma2_hat`` is the plug-in CLT variance.
    """

    mean_tau: Moment
    mean_w: Moment
    var_tau: Moment
    var_w: Moment
    cov_tau_w: Moment
    m_hat: Moment
    sigma2_hat: float
    n_windows: int


def _var_se(centered: np.ndarray, var: float) -> float:
    n = centered.size
    m4 = float(np.mean(centered**4))
    return math.sqrt(max(m4 - var * var, 0.0) / n)


def lln_estimate(sample: WindowSample) -> LimitEstimates:
    """Unbiased moments of (tau, w) and the rate estimate w_bar / tau_bar."""
    n = sample.n_windows
    if n < 2:
        raise ValueError("need at least 2 completed windows")
    tau = sample.tau
    w = sample.w.astype(float)
    tau_bar = float(tau.mean())
    w_bar = float(w.mean())
    dt = tau - tau_bar
    dw = w - w_bar
    var_tau = float(np.dot(dt, dt) / (n - 1))
    var_w = float(np.dot(dw, dw) / (n - 1))
    cov = float(np.dot(dt, dw) / (n - 1))
    m_hat = w_bar / tau_bar
    # delta method for the ratio of means
    var_ratio = (var_w - 2.0 * m_hat * cov + m_hat * m_hat * var_tau) / (n * tau_bar**2)
    cov_se = math.sqrt(max(float(np.mean((dt * dw) ** 2)) - cov * cov, 0.0) / n)
    return LimitEstimates(
        mean_tau=Moment(tau_bar, math.sqrt(var_tau / n)),
        mean_w=Moment(w_bar, math.sqrt(var_w / n)),
        var_tau=Moment(var_tau, _var_se(dt, var_tau)),
        var_w=Moment(var_w, _var_se(dw, var_w)),
        cov_tau_w=Moment(cov, cov_se),
        m_hat=Moment(m_hat, math.sqrt(max(var_ratio, 0.0))),
        sigma2_hat=clt_sigma2(sample),
        n_windows=n,
    )


def clt_sigma2(sample: WindowSample) -> float:
    """Plug-in CLT variance Var(w - tau * m_hat) / mean(tau)."""
    n = sample.n_windows
    if n < 2:
        raise ValueError("need at least 2 completed windows")
    tau = sample.tau
    w = sample.w.astype(float)
    m_hat = w.mean() / tau.mean()
    resid = w - m_hat * tau  # has exact zero mean by construction of m_hat
    return float(np.dot(resid, resid) / (n - 1) / tau.mean())


def clt_normality_check(
    kernel,
    lam: float,
    t: float,
    n_replicas: int,
    seed: int,
    m: float | None = None,
    sigma2: float | None = None,
) -> float:
    """KS distance of sqrt(t) * (N_t / t - m) to a centered normal.

    When ``m``/``sigma2`` are not supplied they are estimated from one long
    calibration run decomposed into renewal windows; pass oracle values to
    test convergence against a known law.
    """
    if n_replicas < 500:
        raise ValueError("need n_replicas >= 500")
    if t <= 0.0:
        raise ValueError("t must be > 0")
    if m is None or sigma2 is None:
        window_len = kernel.support_end if kernel.support_end > 0.0 else 1.0
        cal_horizon = max(50.0 * t, 2e4 / lam)
        cal = decompose(simulate(kernel, lam, cal_horizon, seed, 2**32), window_len)
        if cal.n_windows < 1000:
            raise ValueError("calibration run produced too few windows; raise t or lam")
        est = lln_estimate(cal)
        if t < 10.0 * est.mean_tau.value:
            raise ValueError("t too short: fewer than 10 expected windows")
        m = est.m_hat.value if m is None else m
        sigma2 = est.sigma2_hat if sigma2 is None else sigma2
    counts = np.empty(n_replicas)
    for i in range(n_replicas):
        counts[i] = len(simulate(kernel, lam, t, seed, i))
    values = math.sqrt(t) * (counts / t - m)
    return float(stats.kstest(values, stats.norm(scale=math.sqrt(sigma2)).cdf).statistic)


def _ks_statistic(sorted_values: np.ndarray, cdf_values: np.ndarray) -> float:
    n = sorted_values.size
    grid = np.arange(1, n + 1) / n
    d_plus = float(np.max(grid - cdf_values))
    d_minus = float(np.max(cdf_values - (np.arange(n) / n)))
    return max(d_plus, d_minus)


def ks_exponential(values, rate: float, significance: float = 0.01):
    """One-sample KS test against Exp(rate) with the asymptotic null law.

    Returns ``(statistic, passed)``.
    """
    v = np.sort(np.asarray(values, dtype=float))
    if v.size == 0:
        raise ValueError("empty sample")
    if rate <= 0.0:
        raise ValueError("rate must be > 0")
    if v[0] <= 0.0:
        raise ValueError("values must be positive")
    d = _ks_statistic(v, 1.0 - np.exp(-rate * v))
    p = float(special.kolmogorov(math.sqrt(v.size) * d))
    return d, p > significance


def ks_two_sample(x, y, significance: float = 0.01):
    """Two-sample KS test (asymptotic); returns ``(statistic, passed)``."""
    res = stats.ks_2samp(np.asarray(x, float), np.asarray(y, float), method="asymp")
    return float(res.statistic), bool(res.pvalue > significance)


def poisson_gof(counts, mean: float, significance: float = 0.01):
    """Chi-square fit of integer counts to Poisson(mean), right tail pooled.

    Bins are pooled from the right until every expected cell count is at
    least 5.  Returns ``(statistic, passed)``.
    """
    c = np.asarray(counts, dtype=int)
    if c.size == 0:
        raise ValueError("empty sample")
    if mean <= 0.0:
        raise ValueError("mean must be > 0")
    if np.any(c < 0):
        raise ValueError("counts must be nonnegative")
    n = c.size
    kmax = int(c.max())
    # cells 0..kmax plus an explicit overflow cell for k > kmax; adjacent
    # cells are grouped until each group's expected mass reaches 5, with the
    # remainder folded into the right tail
    exp_cells = np.append(n * stats.poisson.pmf(np.arange(kmax + 1), mean),
                          n * float(stats.poisson.sf(kmax, mean)))
    obs_cells = np.append(np.bincount(c, minlength=kmax + 1).astype(float), 0.0)
    exp_bins, obs_bins = [], []
    acc_e = acc_o = 0.0
    for e, o in zip(exp_cells, obs_cells):
        acc_e += e
        acc_o += o
        if acc_e >= 5.0:
            exp_bins.append(acc_e)
            obs_bins.append(acc_o)
            acc_e = acc_o = 0.0
    if acc_e > 0.0 and exp_bins:
        exp_bins[-1] += acc_e
        obs_bins[-1] += acc_o
    if len(exp_bins) < 2:
        raise ValueError("sample too small to form two cells with expected count >= 5")
    exp_arr = np.array(exp_bins)
    obs_arr = np.array(obs_bins)
    chi2 = float(np.sum((obs_arr - exp_arr) ** 2 / exp_arr))
    dof = exp_arr.size - 1
    p = float(stats.chi2.sf(chi2, dof))
    return chi2, p > significance
