import math

import numpy as np
import pytest

from hawkes_renewal import (
    Kernel,
    RenewalWindow,
    WindowSample,
    canceling_kernel,
    clt_normality_check,
    clt_sigma2,
    decompose,
    delayed_kernel,
    ks_exponential,
    ks_two_sample,
    lln_estimate,
    oracle_cancel,
    oracle_delayed,
    poisson_gof,
    simulate,
)


def _manual_sample(pairs, length=1.0):
    windows = [
        RenewalWindow(tau=t, w=w, first_offset=t - length, relative_times=np.array([t - length]))
        for t, w in pairs
    ]
    return WindowSample(
        windows=windows,
        window_length=length,
        horizon=sum(t for t, _ in pairs),
        discarded_tail_count=0,
    )


def test_degenerate_sample():
    sample = _manual_sample([(2.0, 3)] * 100)
    est = lln_estimate(sample)
    assert est.m_hat.value == 1.5
    assert est.m_hat.se == 0.0
    assert est.sigma2_hat == 0.0
    assert clt_sigma2(sample) == 0.0


def test_needs_two_windows():
    with pytest.raises(ValueError):
        lln_estimate(_manual_sample([(2.0, 1)]))
    with pytest.raises(ValueError):
        clt_sigma2(_manual_sample([(2.0, 1)]))


def test_ratio_consistency():
    rng = np.random.default_rng(2)
    pairs = [(float(t), int(w)) for t, w in zip(rng.uniform(1, 3, 50), rng.integers(1, 6, 50))]
    sample = _manual_sample(pairs)
    est = lln_estimate(sample)
    total_w = sum(w for _, w in pairs)
    total_tau = sum(t for t, _ in pairs)
    assert est.m_hat.value == total_w / sample.tau.sum()
    assert est.m_hat.value == pytest.approx(total_w / total_tau, rel=1e-14)
    # structural invariants of the estimate record
    assert est.m_hat.value == est.mean_w.value / est.mean_tau.value
    assert est.sigma2_hat >= 0.0
    assert est.var_tau.value >= 0.0 and est.var_w.value >= 0.0
    assert abs(est.cov_tau_w.value) <= math.sqrt(est.var_tau.value * est.var_w.value) + 1e-15


def test_scale_equivariance():
    rng = np.random.default_rng(3)
    pairs = [(float(t), int(w)) for t, w in zip(rng.uniform(1, 3, 40), rng.integers(1, 6, 40))]
    c = 2.5
    est = lln_estimate(_manual_sample(pairs))
    scaled = lln_estimate(_manual_sample([(c * t, w) for t, w in pairs]))
    assert scaled.m_hat.value == pytest.approx(est.m_hat.value / c, rel=1e-14)
    assert scaled.mean_tau.value == pytest.approx(c * est.mean_tau.value, rel=1e-14)


def test_sigma2_reorder_invariance():
    rng = np.random.default_rng(4)
    pairs = [(float(t), int(w)) for t, w in zip(rng.uniform(1, 3, 60), rng.integers(1, 6, 60))]
    shuffled = list(pairs)
    rng.shuffle(shuffled)
    assert clt_sigma2(_manual_sample(pairs)) == pytest.approx(
        clt_sigma2(_manual_sample(shuffled)), rel=1e-12
    )


@pytest.fixture(scope="module")
def canceling_sample():
    lam, width = 2.0, 1.0
    stream = simulate(canceling_kernel(lam, width), lam, 3.2e4, seed=31)
    return decompose(stream, width)


@pytest.fixture(scope="module")
def delayed_sample():
    record = oracle_delayed(1.0, 0.5, 1.0)
    stream = simulate(delayed_kernel(1.0, 0.5, 1.0), 1.0, 2e4 * record.mean_tau * 1.05, seed=32)
    return decompose(stream, 1.5)


def test_canceling_estimates_match_oracle(canceling_sample):
    record = oracle_cancel(2.0, 1.0)
    est = lln_estimate(canceling_sample)
    assert abs(est.m_hat.value - record.m) < 3.0 * est.m_hat.se
    assert abs(est.mean_tau.value - record.mean_tau) < 3.0 * est.mean_tau.se
    assert est.sigma2_hat == pytest.approx(record.sigma2, rel=0.15)
    assert est.var_w.value == 0.0


def test_delayed_estimates_match_oracle(delayed_sample):
    record = oracle_delayed(1.0, 0.5, 1.0)
    est = lln_estimate(delayed_sample)
    assert abs(est.m_hat.value - record.m) < 3.0 * est.m_hat.se
    assert abs(est.mean_w.value - record.mean_w) < 3.0 * est.mean_w.se
    assert abs(est.var_tau.value - record.var_tau) < 3.0 * est.var_tau.se
    assert abs(est.cov_tau_w.value - record.cov_tau_w) < 3.0 * est.cov_tau_w.se
    assert est.sigma2_hat == pytest.approx(record.sigma2, rel=0.1)


def test_delayed_atom_fraction(delayed_sample):
    # windows with a single jump have spread exactly zero: the mixed law's
    # atom, with mass exp(-lam * lag)
    record = oracle_delayed(1.0, 0.5, 1.0)
    w = delayed_sample.w
    frac = float(np.mean(w == 1))
    se = math.sqrt(record.atom_mass * (1.0 - record.atom_mass) / w.size)
    assert abs(frac - record.atom_mass) < 3.0 * se
    # single-jump windows close exactly lag + width after their only jump
    single = w == 1
    span = delayed_sample.tau[single] - delayed_sample.offsets[single]
    assert np.allclose(span, 1.5, rtol=0, atol=1e-9)


def test_delayed_w_poisson(delayed_sample):
    _, ok = poisson_gof(delayed_sample.w - 1, 0.5)
    assert ok


def test_poisson_sigma2_cross_oracle():
    # decompose a unit-rate Poisson stream with an artificial window; the
    # CLT variance must agree with a direct Monte Carlo of Var(N_t)/t
    t_mc = 1e4
    sample = decompose(simulate(Kernel([]), 1.0, 4e4, seed=33), 1.0)
    sigma2 = clt_sigma2(sample)
    rng = np.random.default_rng(34)
    direct = rng.poisson(t_mc, size=4000) / math.sqrt(t_mc)
    assert sigma2 == pytest.approx(float(direct.var(ddof=1)), rel=0.1)


def test_ks_exponential_null_and_misfit():
    rng = np.random.default_rng(5)
    draws = rng.exponential(0.5, 100_000)  # rate 2
    stat, ok = ks_exponential(draws, 2.0)
    assert ok and stat < 0.01
    _, ok = ks_exponential(rng.exponential(1.0, 100_000), 2.0)
    assert not ok
    with pytest.raises(ValueError):
        ks_exponential([], 1.0)
    with pytest.raises(ValueError):
        ks_exponential([1.0], 0.0)
    with pytest.raises(ValueError):
        ks_exponential([-1.0, 1.0], 1.0)


def test_ks_two_sample():
    rng = np.random.default_rng(6)
    _, ok = ks_two_sample(rng.normal(size=5000), rng.normal(size=5000))
    assert ok
    _, ok = ks_two_sample(rng.normal(size=5000), rng.normal(1.0, 1.0, size=5000))
    assert not ok


def test_poisson_gof_null_and_misfit():
    rng = np.random.default_rng(7)
    _, ok = poisson_gof(rng.poisson(0.5, 100_000), 0.5)
    assert ok
    _, ok = poisson_gof(np.zeros(1000, dtype=int), 2.0)
    assert not ok
    with pytest.raises(ValueError):
        poisson_gof([], 1.0)
    with pytest.raises(ValueError):
        poisson_gof([0, 1], 0.0)
    with pytest.raises(ValueError):
        poisson_gof([-1, 2], 1.0)


def test_clt_normality_poisson_oracle():
    # n = 600 replicas: the 99th percentile of the null KS statistic is
    # about 0.08 (integer lattice included)
    d = clt_normality_check(Kernel([]), 1.0, 2000.0, 600, seed=35, m=1.0, sigma2=1.0)
    assert d < 0.085


def test_clt_normality_self_calibrating():
    # without oracle values the check calibrates (m, sigma2) from a long run;
    # the KS amplifies calibration error by sqrt(t)/sigma, so only a loose
    # band is meaningful at this scale
    kernel = canceling_kernel(2.0, 1.0)
    d_cal = clt_normality_check(kernel, 2.0, 400.0, 600, seed=36)
    assert 0.0 < d_cal < 0.15


def test_clt_normality_preconditions():
    with pytest.raises(ValueError):
        clt_normality_check(Kernel([]), 1.0, 100.0, 100, seed=0)
    with pytest.raises(ValueError):
        clt_normality_check(Kernel([]), 1.0, -1.0, 600, seed=0)
