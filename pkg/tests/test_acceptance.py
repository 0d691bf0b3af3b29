"""Acceptance suite: one test per criterion, each printing a pass line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Expensive window
samples are built once and shared by later criteria; their build time is
charged to the first criterion that uses them.
"""

import json
import math
import time

import numpy as np
from scipy import stats

from hawkes_renewal import (
    Kernel,
    alpha0,
    analytic_cancel_log_mgf,
    borel_mgf,
    canceling_kernel,
    clt_normality_check,
    decompose,
    delayed_kernel,
    empirical_log_mgf,
    first_offsets,
    ks_exponential,
    ks_two_sample,
    lln_estimate,
    oracle_cancel,
    oracle_delayed,
    oracle_linear,
    poisson_gof,
    rate_J,
    simulate,
    simulate_coupled,
    theta0,
)
from hawkes_renewal.cli import main as cli_main

_CACHE = {}


def _canceling_sample():
    if "cancel" not in _CACHE:
        lam, width = 2.0, 1.0
        stream = simulate(canceling_kernel(lam, width), lam, 1.56e5, seed=2001)
        _CACHE["cancel"] = decompose(stream, width)
    return _CACHE["cancel"]


def _delayed_sample():
    if "delayed" not in _CACHE:
        lam, lag, width = 1.0, 0.5, 1.0
        horizon = 1e5 * oracle_delayed(lam, lag, width).mean_tau * 1.05 + 100.0
        stream = simulate(delayed_kernel(lam, lag, width), lam, horizon, seed=2003)
        _CACHE["delayed"] = decompose(stream, lag + width)
    return _CACHE["delayed"]


def test_criterion_1_poisson_baseline():
    t0 = time.perf_counter()
    horizon = 1e5
    stream = simulate(Kernel([]), 1.0, horizon, seed=1001)
    rate = len(stream) / horizon
    assert 0.99 <= rate <= 1.01
    gaps = np.diff(stream.times, prepend=0.0)
    stat, ok = ks_exponential(gaps, 1.0, significance=0.01)
    assert ok
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    print(f"criterion 1 (poisson baseline): rate={rate:.5f} ks={stat:.5f} "
          f"[{elapsed:.2f}s < 1s] PASS")


def test_criterion_2_canceling_case():
    t0 = time.perf_counter()
    sample = _canceling_sample()
    assert sample.n_windows >= 100_000
    assert np.all(sample.w == 1)
    stat, ok = ks_exponential(sample.tau - 1.0, 2.0, significance=0.01)
    assert ok
    est = lln_estimate(sample)
    oracle = oracle_cancel(2.0, 1.0)
    assert abs(est.m_hat.value - oracle.m) <= 3.0 * est.m_hat.se
    assert abs(est.sigma2_hat - oracle.sigma2) <= 0.15 * oracle.sigma2
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    print(f"criterion 2 (canceling case): n={sample.n_windows} m_hat={est.m_hat.value:.5f} "
          f"sigma2={est.sigma2_hat:.5f} ks={stat:.5f} [{elapsed:.2f}s < 10s] PASS")


def test_criterion_3_delayed_case():
    t0 = time.perf_counter()
    sample = _delayed_sample()
    assert sample.n_windows >= 100_000
    oracle = oracle_delayed(1.0, 0.5, 1.0)
    chi2, ok = poisson_gof(sample.w - 1, 0.5, significance=0.01)
    assert ok
    est = lln_estimate(sample)
    assert abs(est.m_hat.value - oracle.m) <= 3.0 * est.m_hat.se
    frac = float(np.mean(sample.w == 1))
    se = math.sqrt(oracle.atom_mass * (1.0 - oracle.atom_mass) / sample.n_windows)
    assert abs(frac - oracle.atom_mass) <= 3.0 * se
    elapsed = time.perf_counter() - t0
    assert elapsed < 10.0
    print(f"criterion 3 (delayed case): n={sample.n_windows} chi2={chi2:.2f} "
          f"m_hat={est.m_hat.value:.6f} atom={frac:.5f} [{elapsed:.2f}s < 10s] PASS")


def test_criterion_4_couplings():
    t0 = time.perf_counter()
    lam, horizon = 1.0, 100.0
    kernel = Kernel([(0, 1, 0.5), (1, 2, -3)])
    plus = kernel.positive_part()
    minorant = canceling_kernel(lam, kernel.support_end)
    axis = np.linspace(0.0, horizon, 15)
    pairs = [(s, t) for s in axis for t in axis if s < t][:100]
    interval_bad = cumulative_bad = 0
    for seed in range(1000):
        lower, upper = simulate_coupled([kernel, plus], lam, horizon, seed)
        for s, t in pairs:
            if lower.count(s, t) > upper.count(s, t):
                interval_bad += 1
        signed, minor = simulate_coupled([kernel, minorant], lam, horizon, seed)
        for t in minor.times:
            if signed.count(0.0, t) < minor.count(0.0, t):
                cumulative_bad += 1
    assert interval_bad == 0
    assert cumulative_bad == 0
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    print(f"criterion 4 (couplings): 1000 seeds, interval violations={interval_bad}, "
          f"cumulative violations={cumulative_bad} [{elapsed:.2f}s < 30s] PASS")


def test_criterion_5_linear_positive_case():
    t0 = time.perf_counter()
    kernel = Kernel([(0.0, 1.0, 0.5)])
    oracle = oracle_linear(1.0, 0.5)
    est = lln_estimate(decompose(simulate(kernel, 1.0, 1e5, seed=1005), 1.0))
    assert abs(est.m_hat.value - oracle.m) <= 0.02 * oracle.m
    ks = clt_normality_check(kernel, 1.0, 500.0, 2000, seed=1006,
                             m=oracle.m, sigma2=oracle.sigma2)
    assert ks < 0.06
    elapsed = time.perf_counter() - t0
    assert elapsed < 300.0
    print(f"criterion 5 (linear case): m_hat={est.m_hat.value:.4f} (target 2 +-2%) "
          f"clt_ks={ks:.4f} < 0.06 [{elapsed:.1f}s < 300s] PASS")


def test_criterion_6_renewal_structure():
    t0 = time.perf_counter()
    sample = _delayed_sample()
    n = sample.n_windows
    stat_off, ok = ks_exponential(first_offsets(sample), 1.0, significance=0.01)
    assert ok
    bound = 3.0 / math.sqrt(n)
    tau, w = sample.tau, sample.w.astype(float)
    r_tau = float(np.corrcoef(tau[:-1], tau[1:])[0, 1])
    r_w = float(np.corrcoef(w[:-1], w[1:])[0, 1])
    assert abs(r_tau) <= bound
    assert abs(r_w) <= bound
    half = n // 2
    stat_half, ok_half = ks_two_sample(tau[:half], tau[half:], significance=0.01)
    assert ok_half
    elapsed = time.perf_counter() - t0
    print(f"criterion 6 (renewal structure): offsets_ks={stat_off:.5f} "
          f"lag1(tau)={r_tau:+.5f} lag1(w)={r_w:+.5f} (bound {bound:.5f}) "
          f"half_ks={stat_half:.5f} [{elapsed:.2f}s] PASS")


def test_criterion_7_rate_function_numerics():
    t0 = time.perf_counter()
    surface = analytic_cancel_log_mgf(2.0, 1.0)
    oracle = oracle_cancel(2.0, 1.0)
    worst = 0.0
    for z in np.arange(0.1, 0.95, 0.1):
        point = rate_J(surface, float(z))
        worst = max(worst, abs(point.value - oracle.rate(float(z))))
    assert worst < 1e-6
    at_mean = rate_J(surface, oracle.m).value
    assert at_mean < 1e-6
    empirical = empirical_log_mgf(_canceling_sample())
    rel_errs = []
    for z in (0.5, 0.75):
        point = rate_J(empirical, z)
        assert not point.truncated
        rel_errs.append(abs(point.value - oracle.rate(z)) / oracle.rate(z))
    assert max(rel_errs) < 0.10
    elapsed = time.perf_counter() - t0
    assert elapsed < 60.0
    print(f"criterion 7 (rate numerics): analytic max|err|={worst:.2e} J(m)={at_mean:.2e} "
          f"empirical rel err={max(rel_errs):.3f} < 0.10 [{elapsed:.2f}s < 60s] PASS")


def test_criterion_8_tail_exponent_sanity():
    t0 = time.perf_counter()
    t_hor, level, n = 20.0, 1.5, 1_000_000
    threshold = int(math.ceil(level * t_hor))  # N >= 30
    hits = 0
    empty = Kernel([])
    for i in range(n):
        if len(simulate(empty, 1.0, t_hor, 1008, i)) >= threshold:
            hits += 1
    p_hat = hits / n
    p_exact = float(stats.poisson.sf(threshold - 1, t_hor))
    se = math.sqrt(p_exact * (1.0 - p_exact) / n)
    assert abs(p_hat - p_exact) <= 3.0 * se
    mc_exp = -math.log(p_hat) / t_hor
    exact_exp = -math.log(p_exact) / t_hor
    j_limit = oracle_cancel(1.0, 0.0).rate(level)
    elapsed = time.perf_counter() - t0
    print(f"criterion 8 (tail exponent): p_hat={p_hat:.5f} p_exact={p_exact:.5f} "
          f"(within 3se={3*se:.5f}); exponents: mc={mc_exp:.5f} exact={exact_exp:.5f} "
          f"J({level})={j_limit:.6f}, finite-t gap={exact_exp - j_limit:+.5f} "
          f"(reported, not asserted) [{elapsed:.1f}s] PASS")


def test_criterion_9_moment_bound_suite():
    t0 = time.perf_counter()
    k_half = Kernel([(0, 1, 0.5)])
    assert f"{alpha0(k_half, 10.0):.6f}" == "0.193147"
    assert alpha0(canceling_kernel(2.0, 1.0), 2.0) == 2.0
    k_inhib = Kernel([(0, 1, -0.7)])
    assert f"{theta0(k_inhib, 2.0):.6f}" == "0.145413"
    assert math.isinf(theta0(canceling_kernel(2.0, 1.0), 2.0))
    th = theta0(k_half, 1.0)
    assert 0.0 < th < 0.193148
    assert 1.0 * (borel_mgf(0.5, 2.0 * th) - 1.0) < alpha0(k_half, 1.0)

    # geometric tail bound for pure inhibition, 1e5 windows
    lam = 2.0
    stream = simulate(k_inhib, lam, 3.6e5, seed=1009)
    sample = decompose(stream, 1.0)
    assert sample.n_windows >= 100_000
    w = sample.w
    base = 1.0 - math.exp(-lam * 1.0)
    worst_excess = -math.inf
    for k in range(1, 21):
        p_hat = float(np.mean(w > k))
        ci = math.sqrt(max(p_hat * (1.0 - p_hat), 1e-12) / w.size)
        excess = p_hat - (base**k + 3.0 * ci)
        worst_excess = max(worst_excess, excess)
    assert worst_excess <= 0.0
    elapsed = time.perf_counter() - t0
    print(f"criterion 9 (moment bounds): alpha0/theta0 worked values ok; geometric "
          f"tail excess={worst_excess:.2e} <= 0 on n={sample.n_windows} "
          f"[{elapsed:.2f}s] PASS")


def test_criterion_10_determinism(tmp_path):
    t0 = time.perf_counter()
    outputs = {}
    for degree in (1, 8):
        out_dir = tmp_path / f"par{degree}"
        cfg = {
            "kernel": [[0.0, 1.0, 0.5], [1.0, 2.0, -3.0]],
            "lambda": 1.0,
            "horizon": 2000.0,
            "seed": 77,
            "replicas": 8,
            "parallel": degree,
            "output_dir": str(out_dir),
        }
        path = tmp_path / f"cfg{degree}.json"
        path.write_text(json.dumps(cfg))
        assert cli_main(["--config", str(path), "simulate"]) == 0
        manifest = json.loads((out_dir / "manifest.json").read_text())
        outputs[degree] = {
            name: (out_dir / name).read_bytes()
            for entry in manifest["replicas"]
            for name in entry["files"]
        }
    assert outputs[1].keys() == outputs[8].keys()
    for name in outputs[1]:
        assert outputs[1][name] == outputs[8][name]
    elapsed = time.perf_counter() - t0
    print(f"criterion 10 (determinism): {len(outputs[1])} event files byte-identical "
          f"across parallelism 1 and 8 [{elapsed:.2f}s] PASS")
