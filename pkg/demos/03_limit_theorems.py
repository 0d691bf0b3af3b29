"""Long-run rate and fluctuation law for the lagged-inhibition case.

The lagged kernel admits closed-form window moments, so both the LLN
limit and the CLT variance can be compared against exact values.
"""

import math

import numpy as np
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from scipy import stats

from hawkes_renewal import (
    decompose,
    delayed_kernel,
    lln_estimate,
    oracle_delayed,
    simulate,
)

LAM, LAG, WIDTH = 1.0, 0.5, 1.0
kernel = delayed_kernel(LAM, LAG, WIDTH)
record = oracle_delayed(LAM, LAG, WIDTH)

stream = simulate(kernel, LAM, 5e4, seed=3)
est = lln_estimate(decompose(stream, LAG + WIDTH))
print(f"m_hat = {est.m_hat.value:.6f} +- {est.m_hat.se:.6f}   (exact m = {record.m:.6f})")
print(f"sigma2_hat = {est.sigma2_hat:.5f}                (exact = {record.sigma2:.5f})")

# running frequency along one path
ts = np.linspace(50.0, stream.horizon, 400)
running = np.searchsorted(stream.times, ts, side="right") / ts

# replica fluctuations at a fixed horizon
t_clt, n_rep = 400.0, 1500
counts = np.array([len(simulate(kernel, LAM, t_clt, 4, i)) for i in range(n_rep)])
values = math.sqrt(t_clt) * (counts / t_clt - record.m)
sigma = math.sqrt(record.sigma2)
ks = stats.kstest(values, stats.norm(scale=sigma).cdf).statistic
print(f"KS distance of sqrt(t)(N_t/t - m) to Normal(0, {record.sigma2:.4f}): {ks:.4f}")

fig, axes = plt.subplots(1, 2, figsize=(11, 4))
axes[0].plot(ts, running, lw=1.0)
axes[0].axhline(record.m, color="k", ls="--", lw=1.0, label="exact limit")
axes[0].set_xlabel("time")
axes[0].set_ylabel("events per unit time")
axes[0].legend()
xs = np.linspace(-4 * sigma, 4 * sigma, 300)
axes[1].hist(values, bins=45, density=True, alpha=0.6)
axes[1].plot(xs, stats.norm(scale=sigma).pdf(xs), "k-", lw=1.2)
axes[1].set_xlabel("scaled fluctuation")
fig.tight_layout()
fig.savefig("demos_limits.png", dpi=120)
print("wrote demos_limits.png")
