"""Exponential-moment bounds, joint log-MGF surfaces, and rate-function numerics.

The central objects are log-MGF surfaces ``K(x, y) = ln E[exp(x*tau + y*w)]``
over the renewal pair, built either analytically for the solvable inhibition
cases or empirically from a window sample.  The rate of the event frequency
is obtained from ``K`` through a two-dimensional concave conjugate and a
scan over the time-scaling parameter.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import gammaln, logsumexp

from .kernel import Kernel
from .renewal import WindowSample

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_SPAN = 2.0e5  # synthetic optimizer box half-width, in units of 1/mean


# ---------------------------------------------------------------------------
# moment bounds


def alpha0(kernel: Kernel, lam: float) -> float:
    """Exponential-moment radius bound for the window duration.

    ``min(lam, (p - ln p - 1) / L)`` with ``p`` the kernel's positive mass;
    the second term is infinite when the kernel has no positive part.
    """
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    p = kernel.pos_l1
    if p == 0.0 or kernel.support_end == 0.0:
        return lam
    return min(lam, (p - math.log(p) - 1.0) / kernel.support_end)


def borel_mgf(nu: float, theta: float, tol: float = 1e-12, max_terms: int = 500_000) -> float:
    """MGF of the total-progeny (Borel) law with parameter ``nu`` at ``theta``.

    Sums ``exp(theta*k) * exp(-k*nu) * (k*nu)**(k-1) / k!`` until the term
    drops below ``tol``; returns ``inf`` when the terms fail to decay
    (``theta`` at or beyond ``nu - ln(nu) - 1``).
    """
    if not 0.0 < nu < 1.0:
        raise ValueError("nu must lie in (0, 1)")
    if tol <= 0.0:
        raise ValueError("tol must be > 0")
    log_nu = math.log(nu)
    total = 0.0
    k0, chunk = 1, 1024
    while k0 <= max_terms:
        k = np.arange(k0, min(k0 + chunk, max_terms + 1), dtype=float)
        log_terms = theta * k - nu * k + (k - 1.0) * (np.log(k) + log_nu) - gammaln(k + 1.0)
        if log_terms.max() > 700.0:
            return math.inf
        terms = np.exp(log_terms)
        total += float(terms.sum())
        # for convergent theta the terms are strictly decreasing in k
        if terms[-1] < tol:
            return total
        k0 += k.size
        chunk = min(chunk * 2, 65536)
    return math.inf


def theta0(kernel: Kernel, lam: float) -> float:
    """Exponential-moment exponent bound for the window jump count.

    Pure inhibition uses the geometric-coupling bound; a kernel that zeroes
    the intensity over its whole support (one jump per window) gets
    ``inf``.  Otherwise the bound is the largest exponent compatible with
    both the progeny-MGF radius and the duration bound, found by bisection.
    """
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    p = kernel.pos_l1
    if p == 0.0:
        if kernel.support_end == 0.0 or kernel.cancels_baseline(lam):
            return math.inf
        return -math.log1p(-math.exp(-lam * kernel.support_end))
    theta_cap = p - math.log(p) - 1.0
    duration_bound = alpha0(kernel, lam)

    def feasible(th: float) -> bool:
        mgf = borel_mgf(p, 2.0 * th)
        return math.isfinite(mgf) and lam * (mgf - 1.0) < duration_bound

    lo, hi = 0.0, theta_cap
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-9 * max(hi, 1e-12):
            break
    return lo


# ---------------------------------------------------------------------------
# log-MGF surfaces


class LogMgfSurface:
    """Evaluator of ``K(x, y) = ln E[exp(x*tau + y*w)]`` with a safe domain.

    ``x_lo``..``y_hi`` are hard caps beyond which values are infinite or
    numerically unreliable; ``w_constant`` is set when the jump count is
    degenerate, which collapses the conjugate to one dimension.
    """

    provenance = "analytic"
    mean_tau = 1.0
    mean_w = 1.0
    x_lo = -math.inf
    x_hi = math.inf
    y_lo = -math.inf
    y_hi = math.inf
    w_constant: float | None = None

    def value(self, x: float, y: float) -> float:
        raise NotImplementedError

    def value_grid(self, xs, ys) -> np.ndarray:
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        return np.array([[self.value(x, y) for y in ys] for x in xs])

    def unreliable(self, x: float, y: float) -> bool:
        return not (self.x_lo <= x <= self.x_hi and self.y_lo <= y <= self.y_hi)


class CancelingLogMgf(LogMgfSurface):
    """Exact surface for full cancellation: tau = width + Exp(lam), w = 1.

    ``width = 0`` gives the bare Poisson renewal pair (tau exponential).
    """

    provenance = "analytic-canceling"

    def __init__(self, lam: float, width: float):
        if lam <= 0.0 or width < 0.0:
            raise ValueError("need lam > 0 and width >= 0")
        self.lam = float(lam)
        self.width = float(width)
        self.mean_tau = width + 1.0 / lam
        self.mean_w = 1.0
        self.w_constant = 1.0
        self.x_hi = float(lam)

    def value(self, x, y):
        if x >= self.lam:
            return math.inf
        return y + x * self.width + math.log(self.lam / (self.lam - x))

    def value_grid(self, xs, ys):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        with np.errstate(divide="ignore", invalid="ignore"):
            part = np.where(xs < self.lam, np.log(self.lam / (self.lam - xs)), np.inf)
        return (part + self.width * xs)[:, None] + ys[None, :]

    def unreliable(self, x, y):
        return x >= self.lam


class DelayedLogMgf(LogMgfSurface):
    """Surface for lagged cancellation, via quadrature over the joint law.

    The pair decomposes as ``tau = lag + width + U + X`` with ``U``
    exponential and independent of ``(X, w)``, where ``X`` is the spread of
    the ``w`` jumps inside the lag interval.  The joint transform of
    ``(X, w)`` has no closed form; conditional on ``w = j + 1`` the factor
    ``int_0^lag exp(x*t) t^(j-1) dt`` is integrated by Gauss-Legendre
    quadrature carried in log space (stable for every power ``j``).  With
    ``nodes`` points the quadrature is exact for powers up to
    ``2*nodes - 1``; the series cap and the safe ``y`` ceiling are tied to
    that limit, and doubling ``nodes`` widens both (resolution test in the
    suite).
    """

    provenance = "analytic-delayed"

    def __init__(self, lam: float, lag: float, width: float, nodes: int = 128):
        if lam <= 0.0 or not 0.0 < lag < width:
            raise ValueError("need lam > 0 and 0 < lag < width")
        self.lam = float(lam)
        self.lag = float(lag)
        self.width = float(width)
        u, wq = np.polynomial.legendre.leggauss(int(nodes))
        t = 0.5 * lag * (u + 1.0)
        self._log_wt = np.log(0.5 * lag * wq)
        self._log_t = np.log(t)
        self._t = t
        self._jmax = 2 * int(nodes) - 8
        self.mean_w = 1.0 + lam * lag
        self.mean_tau = 2.0 * lag + width + math.exp(-lam * lag) / lam
        self.x_hi = float(lam)
        # keep the series peak well under the quadrature-exact power cap
        self.y_hi = math.log(max(self._jmax / 3.0, 8.0) / (lam * lag))
        self.x_lo = -0.1 / float(t[0])

    def _log_powers(self, xs) -> np.ndarray:
        """log of int_0^lag exp(x*t) t^(j-1) dt for j = 1.._jmax, per x."""
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        j_pow = np.arange(self._jmax)[:, None] * self._log_t[None, :]
        out = np.empty((xs.size, self._jmax))
        for i, x in enumerate(xs):
            out[i] = logsumexp(self._log_wt[None, :] + x * self._t[None, :] + j_pow, axis=1)
        return out

    def value_grid(self, xs, ys):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        lam, lag, width = self.lam, self.lag, self.width
        log_i = self._log_powers(xs)  # (nx, jmax)
        j = np.arange(1, self._jmax + 1, dtype=float)
        coeff = ys[:, None] * j[None, :] + (np.log(lam) * j - gammaln(j))[None, :]  # (ny, jmax)
        series = logsumexp(log_i[:, None, :] + coeff[None, :, :], axis=2)  # (nx, ny)
        tail = np.logaddexp(0.0, series)
        with np.errstate(divide="ignore", invalid="ignore"):
            pole = np.where(xs < lam, np.log(lam / (lam - xs)), np.inf)
        out = (xs * (lag + width) + pole)[:, None] + ys[None, :] - lam * lag + tail
        bad = (xs[:, None] >= lam) | (xs[:, None] < self.x_lo) | (ys[None, :] > self.y_hi)
        out[bad] = math.inf
        return out

    def value(self, x, y):
        return float(self.value_grid([x], [y])[0, 0])

    def unreliable(self, x, y):
        return x >= self.lam or x < self.x_lo or y > self.y_hi


class EmpiricalLogMgf(LogMgfSurface):
    """Surface estimated from a window sample.

    A point is flagged unreliable when the largest single term carries more
    than half of the sample mean (heavy-tail territory near the
    exponential-moment boundary); the axis caps locate that boundary.
    """

    provenance = "empirical"

    def __init__(self, sample: WindowSample):
        tau = sample.tau
        w = sample.w.astype(float)
        self._tau = tau
        self._w = w
        self._n = tau.size
        self._log_n = math.log(self._n)
        self.mean_tau = float(tau.mean())
        self.mean_w = float(w.mean())
        self.w_constant = float(w[0]) if np.all(w == w[0]) else None
        self._tau_min, self._tau_max = float(tau.min()), float(tau.max())
        self._w_min, self._w_max = float(w.min()), float(w.max())
        self.x_hi = self._axis_cap(tau, 1.0 / self.mean_tau)
        self.x_lo = -self._axis_cap(-tau, 1.0 / self.mean_tau)
        self.y_hi = self._axis_cap(w, 1.0 / self.mean_w)
        self.y_lo = -self._axis_cap(-w, 1.0 / self.mean_w)

    def _share(self, coords: np.ndarray, s: float) -> float:
        a = s * coords
        return float(math.exp(a.max() - logsumexp(a)))

    def _axis_cap(self, coords: np.ndarray, scale: float) -> float:
        lo, hi = 0.0, scale
        for _ in range(40):
            if self._share(coords, hi) > 0.5:
                break
            lo = hi
            hi *= 2.0
            if hi > 1e8 * scale:
                return math.inf
        else:
            return math.inf
        for _ in range(60):
            mid = 0.5 * (lo + hi)
            if self._share(coords, mid) > 0.5:
                hi = mid
            else:
                lo = mid
        return lo

    def value(self, x, y):
        a = x * self._tau + y * self._w
        return float(logsumexp(a) - self._log_n)

    def value_grid(self, xs, ys):
        xs = np.atleast_1d(np.asarray(xs, dtype=float))
        ys = np.atleast_1d(np.asarray(ys, dtype=float))
        # rank-1 structure: exp(x*tau + y*w) factorizes, so the grid is a
        # matrix product of per-axis exponentials after per-row max shifts
        shift_x = np.where(xs >= 0.0, self._tau_max, self._tau_min)
        shift_y = np.where(ys >= 0.0, self._w_max, self._w_min)
        out = np.empty((xs.size, ys.size))
        row_block = max(1, int(2e7 / max(self._n, 1)))
        b_mat = np.exp(ys[:, None] * (self._w[None, :] - shift_y[:, None]))
        for start in range(0, xs.size, row_block):
            sl = slice(start, min(start + row_block, xs.size))
            a_mat = np.exp(xs[sl, None] * (self._tau[None, :] - shift_x[sl, None]))
            out[sl] = np.log(a_mat @ b_mat.T / self._n)
        return out + (xs * shift_x)[:, None] + (ys * shift_y)[None, :]

    def unreliable(self, x, y):
        a = x * self._tau + y * self._w
        return bool(math.exp(a.max() - logsumexp(a)) > 0.5)


def analytic_cancel_log_mgf(lam: float, width: float) -> CancelingLogMgf:
    return CancelingLogMgf(lam, width)


def analytic_delayed_log_mgf(lam: float, lag: float, width: float, nodes: int = 128) -> DelayedLogMgf:
    return DelayedLogMgf(lam, lag, width, nodes)


def empirical_log_mgf(sample: WindowSample) -> EmpiricalLogMgf:
    if sample.n_windows < 1000:
        raise ValueError("need at least 1000 windows for an empirical surface")
    return EmpiricalLogMgf(sample)


# ---------------------------------------------------------------------------
# conjugates and the rate function


@dataclass(frozen=True)
class CramerValue:
    value: float
    x: float
    y: float
    truncated: bool


@dataclass(frozen=True)
class RatePoint:
    z: float
    value: float
    beta: float
    truncated: bool


@dataclass
class RateCurve:
    """Tabulated (z, J) pairs; rows serialize as (z, J, provenance, flag)."""

    provenance: str
    points: list = field(default_factory=list)

    def rows(self):
        return [(p.z, p.value, self.provenance, int(p.truncated)) for p in self.points]


def _golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float):
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    return (c, fc) if fc >= fd else (d, fd)


def _box(surface: LogMgfSurface):
    sx = 1.0 / max(surface.mean_tau, 1e-12)
    sy = 1.0 / max(surface.mean_w, 1e-12)
    x_lo = surface.x_lo if math.isfinite(surface.x_lo) else -_SPAN * sx
    x_hi = surface.x_hi if math.isfinite(surface.x_hi) else _SPAN * sx
    y_lo = surface.y_lo if math.isfinite(surface.y_lo) else -_SPAN * sy
    y_hi = surface.y_hi if math.isfinite(surface.y_hi) else _SPAN * sy
    return x_lo, x_hi, y_lo, y_hi


def cramer_transform(surface: LogMgfSurface, a: float, b: float, *, grid: int = 64) -> CramerValue:
    """Concave conjugate ``sup_(x,y) [a*x + b*y - K(x, y)]`` over the safe box.

    Coarse grid scan followed by coordinate-wise golden-section refinement.
    The result is flagged ``truncated`` when the maximizer sits on the safe
    boundary (so the true supremum may be larger) or in the unreliable
    region of an empirical surface.
    """
    x_lo, x_hi, y_lo, y_hi = _box(surface)

    if surface.w_constant is not None:
        # jump count degenerate at w0: the conjugate is infinite off b == w0
        # (linear term in y), and one-dimensional on it
        w0 = surface.w_constant
        if abs(b - w0) > 1e-9 * max(1.0, abs(w0)):
            return CramerValue(math.inf, math.nan, math.nan, True)
        tol = 1e-12 * max(1.0, abs(x_lo), abs(x_hi))
        x_opt, f_opt = _golden_max(lambda x: a * x - surface.value(x, 0.0), x_lo, x_hi, tol)
        trunc = _near_edge(x_opt, x_lo, x_hi, tol) or surface.unreliable(x_opt, 0.0)
        return CramerValue(max(f_opt, 0.0), x_opt, 0.0, trunc)

    xs = np.linspace(x_lo, x_hi, grid)
    ys = np.linspace(y_lo, y_hi, grid)
    k_grid = surface.value_grid(xs, ys)
    obj = a * xs[:, None] + b * ys[None, :] - k_grid
    obj[~np.isfinite(obj)] = -math.inf
    if np.all(np.isneginf(obj)):
        return CramerValue(math.inf, math.nan, math.nan, True)
    i, j = np.unravel_index(int(np.argmax(obj)), obj.shape)
    x_cur, y_cur = float(xs[i]), float(ys[j])
    f_cur = float(obj[i, j])

    tol_x = 1e-12 * max(1.0, abs(x_lo), abs(x_hi))
    tol_y = 1e-12 * max(1.0, abs(y_lo), abs(y_hi))
    for _ in range(16):
        x_cur, _ = _golden_max(lambda x: a * x + b * y_cur - surface.value(x, y_cur), x_lo, x_hi, tol_x)
        y_cur, f_new = _golden_max(lambda y: a * x_cur + b * y - surface.value(x_cur, y), y_lo, y_hi, tol_y)
        if f_new - f_cur <= 1e-10 * max(1.0, abs(f_new)):
            f_cur = f_new
            break
        f_cur = f_new
    trunc = (
        _near_edge(x_cur, x_lo, x_hi, tol_x)
        or _near_edge(y_cur, y_lo, y_hi, tol_y)
        or surface.unreliable(x_cur, y_cur)
    )
    return CramerValue(max(f_cur, 0.0), x_cur, y_cur, trunc)


def _near_edge(v: float, lo: float, hi: float, tol: float) -> bool:
    # a maximizer that ran away lands within the golden-section tolerance
    # of the boundary; interior optima sit far beyond it
    margin = 50.0 * tol
    return (v - lo) <= margin or (hi - v) <= margin


def rate_J(surface: LogMgfSurface, z: float, *, beta_points: int = 64, grid: int = 48) -> RatePoint:
    """Rate of the event frequency at level ``z``.

    Minimizes ``beta * Lambda*(1/beta, z/beta)`` over ``beta > 0``: log-grid
    scan, then golden-section refinement (the scan objective is convex in
    ``beta``).  Degenerate jump counts pin ``beta`` algebraically, which is
    also how the closed-form cases collapse.
    """
    if z <= 0.0:
        raise ValueError("z must be > 0")
    if surface.w_constant is not None:
        beta = z / surface.w_constant
        lstar = cramer_transform(surface, 1.0 / beta, surface.w_constant, grid=grid)
        return RatePoint(z, beta * lstar.value, beta, lstar.truncated)

    def g(beta: float) -> CramerValue:
        return cramer_transform(surface, 1.0 / beta, z / beta, grid=grid)

    betas = np.geomspace(1e-3 * surface.mean_tau, 1e3 * surface.mean_tau, beta_points)
    values = []
    for beta in betas:
        cv = g(beta)
        values.append(beta * cv.value if math.isfinite(cv.value) else math.inf)
    values = np.array(values)
    finite = np.isfinite(values)
    if not finite.any():
        return RatePoint(z, math.inf, math.nan, True)
    i = int(np.argmin(np.where(finite, values, math.inf)))
    lo = betas[max(i - 1, 0)]
    hi = betas[min(i + 1, beta_points - 1)]

    def neg_g_log(u: float) -> float:
        beta = math.exp(u)
        cv = g(beta)
        return -(beta * cv.value) if math.isfinite(cv.value) else -math.inf

    u_opt, neg_val = _golden_max(neg_g_log, math.log(lo), math.log(hi), 1e-13)
    beta_opt = math.exp(u_opt)
    final = g(beta_opt)
    value = beta_opt * final.value if math.isfinite(final.value) else math.inf
    return RatePoint(z, max(value, 0.0) if math.isfinite(value) else value, beta_opt, final.truncated)


def rate_curve(surface: LogMgfSurface, z_values, **kwargs) -> RateCurve:
    curve = RateCurve(provenance=surface.provenance)
    for z in np.atleast_1d(np.asarray(z_values, dtype=float)):
        curve.points.append(rate_J(surface, float(z), **kwargs))
    return curve


# ---------------------------------------------------------------------------
# closed-form oracles


@dataclass(frozen=True)
class OracleRecord:
    """Exact constants for a solvable case, with a rate evaluator when known."""

    case: str
    lam: float
    m: float
    sigma2: float
    mean_tau: float | None = None
    var_tau: float | None = None
    mean_w: float | None = None
    var_w: float | None = None
    cov_tau_w: float | None = None
    alpha0: float | None = None
    theta0: float | None = None
    rate: Callable[[float], float] | None = None
    rate_domain: tuple | None = None
    atom_mass: float | None = None
    params: dict = field(default_factory=dict)


def oracle_cancel(lam: float, width: float) -> OracleRecord:
    """Full cancellation: (w, tau) = (1, width + Exp(lam)); width = 0 is Poisson."""
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    if width < 0.0:
        raise ValueError("width must be >= 0")
    mean_tau = width + 1.0 / lam
    m = lam / (1.0 + lam * width)
    z_hi = math.inf if width == 0.0 else 1.0 / width

    def rate(z: float) -> float:
        if z <= 0.0 or z >= z_hi:
            return math.inf
        free = 1.0 - z * width
        return lam * free - z + z * math.log(z / (lam * free))

    return OracleRecord(
        case="cancel",
        lam=lam,
        m=m,
        sigma2=m * m / (lam * lam * mean_tau),
        mean_tau=mean_tau,
        var_tau=1.0 / lam**2,
        mean_w=1.0,
        var_w=0.0,
        cov_tau_w=0.0,
        alpha0=lam,
        theta0=math.inf,
        rate=rate,
        rate_domain=(0.0, z_hi),
        params={"width": width},
    )


def _delayed_cross_moment(lam: float, lag: float, nodes: int = 128) -> float:
    """E[X * w] by quadrature over the joint construction.

    Conditional on ``w = k`` (k >= 2) the spread ``X`` has density
    ``exp(-lam*lag) * lam^(k-1) * t^(k-2) / (k-2)!`` on (0, lag]; each term
    ``k * int t * density`` is a Gauss-Legendre integral, summed until the
    Poisson-type coefficients are exhausted.
    """
    u, wq = np.polynomial.legendre.leggauss(nodes)
    t = 0.5 * lag * (u + 1.0)
    weight = 0.5 * lag * wq
    total = 0.0
    log_lam = math.log(lam)
    for k in range(2, 400):
        integral = float(np.sum(weight * t ** (k - 1)))
        log_coeff = -lam * lag + (k - 1) * log_lam - math.lgamma(k - 1)
        term = k * math.exp(log_coeff) * integral
        total += term
        if term < 1e-16 * max(total, 1e-300) and k > 8:
            break
    return total


def oracle_delayed(lam: float, lag: float, width: float) -> OracleRecord:
    """Lagged cancellation: inhibition -lam on [lag, lag + width), lag < width."""
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    if not 0.0 < lag < width:
        raise ValueError("need 0 < lag < width")
    mean_w = 1.0 + lam * lag
    var_w = lam * lag
    mu_x = lag - (1.0 - math.exp(-lam * lag)) / lam
    mean_tau = 2.0 * lag + width + math.exp(-lam * lag) / lam
    # Var(U) is 1/lam^2 for the exponential first offset (the lag-case
    # variance decomposition), plus the spread's variance
    var_tau = 1.0 / lam**2 + lag * lag - 2.0 * mu_x / lam - mu_x * mu_x
    cov = _delayed_cross_moment(lam, lag) - mu_x * mean_w
    m = mean_w / mean_tau
    sigma2 = (var_w + m * m * var_tau - 2.0 * m * cov) / mean_tau
    return OracleRecord(
        case="delayed",
        lam=lam,
        m=m,
        sigma2=sigma2,
        mean_tau=mean_tau,
        var_tau=var_tau,
        mean_w=mean_w,
        var_w=var_w,
        cov_tau_w=cov,
        alpha0=lam,
        theta0=math.inf,
        atom_mass=math.exp(-lam * lag),
        params={"lag": lag, "width": width},
    )


def oracle_linear(lam: float, h_l1: float) -> OracleRecord:
    """Nonnegative-kernel constants: mean rate, CLT variance, and the rate curve."""
    if lam <= 0.0:
        raise ValueError("lam must be > 0")
    if not 0.0 <= h_l1 < 1.0:
        raise ValueError("need 0 <= h_l1 < 1")
    mu = lam / (1.0 - h_l1)

    def rate(z: float) -> float:
        if z < 0.0:
            return math.inf
        if z == 0.0:
            return lam
        return z * math.log(z / (lam + z * h_l1)) - z * (1.0 - h_l1) + lam

    return OracleRecord(
        case="linear",
        lam=lam,
        m=mu,
        sigma2=lam / (1.0 - h_l1) ** 3,
        rate=rate,
        rate_domain=(0.0, math.inf),
        params={"h_l1": h_l1},
    )


# ---------------------------------------------------------------------------
# deviation exponents


@dataclass(frozen=True)
class DeviationBounds:
    above: float
    below: float
    above_rate_inf: float
    above_margin: float
    below_rate_inf: float
    below_margin: float


def _resolve_rate(source) -> tuple[Callable[[float], float], float]:
    if isinstance(source, OracleRecord):
        if source.rate is None:
            raise ValueError(f"oracle case {source.case!r} has no closed-form rate")
        hi = source.rate_domain[1] if source.rate_domain else math.inf
        return source.rate, hi
    if isinstance(source, LogMgfSurface):
        return (lambda z: rate_J(source, z).value), math.inf
    if callable(source):
        return source, math.inf
    raise TypeError("source must be an OracleRecord, a LogMgfSurface, or a callable")


def _inf_rate(rate: Callable[[float], float], lo: float, hi: float, points: int = 129) -> float:
    if hi <= lo:
        return math.inf
    zs = np.linspace(lo, hi, points)
    vals = np.array([rate(float(z)) for z in zs])
    finite = np.isfinite(vals)
    if not finite.any():
        return math.inf
    i = int(np.argmin(np.where(finite, vals, math.inf)))
    blo = zs[max(i - 1, 0)]
    bhi = zs[min(i + 1, points - 1)]
    _, neg = _golden_max(lambda z: -rate(z), blo, bhi, 1e-12 * max(1.0, hi))
    return min(float(vals[i]), -neg)


def deviation_bounds(
    source,
    m: float,
    a: float,
    theta0: float,
    kappa: float | None = None,
    kappa_prime: float | None = None,
) -> DeviationBounds:
    """Upper exponents for the two tails of the event frequency.

    With an infinite jump-count exponent the bounds reduce to the plain
    rate infima over ``z >= m + a`` and ``z <= m - a``.  Otherwise the
    upper tail combines ``inf J`` over ``z >= m + kappa*a`` with the linear
    margin ``kappa' * theta0 * a`` (``kappa + 2*kappa' = 1``), and the
    lower tail uses ``z <= m - kappa*a`` with margin
    ``(1 - kappa) * theta0 * a``.
    """
    if a <= 0.0:
        raise ValueError("a must be > 0")
    rate, z_cap = _resolve_rate(source)
    span = 50.0 * max(m, a)
    if math.isinf(theta0):
        above_inf = _inf_rate(rate, m + a, min(z_cap, m + a + span))
        below_inf = _inf_rate(rate, max(1e-12, m - a - span), m - a) if m - a > 0 else math.inf
        return DeviationBounds(above_inf, below_inf, above_inf, math.inf, below_inf, math.inf)
    if kappa is None or kappa_prime is None:
        raise ValueError("finite theta0 requires kappa and kappa_prime")
    if not (0.0 < kappa < 1.0 and 0.0 < kappa_prime < 1.0):
        raise ValueError("kappa and kappa_prime must lie in (0, 1)")
    if abs(kappa + 2.0 * kappa_prime - 1.0) > 1e-9:
        raise ValueError("need kappa + 2*kappa_prime == 1")
    above_inf = _inf_rate(rate, m + kappa * a, min(z_cap, m + kappa * a + span))
    above_margin = kappa_prime * theta0 * a
    below_inf = (
        _inf_rate(rate, max(1e-12, m - kappa * a - span), m - kappa * a)
        if m - kappa * a > 0
        else math.inf
    )
    below_margin = (1.0 - kappa) * theta0 * a
    return DeviationBounds(
        min(above_inf, above_margin),
        min(below_inf, below_margin),
        above_inf,
        above_margin,
        below_inf,
        below_margin,
    )
