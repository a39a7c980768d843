"""Exact special solutions: paperclip, grim reaper, and expanding soliton.

The paperclip (unnormalized) is the level set e^tau cosh x = cos y with
tau < 0.  In terms of the outward-normal angle theta and the shorthand
q = e^{2 tau}, m = sqrt(1 - q), its quadrant is

    x(theta) = arcsinh(m cos(theta) / sqrt(q)),
    y(theta) = arcsin(m sin(theta)),
    radius of curvature r(theta) = m / sqrt(cos^2(theta) + q sin^2(theta)),

with curvature cos(y)/m, maxima on the x axis.  These forms stay accurate
for q near 0 and near 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.special import ellipj, ellipkinc

from .curves import SampledCurve
from .errors import GeometryError
from .support import SupportFunction

__all__ = [
    "PaperclipFrame",
    "paperclip_frame",
    "paperclip_boundary",
    "paperclip_curvature",
    "paperclip_normalized",
    "paperclip_max_curvature_normalized",
    "paperclip_support",
    "grim_reaper",
    "ExpanderModel",
    "expander_model",
    "expander_support_values",
    "expander_curve",
    "expander_theta_max",
    "expander_scale",
]


# ---------------------------------------------------------------------------
# paperclip


@dataclass(frozen=True)
class PaperclipFrame:
    """Closed-form quadrant data of the unnormalized paperclip at time tau."""

    tau: float
    q: float      # e^{2 tau}
    m: float      # sqrt(1 - q), the curvature scale: kappa_max = 1/m

    def y(self, theta):
        return np.arcsin(np.clip(self.m * np.sin(theta), -1.0, 1.0))

    def x(self, theta):
        return np.arcsinh(self.m * np.cos(theta) / np.sqrt(self.q))

    def radius(self, theta):
        c = np.cos(theta)
        s = np.sin(theta)
        return self.m / np.sqrt(c * c + self.q * s * s)

    def quadrant_length(self) -> float:
        return float(self.m * ellipkinc(np.pi / 2.0, self.m**2))


def paperclip_frame(tau: float) -> PaperclipFrame:
    if not tau < 0.0:
        raise GeometryError("paperclip requires tau < 0")
    q = float(np.exp(2.0 * tau))
    m = float(np.sqrt(max(1.0 - q, 0.0)))
    if m == 0.0:
        raise GeometryError("tau too close to 0: curve degenerates numerically")
    return PaperclipFrame(tau, q, m)


def paperclip_boundary(tau: float, n: int) -> SampledCurve:
    """Sample the paperclip boundary with n vertices (n divisible by 4).

    Vertices sit exactly on the level set, at equal arclength within each
    quadrant, with the four axis points included; the polyline is therefore
    symmetric in both axes to machine precision.
    """
    if n % 4 != 0 or n < 8:
        raise GeometryError("n must be a positive multiple of 4 (and >= 8)")
    fr = paperclip_frame(tau)
    mm = fr.m * fr.m
    quarter = n // 4
    lam = fr.quadrant_length()
    s = np.arange(quarter + 1) * (lam / quarter)
    # invert s = m * F(theta | m^2) with the Jacobi amplitude
    theta = ellipj(s / fr.m, mm)[3]
    theta[0], theta[-1] = 0.0, np.pi / 2.0
    x = fr.x(theta)
    y = fr.y(theta)
    x[-1] = 0.0
    y[0] = 0.0
    q1 = np.stack([x, y], axis=1)
    q2 = np.stack([-x[::-1], y[::-1]], axis=1)
    parts = [q1[:-1], q2[:-1], -q1[:-1], -q2[:-1]]
    return SampledCurve(np.vstack(parts), closed=True)


def paperclip_curvature(tau: float, point, tol: float = 1e-8) -> float:
    """Exact curvature cos(y)/sqrt(1 - e^{2 tau}) at a point on the level set."""
    fr = paperclip_frame(tau)
    x, y = float(point[0]), float(point[1])
    residual = np.exp(tau) * np.cosh(x) - np.cos(y)
    if abs(residual) > tol * max(1.0, np.cosh(x) * np.exp(tau)):
        raise GeometryError(f"point ({x}, {y}) is off the level set (residual {residual:.2e})")
    return float(np.cos(y) / fr.m)


def _tau_of_normalized(t: float) -> float:
    return -0.5 * float(np.exp(-2.0 * t))


def paperclip_normalized(t: float, n: int) -> SampledCurve:
    """Area-pi solution at normalized time t: e^t times the tau = -e^{-2t}/2 clip."""
    return paperclip_boundary(_tau_of_normalized(t), n).scaled(float(np.exp(t)))


def paperclip_max_curvature_normalized(t: float) -> float:
    """Closed-form maximum curvature e^{-t} / sqrt(1 - e^{-e^{-2t}})."""
    return float(np.exp(-t) / np.sqrt(-np.expm1(-np.exp(-2.0 * t))))


def paperclip_support(tau: float, n: int = 1024) -> SupportFunction:
    """Support function h(theta) = x cos(theta) + y sin(theta) on the uniform grid."""
    fr = paperclip_frame(tau)
    th = np.arange(n) * (2.0 * np.pi / n)
    # fold into the first quadrant by symmetry, where the closed forms live
    tq = np.arcsin(np.abs(np.sin(th)))
    h = fr.x(tq) * np.abs(np.cos(th)) + fr.y(tq) * np.abs(np.sin(th))
    return SupportFunction(h, even=True, pi_periodic=(n % 2 == 0), symmetry_tol=1e-10)


# ---------------------------------------------------------------------------
# grim reaper


def grim_reaper(n: int, y_margin: float) -> SampledCurve:
    """Open curve x = log cos y for |y| <= pi/2 - y_margin, equal arclength.

    Arclength from the apex is arctanh(sin y), so equal-arclength samples are
    y = arcsin(tanh s) exactly.
    """
    if not 0.0 < y_margin < np.pi / 2.0:
        raise GeometryError("y_margin must lie in (0, pi/2)")
    y_max = np.pi / 2.0 - y_margin
    s_max = np.arctanh(np.sin(y_max))
    s = np.linspace(-s_max, s_max, n)
    y = np.arcsin(np.tanh(s))
    x = np.log(np.cos(y))
    return SampledCurve(np.stack([x, y], axis=1), closed=False)


# ---------------------------------------------------------------------------
# quadrature helper

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(8)


def gl_cumulative(f, nodes: np.ndarray) -> np.ndarray:
    """Cumulative integral of f at the given nodes, 8-point Gauss per panel."""
    a = nodes[:-1]
    b = nodes[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    panel = half * (f(x.ravel()).reshape(x.shape) @ _GL_WEIGHTS)
    return np.concatenate([[0.0], np.cumsum(panel)])


# ---------------------------------------------------------------------------
# expanding soliton

_LOG_H_FLOOR = -600.0


def _expander_integrand_u(u: np.ndarray, C: float) -> np.ndarray:
    """Integrand of theta(h) after the z = 1 - u^2 substitution, regular at u = 0.

    theta(h) = int_h^1 dz / sqrt(1 - z^2 - 2C log z) = int_0^{sqrt(1-h)} 2 du / sqrt(g(u)).
    """
    u = np.asarray(u, dtype=float)
    g = np.empty_like(u)
    small = u < 1e-4
    us = u[small]
    # -2C log(1-u^2)/u^2 -> 2C (1 + u^2/2 + u^4/3 + ...)
    g[small] = (2.0 - us * us) + 2.0 * C * (1.0 + us * us / 2.0 + us**4 / 3.0)
    ub = u[~small]
    g[~small] = (2.0 - ub * ub) - 2.0 * C * np.log1p(-ub * ub) / (ub * ub)
    return 2.0 / np.sqrt(g)


@dataclass(frozen=True)
class ExpanderModel:
    """Homothetically expanding soliton with curvature kappa = -<X, nu>/C.

    h is the support value from the homothety center; it decreases from 1 at
    theta = 0 to 0 at theta = theta_max.  The tabulated grid is graded in
    log h so the asymptotic wedge regime is resolved.
    """

    C: float
    log_h: np.ndarray     # decreasing from 0
    theta: np.ndarray     # increasing from 0 to ~theta_max
    theta_max: float

    def __post_init__(self):
        # Hermite splines with the exact slope d(log h)/d theta = h'/h keep
        # interpolation noise out of downstream finite differencing.  theta
        # stalls (below double resolution) deep in the wedge tail, so the
        # theta -> h inverse only uses the strictly increasing prefix.
        inc = np.concatenate([[True], np.diff(self.theta) > 0.0])
        run = np.logical_and.accumulate(inc)
        th, lh = self.theta[run], self.log_h[run]
        h = np.exp(lh)
        slope = self.hprime(h) / h
        slope[0] = 0.0
        object.__setattr__(self, "_theta_cap", float(th[-1]))
        object.__setattr__(self, "_h_interp", CubicHermiteSpline(th, lh, slope))
        with np.errstate(divide="ignore"):
            inv_slope = np.where(slope < 0.0, 1.0 / slope, 0.0)
        object.__setattr__(self, "_theta_interp",
                           CubicHermiteSpline(-lh, th, -inv_slope))

    @property
    def h(self) -> np.ndarray:
        return np.exp(self.log_h)

    def hprime(self, h: np.ndarray) -> np.ndarray:
        # (h')^2 = 1 - h^2 - 2C log h along the profile, h' < 0 for theta > 0
        return -np.sqrt(1.0 - h * h - 2.0 * self.C * np.log(h))

    def theta_of_h(self, h) -> np.ndarray:
        return self._theta_interp(-np.log(h))

    def h_of_theta(self, theta) -> np.ndarray:
        return np.exp(self._h_interp(np.minimum(theta, self._theta_cap)))

    @property
    def wedge_half_angle(self) -> float:
        """Half opening angle of the asymptotic wedge, pi/2 - theta_max."""
        return np.pi / 2.0 - self.theta_max

    def wedge_profile(self, a) -> np.ndarray:
        """Isoperimetric profile of the asymptotic wedge, sqrt(4 * halfangle * a)."""
        return np.sqrt(4.0 * self.wedge_half_angle * np.asarray(a, dtype=float))


def expander_theta_max(C: float, n: int = 200001) -> float:
    """theta_max(C) = int_0^1 dz / sqrt(1 - z^2 - 2C log z); decreasing in C."""
    if C <= 0:
        raise GeometryError("C must be positive")
    return expander_model(C).theta_max


def expander_model(C: float) -> ExpanderModel:
    return _expander_model_cached(float(C))


@lru_cache(maxsize=32)
def _expander_model_cached(C: float) -> ExpanderModel:
    if C <= 0:
        raise GeometryError("C must be positive")
    # Part 1: u = sqrt(1-z) substitution down to h_switch (integrand regular
    # at u = 0, mild at the far end).  Grid graded toward u = 1, dense enough
    # that curve sampling can use raw table nodes at uniform arclength.
    h_switch = 1e-8
    dm_hi = np.geomspace(0.01, h_switch / 2.0, 20000)    # values of 1 - u
    u = np.unique(np.concatenate([np.linspace(0.0, 0.99, 20000, endpoint=False),
                                  1.0 - dm_hi]))
    theta_u = gl_cumulative(lambda uu: _expander_integrand_u(uu, C), u)
    dm = 1.0 - u[1:]
    log_h_u = np.concatenate([[0.0], np.log(dm) + np.log(2.0 - dm)])
    # Part 2: continue in w = log z down to the floor; dtheta = -e^w dw / sqrt(P)
    w_grid = np.linspace(log_h_u[-1], _LOG_H_FLOOR, 3000)

    def tail_integrand(w):
        z2 = np.exp(2.0 * w)
        return np.exp(w) / np.sqrt(1.0 - z2 - 2.0 * C * w)

    theta_w = theta_u[-1] - gl_cumulative(tail_integrand, w_grid)
    log_h = np.concatenate([log_h_u, w_grid[1:]])
    theta = np.concatenate([theta_u, theta_w[1:]])
    # remaining tail below the floor is under e^{floor}/sqrt(2C|floor|): zero
    return ExpanderModel(C=float(C), log_h=log_h, theta=theta,
                         theta_max=float(theta[-1]))


def expander_support_values(C: float, theta: np.ndarray, model: ExpanderModel | None = None):
    """h(theta) for the soliton, by inversion of the tabulated quadrature."""
    model = model or expander_model(C)
    theta = np.asarray(theta, dtype=float)
    if np.any(np.abs(theta) >= model.theta_max):
        raise GeometryError("theta beyond the asymptotic angle theta_max(C)")
    return model.h_of_theta(np.abs(theta))


def expander_scale(C: float, t: float) -> float:
    """Normalized-flow scale factor r(t) = sqrt((e^{2t} - 1)/C)."""
    if t <= 0:
        raise GeometryError("normalized expander needs t > 0")
    return float(np.sqrt(np.expm1(2.0 * t) / C))


def expander_curve(C: float, t: float, n: int, theta_span: float = 0.95) -> SampledCurve:
    """Open sampled boundary of the expanding region at normalized time t.

    Points are X(theta) = (h + i h') e^{i theta} scaled by r(t), for
    |theta| <= theta_span * theta_max, ordered by increasing theta.  Samples
    sit exactly on quadrature-table nodes, so positions carry no
    interpolation noise (the spacing is only approximately uniform).
    """
    model = expander_model(C)
    r_t = expander_scale(C, t)
    tmax = model.theta_max * theta_span
    half = max(n // 2, 4)
    # pick table nodes at near-uniform arclength: ds = (C/h) dtheta
    usable = model.theta <= tmax
    th_tab = model.theta[usable]
    h_tab = np.exp(model.log_h[usable])
    ds = (C / h_tab[1:]) * np.diff(th_tab)
    s_tab = np.concatenate([[0.0], np.cumsum(ds)])
    targets = np.linspace(0.0, s_tab[-1], half + 1)[1:]
    idx = np.unique(np.searchsorted(s_tab, targets))
    idx = idx[(idx > 0) & (idx < len(th_tab))]
    theta_pos = th_tab[idx]
    h_pos = h_tab[idx]
    hp_pos = model.hprime(h_pos)
    theta = np.concatenate([-theta_pos[::-1], [0.0], theta_pos])
    h = np.concatenate([h_pos[::-1], [1.0], h_pos])
    hp = np.concatenate([-hp_pos[::-1], [0.0], hp_pos])
    x = h * np.cos(theta) - hp * np.sin(theta)
    y = h * np.sin(theta) + hp * np.cos(theta)
    return SampledCurve(r_t * np.stack([x, y], axis=1), closed=False)
