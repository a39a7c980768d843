"""Isoperimetric profiles of symmetric bodies via the orthogonal-arc family.

For a doubly symmetric uniformly convex body of area pi whose curvature
maxima sit on the x axis, the isoperimetric region of area a is cut off by a
constant-curvature arc with center on the x axis, joining the boundary
points with normal angles +-theta and meeting the boundary orthogonally.
With y(theta) the height of the boundary point and r(theta) its radius of
curvature, the family satisfies

    rho = y / cos(theta)                (arc radius)
    f   = (pi - 2 theta) rho            (arc length = profile value)
    a   = rho^2 (pi/2 - theta - sin(theta) cos(theta))
          + 2 int_0^theta y r sin dtheta'     (cap area)

Differentiating gives the exact identities f'(a) = 1/rho and
f f' = pi - 2 theta, which the comparison-equation tests lean on.

The same formulas cover the noncompact expanding soliton (y, r < 0), whose
family sweeps out every area in (0, infinity).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.interpolate import CubicHermiteSpline, PchipInterpolator

from . import models
from .curves import points_in_polygon
from .errors import GeometryError, SymmetryError
from .models import gl_cumulative
from .profiles import EXTERIOR, INTERIOR, Profile
from .support import SupportFunction, support_to_curve


def _cap_sector(psi):
    """psi - sin(psi) cos(psi), series-stable for small psi."""
    psi = np.asarray(psi, dtype=float)
    out = np.empty_like(psi)
    small = np.abs(psi) < 1e-3
    p = psi[small]
    out[small] = 2.0 * p**3 / 3.0 - 2.0 * p**5 / 15.0
    out[~small] = psi[~small] - np.sin(psi[~small]) * np.cos(psi[~small])
    return out


def _family_arrays(theta, y, r, area_integral=None, y_fn=None, r_fn=None):
    """(rho, f, a) of the arc family; no monotonicity assumptions."""
    theta = np.asarray(theta, dtype=float)
    y = np.asarray(y, dtype=float)
    r = np.asarray(r, dtype=float)
    psi = np.pi / 2.0 - theta
    near_chord = psi <= 1e-9
    rho = np.full_like(theta, np.inf)
    f = 2.0 * np.abs(y)
    cap = np.zeros_like(theta)
    reg = ~near_chord
    rho[reg] = np.abs(y[reg]) / np.cos(theta[reg])
    f[reg] = (np.pi - 2.0 * theta[reg]) * rho[reg]
    cap[reg] = rho[reg] ** 2 * _cap_sector(psi[reg])
    if area_integral is not None:
        integral = np.asarray(area_integral, dtype=float)
    elif y_fn is not None and r_fn is not None:
        nodes = np.concatenate([[0.0], theta])
        integral = gl_cumulative(
            lambda th: 2.0 * y_fn(th) * r_fn(th) * np.sin(th), nodes)[1:]
    else:
        integrand = 2.0 * y * r * np.sin(theta)
        integral = np.concatenate([[0.0], np.cumsum(
            0.5 * (integrand[1:] + integrand[:-1]) * np.diff(theta))])
        integral += 0.5 * integrand[0] * theta[0]   # [0, theta_0] sliver, integrand(0) = 0
    return rho, f, cap + integral


def _strictly_increasing_area(a: np.ndarray) -> np.ndarray:
    """Mask keeping nodes whose area strictly exceeds every previous one.

    The family area is monotone analytically; floating-point increments can
    still round to zero where the grid is graded far below the area scale.
    """
    running = np.maximum.accumulate(a)
    keep = np.empty(len(a), dtype=bool)
    keep[0] = True
    keep[1:] = a[1:] > running[:-1]
    return keep


@dataclass(frozen=True)
class FamilyTable:
    """Tabulated orthogonal-arc family over increasing theta with monotone area."""

    theta: np.ndarray
    rho: np.ndarray
    f: np.ndarray
    a: np.ndarray
    endpoint_kappa: np.ndarray   # signed boundary curvature 1/r at the endpoints
    total_area: float            # pi for normalized bodies, inf for the soliton

    def __post_init__(self):
        if np.any(np.diff(self.a) <= 0.0):
            raise GeometryError("family area grid is not strictly increasing "
                                "(discretization too coarse or body invalid)")

    @property
    def fprime(self) -> np.ndarray:
        """Signed arc curvature df/da = 1/rho along the family."""
        return 1.0 / self.rho

    @property
    def vprime(self) -> np.ndarray:
        """d(f^2/2)/da = pi - 2 theta along the family."""
        return np.pi - 2.0 * self.theta

    def v_interpolator(self) -> CubicHermiteSpline:
        """Interpolant of v = f^2/2 with the exact slope pi - 2 theta at nodes."""
        return CubicHermiteSpline(self.a, 0.5 * self.f**2, self.vprime)

    def f_interpolator(self) -> CubicHermiteSpline:
        """Interpolant of f with the exact slope 1/rho at nodes (0 at chords)."""
        with np.errstate(divide="ignore"):
            slope = np.where(np.isfinite(self.rho), 1.0 / self.rho, 0.0)
        return CubicHermiteSpline(self.a, self.f, slope)

    def theta_of_area(self) -> PchipInterpolator:
        return PchipInterpolator(self.a, self.theta)


def family_profile(table: FamilyTable, kind: str = INTERIOR,
                   tag: str = "model-family") -> Profile:
    """Profile from the table; interior tables get the complement extension."""
    if kind == INTERIOR:
        half = table.total_area / 2.0
        keep = table.a < half - 1e-9
        a_all = np.concatenate([table.a, table.total_area - table.a[keep][::-1]])
        f_all = np.concatenate([table.f, table.f[keep][::-1]])
        strict = np.concatenate([[True], np.diff(a_all) > 0.0])
        a_all, f_all = a_all[strict], f_all[strict]
    else:
        a_all, f_all = table.a, table.f
    return Profile(kind=kind, a=a_all, f=f_all, provenance=(tag,) * len(a_all))


# ---------------------------------------------------------------------------
# support-grid bodies


def _height_radius_from_support(sf: SupportFunction):
    """(theta, y, r) samples on [0, pi/2] from the periodic grid."""
    n = sf.n
    quarter = n // 4
    if 4 * quarter != n:
        raise GeometryError("support grid size must be a multiple of 4")
    th = sf.theta[: quarter + 1]
    h = sf.h[: quarter + 1]
    hp = sf.hprime()[: quarter + 1]
    r = sf.radius_of_curvature()[: quarter + 1]
    y = h * np.sin(th) + hp * np.cos(th)
    return th, y, r


def _validate_model_body(sf: SupportFunction, tol: float):
    h = sf.h
    n = sf.n
    scale = float(np.max(np.abs(h)))
    refl = np.concatenate([h[:1], h[:0:-1]])
    if np.max(np.abs(h - refl)) > tol * scale:
        raise SymmetryError("body is not symmetric in the x axis (h not even)")
    if n % 2 or np.max(np.abs(h - np.roll(h, n // 2))) > tol * scale:
        raise SymmetryError("body is not symmetric in the y axis (h not pi-periodic)")
    r = sf.radius_of_curvature()
    seg = r[: n // 4 + 1]
    if np.any(np.diff(seg) < -1e-6 * np.max(np.abs(r))):
        raise SymmetryError(
            "radius of curvature must not decrease between the x and y axes "
            "(four vertices with curvature maxima on the x axis)")


def _graded_theta_grid(n_grid: int) -> np.ndarray:
    """theta grid on (0, pi/2] clustered near 0, where cap areas crowd as theta^2."""
    t = np.linspace(0.0, 1.0, n_grid + 1)[1:]
    return (np.pi / 2.0) * t * t


def support_family(sf: SupportFunction, n_grid: int = 1024) -> FamilyTable:
    th_grid, y_g, r_g = _height_radius_from_support(sf)
    y_i = PchipInterpolator(th_grid, y_g)
    r_i = PchipInterpolator(th_grid, r_g)
    theta = _graded_theta_grid(n_grid)
    rho, f, a = _family_arrays(theta, y_i(theta), r_i(theta), y_fn=y_i, r_fn=r_i)
    keep = _strictly_increasing_area(a)
    return FamilyTable(theta=theta[keep], rho=rho[keep], f=f[keep], a=a[keep],
                       endpoint_kappa=1.0 / r_i(theta[keep]), total_area=np.pi)


def model_profile_from_support(sf: SupportFunction, n_grid: int = 1024,
                               symmetry_tol: float = 1e-7) -> Profile:
    """Profile of an area-pi doubly symmetric four-vertex body from h(theta)."""
    _validate_model_body(sf, symmetry_tol)
    area = sf.area()
    if abs(area - np.pi) > 1e-6:
        raise GeometryError(f"body area {area:.8f} is not pi; normalize first")
    return family_profile(support_family(sf, n_grid), INTERIOR)


def y_family_lengths(sf: SupportFunction, n_grid: int = 256,
                     containment_samples: int = 64):
    """(area, length) pairs of arcs centered on the y axis, where admissible.

    Works in the frame rotated by -pi/2 (the y family becomes an x family)
    and discards arcs that leave the body; no monotonicity is assumed.
    """
    n = sf.n
    quarter = n // 4
    sf_rot = SupportFunction(np.roll(sf.h, -quarter))
    th_grid, y_g, r_g = _height_radius_from_support(sf_rot)
    y_i = PchipInterpolator(th_grid, y_g)
    r_i = PchipInterpolator(th_grid, r_g)
    h_i = PchipInterpolator(th_grid, sf_rot.h[: quarter + 1])
    hp_i = PchipInterpolator(th_grid, sf_rot.hprime()[: quarter + 1])
    theta = np.linspace(0.0, np.pi / 2.0, n_grid + 1)[1:]
    rho, f, a = _family_arrays(theta, y_i(theta), r_i(theta), y_fn=y_i, r_fn=r_i)
    polygon = support_to_curve(sf_rot, max(n, 512)).vertices
    out = []
    for k, th in enumerate(theta):
        if not np.isfinite(rho[k]):
            out.append((float(a[k]), float(f[k])))   # the straight axis chord
            continue
        x_pt = float(h_i(th) * np.cos(th) - hp_i(th) * np.sin(th))
        cx = x_pt + rho[k] * np.sin(th)
        phis = np.linspace(np.pi / 2.0 + th, 3.0 * np.pi / 2.0 - th, containment_samples)
        pts = np.stack([cx + rho[k] * np.cos(phis), rho[k] * np.sin(phis)], axis=1)
        if np.all(points_in_polygon(pts[1:-1], polygon)):
            out.append((float(a[k]), float(f[k])))
    return out


# ---------------------------------------------------------------------------
# paperclip family (closed forms, de-spiked area integral)


def _paperclip_theta_grid(n_base: int) -> np.ndarray:
    """theta grid on (0, pi/2] dense near pi/2 where the clip tips live."""
    base = np.linspace(0.0, np.pi / 2.0 * 0.9, n_base, endpoint=False)[1:]
    phi = np.pi / 2.0 * 0.1 * np.geomspace(1.0, 1e-13, 1200)
    tail = np.pi / 2.0 - phi
    return np.unique(np.concatenate([base, tail, [np.pi / 2.0]]))


def paperclip_family(t: float, n_base: int = 2000) -> FamilyTable:
    """Family table of the normalized paperclip at time t (area-pi region).

    The cap-area integral uses the identity

        2 int_0^theta y r sin = -2 y(theta) x(theta) + 2 int_0^theta x tanh(x),

    whose integrand stays smooth up to theta = pi/2 however elongated the
    clip is (x is the horizontal coordinate of the boundary point).
    """
    tau = -0.5 * float(np.exp(-2.0 * t))
    fr = models.paperclip_frame(tau)
    lam = float(np.exp(t))
    theta = _paperclip_theta_grid(n_base)

    def despiked(th):
        x = fr.x(th)
        return 2.0 * x * np.tanh(x)

    nodes = np.concatenate([[0.0], theta])
    smooth_part = gl_cumulative(despiked, nodes)[1:]
    y = fr.y(theta)
    x = fr.x(theta)
    area_integral = lam**2 * (smooth_part - 2.0 * y * x)
    rho, f, a = _family_arrays(theta, lam * y, lam * fr.radius(theta),
                               area_integral=area_integral)
    keep = _strictly_increasing_area(a)
    return FamilyTable(theta=theta[keep], rho=rho[keep], f=f[keep], a=a[keep],
                       endpoint_kappa=1.0 / (lam * fr.radius(theta[keep])),
                       total_area=np.pi)


def paperclip_profile(t: float, n_base: int = 2000) -> Profile:
    return family_profile(paperclip_family(t, n_base), INTERIOR)


def paperclip_profile_values(t: float, a_query, n_base: int = 2000,
                             table: FamilyTable | None = None) -> np.ndarray:
    """f(a, t) of the paperclip family at arbitrary interior areas."""
    table = table or paperclip_family(t, n_base)
    fi = table.f_interpolator()
    aq = np.atleast_1d(np.asarray(a_query, dtype=float))
    folded = np.minimum(aq, np.pi - aq)
    if np.any(folded <= 0.0):
        raise GeometryError("areas must lie in (0, pi)")
    out = np.empty_like(folded)
    tiny = folded < table.a[0]
    # below the smallest tabulated cap, the osculating-disk expansion applies
    if np.any(tiny):
        kmax = models.paperclip_max_curvature_normalized(t)
        out[tiny] = np.sqrt(2.0 * np.pi * folded[tiny]) - 4.0 * kmax * folded[tiny] / (3.0 * np.pi)
    big = ~tiny
    out[big] = fi(np.minimum(folded[big], table.a[-1]))
    return out


# ---------------------------------------------------------------------------
# expander family (noncompact; exterior-model profile on (0, infinity))


def expander_family(C: float, t: float | None = None, a_max: float = 400.0,
                    model: models.ExpanderModel | None = None) -> FamilyTable:
    """Family table of the expanding soliton (scaled by r(t) when t is given).

    Integration runs over log h so the near-wedge regime (huge caps) stays
    resolved; the table is truncated once the cap area exceeds a_max.
    """
    model = model or models.expander_model(C)
    log_h = model.log_h[1:]           # drop h = 1 (theta = 0, degenerate cap)
    h = np.exp(log_h)
    theta = model.theta[1:]
    hp = model.hprime(h)
    y = h * np.sin(theta) + hp * np.cos(theta)       # negative for theta > 0
    # cap-area integrand in log h: 2 y r sin(theta) dtheta = -2C y sin/h' dlog h,
    # and dlog h < 0 along increasing theta, so increments come out positive
    integrand = -2.0 * C * y * np.sin(theta) / hp
    increments = 0.5 * (integrand[1:] + integrand[:-1]) * np.diff(log_h)
    integral = np.concatenate([[0.0], np.cumsum(increments)])
    psi = np.pi / 2.0 - theta
    rho = np.abs(y) / np.cos(theta)
    a = rho**2 * _cap_sector(psi) + integral
    f = (np.pi - 2.0 * theta) * rho
    scale = 1.0 if t is None else models.expander_scale(C, t)
    keep = (a * scale**2 <= a_max) & _strictly_increasing_area(a)
    if not np.any(keep):
        raise GeometryError("a_max below the smallest tabulated cap")
    return FamilyTable(theta=theta[keep], rho=scale * rho[keep], f=scale * f[keep],
                       a=scale**2 * a[keep],
                       endpoint_kappa=(-h[keep] / C) / scale, total_area=np.inf)


def expander_profile(C: float, t: float | None = None, a_max: float = 400.0) -> Profile:
    return family_profile(expander_family(C, t, a_max), EXTERIOR)
