"""The profile comparison equation, the concave envelope, and bound checks.

The evolving quantity is v(a, t) = f(a, t)^2 / 2 for a profile f; the
equation is

    dv/dt = G(v, v', v'') + 2 v + v' (pi - 2a) - (v')^2,

parabolic wherever v is concave.  Model profile families (disk, paperclip,
expanding soliton) furnish exact solutions; the harness here verifies the
equation residually, integrates it on desk-scale grids, and runs the
domination and curvature-bound checks end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import GeometryError, GuardViolation
from .fcal import coef_c_array
from .modelfamily import expander_family, paperclip_family, paperclip_profile_values
from .models import paperclip_max_curvature_normalized
from .profiles import EXTERIOR, INTERIOR, Profile, disk_profile_vec


@dataclass(frozen=True)
class VProfile:
    """v = f^2/2 on a uniform area grid; v vanishes at the grid ends."""

    a: np.ndarray
    v: np.ndarray
    time: float = 0.0
    kind: str = INTERIOR
    symmetric: bool = False

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if a.shape != v.shape or a.ndim != 1 or len(a) < 8:
            raise GeometryError("need matching 1-d grids with at least 8 nodes")
        da = np.diff(a)
        if np.any(da <= 0) or np.max(da) - np.min(da) > 1e-9 * np.max(da):
            raise GeometryError("area grid must be uniform and increasing")
        if np.any(v[1:-1] <= 0.0):
            raise GeometryError("v must be positive on the open interval")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "v", v)
        if self.symmetric and self.kind == INTERIOR:
            defect = np.max(np.abs(v - v[::-1]))
            if defect > 1e-6 * max(1.0, np.max(v)):
                raise GeometryError(f"flagged symmetric but |v - mirror| = {defect:.2e}")

    @property
    def da(self) -> float:
        return float(self.a[1] - self.a[0])

    def derivatives(self):
        """Centered v', v'' on the interior nodes (index 1..n-2)."""
        v = self.v
        da = self.da
        vp = (v[2:] - v[:-2]) / (2.0 * da)
        vpp = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / da**2
        return vp, vpp

    def concavity_defect(self) -> float:
        _, vpp = self.derivatives()
        return float(max(0.0, np.max(vpp)))


class ResidualNorms(NamedTuple):
    sup: float
    l2: float
    field: np.ndarray


def _g_values(v, vp, vpp, where):
    """Vectorized G = s / (1 + c(v') s), s = 2 v v''; inf marks lost parabolicity."""
    s = 2.0 * v * vpp
    c = coef_c_array(vp)
    den = 1.0 + c * s
    g = np.full_like(s, np.nan)
    ok = where & (den > 0.0)
    g[ok] = s[ok] / den[ok]
    g[where & ~ok] = math.inf
    return g


def comparison_rhs(vprof: VProfile, collar: float | None = None) -> np.ndarray:
    """Pointwise dv/dt field; NaN outside the evaluated (collar-trimmed) window.

    Raises GuardViolation when the slope guard fails inside the window
    (|v'| < pi interior; 0 < v' < 2 pi exterior) or parabolicity is lost.
    """
    a, v = vprof.a, vprof.v
    if collar is None:
        collar = 0.02 * (a[-1] - a[0])
    vp, vpp = vprof.derivatives()
    inner_a = a[1:-1]
    window = (inner_a >= a[0] + collar) & (inner_a <= a[-1] - collar)
    if vprof.kind == INTERIOR:
        bad = window & (np.abs(vp) >= np.pi)
    else:
        bad = window & ((vp <= 0.0) | (vp >= 2.0 * np.pi))
    if np.any(bad):
        i = int(np.argmax(bad))
        raise GuardViolation(
            f"slope guard violated at a = {inner_a[i]:.6f} (v' = {vp[i]:.6f})")
    g = _g_values(v[1:-1], vp, vpp, window)
    if np.any(np.isinf(g[window])):
        i = int(np.argmax(np.isinf(g) & window))
        raise GuardViolation(f"equation lost parabolicity at a = {inner_a[i]:.6f}")
    rhs = np.full(len(a), np.nan)
    rhs[1:-1] = np.where(
        window, g + 2.0 * v[1:-1] + vp * (np.pi - 2.0 * inner_a) - vp * vp, np.nan)
    return rhs


def pde_residual(v_minus: VProfile, v_center: VProfile, v_plus: VProfile,
                 collar: float | None = None) -> ResidualNorms:
    """Norms of (time difference - equation right side) on the trimmed grid."""
    if not (len(v_minus.a) == len(v_center.a) == len(v_plus.a)) or \
            not np.allclose(v_minus.a, v_plus.a) or not np.allclose(v_minus.a, v_center.a):
        raise GeometryError("mismatched grids")
    delta = 0.5 * (v_plus.time - v_minus.time)
    if delta <= 0:
        raise GeometryError("need v_minus.time < v_plus.time")
    dv_dt = (v_plus.v - v_minus.v) / (2.0 * delta)
    rhs = comparison_rhs(v_center, collar)
    field = dv_dt - rhs
    valid = ~np.isnan(field)
    if not np.any(valid):
        raise GeometryError("collar removed the whole grid")
    sup = float(np.max(np.abs(field[valid])))
    l2 = float(np.sqrt(np.mean(field[valid] ** 2)))
    return ResidualNorms(sup, l2, field)


def _collar_fill(a, v, i_col, kind):
    """Fill the end collars with the profile's square-root edge behavior.

    Near a = 0 every smooth profile has v = pi a - c a^{3/2} + ...; the
    coefficient is fitted at the first evolved node (and mirrored at the
    right end for interior profiles).
    """
    out = v.copy()
    ae = a[i_col]
    coeff = (np.pi * ae - v[i_col]) / ae**1.5
    out[:i_col] = np.pi * a[:i_col] - coeff * a[:i_col] ** 1.5
    if kind == INTERIOR:
        L = a[-1]
        ae_r = L - a[-1 - i_col]
        coeff_r = (np.pi * ae_r - v[-1 - i_col]) / ae_r**1.5
        tail = L - a[-i_col:]
        out[-i_col:] = np.pi * tail - coeff_r * tail**1.5
    return out


def integrate_comparison_pde(v0: VProfile, t_end: float, dt_factor: float = 0.2,
                             collar: float | None = None,
                             concavity_slack: float = 1e-9) -> VProfile:
    """Explicit time stepping of the comparison equation (interior profiles).

    dt = dt_factor * (grid spacing)^2; the collar is refreshed from the
    square-root edge ansatz every step, and concavity is re-enforced with
    the concave envelope whenever the discrete check fails beyond slack.
    """
    if v0.kind != INTERIOR:
        raise GeometryError("time integration is implemented for interior profiles")
    if t_end < v0.time:
        raise GeometryError("t_end must not precede the initial time")
    if t_end == v0.time:
        return v0
    a = v0.a
    da = v0.da
    if collar is None:
        collar = 0.02 * (a[-1] - a[0])
    i_col = max(2, int(np.ceil(collar / da)))
    dt = dt_factor * da * da
    v = _collar_fill(a, v0.v.copy(), i_col, v0.kind)
    t = v0.time
    state = VProfile(a=a, v=v, time=t, kind=v0.kind)
    while t < t_end - 1e-14:
        step = min(dt, t_end - t)
        rhs = comparison_rhs(state, collar=0.0)
        new_v = state.v.copy()
        core = slice(i_col, len(a) - i_col)
        new_v[core] = state.v[core] + step * rhs[core]
        if not np.all(np.isfinite(new_v[core])) or np.max(np.abs(new_v)) > 1e6:
            raise GuardViolation(f"blow-up detected at t = {t:.6f}")
        new_v = _collar_fill(a, new_v, i_col, v0.kind)
        t += step
        state = VProfile(a=a, v=new_v, time=t, kind=v0.kind)
        if state.concavity_defect() > concavity_slack:
            env = concave_envelope_values(a, state.v)
            state = VProfile(a=a, v=env, time=t, kind=v0.kind)
    return state


# ---------------------------------------------------------------------------
# concave envelope


def concave_envelope_values(a: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Upper concave envelope on the grid (monotone-chain upper hull).

    Hull vertices keep their input values exactly; points strictly below the
    hull are replaced by the chord value.  Near-collinear wobble within a
    relative tolerance is absorbed so the operation is idempotent bit for bit.
    """
    a = np.asarray(a, dtype=float)
    v = np.asarray(v, dtype=float)
    n = len(a)
    scale = max(float(np.max(np.abs(v))), 1e-300) * (a[-1] - a[0])
    tol = 1e-12 * scale
    hull = [0]
    for i in range(1, n):
        while len(hull) >= 2:
            j, k = hull[-2], hull[-1]
            cross = (a[k] - a[j]) * (v[i] - v[j]) - (v[k] - v[j]) * (a[i] - a[j])
            if cross >= -tol:
                hull.pop()
            else:
                break
        hull.append(i)
    out = v.copy()
    for j, k in zip(hull[:-1], hull[1:]):
        if k - j > 1:
            w = (a[j + 1:k] - a[j]) / (a[k] - a[j])
            out[j + 1:k] = v[j] + w * (v[k] - v[j])
    return out


def concave_envelope(vprof: VProfile) -> VProfile:
    if np.any(vprof.v[1:-1] <= 0.0):
        raise GeometryError("envelope expects positive values on the open interval")
    return replace(vprof, v=concave_envelope_values(vprof.a, vprof.v))


def subsolution_rescale(vprof: VProfile, eps: float, growth: float = 2.5) -> VProfile:
    """Shrink a model solution into a strict subsolution (testing utility).

    Applies v_eps(a) = mu * v(pi/2 + (a - pi/2)/mu) with mu = 1 - eps at the
    profile's own time, then bridges the uncovered ends with the concave
    envelope (linear segments through the endpoints).
    """
    if not 0.0 < eps < 1.0:
        raise GeometryError("eps must lie in (0, 1)")
    if vprof.kind != INTERIOR:
        raise GeometryError("the rescale construction is for interior profiles")
    mu = 1.0 - eps
    a = vprof.a
    mid = 0.5 * (a[0] + a[-1])
    mapped = mid + (a - mid) / mu
    inside = (mapped >= a[0]) & (mapped <= a[-1])
    v_new = np.zeros_like(vprof.v)
    v_new[inside] = mu * np.interp(mapped[inside], a, vprof.v)
    v_new = concave_envelope_values(a, v_new)
    return replace(vprof, v=v_new)


# ---------------------------------------------------------------------------
# domination harness and curvature bounds


def profile_dominates(big: Profile, small: Profile, n_grid: int = 512,
                      grid: Optional[np.ndarray] = None):
    """(dominates, margin): margin = min(big - small) on the common grid."""
    if grid is None:
        lo = max(big.a[0], small.a[0])
        hi = min(big.a[-1], small.a[-1])
        if hi <= lo:
            raise GeometryError("profiles have disjoint area ranges")
        grid = np.linspace(lo, hi, n_grid)
    margin = float(np.min(big.interp(grid) - small.interp(grid)))
    return margin >= 0.0, margin


def find_t0(psi0: Profile, model_profile_at: Callable[[float], Profile],
            bracket=(-20.0, 5.0), tol: float = 1e-3, n_grid: int = 512):
    """Largest shift t0 with psi0 >= model profile at t0, by bisection.

    Returns (t0, flag); flag 'bracket-upper-end' means domination persisted
    through the whole bracket.  The model family is assumed pointwise
    increasing in t (spot-checked).
    """
    lo, hi = bracket

    def dominated(t):
        ok, _ = profile_dominates(psi0, model_profile_at(t), n_grid=n_grid)
        return ok

    probe = np.linspace(lo, hi, 4)
    vals = [model_profile_at(t) for t in probe[:2]]
    mid = 0.5 * (vals[0].a[0] + vals[0].a[-1])
    if vals[0].interp(mid) > vals[1].interp(mid) + 1e-12:
        raise GeometryError("model profile family is not increasing in t")
    if not dominated(lo):
        raise GeometryError(f"no domination even at the bracket start t0 = {lo}")
    if dominated(hi):
        return hi, "bracket-upper-end"
    while hi - lo > tol:
        mid_t = 0.5 * (lo + hi)
        if dominated(mid_t):
            lo = mid_t
        else:
            hi = mid_t
    return lo, ""


def curvature_upper_bound(t: float, t0: float) -> float:
    """Model maximum curvature at the shifted time, e^{-(t-t0)}/sqrt(1-e^{-e^{-2(t-t0)}})."""
    return paperclip_max_curvature_normalized(t - t0)


def curvature_lower_bound(t: float, C: float) -> float:
    """-1 / sqrt(C (e^{2t} - 1)) for t > 0."""
    if t <= 0.0:
        raise GeometryError("the lower bound applies for t > 0")
    if C <= 0.0:
        raise GeometryError("C must be positive")
    return float(-1.0 / np.sqrt(C * np.expm1(2.0 * t)))


# ---------------------------------------------------------------------------
# canonical v-profiles


def disk_vprofile(n_grid: int = 1024, time: float = 0.0) -> VProfile:
    """Stationary solution: v of the unit-disk profile on a uniform grid."""
    a = np.linspace(0.0, np.pi, n_grid + 1)
    v = np.zeros_like(a)
    v[1:-1] = 0.5 * disk_profile_vec(a[1:-1]) ** 2
    return VProfile(a=a, v=v, time=time, kind=INTERIOR, symmetric=True)


def expander_vprofile(C: float, t: float, a_max: float = 20.0,
                      n_grid: int = 1024) -> VProfile:
    """v of the expanding-soliton profile at normalized time t (exterior mode).

    Only the left grid end carries the v = 0 boundary value; the right end
    holds the genuine profile value (the exterior domain is unbounded).
    """
    table = expander_family(C, t=t, a_max=1.2 * a_max + 1.0)
    vi = table.v_interpolator()
    a = np.linspace(0.0, a_max, n_grid + 1)
    v = np.zeros_like(a)
    v[1:] = vi(np.clip(a[1:], table.a[0], table.a[-1]))
    return VProfile(a=a, v=v, time=t, kind=EXTERIOR)


def paperclip_vprofile(t: float, n_grid: int = 1024, n_base: int = 2000) -> VProfile:
    """v of the normalized paperclip profile at time t on a uniform grid."""
    a = np.linspace(0.0, np.pi, n_grid + 1)
    table = paperclip_family(t, n_base)
    vi = table.v_interpolator()
    folded = np.minimum(a[1:-1], np.pi - a[1:-1])
    v = np.zeros_like(a)
    v[1:-1] = vi(np.clip(folded, table.a[0], table.a[-1]))
    tiny = folded < table.a[0]
    if np.any(tiny):
        f_small = paperclip_profile_values(t, folded[tiny], table=table)
        v[1:-1][tiny] = 0.5 * f_small**2
    return VProfile(a=a, v=v, time=t, kind=INTERIOR, symmetric=True)
