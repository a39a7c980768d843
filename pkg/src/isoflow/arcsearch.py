"""Generic isoperimetric profiles by search over orthogonal circular arcs.

A constant-curvature arc (or straight chord) meets the curve orthogonally at
X(u1) and X(u2) exactly when

    D(u1, u2) = (w . N1)(w x N2) + (w . N2)(w x N1) = 0,   w = X2 - X1,

with N the outward unit normals: the circle through X2 tangent to the normal
direction at X1 then arrives normal at X2 as well.  D handles straight
chords (antiparallel tangents) and diameter circles without special casing,
so candidates are the sign changes of D along the sampled boundary, refined
by bisection.  Each candidate cuts the plane into a piece adjacent to the
anticlockwise boundary run u1 -> u2 and its complement; areas come from a
prefix-sum shoelace plus the circular-segment correction of the closing arc.

The whole pipeline is vectorized: brackets from all anchors are bisected in
one batch, and containment is tested through a rasterized point locator with
an exact winding fallback near the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .curves import SampledCurve, compute_geometry, points_in_polygon
from .errors import CoverageError, GeometryError
from .profiles import EXTERIOR, INTERIOR, Profile, osculating_profile_extension

_TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class ArcCandidate:
    """A boundary-orthogonal arc with its cut bookkeeping.

    enclosed_area is the area of the component adjacent to the anticlockwise
    boundary piece from u1 to u2 ('ccw-piece' side); for exterior candidates
    it is the bounded exterior pocket between that piece and the arc.
    """

    u1: float
    u2: float
    center: Optional[np.ndarray]
    radius: float                # inf for straight chords
    arc_length: float
    enclosed_area: float
    side: str
    mode: str

    def endpoint_residuals(self, curve: SampledCurve):
        """(equidistance, orthogonality) defects of the candidate (diagnostics)."""
        frame = _Frame(curve)
        x1, t1, _ = frame.interp(np.array([self.u1]))
        x2, t2, _ = frame.interp(np.array([self.u2]))
        if self.center is None or not np.isfinite(self.radius):
            w = (x2 - x1)[0]
            w = w / np.linalg.norm(w)
            return 0.0, float(max(abs(w @ t1[0]), abs(w @ t2[0])))
        d1 = np.linalg.norm(self.center - x1[0])
        d2 = np.linalg.norm(self.center - x2[0])
        r1 = (self.center - x1[0]) / d1
        r2 = (self.center - x2[0]) / d2
        ortho = max(abs(_cross(r1, t1[0])), abs(_cross(r2, t2[0])))
        return float(abs(d1 - d2)), float(ortho)


def _cross(a, b):
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


class _ContainmentGrid:
    """Raster acceleration for point-in-polygon queries.

    Cell centers away from the boundary band carry a precomputed
    inside/outside label; points landing in band cells (or off the raster)
    fall back to the exact winding test.
    """

    def __init__(self, polygon: np.ndarray, res: int = 512):
        self.polygon = polygon
        lo = polygon.min(axis=0)
        hi = polygon.max(axis=0)
        margin = 0.05 * float(np.max(hi - lo)) + 1e-9
        self.lo = lo - margin
        self.hi = hi + margin
        self.res = res
        self.cell = (self.hi - self.lo) / res
        band = np.zeros((res, res), dtype=bool)
        a = polygon
        b = np.roll(polygon, -1, axis=0)
        seg_len = np.linalg.norm(b - a, axis=1)
        step = 0.45 * float(np.min(self.cell))
        mmax = max(int(np.max(seg_len) / step) + 2, 2)
        ts = np.linspace(0.0, 1.0, mmax)
        pts = (a[:, None, :] + ts[None, :, None] * (b - a)[:, None, :]).reshape(-1, 2)
        ij = np.clip(((pts - self.lo) / self.cell).astype(int), 0, res - 1)
        band[ij[:, 0], ij[:, 1]] = True
        grown = band.copy()
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                if dx or dy:
                    sx = slice(max(dx, 0), res + min(dx, 0))
                    tx = slice(max(-dx, 0), res + min(-dx, 0))
                    sy = slice(max(dy, 0), res + min(dy, 0))
                    ty = slice(max(-dy, 0), res + min(-dy, 0))
                    grown[sx, sy] |= band[tx, ty]
        self.band = grown
        # classify cell centers by scanline parity fill (exact and fast)
        inside = np.zeros((res, res), dtype=bool)
        ax, ay = a[:, 0], a[:, 1]
        bx, by = b[:, 0], b[:, 1]
        xs_centers = self.lo[0] + (np.arange(res) + 0.5) * self.cell[0]
        for j in range(res):
            yc = self.lo[1] + (j + 0.5) * self.cell[1]
            hit = (ay <= yc) != (by <= yc)
            if not np.any(hit):
                continue
            xc = ax[hit] + (yc - ay[hit]) * (bx[hit] - ax[hit]) / (by[hit] - ay[hit])
            counts = np.searchsorted(np.sort(xc), xs_centers, side="right")
            inside[:, j] = (counts % 2) == 1
        self.inside = inside

    def contains(self, pts: np.ndarray) -> np.ndarray:
        out = np.zeros(len(pts), dtype=bool)
        in_box = np.all((pts >= self.lo) & (pts <= self.hi), axis=1)
        idx_box = np.where(in_box)[0]
        if len(idx_box) == 0:
            return out
        ij = np.clip(((pts[idx_box] - self.lo) / self.cell).astype(int), 0, self.res - 1)
        banded = self.band[ij[:, 0], ij[:, 1]]
        out[idx_box[~banded]] = self.inside[ij[~banded, 0], ij[~banded, 1]]
        exact_idx = idx_box[banded]
        if len(exact_idx):
            out[exact_idx] = points_in_polygon(pts[exact_idx], self.polygon)
        return out


class _Frame:
    """Precomputed interpolation and area bookkeeping for one curve."""

    def __init__(self, curve: SampledCurve):
        if not curve.closed:
            raise GeometryError("arc search expects a closed curve")
        self.curve = curve
        self.n = curve.n
        geo = compute_geometry(curve)
        self.geometry = geo
        self.vertices = curve.vertices
        self.tangents = geo.tangent
        self.normals = geo.normal
        self.area = geo.area
        self.length = geo.length
        self.edge_len = np.linalg.norm(curve.edges(), axis=1)
        self.min_spacing = float(np.min(self.edge_len))
        nxt = np.roll(self.vertices, -1, axis=0)
        self.cross_prefix = np.concatenate([[0.0], np.cumsum(_cross(self.vertices, nxt))])
        self.kappa = geo.curvature
        self._grid = None

    @property
    def containment(self) -> _ContainmentGrid:
        if self._grid is None:
            self._grid = _ContainmentGrid(self.vertices)
        return self._grid

    def interp(self, u):
        """(X, T, N) at float vertex parameters (T renormalized lerp)."""
        u = np.mod(np.asarray(u, dtype=float), self.n)
        i0 = np.floor(u).astype(int) % self.n
        i1 = (i0 + 1) % self.n
        w = (u - np.floor(u))[:, None]
        x = (1.0 - w) * self.vertices[i0] + w * self.vertices[i1]
        t = (1.0 - w) * self.tangents[i0] + w * self.tangents[i1]
        norm = np.linalg.norm(t, axis=1, keepdims=True)
        norm[norm == 0.0] = 1.0
        t = t / norm
        nrm = np.stack([t[:, 1], -t[:, 0]], axis=1)
        return x, t, nrm

    def piece_cross_sums(self, u1, u2, x1, x2):
        """Shoelace cross-sum of [X(u1), grid vertices between, X(u2)] loops."""
        n = self.n
        u1 = np.asarray(u1, dtype=float)
        u2 = np.asarray(u2, dtype=float)
        span = np.mod(u2 - u1, n)
        j1 = np.ceil(u1)
        j2 = np.floor(u1 + span)
        empty = j1 > j2
        lo = np.mod(j1, n).astype(int)
        hi = np.mod(j2, n).astype(int)
        base = self.cross_prefix[hi] - self.cross_prefix[lo]
        base = np.where(hi < lo, base + self.cross_prefix[-1], base)
        v_first = self.vertices[lo]
        v_last = self.vertices[hi]
        full = (_cross(x1, v_first) + base + _cross(v_last, x2) + _cross(x2, x1))
        return np.where(empty, 0.0, full)


def _ccw_dist(u_from, u_to, n):
    return np.mod(u_to - u_from, n)


def _d_values(frame: _Frame, u1, u2):
    """D at paired parameter arrays (broadcast u1 against u2)."""
    u1 = np.broadcast_to(np.asarray(u1, dtype=float), np.shape(u2)).ravel()
    u2 = np.asarray(u2, dtype=float).ravel()
    x1, _, n1 = frame.interp(u1)
    x2, _, n2 = frame.interp(u2)
    w = x2 - x1
    ww = np.sum(w * w, axis=1)
    ww[ww == 0.0] = 1.0
    return (np.sum(w * n1, axis=1) * _cross(w, n2)
            + np.sum(w * n2, axis=1) * _cross(w, n1)) / ww


def _collect_brackets(frame: _Frame, anchors: np.ndarray, exclude: float,
                      per_anchor_cap: int):
    """Sign-change brackets of D(u1, .) for every anchor, evenly thinned."""
    n = frame.n
    offs = np.arange(int(np.floor(exclude)) + 1, n - int(np.floor(exclude)), dtype=float)
    u1_list, lo_list, hi_list = [], [], []
    for u1 in anchors:
        d = _d_values(frame, u1, u1 + offs)
        sign = np.sign(d)
        flip = np.where(sign[1:] * sign[:-1] < 0)[0]
        zero = np.where(sign == 0)[0]
        if len(flip) > per_anchor_cap:
            flip = flip[np.linspace(0, len(flip) - 1, per_anchor_cap).astype(int)]
        if len(flip):
            u1_list.append(np.full(len(flip), u1))
            lo_list.append(u1 + offs[flip])
            hi_list.append(u1 + offs[flip + 1])
        if len(zero):
            u1_list.append(np.full(len(zero), u1))
            lo_list.append(u1 + offs[zero])
            hi_list.append(u1 + offs[zero])
    if not u1_list:
        return np.empty(0), np.empty(0), np.empty(0)
    return (np.concatenate(u1_list), np.concatenate(lo_list), np.concatenate(hi_list))


def _bisect_all(frame: _Frame, u1, lo, hi, iters: int = 42):
    live = hi > lo
    d_lo = _d_values(frame, u1, lo)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        d_mid = _d_values(frame, u1, mid)
        go_left = (d_lo * d_mid) <= 0.0
        hi = np.where(live & go_left, mid, hi)
        lo = np.where(live & ~go_left, mid, lo)
        d_lo = np.where(live & ~go_left, d_mid, d_lo)
    return 0.5 * (lo + hi)


def _batched_candidates(frame: _Frame, u1, u2, mode, coarse_m: int = 48,
                        fine_cap: int = 384, area_window=None):
    """Vectorized candidate finishing; returns parallel arrays of survivors.

    Output: (u1, u2, cx, cy, radius, arc_length, area) with radius = inf on
    straight chords.  area_window (lo, hi) prunes candidates before the
    containment test.
    """
    R = len(u1)
    if R == 0:
        empty = np.empty(0)
        return (empty,) * 7
    if area_window is None:
        area_window = (0.0, np.inf)
    x1, t1, _ = frame.interp(u1)
    x2, t2, _ = frame.interp(u2)
    w = x2 - x1
    wnorm = np.linalg.norm(w, axis=1)
    ok = wnorm > 4.0 * frame.min_spacing
    cross_t = _cross(t1, t2)
    what = w / np.maximum(wnorm, 1e-300)[:, None]
    parallel = np.abs(cross_t) < 1e-8
    dot1 = np.abs(np.sum(what * t1, axis=1))
    dot2 = np.abs(np.sum(what * t2, axis=1))
    is_chord = parallel & (dot1 < 1e-5) & (dot2 < 1e-5) & ok
    is_diam = parallel & ~is_chord & (np.abs(_cross(what, t1)) < 1e-5) & ok
    is_circle = ~parallel & ok
    with np.errstate(divide="ignore", invalid="ignore"):
        s1 = _cross(w, t2) / cross_t
        center = x1 + s1[:, None] * t1
        center[is_diam] = 0.5 * (x1[is_diam] + x2[is_diam])
        r1 = np.linalg.norm(center - x1, axis=1)
        r2 = np.linalg.norm(center - x2, axis=1)
        radius = 0.5 * (r1 + r2)
        mismatch = np.abs(r1 - r2) > 1e-5 * (r1 + r2 + frame.min_spacing)
    mismatch |= ~np.isfinite(radius)
    is_circle &= ~mismatch
    chordlike = is_circle & (radius > 1e7 * frame.length)
    is_chord |= chordlike
    is_circle &= ~chordlike
    circ = is_circle | is_diam

    # shoelace of the piece loops (shared by chord and both arc variants)
    piece = 0.5 * frame.piece_cross_sums(u1, u2, x1, x2)

    acc = []   # tuples of per-survivor arrays

    lo_w, hi_w = area_window

    if np.any(is_chord):
        idx = np.where(is_chord)[0]
        signed = piece[idx]
        area = signed if mode == INTERIOR else -signed
        window = (area >= lo_w) & (area <= hi_w)
        idx, area = idx[window], area[window]
        if len(idx):
            ts = (np.arange(32) + 0.5) / 32.0
            pts = x1[idx, None, :] + ts[None, :, None] * w[idx, None, :]
            inside = frame.containment.contains(pts.reshape(-1, 2)).reshape(len(idx), 32)
            good = np.all(inside, axis=1) if mode == INTERIOR else ~np.any(inside, axis=1)
            sel = idx[good]
            if len(sel):
                acc.append((u1[sel], u2[sel],
                            0.5 * (x1[sel, 0] + x2[sel, 0]),
                            0.5 * (x1[sel, 1] + x2[sel, 1]),
                            np.full(len(sel), np.inf), wnorm[sel], area[good]))

    if np.any(circ):
        base = np.where(circ)[0]
        a1_all = np.arctan2(x1[base, 1] - center[base, 1], x1[base, 0] - center[base, 0])
        a2_all = np.arctan2(x2[base, 1] - center[base, 1], x2[base, 0] - center[base, 0])
        d_ccw_all = np.mod(a2_all - a1_all, _TWO_PI)
        for variant in (0, 1):
            delta_all = d_ccw_all if variant == 0 else d_ccw_all - _TWO_PI
            segment = 0.5 * radius[base] ** 2 * ((-delta_all) - np.sin(-delta_all))
            signed = piece[base] + segment
            area = signed if mode == INTERIOR else -signed
            window = ((area >= lo_w) & (area <= hi_w)
                      & (np.abs(delta_all) > 1e-12))
            idx = base[window]
            if not len(idx):
                continue
            a1, delta, ar = a1_all[window], delta_all[window], area[window]
            ts = (np.arange(coarse_m) + 0.5) / coarse_m
            phis = a1[:, None] + delta[:, None] * ts[None, :]
            pts = center[idx, None, :] + radius[idx, None, None] * np.stack(
                [np.cos(phis), np.sin(phis)], axis=2)
            inside = frame.containment.contains(pts.reshape(-1, 2)).reshape(len(idx), coarse_m)
            good = np.all(inside, axis=1) if mode == INTERIOR else ~np.any(inside, axis=1)
            # refined pass for long arcs, at the containment-sampling density,
            # batched over one ragged point array
            need_fine = good & (radius[idx] * np.abs(delta) > coarse_m * frame.min_spacing)
            fi = np.where(need_fine)[0]
            if len(fi):
                m_arr = np.minimum(np.ceil(radius[idx[fi]] * np.abs(delta[fi])
                                           / frame.min_spacing), fine_cap).astype(int)
                starts = np.concatenate([[0], np.cumsum(m_arr)[:-1]])
                total = int(np.sum(m_arr))
                arc_of = np.repeat(np.arange(len(fi)), m_arr)
                pos = np.arange(total) - np.repeat(starts, m_arr)
                tf = (pos + 0.5) / m_arr[arc_of]
                ph = a1[fi][arc_of] + delta[fi][arc_of] * tf
                p = center[idx[fi]][arc_of] + radius[idx[fi]][arc_of, None] * np.stack(
                    [np.cos(ph), np.sin(ph)], axis=1)
                ins = frame.containment.contains(p)
                per_arc_in = np.add.reduceat(ins.astype(np.int64), starts)
                okk = per_arc_in == m_arr if mode == INTERIOR else per_arc_in == 0
                good[fi[~okk]] = False
            sel = idx[good]
            if len(sel):
                acc.append((u1[sel], u2[sel], center[sel, 0], center[sel, 1],
                            radius[sel], radius[sel] * np.abs(delta[good]), ar[good]))

    if not acc:
        empty = np.empty(0)
        return (empty,) * 7
    return tuple(np.concatenate([part[i] for part in acc]) for i in range(7))


def arc_candidates(curve: SampledCurve, u1: float, mode: str = INTERIOR,
                   frame: Optional[_Frame] = None):
    """All boundary-orthogonal arcs anchored at parameter u1."""
    frame = frame or _Frame(curve)
    u1a, lo, hi = _collect_brackets(frame, np.array([float(u1)]), 2.0, 256)
    roots = _bisect_all(frame, u1a, lo, hi)
    uu1, uu2, cx, cy, rad, length, area = _batched_candidates(frame, u1a, roots, mode)
    cands = []
    for k in range(len(uu1)):
        center = None if not np.isfinite(rad[k]) else np.array([cx[k], cy[k]])
        cands.append(ArcCandidate(
            u1=float(uu1[k]), u2=float(np.mod(uu2[k], frame.n)), center=center,
            radius=float(rad[k]), arc_length=float(length[k]),
            enclosed_area=float(area[k]), side="ccw-piece", mode=mode))
    return cands


def turning_tangents_check(curve: SampledCurve, candidate: ArcCandidate,
                           fprime: float) -> float:
    """| integral of kappa along the candidate's ccw piece - (pi - f f') |."""
    frame = _Frame(curve)
    n = frame.n
    u1, u2 = candidate.u1, candidate.u2
    span = _ccw_dist(u1, u2, n)
    j1 = int(np.ceil(u1)) % n
    count = int(np.floor(u1 + span) - np.ceil(u1)) + 1
    s = frame.geometry.arclength
    total_len = frame.length
    s_u1 = _param_arclength(frame, u1)
    s_u2 = _param_arclength(frame, u2)
    span_s = (s_u2 - s_u1) % total_len
    if count <= 0:
        mid_kappa = _kappa_at(frame, u1 + 0.5 * span)
        integral = span_s * mid_kappa
    else:
        idx = (j1 + np.arange(count)) % n
        s_nodes = np.concatenate([[0.0], np.mod(s[idx] - s_u1, total_len), [span_s]])
        k_nodes = np.concatenate([[_kappa_at(frame, u1)], frame.kappa[idx],
                                  [_kappa_at(frame, u2)]])
        integral = float(np.trapezoid(k_nodes, s_nodes))
    target = np.pi - candidate.arc_length * fprime
    return abs(integral - target)


def _param_arclength(frame: _Frame, u: float) -> float:
    i = int(np.floor(u)) % frame.n
    fr = u - np.floor(u)
    return float(frame.geometry.arclength[i] + fr * frame.edge_len[i])


def _kappa_at(frame: _Frame, u: float) -> float:
    i = int(np.floor(u)) % frame.n
    j = (i + 1) % frame.n
    fr = u - np.floor(u)
    return float((1.0 - fr) * frame.kappa[i] + fr * frame.kappa[j])


# ---------------------------------------------------------------------------
# profile assembly


def _lipschitz_prune(a, f, slope: float, tol: float = 1e-3):
    """Drop points inconsistent with the slope bound of v = f^2/2.

    Every admissible profile has |dv/da| below the given slope (pi in the
    interior case), so a candidate whose v exceeds a slope-cone over any
    other candidate belongs to a non-minimizing family.  Running minima give
    the cone envelope in O(n).
    """
    a = np.asarray(a)
    f = np.asarray(f)
    v = 0.5 * f * f
    fwd = np.empty_like(v)
    running = np.inf
    prev = a[0]
    for k in range(len(a)):
        running = min(running + slope * (a[k] - prev), v[k])
        fwd[k] = running
        prev = a[k]
    bwd = np.empty_like(v)
    running = np.inf
    prev = a[-1]
    for k in range(len(a) - 1, -1, -1):
        running = min(running + slope * (prev - a[k]), v[k])
        bwd[k] = running
        prev = a[k]
    keep = v <= np.minimum(fwd, bwd) + tol
    return a[keep], f[keep]


def _lower_envelope(points_a, points_f, n_bins: int, log_bins: bool = False,
                    slope: float = np.pi, prune_tol: float = 1e-3):
    order = np.argsort(points_a)
    a_sorted = points_a[order]
    f_sorted = points_f[order]
    if len(a_sorted) == 0:
        return a_sorted, f_sorted
    coord = np.log(a_sorted) if log_bins else a_sorted
    lo, hi = coord[0], coord[-1]
    if hi <= lo:
        return a_sorted[:1], f_sorted[:1]
    bins = np.minimum(((coord - lo) / (hi - lo) * n_bins).astype(int), n_bins - 1)
    # segmented argmin per bin, keeping the exact candidate coordinates
    keep_a, keep_f = [], []
    boundaries = np.concatenate([[0], np.where(np.diff(bins))[0] + 1, [len(bins)]])
    for start, stop in zip(boundaries[:-1], boundaries[1:]):
        k = start + int(np.argmin(f_sorted[start:stop]))
        keep_a.append(a_sorted[k])
        keep_f.append(f_sorted[k])
    return _lipschitz_prune(np.asarray(keep_a), np.asarray(keep_f), slope, tol=prune_tol)


def _sweep(curve, mode, u_stride, frame=None, max_candidates=30000, area_window=None):
    frame = frame or _Frame(curve)
    anchors = np.arange(0, frame.n, u_stride, dtype=float)
    per_anchor = max(8, max_candidates // max(len(anchors), 1))
    u1a, lo, hi = _collect_brackets(frame, anchors, 2.0, per_anchor)
    roots = _bisect_all(frame, u1a, lo, hi)
    uu1, uu2, cx, cy, rad, length, area = _batched_candidates(
        frame, u1a, roots, mode, area_window=area_window)
    if mode == INTERIOR and len(area):
        pts_a = np.concatenate([area, frame.area - area])
        pts_f = np.concatenate([length, length])
    else:
        pts_a, pts_f = area, length
    return frame, pts_a, pts_f


def generic_profile(curve: SampledCurve, a_grid=None, u_stride: int = 1,
                    n_grid: int = 256, extension_floor: float = 4e-3,
                    max_gap_frac: float = 0.2, frame=None) -> Profile:
    """Interior isoperimetric profile of an area-pi region by arc search.

    Candidate (area, length) points from every anchor vertex are reduced to
    their lower envelope and interpolated onto the requested grid; areas
    below extension_floor (where arcs shrink under the mesh scale) come from
    the osculating-disk model with the curve's numeric extreme curvature.
    """
    window = (0.4 * extension_floor, np.pi)
    frame, pts_a, pts_f = _sweep(curve, INTERIOR, u_stride, frame, area_window=window)
    total = frame.area
    if abs(total - np.pi) > 1e-6:
        raise GeometryError("interior profile expects an area-pi region; normalize first")
    if a_grid is None:
        a_grid = np.linspace(extension_floor / 4.0, total - extension_floor / 4.0, n_grid)
    a_grid = np.asarray(a_grid, dtype=float)
    kappa_max = float(np.max(frame.kappa))
    ext_lo = np.geomspace(min(extension_floor / 4.0, np.min(a_grid)), extension_floor, 64)
    ext_f = osculating_profile_extension(ext_lo, kappa_max, INTERIOR)
    keep = (pts_a > extension_floor) & (pts_a < total - extension_floor)
    env_a, env_f = _lower_envelope(pts_a[keep], pts_f[keep], n_bins=2048, slope=np.pi)
    _check_gaps(env_a, extension_floor, total - extension_floor, max_gap_frac, total)
    all_a = np.concatenate([ext_lo, env_a, total - ext_lo[::-1]])
    all_f = np.concatenate([ext_f, env_f, ext_f[::-1]])
    order = np.argsort(all_a)
    all_a, all_f = all_a[order], all_f[order]
    strict = np.concatenate([[True], np.diff(all_a) > 1e-15])
    all_a, all_f = all_a[strict], all_f[strict]
    f_on_grid = np.interp(a_grid, all_a, all_f)
    prov = tuple("asymptotic-extension" if (aa <= extension_floor or aa >= total - extension_floor)
                 else "arc-search" for aa in a_grid)
    return Profile(kind=INTERIOR, a=a_grid, f=f_on_grid, provenance=prov)


def exterior_generic_profile(curve: SampledCurve, a_grid=None, u_stride: int = 1,
                             n_grid: int = 256, a_max: float = 50.0,
                             extension_floor: float = 4e-3,
                             max_gap_frac: float = 0.2, frame=None) -> Profile:
    """Exterior profile: arcs in the complement, capped by the free disk.

    The disjoint round disk of area a is always admissible in the exterior,
    so the profile is also bounded by sqrt(4 pi a); the reported value is the
    minimum of the arc envelope and that cap.
    """
    window = (0.4 * extension_floor, 1.1 * a_max)
    frame, pts_a, pts_f = _sweep(curve, EXTERIOR, u_stride, frame, area_window=window)
    if a_grid is None:
        a_grid = np.geomspace(extension_floor / 4.0, a_max, n_grid)
    a_grid = np.asarray(a_grid, dtype=float)
    kappa_min = float(np.min(frame.kappa))
    ext_lo = np.geomspace(min(extension_floor / 4.0, np.min(a_grid)), extension_floor, 64)
    ext_f = osculating_profile_extension(ext_lo, kappa_min, EXTERIOR)
    keep = pts_a > extension_floor
    env_a, env_f = _lower_envelope(pts_a[keep], pts_f[keep], n_bins=6144, log_bins=True,
                                   slope=2.0 * np.pi)
    _check_gaps(env_a, extension_floor, float(np.max(a_grid)), max_gap_frac,
                float(np.max(a_grid)))
    all_a = np.concatenate([ext_lo, env_a])
    all_f = np.concatenate([ext_f, env_f])
    order = np.argsort(all_a)
    all_a, all_f = all_a[order], all_f[order]
    strict = np.concatenate([[True], np.diff(all_a) > 1e-15])
    all_a, all_f = all_a[strict], all_f[strict]
    f_on_grid = np.interp(a_grid, all_a, all_f, right=np.nan)
    f_on_grid = np.where(np.isnan(f_on_grid), np.sqrt(4.0 * np.pi * a_grid), f_on_grid)
    f_on_grid = np.minimum(f_on_grid, np.sqrt(4.0 * np.pi * a_grid))
    prov = tuple("asymptotic-extension" if aa <= extension_floor else "arc-search"
                 for aa in a_grid)
    return Profile(kind=EXTERIOR, a=a_grid, f=f_on_grid, provenance=prov)


def _check_gaps(env_a, lo, hi, max_gap_frac, scale):
    if len(env_a) < 2:
        raise CoverageError("arc search produced too few candidates", gaps=[(lo, hi)])
    gaps = []
    max_gap = max_gap_frac * scale
    bounds = np.concatenate([[lo], env_a, [hi]])
    for left, right in zip(bounds[:-1], bounds[1:]):
        if right - left > max_gap:
            gaps.append((float(left), float(right)))
    if gaps:
        raise CoverageError(f"profile grid has {len(gaps)} coverage hole(s)", gaps=gaps)
