"""Planar sampled curves and their discrete differential geometry.

Curves are polylines.  Closed curves are stored anticlockwise with the
outward normal obtained by rotating the unit tangent by -pi/2; under this
convention the unit circle has curvature +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import GeometryError

MIN_VERTICES = 8


def _as_vertex_array(vertices) -> np.ndarray:
    v = np.asarray(vertices, dtype=float)
    if v.ndim != 2 or v.shape[1] != 2:
        raise GeometryError(f"vertices must have shape (n, 2), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise GeometryError("vertices contain non-finite components")
    return v


def shoelace_area(vertices: np.ndarray) -> float:
    """Signed area of the closed polygon (positive for anticlockwise)."""
    x, y = vertices[:, 0], vertices[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


@dataclass(frozen=True)
class SampledCurve:
    """Ordered planar polyline, closed (anticlockwise) or open."""

    vertices: np.ndarray
    closed: bool = True

    def __post_init__(self):
        v = _as_vertex_array(self.vertices)
        object.__setattr__(self, "vertices", v)
        if len(v) < MIN_VERTICES:
            raise GeometryError(f"need at least {MIN_VERTICES} vertices, got {len(v)}")
        nxt = np.roll(v, -1, axis=0) if self.closed else v[1:]
        cur = v if self.closed else v[:-1]
        if np.any(np.all(nxt == cur, axis=1)):
            raise GeometryError("consecutive vertices must be distinct")
        if self.closed and shoelace_area(v) <= 0.0:
            raise GeometryError("closed curves must be anticlockwise (signed area > 0)")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def area(self) -> float:
        if not self.closed:
            raise GeometryError("area is defined for closed curves only")
        return shoelace_area(self.vertices)

    def length(self) -> float:
        return float(np.sum(np.linalg.norm(self.edges(), axis=1)))

    def edges(self) -> np.ndarray:
        if self.closed:
            return np.roll(self.vertices, -1, axis=0) - self.vertices
        return np.diff(self.vertices, axis=0)

    def point_at(self, u) -> np.ndarray:
        """Linear interpolation at float vertex parameter(s) u in [0, n)."""
        u = np.asarray(u, dtype=float)
        n = self.n
        if self.closed:
            u = np.mod(u, n)
            i0 = np.floor(u).astype(int) % n
            i1 = (i0 + 1) % n
        else:
            u = np.clip(u, 0.0, n - 1.0)
            i0 = np.minimum(np.floor(u).astype(int), n - 2)
            i1 = i0 + 1
        w = (u - i0)[..., None]
        return (1.0 - w) * self.vertices[i0] + w * self.vertices[i1]

    def scaled(self, factor: float) -> "SampledCurve":
        return SampledCurve(self.vertices * factor, closed=self.closed)


def ensure_anticlockwise(vertices: np.ndarray) -> np.ndarray:
    """Return the vertex list oriented anticlockwise (reversed if needed)."""
    v = _as_vertex_array(vertices)
    return v if shoelace_area(v) > 0 else v[::-1].copy()


@dataclass(frozen=True)
class CurveGeometry:
    """Per-vertex tangent/normal/curvature plus arclength and totals.

    The curvature comes from the circumscribed circle through each vertex
    triple, which is exact on circles for arbitrary spacing and O(h^2) on
    smooth curves.  The tangent uses the chord combination that is likewise
    exact on circles.
    """

    tangent: np.ndarray
    normal: np.ndarray
    curvature: np.ndarray
    arclength: np.ndarray
    length: float
    area: float


def _triple_geometry(prev_pts, pts, next_pts):
    a = pts - prev_pts
    b = next_pts - pts
    chord = next_pts - prev_pts
    la = np.linalg.norm(a, axis=1)
    lb = np.linalg.norm(b, axis=1)
    lc = np.linalg.norm(chord, axis=1)
    cross = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    denom = la * lb * lc
    if np.any(denom == 0.0):
        raise GeometryError("degenerate vertex triple (repeated points)")
    kappa = 2.0 * cross / denom
    # tangent weights lb, la are proportional to the circumcircle half-angle
    # sines, so the combined direction is the exact circle tangent
    t = a * (lb / la)[:, None] + b * (la / lb)[:, None]
    norm = np.linalg.norm(t, axis=1)
    bad = norm == 0.0
    if np.any(bad):
        t[bad] = chord[bad]
        norm = np.linalg.norm(t, axis=1)
    t /= norm[:, None]
    return t, kappa


def compute_geometry(curve: SampledCurve) -> CurveGeometry:
    """Tangent, outward normal, curvature, arclength, length, enclosed area."""
    v = curve.vertices
    n = len(v)
    if n < 3:
        raise GeometryError("geometry needs at least 3 vertices")
    if curve.closed:
        tangent, kappa = _triple_geometry(np.roll(v, 1, axis=0), v, np.roll(v, -1, axis=0))
        area = shoelace_area(v)
    else:
        tangent, kappa = _triple_geometry(v[:-2], v[1:-1], v[2:])
        # extend to the endpoints: one-sided tangents, linearly extrapolated kappa
        t0 = v[1] - v[0]
        t1 = v[-1] - v[-2]
        tangent = np.vstack([t0 / np.linalg.norm(t0), tangent, t1 / np.linalg.norm(t1)])
        k_first = 2.0 * kappa[0] - kappa[1] if len(kappa) > 1 else kappa[0]
        k_last = 2.0 * kappa[-1] - kappa[-2] if len(kappa) > 1 else kappa[-1]
        kappa = np.concatenate([[k_first], kappa, [k_last]])
        area = np.nan
    normal = np.stack([tangent[:, 1], -tangent[:, 0]], axis=1)
    edge_len = np.linalg.norm(curve.edges(), axis=1)
    if curve.closed:
        arclength = np.concatenate([[0.0], np.cumsum(edge_len)[:-1]])
        length = float(np.sum(edge_len))
    else:
        arclength = np.concatenate([[0.0], np.cumsum(edge_len)])
        length = float(arclength[-1])
    return CurveGeometry(tangent, normal, kappa, arclength, length, float(area))


def resample_by_arclength(curve: SampledCurve, n: int) -> SampledCurve:
    """Redistribute n vertices at equal arclength spacing along the polyline."""
    if n < MIN_VERTICES:
        raise GeometryError(f"n must be at least {MIN_VERTICES}")
    v = curve.vertices
    edge_len = np.linalg.norm(curve.edges(), axis=1)
    total = float(np.sum(edge_len))
    if total <= 0.0:
        raise GeometryError("degenerate zero-length curve")
    s = np.concatenate([[0.0], np.cumsum(edge_len)])
    if curve.closed:
        pts = np.vstack([v, v[:1]])
        targets = np.arange(n) * (total / n)
    else:
        pts = v
        targets = np.linspace(0.0, total, n)
    x = np.interp(targets, s, pts[:, 0])
    y = np.interp(targets, s, pts[:, 1])
    return SampledCurve(np.stack([x, y], axis=1), closed=curve.closed)


def normalize_to_area_pi(curve: SampledCurve) -> SampledCurve:
    """Scale about the origin so the shoelace area equals pi."""
    a = curve.area()
    if a <= 0.0:
        raise GeometryError("normalization needs positive enclosed area")
    return curve.scaled(float(np.sqrt(np.pi / a)))


class VertexCount(NamedTuple):
    count: int
    constant_curvature: bool


def vertex_count(curve: SampledCurve, eps_rel: float = 1e-6) -> VertexCount:
    """Number of curvature extrema (sign changes of the discrete derivative).

    Increments of |d kappa| below eps_rel * max|kappa| are treated as zero so
    floating-point chatter on constant-curvature stretches does not register.
    """
    geo = compute_geometry(curve)
    kappa = geo.curvature
    d = np.diff(kappa, append=kappa[:1]) if curve.closed else np.diff(kappa)
    scale = float(np.max(np.abs(kappa)))
    if scale == 0.0:
        return VertexCount(0, True)
    signs = np.sign(d)
    signs[np.abs(d) < eps_rel * scale] = 0
    signs = signs[signs != 0]
    if len(signs) == 0:
        return VertexCount(0, True)
    flips = int(np.sum(signs[1:] != signs[:-1]))
    if curve.closed and signs[-1] != signs[0]:
        flips += 1
    return VertexCount(flips, False)


def _segments_intersect(p1, p2, q1, q2):
    """Vectorized proper/improper intersection test between segment batches."""

    def orient(a, b, c):
        return (b[..., 0] - a[..., 0]) * (c[..., 1] - a[..., 1]) - (
            b[..., 1] - a[..., 1]
        ) * (c[..., 0] - a[..., 0])

    d1 = orient(q1, q2, p1)
    d2 = orient(q1, q2, p2)
    d3 = orient(p1, p2, q1)
    d4 = orient(p1, p2, q2)
    proper = ((d1 > 0) != (d2 > 0)) & ((d3 > 0) != (d4 > 0))

    def on_seg(a, b, c, d):
        # d == 0 means c is collinear with segment (a, b); check bounding box
        inside = (
            (np.minimum(a[..., 0], b[..., 0]) <= c[..., 0])
            & (c[..., 0] <= np.maximum(a[..., 0], b[..., 0]))
            & (np.minimum(a[..., 1], b[..., 1]) <= c[..., 1])
            & (c[..., 1] <= np.maximum(a[..., 1], b[..., 1]))
        )
        return (d == 0) & inside

    touch = (
        on_seg(q1, q2, p1, d1)
        | on_seg(q1, q2, p2, d2)
        | on_seg(p1, p2, q1, d3)
        | on_seg(p1, p2, q2, d4)
    )
    return proper | touch


def self_intersection_check(curve: SampledCurve, block: int = 256) -> bool:
    """True iff no two non-adjacent segments of the closed curve intersect."""
    v = curve.vertices
    n = len(v)
    if not curve.closed:
        raise GeometryError("embeddedness check expects a closed curve")
    starts = v
    ends = np.roll(v, -1, axis=0)
    idx = np.arange(n)
    for lo in range(0, n, block):
        hi = min(lo + block, n)
        i = idx[lo:hi, None]
        j = idx[None, :]
        # skip self, adjacent, and the symmetric half (j < i)
        sep = (j - i) % n
        mask = (sep >= 2) & ((n - sep) >= 2) & (j > i)
        if not np.any(mask):
            continue
        hit = _segments_intersect(
            starts[lo:hi, None, :], ends[lo:hi, None, :], starts[None, :, :], ends[None, :, :]
        )
        if np.any(hit & mask):
            return False
    return True


def points_in_polygon(points: np.ndarray, polygon: np.ndarray, block: int = 4096) -> np.ndarray:
    """Winding-number containment test of points against a closed polygon."""
    pts = np.atleast_2d(points)
    a = polygon
    b = np.roll(polygon, -1, axis=0)
    inside = np.empty(len(pts), dtype=bool)
    for lo in range(0, len(pts), block):
        hi = min(lo + block, len(pts))
        p = pts[lo:hi]
        px = p[:, 0][:, None]
        py = p[:, 1][:, None]
        ay, by = a[:, 1][None, :], b[:, 1][None, :]
        is_left = (b[:, 0] - a[:, 0])[None, :] * (py - ay) - (px - a[:, 0][None, :]) * (by - ay)
        up = (ay <= py) & (by > py) & (is_left > 0)
        down = (ay > py) & (by <= py) & (is_left < 0)
        wn = np.sum(up.astype(int) - down.astype(int), axis=1)
        inside[lo:hi] = wn != 0
    return inside


def _point_segment_distance(points, seg_a, seg_b, block=512):
    """Min distance from each point to a polyline given by segment arrays."""
    d = seg_b - seg_a
    seg_len2 = np.sum(d * d, axis=1)
    seg_len2[seg_len2 == 0.0] = 1.0
    best = np.full(len(points), np.inf)
    for lo in range(0, len(points), block):
        hi = min(lo + block, len(points))
        p = points[lo:hi]
        w = p[:, None, :] - seg_a[None, :, :]
        t = np.clip(np.sum(w * d[None, :, :], axis=2) / seg_len2[None, :], 0.0, 1.0)
        proj = seg_a[None, :, :] + t[:, :, None] * d[None, :, :]
        dist = np.linalg.norm(p[:, None, :] - proj, axis=2)
        best[lo:hi] = dist.min(axis=1)
    return best


def hausdorff_distance(c1: SampledCurve, c2: SampledCurve) -> float:
    """Symmetric Hausdorff distance between two polylines."""

    def one_sided(a: SampledCurve, b: SampledCurve) -> float:
        vb = b.vertices
        seg_a = vb
        seg_b = np.roll(vb, -1, axis=0) if b.closed else vb[1:]
        if not b.closed:
            seg_a = vb[:-1]
        return float(np.max(_point_segment_distance(a.vertices, seg_a, seg_b)))

    return max(one_sided(c1, c2), one_sided(c2, c1))
