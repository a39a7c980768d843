"""Support-function encoding of convex bodies on a periodic grid."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve, shoelace_area
from .errors import ConvexityError, GeometryError, SymmetryError

DEFAULT_GRID = 1024


@dataclass(frozen=True)
class SupportFunction:
    """h(theta) on a uniform grid over [0, 2pi).

    Derivatives are centered differences on the periodic grid.  Radius of
    curvature of the encoded boundary is h'' + h, required positive.
    """

    h: np.ndarray
    even: bool = False
    pi_periodic: bool = False
    symmetry_tol: float = 1e-9

    def __post_init__(self):
        h = np.asarray(self.h, dtype=float)
        object.__setattr__(self, "h", h)
        if h.ndim != 1 or len(h) < 16:
            raise GeometryError("support grid needs at least 16 samples")
        if not np.all(np.isfinite(h)):
            raise GeometryError("support values must be finite")
        if np.any(self.radius_of_curvature() <= 0.0):
            raise ConvexityError("h'' + h must be positive everywhere (strict convexity)")
        if self.even:
            refl = np.concatenate([h[:1], h[:0:-1]])
            if np.max(np.abs(h - refl)) > self.symmetry_tol * max(1.0, np.max(np.abs(h))):
                raise SymmetryError("support flagged even but h(theta) != h(-theta)")
        if self.pi_periodic:
            half = len(h) // 2
            if len(h) % 2:
                raise GeometryError("pi-periodic flag needs an even grid size")
            if np.max(np.abs(h - np.roll(h, half))) > self.symmetry_tol * max(1.0, np.max(np.abs(h))):
                raise SymmetryError("support flagged pi-periodic but h(theta) != h(theta+pi)")

    @property
    def n(self) -> int:
        return len(self.h)

    @property
    def theta(self) -> np.ndarray:
        return np.arange(self.n) * (2.0 * np.pi / self.n)

    @property
    def dtheta(self) -> float:
        return 2.0 * np.pi / self.n

    def hprime(self) -> np.ndarray:
        return (np.roll(self.h, -1) - np.roll(self.h, 1)) / (2.0 * self.dtheta)

    def hsecond(self) -> np.ndarray:
        return (np.roll(self.h, -1) - 2.0 * self.h + np.roll(self.h, 1)) / self.dtheta**2

    def radius_of_curvature(self) -> np.ndarray:
        h = self.h
        dt = 2.0 * np.pi / len(h)
        return (np.roll(h, -1) - 2.0 * h + np.roll(h, 1)) / dt**2 + h

    def boundary_points(self) -> np.ndarray:
        """X(theta) = (h + i h') e^{i theta} on the grid."""
        th = self.theta
        h, hp = self.h, self.hprime()
        x = h * np.cos(th) - hp * np.sin(th)
        y = h * np.sin(th) + hp * np.cos(th)
        return np.stack([x, y], axis=1)

    def area(self) -> float:
        """Enclosed area, (1/2) integral of (h^2 - h'^2), spectral derivative.

        The periodic trapezoid rule with the Fourier derivative is accurate
        to machine precision for smooth h, so exactly-area-pi bodies are
        recognized as such.
        """
        hk = np.fft.rfft(self.h)
        k = np.arange(len(hk))
        hp = np.fft.irfft(1j * k * hk, n=self.n)
        return 0.5 * float(np.sum(self.h**2 - hp**2) * self.dtheta)

    def scaled(self, factor: float) -> "SupportFunction":
        return SupportFunction(self.h * factor, self.even, self.pi_periodic, self.symmetry_tol)


def radius_of_curvature_from_support(sf: SupportFunction) -> np.ndarray:
    """r(theta) = h''(theta) + h(theta) by centered differencing."""
    return sf.radius_of_curvature()


def support_to_curve(sf: SupportFunction, n: int) -> SampledCurve:
    """Sample the boundary X(theta) = (h + i h') e^{i theta} at n angles."""
    pts = sf.boundary_points()
    if n == sf.n:
        chosen = pts
    else:
        # evaluate h, h' at the requested angles by trigonometric-grade
        # resampling of the periodic grid (linear is enough off-grid)
        th = np.arange(n) * (2.0 * np.pi / n)
        grid = np.concatenate([sf.theta, [2.0 * np.pi]])
        h = np.interp(th, grid, np.concatenate([sf.h, sf.h[:1]]))
        hp_grid = sf.hprime()
        hp = np.interp(th, grid, np.concatenate([hp_grid, hp_grid[:1]]))
        x = h * np.cos(th) - hp * np.sin(th)
        y = h * np.sin(th) + hp * np.cos(th)
        chosen = np.stack([x, y], axis=1)
    curve = SampledCurve(chosen, closed=True)
    if shoelace_area(curve.vertices) <= 0:
        raise ConvexityError("support function produced a non-anticlockwise boundary")
    return curve


def support_of_ellipse(semi_x: float, semi_y: float, n: int = DEFAULT_GRID) -> SupportFunction:
    """Support function of an axis-aligned ellipse, h = sqrt(A^2 cos^2 + B^2 sin^2)."""
    th = np.arange(n) * (2.0 * np.pi / n)
    h = np.sqrt((semi_x * np.cos(th)) ** 2 + (semi_y * np.sin(th)) ** 2)
    return SupportFunction(h, even=True, pi_periodic=True, symmetry_tol=1e-12)


def support_of_cos2_oval(amplitude: float, n: int = DEFAULT_GRID) -> SupportFunction:
    """Doubly symmetric oval h = 1 + amplitude*cos(2 theta); convex for amplitude < 1/3."""
    if not 0 <= amplitude < 1.0 / 3.0:
        raise ConvexityError("cos(2 theta) oval is strictly convex only for amplitude < 1/3")
    th = np.arange(n) * (2.0 * np.pi / n)
    return SupportFunction(1.0 + amplitude * np.cos(2.0 * th), even=True, pi_periodic=True,
                           symmetry_tol=1e-12)
