"""Built-in deterministic test curves.

All closed fixtures are normalized to enclosed area pi (except the raw unit
circle, whose area is already pi).  Generation formulas:

  circle    x = cos(phi), y = sin(phi)
  ellipse2  semi-axes (sqrt(2), 1/sqrt(2)); axis ratio 2, area pi exactly
  ellipse4  semi-axes (2, 1/2); axis ratio 4, area pi exactly
  oval      support function h = 1 + 0.2 cos(2 theta), rescaled to area pi
  bean      polar r(phi) = 1 - 0.22 cos(2 phi) + 0.07 cos(3 phi), rescaled;
            embedded (r > 0) but not convex
"""

from __future__ import annotations

import numpy as np

from .curves import SampledCurve, normalize_to_area_pi
from .errors import GeometryError
from .support import support_of_cos2_oval, support_to_curve

DEFAULT_N = 256


def circle(n: int = DEFAULT_N) -> SampledCurve:
    phi = np.arange(n) * (2.0 * np.pi / n)
    return SampledCurve(np.stack([np.cos(phi), np.sin(phi)], axis=1))


def ellipse(semi_x: float, semi_y: float, n: int = DEFAULT_N) -> SampledCurve:
    phi = np.arange(n) * (2.0 * np.pi / n)
    pts = np.stack([semi_x * np.cos(phi), semi_y * np.sin(phi)], axis=1)
    return normalize_to_area_pi(SampledCurve(pts))


def oval(n: int = DEFAULT_N) -> SampledCurve:
    sf = support_of_cos2_oval(0.2, n=max(4 * n, 1024))
    curve = support_to_curve(sf, n)
    return normalize_to_area_pi(curve)


def bean(n: int = DEFAULT_N) -> SampledCurve:
    phi = np.arange(n) * (2.0 * np.pi / n)
    r = 1.0 - 0.22 * np.cos(2.0 * phi) + 0.07 * np.cos(3.0 * phi)
    pts = np.stack([r * np.cos(phi), r * np.sin(phi)], axis=1)
    return normalize_to_area_pi(SampledCurve(pts))


_BUILDERS = {
    "circle": circle,
    "ellipse2": lambda n=DEFAULT_N: ellipse(np.sqrt(2.0), 1.0 / np.sqrt(2.0), n),
    "ellipse4": lambda n=DEFAULT_N: ellipse(2.0, 0.5, n),
    "oval": oval,
    "bean": bean,
}


def fixture_names():
    return sorted(_BUILDERS)


def fixtures(n: int = DEFAULT_N):
    """All named fixture curves at the given resolution."""
    return {name: build(n) for name, build in _BUILDERS.items()}


def get_fixture(name: str, n: int = DEFAULT_N) -> SampledCurve:
    try:
        build = _BUILDERS[name]
    except KeyError:
        raise GeometryError(f"unknown fixture {name!r}; available: {fixture_names()}")
    return build(n)
