"""The constrained quadratic functional F[a, b] and the operator G it induces.

F[a, b] is the infimum of

    int_0^1 phi'^2 - a^2 int_0^1 phi^2 - b (int_0^1 phi)^2

over smooth phi with phi(0) = phi(1) = 1.  Resolved convention (pinned by
the discrete variational oracle below, which is the ground truth for signs):
with s = a^2 + b and

    c(a) = cos(a/2) / (2 a sin(a/2)) - 1/a^2,   c(0) = -1/12,

the reduced quadratic form is positive semidefinite exactly when
1 + c(a) s > 0, and there

    F[a, b] = -s / (1 + c(a) s).

Otherwise the form is indefinite and the infimum is -inf ("unbounded"
branch).  In particular F > 0 iff s < 0, which is the concave-profile
regime where the comparison equation is parabolic; s = 0 gives F = 0 (the
apparent pole of the textbook expression is removable).  G is the same
object in the variables of v = f^2/2:

    G(v, v', v'') = -F[v', 2 v v'' - v'^2] = s / (1 + c(v') s),  s = 2 v v''.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve

from .errors import GeometryError, NearSingularError

FINITE = "finite"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class FValue:
    value: float
    branch: str   # 'finite' or 'unbounded' (value -inf)

    @property
    def is_finite(self) -> bool:
        return self.branch == FINITE


def coef_c_array(a) -> np.ndarray:
    """c(a) = cos(a/2)/(2a sin(a/2)) - 1/a^2 with the removable point at a = 0."""
    a = np.asarray(a, dtype=float)
    if np.any(np.abs(a) >= 2.0 * np.pi):
        raise GeometryError("|a| must be below 2*pi")
    out = np.empty_like(a)
    small = np.abs(a) < 0.5
    a2 = a[small] ** 2
    out[small] = -1.0 / 12.0 - a2 / 720.0 - a2**2 / 30240.0 - a2**3 / 1209600.0
    ab = a[~small]
    out[~small] = np.cos(ab / 2.0) / (2.0 * ab * np.sin(ab / 2.0)) - 1.0 / (ab * ab)
    return out


def coef_c(a: float) -> float:
    return float(coef_c_array(np.asarray([a]))[0])


def _f_from_s(a: float, s: float) -> FValue:
    den = 1.0 + coef_c(a) * s
    if den <= 0.0:
        return FValue(-math.inf, UNBOUNDED)
    return FValue(-s / den, FINITE)


def calF(a: float, b: float) -> FValue:
    """Closed-form F[a, b]; requires |a| < 2*pi."""
    return _f_from_s(a, a * a + b)


def calF_oracle(a: float, b: float, n: int = 256, classify_tol: float = 1e-9) -> float:
    """Direct minimization of the defining quadratic form over P1 elements.

    n interior nodes; the stiffness, mass and mean terms are assembled
    exactly for piecewise-linear phi, so the value converges to F[a, b] at
    O(n^-2) on the finite branch.  Returns -inf when the reduced form is
    indefinite.  Raises NearSingularError when the smallest eigenvalue sits
    within classify_tol of zero (a spectral transition point).
    """
    if n < 32:
        raise GeometryError("oracle needs at least 32 interior nodes")
    h = 1.0 / (n + 1)
    diag_K = np.full(n, 2.0 / h)
    off_K = np.full(n - 1, -1.0 / h)
    diag_M = np.full(n, 4.0 * h / 6.0)
    off_M = np.full(n - 1, h / 6.0)
    w = np.full(n, h)

    diag_T = diag_K - a * a * diag_M
    off_T = off_K - a * a * off_M
    A = np.diag(diag_T) + np.diag(off_T, 1) + np.diag(off_T, -1) - b * np.outer(w, w)
    scale = max(np.linalg.norm(A, ord=1), 1.0)
    lam_min = float(np.linalg.eigvalsh(A)[0])
    if abs(lam_min) <= classify_tol * scale:
        raise NearSingularError(
            "reduced form sits at a spectral transition",
            condition=scale / max(abs(lam_min), 1e-300))
    if lam_min < 0.0:
        return -math.inf
    # value at phi = 1 everywhere: Q0 = -a^2 - b; cross term c_i against psi
    c = -a * a * (h * np.ones(n)) - b * w
    q0 = -a * a - b
    psi = solve(A, -c, assume_a="sym")
    return float(psi @ A @ psi + 2.0 * c @ psi + q0)


def G_operator(v: float, vp: float, vpp: float) -> float:
    """G(v, v', v'') for the profile equation in the variable v = f^2 / 2.

    Returns 0 exactly when v'' = 0 (straight profile segments), a finite
    value when the underlying form is definite, and +inf on the unbounded
    branch (the equation stops being parabolic there).
    """
    if v <= 0.0:
        raise GeometryError("v must be positive")
    if vpp == 0.0:
        return 0.0
    s = 2.0 * v * vpp
    fv = _f_from_s(vp, s)
    if not fv.is_finite:
        return math.inf
    return -fv.value
