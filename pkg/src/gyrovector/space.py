"""Einstein scalar multiplication, gyrolines, gyrodistance and gyromidpoints."""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .ball import SpaceContext, _add, _gamma, ambient_vector, ball_point, norm
from .errors import CoincidentPoints
from .gyration import LawReport, _gyr, _gyr_matrix, mat_residual, vec_residual

__all__ = [
    "Gyroline",
    "BoundaryPair",
    "scalar_mul",
    "scalar_mul_norm",
    "einstein_half",
    "gyroline_point",
    "gyrodistance",
    "gyromidpoint",
    "boundary_points",
    "check_gyrovector_axioms",
]


def _scalar_mul(r, v, s):
    r = np.asarray(r, dtype=float)
    nv = norm(v)[..., None]
    safe = np.where(nv > 0, nv, 1.0)
    scaled = s * np.tanh(r[..., None] * np.arctanh(nv / s)) / safe
    return np.where(nv > 0, scaled * v, 0.0 * v)


def scalar_mul(r, v, ctx: SpaceContext) -> np.ndarray:
    """Einstein scalar multiple ``r (x) v = s tanh(r atanh(|v|/s)) v/|v|``.

    ``r`` broadcasts against the leading axes of ``v``.  For very large
    ``|r| atanh(|v|/s)`` the hyperbolic tangent rounds to 1 and the result
    lands on the sphere of radius ``s`` in floating point.
    """
    return _scalar_mul(r, ball_point(v, ctx), ctx.s)


def _scalar_mul_1d(r, x, s):
    return s * np.tanh(np.asarray(r, dtype=float) * np.arctanh(np.asarray(x, dtype=float) / s))


def scalar_mul_norm(r, x, ctx: SpaceContext):
    """Scalar multiplication on signed magnitudes ``x`` in ``(-s, s)``."""
    return _scalar_mul_1d(r, x, ctx.s)


def _half(v, s):
    g = _gamma(v, s)[..., None]
    return (g / (1.0 + g)) * v


def einstein_half(v, ctx: SpaceContext) -> np.ndarray:
    """``(1/2) (x) v`` in its rational form ``gamma_v / (1 + gamma_v) v``."""
    return _half(ball_point(v, ctx), ctx.s)


@dataclass(frozen=True)
class Gyroline:
    """The gyroline through distinct points ``A`` (t = 0) and ``B`` (t = 1)."""

    A: np.ndarray
    B: np.ndarray
    ctx: SpaceContext

    def __post_init__(self):
        A = ball_point(self.A, self.ctx)
        B = ball_point(self.B, self.ctx)
        if A.ndim != 1 or B.ndim != 1:
            raise ValueError("a gyroline takes two single points")
        if gyrodistance(A, B, self.ctx) <= self.ctx.abs_tol:
            raise CoincidentPoints("gyroline base points coincide")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "B", B)

    def point(self, t):
        return gyroline_point(self, t, self.ctx)


def _line_point(A, B, t, s, dt):
    return _add(A, _scalar_mul(t, _add(-A, B, s, dt), s), s, dt)


def gyroline_point(L: Gyroline, t, ctx: SpaceContext) -> np.ndarray:
    """``A (+) ((-A (+) B) (x) t)``; ``t`` may be an array of parameters."""
    t = np.asarray(t, dtype=float)
    A = np.broadcast_to(L.A, t.shape + L.A.shape)
    B = np.broadcast_to(L.B, t.shape + L.B.shape)
    return _line_point(A, B, t, ctx.s, ctx.denom_tol)


def gyrodistance(A, B, ctx: SpaceContext):
    """``|(-A) (+) B|``."""
    A = ball_point(A, ctx)
    B = ball_point(B, ctx)
    return norm(_add(-A, B, ctx.s, ctx.denom_tol))


def _midpoint(A1, A2, s):
    g1 = _gamma(A1, s)[..., None]
    g2 = _gamma(A2, s)[..., None]
    return (g1 * A1 + g2 * A2) / (g1 + g2)


def gyromidpoint(A1, A2, ctx: SpaceContext) -> np.ndarray:
    """``(gamma_1 A1 + gamma_2 A2) / (gamma_1 + gamma_2)``."""
    return _midpoint(ball_point(A1, ctx), ball_point(A2, ctx), ctx.s)


class BoundaryPair(NamedTuple):
    """Ends of a gyroline on the sphere of radius ``s``.

    ``E_A2`` lies on the ``B`` side (``t -> +inf``), ``E_A1`` on the other.
    """

    E_A1: np.ndarray
    E_A2: np.ndarray


def boundary_points(A1, A2, ctx: SpaceContext) -> BoundaryPair:
    """Boundary points ``A1 (-/+) gamma a / sqrt(gamma^2 - 1)`` of the gyroline.

    Here ``a = (-A1) (+) A2`` and ``gamma = gamma_a``.  Since
    ``gamma^2 - 1 = gamma^2 |a|^2 / s^2``, the offset is evaluated as
    ``s a / |a|``, which stays accurate for nearby points.

    Raises
    ------
    CoincidentPoints
        If ``A1`` and ``A2`` coincide to within ``ctx.abs_tol``.
    """
    A1 = ball_point(A1, ctx)
    A2 = ball_point(A2, ctx)
    a = _add(-A1, A2, ctx.s, ctx.denom_tol)
    na = norm(a)[..., None]
    if np.any(na <= ctx.abs_tol):
        raise CoincidentPoints("boundary points need two distinct points")
    e = ctx.s * a / na
    return BoundaryPair(_add(A1, -e, ctx.s, ctx.denom_tol), _add(A1, e, ctx.s, ctx.denom_tol))


def check_gyrovector_axioms(points, scalars, ctx: SpaceContext,
                            tol: float | None = None) -> LawReport:
    """Evaluate the gyrovector space axioms V1 to V10 on samples.

    Parameters
    ----------
    points : array_like, shape (count, 4, n)
        Rows ``(a, b, u, v)`` inside the ball.
    scalars : array_like, shape (count, 2)
        Rows ``(r1, r2)``.
    ctx : SpaceContext
    tol : float, optional
        Pass threshold, ``ctx.rel_tol`` by default.

    Returns
    -------
    LawReport
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    p = ball_point(points, ctx)
    r = np.asarray(scalars, dtype=float)
    if p.ndim != 3 or p.shape[1] != 4 or r.shape != (p.shape[0], 2):
        raise ValueError("expected points (count, 4, n) and scalars (count, 2)")
    if len(p) == 0:
        return report
    s, dt = ctx.s, ctx.denom_tol
    a, b, u, v = (p[:, k] for k in range(4))
    r1, r2 = r[:, 0], r[:, 1]

    def add(x, y):
        return _add(x, y, s, dt)

    def mul(k, x):
        return _scalar_mul(k, x, s)

    def res(x, y):
        return vec_residual(x, y, s)

    ab = add(a, b)
    report.record("V1 gyrocommutative gyrogroup",
                  np.maximum(res(add(a, add(b, u)), add(ab, _gyr(a, b, u, s))),
                             res(ab, _gyr(a, b, add(b, a), s))))
    report.record("V2 unit scalar", res(mul(np.ones_like(r1), a), a))
    report.record("V3 scalar distributive law", res(mul(r1 + r2, a), add(mul(r1, a), mul(r2, a))))
    report.record("V4 scalar associative law", res(mul(r1 * r2, a), mul(r1, mul(r2, a))))

    ra = mul(r1, a)
    nra = norm(ra)[..., None]
    na = norm(a)[..., None]
    keep = (nra[:, 0] > ctx.abs_tol) & (na[:, 0] > ctx.abs_tol)
    lhs = mul(np.abs(r1), a) / np.where(nra > 0, nra, 1.0)
    rhs = a / np.where(na > 0, na, 1.0)
    report.record("V5 scaling property", np.where(keep, norm(lhs - rhs), 0.0))

    report.record("V6 gyroautomorphism", res(_gyr(u, v, ra, s), mul(r1, _gyr(u, v, a, s))))
    eye = np.eye(a.shape[-1])
    report.record("V7 identity automorphism", mat_residual(_gyr_matrix(mul(r1, v), mul(r2, v), s), eye))

    # signed magnitudes form a one-dimensional vector space under (+) and (x)
    x, y, z = norm(a), -norm(b), norm(u)
    nadd = lambda p_, q_: (p_ + q_) / (1.0 + p_ * q_ / (s * s))  # noqa: E731
    v8 = np.maximum.reduce([
        np.abs(nadd(x, y) - nadd(y, x)),
        np.abs(nadd(nadd(x, y), z) - nadd(x, nadd(y, z))),
        np.abs(_scalar_mul_1d(r1 + r2, y, s) - nadd(_scalar_mul_1d(r1, y, s), _scalar_mul_1d(r2, y, s))),
        np.abs(_scalar_mul_1d(r1 * r2, y, s) - _scalar_mul_1d(r1, _scalar_mul_1d(r2, y, s), s)),
    ]) / s
    report.record("V8 real one-dimensional vector space", v8)
    report.record("V9 homogeneity property", np.abs(norm(ra) - _scalar_mul_1d(np.abs(r1), na[:, 0], s)) / s)
    report.record("V10 gyrotriangle inequality",
                  np.maximum(norm(ab) - nadd(norm(a), norm(b)), 0.0) / s)
    return report
