"""Euclidean motions, gyromotions, and covariance checks.

A Euclidean motion ``(X, R)`` acts by ``A -> X + R A``; a gyromotion acts by
``A -> X (+) R A``.  Both carry a rotation ``R`` in SO(n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .ball import SpaceContext, _add, ball_point, norm
from .errors import DimensionMismatch, NotAGyroisometry, OppositeGyroisometry
from .gyration import LawReport, _gyr, _gyr_matrix, mat_residual, vec_residual

__all__ = [
    "EuclideanMotion",
    "GyroMotion",
    "apply_euclidean",
    "compose_euclidean",
    "inverse_euclidean",
    "left_gyrotranslate",
    "apply_gyromotion",
    "compose_gyromotions",
    "inverse_gyromotion",
    "decompose_gyroisometry",
    "check_gyrocovariance",
    "check_motion_laws",
]

_ROTATION_TOL = 1e-9


def _check_rotation(R: np.ndarray, n: int) -> np.ndarray:
    R = np.asarray(R, dtype=float)
    if R.shape != (n, n):
        raise DimensionMismatch(f"rotation must be {n}x{n}, got {R.shape}")
    if np.max(np.abs(R.T @ R - np.eye(n))) > _ROTATION_TOL:
        raise ValueError("rotation matrix is not orthogonal")
    if abs(np.linalg.det(R) - 1.0) > _ROTATION_TOL:
        raise ValueError("rotation matrix must have determinant +1")
    return R


@dataclass(frozen=True)
class EuclideanMotion:
    """Element ``(X, R)`` of the semidirect product of R^n and SO(n)."""

    X: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 1:
            raise DimensionMismatch("translation must be a single vector")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "R", _check_rotation(self.R, X.shape[0]))

    @classmethod
    def identity(cls, n: int) -> "EuclideanMotion":
        return cls(np.zeros(n), np.eye(n))


@dataclass(frozen=True)
class GyroMotion:
    """Element ``(X, R)`` of the gyrosemidirect product of the ball and SO(n).

    ``X`` is validated against a context when the motion is applied.
    """

    X: np.ndarray
    R: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=float)
        if X.ndim != 1:
            raise DimensionMismatch("translation must be a single point")
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "R", _check_rotation(self.R, X.shape[0]))

    @classmethod
    def identity(cls, n: int) -> "GyroMotion":
        return cls(np.zeros(n), np.eye(n))


def _rotate(R, A):
    return np.einsum("...ij,...j->...i", R, A)


def apply_euclidean(m: EuclideanMotion, A) -> np.ndarray:
    """``X + R A`` for a point or stack of points ``A``."""
    A = np.asarray(A, dtype=float)
    if A.shape[-1] != m.X.shape[0]:
        raise DimensionMismatch("point and motion dimensions differ")
    return m.X + A @ m.R.T


def compose_euclidean(m1: EuclideanMotion, m2: EuclideanMotion) -> EuclideanMotion:
    """``(X1 + R1 X2, R1 R2)``: the motion ``m1`` applied after ``m2``."""
    return EuclideanMotion(m1.X + m1.R @ m2.X, m1.R @ m2.R)


def inverse_euclidean(m: EuclideanMotion) -> EuclideanMotion:
    """``(-R^t X, R^t)``."""
    return EuclideanMotion(-m.R.T @ m.X, m.R.T)


def left_gyrotranslate(X, A, ctx: SpaceContext) -> np.ndarray:
    """``X (+) A``."""
    return _add(ball_point(X, ctx), ball_point(A, ctx), ctx.s, ctx.denom_tol)


def _apply_gyro(X, R, A, s, dt):
    return _add(X, _rotate(R, A), s, dt)


def apply_gyromotion(m: GyroMotion, A, ctx: SpaceContext) -> np.ndarray:
    """``X (+) R A`` for a point or stack of points ``A``."""
    X = ball_point(m.X, ctx)
    A = ball_point(A, ctx)
    return _add(X, A @ m.R.T, ctx.s, ctx.denom_tol)


def _compose_gyro(X1, R1, X2, R2, s, dt):
    RX2 = _rotate(R1, X2)
    return _add(X1, RX2, s, dt), _gyr_matrix(X1, RX2, s) @ R1 @ R2


def compose_gyromotions(m1: GyroMotion, m2: GyroMotion, ctx: SpaceContext) -> GyroMotion:
    """``(X1 (+) R1 X2, gyr[X1, R1 X2] R1 R2)``: ``m1`` applied after ``m2``."""
    X, R = _compose_gyro(ball_point(m1.X, ctx), m1.R, ball_point(m2.X, ctx), m2.R,
                         ctx.s, ctx.denom_tol)
    return GyroMotion(X, _polish(R))


def _inverse_gyro(X, R):
    Rt = np.swapaxes(R, -1, -2)
    return -_rotate(Rt, X), Rt


def inverse_gyromotion(m: GyroMotion, ctx: SpaceContext) -> GyroMotion:
    """``(-R^t X, R^t)``, so that ``A -> (-R^t X) (+) R^t A`` undoes ``m``."""
    X, R = _inverse_gyro(ball_point(m.X, ctx), m.R)
    return GyroMotion(X, R)


def _polish(R):
    # nearest orthogonal matrix; removes rounding drift from products
    U, _, Vt = np.linalg.svd(R)
    return U @ Vt


def decompose_gyroisometry(phi: Callable, probe: Sequence, ctx: SpaceContext,
                           tol: float = 1e-6) -> GyroMotion:
    """Recover ``(X, R)`` with ``phi(A) = X (+) R A``.

    ``X = phi(0)`` and column ``i`` of ``R`` is ``((-X) (+) phi(eps e_i)) / eps``
    with ``eps = 0.1 s``, followed by a polar orthonormalization.  The fit
    is then validated on the probe points and the basis probes.

    Parameters
    ----------
    phi : callable
        Maps a single point of the ball to a point of the ball.
    probe : sequence of points
        Extra validation points.
    ctx : SpaceContext
    tol : float
        Largest accepted ``|phi(A) - X (+) R A| / s``.

    Returns
    -------
    GyroMotion

    Raises
    ------
    NotAGyroisometry
        If the validation residual exceeds ``tol``.
    OppositeGyroisometry
        If ``phi`` is a gyroisometry whose orthogonal part has det -1.
        The recovered ``X`` and ``R`` are attached to the exception.
    """
    n, s, dt = ctx.n, ctx.s, ctx.denom_tol
    eps = 0.1 * s
    X = ball_point(phi(np.zeros(n)), ctx)
    basis = eps * np.eye(n)
    images = np.stack([ball_point(phi(e), ctx) for e in basis])
    cols = _add(np.broadcast_to(-X, images.shape), images, s, dt) / eps
    R = _polish(cols.T)

    pts = np.concatenate([basis, ball_point(np.reshape(probe, (-1, n)), ctx)])
    got = np.stack([ball_point(phi(p), ctx) for p in pts])
    want = _add(np.broadcast_to(X, pts.shape), pts @ R.T, s, dt)
    residual = float(np.max(norm(got - want))) / s
    if not residual < tol:
        raise NotAGyroisometry(f"map is not a gyroisometry (residual {residual:.3e})")
    if np.linalg.det(R) < 0:
        raise OppositeGyroisometry("map is an opposite gyroisometry (det R = -1)", X=X, R=R)
    return GyroMotion(X, R)


def check_gyrocovariance(T: Callable, samples, motions: Sequence[GyroMotion],
                         ctx: SpaceContext, tol: float | None = None) -> LawReport:
    """Measure how far ``T`` is from commuting with gyromotions.

    Parameters
    ----------
    T : callable
        ``T(A1, ..., Ak)`` on stacks of points of shape ``(count, n)``,
        returning a stack of points.
    samples : array_like, shape (count, k, n)
    motions : sequence of GyroMotion
    ctx : SpaceContext
    tol : float, optional

    Returns
    -------
    LawReport
        Worst residuals of ``X (+) T(A) = T(X (+) A)``,
        ``R T(A) = T(R A)`` and of the combined motion.
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    pts = ball_point(samples, ctx)
    if pts.ndim != 3 or len(pts) == 0 or not motions:
        return report
    s, dt = ctx.s, ctx.denom_tol
    args = [pts[:, k] for k in range(pts.shape[1])]
    base = np.asarray(T(*args), dtype=float)
    for m in motions:
        X = np.broadcast_to(ball_point(m.X, ctx), base.shape)
        lhs = _add(X, base, s, dt)
        rhs = T(*[_add(X, A, s, dt) for A in args])
        report.record("gyrotranslation covariance", vec_residual(lhs, rhs, s))
        lhs = base @ m.R.T
        rhs = T(*[A @ m.R.T for A in args])
        report.record("rotation covariance", vec_residual(lhs, rhs, s))
        lhs = _add(X, base @ m.R.T, s, dt)
        rhs = T(*[_add(X, A @ m.R.T, s, dt) for A in args])
        report.record("gyromotion covariance", vec_residual(lhs, rhs, s))
    return report


def check_motion_laws(points, rotations, ctx: SpaceContext, tol: float | None = None) -> LawReport:
    """Group laws of gyromotions and basic gyroisometry facts on samples.

    Parameters
    ----------
    points : array_like, shape (count, 5, n)
        Rows ``(X1, X2, X3, A, B)``: three translations and two test points.
    rotations : array_like, shape (count, 3, n, n)
        Rotation parts of the three motions.
    ctx : SpaceContext
    tol : float, optional
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    p = ball_point(points, ctx)
    Rs = np.asarray(rotations, dtype=float)
    if len(p) == 0:
        return report
    s, dt = ctx.s, ctx.denom_tol
    X1, X2, X3, A, B = (p[:, k] for k in range(5))
    R1, R2, R3 = (Rs[:, k] for k in range(3))

    def add(x, y):
        return _add(x, y, s, dt)

    def res(x, y):
        return vec_residual(x, y, s)

    def app(X, R, P):
        return _apply_gyro(X, R, P, s, dt)

    def comp(X, R, Y, Q):
        return _compose_gyro(X, R, Y, Q, s, dt)

    def dist(P, Q):
        return norm(add(-P, Q))

    report.record("composition", res(app(X1, R1, app(X2, R2, A)), app(*comp(X1, R1, X2, R2), A)))
    Xl, Rl = comp(*comp(X1, R1, X2, R2), X3, R3)
    Xr, Rr = comp(X1, R1, *comp(X2, R2, X3, R3))
    report.record("associativity", np.maximum(res(Xl, Xr), mat_residual(Rl, Rr)))
    Xi, Ri = _inverse_gyro(X1, R1)
    Xe, Re = comp(X1, R1, Xi, Ri)
    eye = np.eye(p.shape[-1])
    report.record("inverse", np.maximum(norm(Xe) / s, mat_residual(Re, eye)))
    report.record("identity", res(app(np.zeros_like(A), np.broadcast_to(eye, R1.shape), A), A))
    report.record("closure orthogonality",
                  mat_residual(np.swapaxes(Rl, -1, -2) @ Rl, np.broadcast_to(eye, Rl.shape)))
    report.record("rotation respects addition", res(_rotate(R1, add(A, B)), add(_rotate(R1, A), _rotate(R1, B))))
    report.record("left gyrotranslation theorem",
                  res(add(-add(X1, A), add(X1, B)), _gyr(X1, A, add(-A, B), s)))
    report.record("gyrodistance preservation",
                  np.abs(dist(app(X1, R1, A), app(X1, R1, B)) - dist(A, B)) / s)
    return report
