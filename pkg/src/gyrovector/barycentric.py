"""Barycentric and gyrobarycentric coordinates.

A gyrobarycentric representation of ``P`` with respect to anchors
``A_1..A_N`` is a homogeneous weight vector ``(m_1 : ... : m_N)`` with

    P = sum m_k gamma_k A_k / sum m_k gamma_k,    gamma_k = gamma(A_k).

Its constant ``m_P^2 = (sum m)^2 + 2 sum_{j<k} m_j m_k (gamma_jk - 1)``
is positive, zero or negative as ``P`` lies inside, on or outside the ball.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .ball import SpaceContext, _add, _gamma, ambient_vector, ball_point, norm
from .errors import (
    DependentAnchors,
    NotInFlat,
    NotInGyroflat,
    ZeroGammaWeightSum,
    ZeroWeightSum,
)
from .motions import GyroMotion, apply_gyromotion
from .relativity import _pair_gm1

__all__ = [
    "GyrobarycentricRep",
    "canonical_weights",
    "eval_euclidean",
    "solve_euclidean",
    "eval_gyro",
    "rep_constant_sq",
    "rep_constant_sq_forms",
    "classify",
    "solve_gyro",
    "transform_rep",
]

FLAT_TOL = 1e-8
CLASS_TOL = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True)
class GyrobarycentricRep:
    """Anchors, homogeneous weights and the signed constant ``m_P^2``."""

    anchors: np.ndarray
    weights: np.ndarray
    const_sq: float

    @property
    def canonical(self) -> np.ndarray:
        return canonical_weights(self.weights)


def canonical_weights(weights) -> np.ndarray:
    """Scale so the largest-magnitude weight is 1, then make the first nonzero one positive.

    Weights below ``1e-12`` after scaling count as zero for the sign rule.
    """
    w = np.asarray(weights, dtype=float)
    big = w[np.argmax(np.abs(w))]
    if big == 0:
        raise ZeroWeightSum("all weights vanish")
    w = w / big
    nz = np.flatnonzero(np.abs(w) > 1e-12)
    if w[nz[0]] < 0:
        w = -w
    return w


def _weights(weights, N):
    m = np.asarray(weights, dtype=float).reshape(-1)
    if m.shape[0] != N:
        raise ValueError(f"expected {N} weights, got {m.shape[0]}")
    return m


def _weighted_sum(c, A):
    return np.array([math.fsum(col) for col in (c[:, None] * A).T])


def eval_euclidean(anchors, weights) -> np.ndarray:
    """``P = sum m_k A_k / sum m_k``.

    Raises
    ------
    ZeroWeightSum
        If ``sum m_k`` vanishes relative to ``sum |m_k|``.
    """
    A = np.atleast_2d(np.asarray(anchors, dtype=float))
    m = _weights(weights, len(A))
    total = math.fsum(m)
    if abs(total) <= 1e-12 * math.fsum(np.abs(m)):
        raise ZeroWeightSum("weights sum to zero")
    return _weighted_sum(m, A) / total


def _lstsq(M, rhs, spread, not_in, label):
    """Solve ``M c = rhs`` for columns of ``M``; check rank and residual."""
    if M.shape[1] == 0:
        residual = float(np.linalg.norm(rhs))
        c = np.zeros(0)
    else:
        sv = np.linalg.svd(M, compute_uv=False)
        if M.shape[1] > M.shape[0] or sv[-1] <= RANK_TOL * max(sv[0], 1e-300):
            raise DependentAnchors("anchors are not independent")
        c, *_ = np.linalg.lstsq(M, rhs, rcond=None)
        residual = float(np.linalg.norm(M @ c - rhs))
    if residual > FLAT_TOL * spread:
        raise not_in(f"point is not in the {label} of the anchors (residual {residual:.3e})")
    return c


def solve_euclidean(P, anchors) -> np.ndarray:
    """Special barycentric coordinates (summing to 1) of ``P``.

    Raises
    ------
    DependentAnchors
        If the vectors ``A_k - A_1`` are linearly dependent.
    NotInFlat
        If ``P`` is off the affine span by more than ``1e-8`` times the
        anchor spread.
    """
    A = np.atleast_2d(np.asarray(anchors, dtype=float))
    P = np.asarray(P, dtype=float)
    D = A[1:] - A[0]
    spread = float(np.max(norm(D))) if len(A) > 1 else 1.0
    c = _lstsq(D.T, P - A[0], max(spread, 1e-300), NotInFlat, "flat")
    return np.concatenate([[1.0 - math.fsum(c)], c])


def _pair_terms(A, s):
    j, k = np.triu_indices(len(A), 1)
    return j, k, _pair_gm1(A[j], A[k], s)


def rep_constant_sq_forms(anchors, weights, ctx: SpaceContext):
    """Both closed forms of ``m_P^2``.

    Returns ``((sum m)^2 + 2 sum m_j m_k (gamma_jk - 1),
    sum m^2 + 2 sum m_j m_k gamma_jk)``.
    """
    A = ball_point(np.atleast_2d(anchors), ctx)
    m = _weights(weights, len(A))
    j, k, gm1 = _pair_terms(A, ctx.s)
    cross = m[j] * m[k]
    first = math.fsum(np.concatenate([[math.fsum(m) ** 2], 2.0 * cross * gm1]))
    second = math.fsum(np.concatenate([m * m, 2.0 * cross * (gm1 + 1.0)]))
    return first, second


def rep_constant_sq(anchors, weights, ctx: SpaceContext) -> float:
    """Signed representation constant ``m_P^2``."""
    return rep_constant_sq_forms(anchors, weights, ctx)[0]


def eval_gyro(anchors, weights, ctx: SpaceContext):
    """Evaluate a gyrobarycentric combination.

    Parameters
    ----------
    anchors : array_like, shape (N, n)
        Points inside the ball.
    weights : array_like, shape (N,)
        Homogeneous weights of either sign.
    ctx : SpaceContext

    Returns
    -------
    P : numpy.ndarray
        ``sum m_k gamma_k A_k / sum m_k gamma_k``; may lie on or outside
        the ball.
    rep : GyrobarycentricRep

    Raises
    ------
    ZeroGammaWeightSum
        If ``sum m_k gamma_k`` vanishes relative to ``sum |m_k| gamma_k``.
    """
    A = ball_point(np.atleast_2d(anchors), ctx)
    m = _weights(weights, len(A))
    mg = m * _gamma(A, ctx.s)
    total = math.fsum(mg)
    if abs(total) <= ctx.tol(math.fsum(np.abs(mg))):
        raise ZeroGammaWeightSum("sum of m_k gamma_k vanishes")
    P = _weighted_sum(mg, A) / total
    return P, GyrobarycentricRep(A, m, rep_constant_sq(A, m, ctx))


Classification = Literal["inside", "boundary", "outside"]


def classify(rep: GyrobarycentricRep, ctx: SpaceContext | None = None) -> Classification:
    """Sign of ``m_P^2`` with a band of ``1e-10 (sum |m_k|)^2`` around zero."""
    band = CLASS_TOL * math.fsum(np.abs(rep.weights)) ** 2
    if rep.const_sq > band:
        return "inside"
    if rep.const_sq < -band:
        return "outside"
    return "boundary"


def solve_gyro(P, anchors, ctx: SpaceContext, base: int = 0) -> GyrobarycentricRep:
    """Gyrobarycentric coordinates of ``P`` in canonical form.

    Solves ``(-A_b) (+) P = sum_{k != b} c_k ((-A_b) (+) A_k)`` in the least
    squares sense, sets ``m_k = c_k / gamma((-A_b) (+) A_k)`` and
    ``m_b = 1 - sum c_k``.

    Parameters
    ----------
    P : array_like, shape (n,)
        Point of the gyroflat.  Points outside the ball are accepted as long
        as ``(-A_b) (+) P`` is defined; ``classify`` on the result tells
        where ``P`` lies.
    anchors : array_like, shape (N, n)
        Gyrobarycentrically independent anchors, ``N <= n + 1``.
    ctx : SpaceContext
    base : int
        Index of the anchor used as gyrotranslation base.

    Raises
    ------
    DependentAnchors
        If the gyrovectors ``(-A_b) (+) A_k`` are linearly dependent.
    NotInGyroflat
        If ``P`` is off the gyroflat by more than ``1e-8`` times the spread
        of those gyrovectors.
    DenominatorVanishes
        If ``(-A_b) (+) P`` is undefined.
    """
    A = ball_point(np.atleast_2d(anchors), ctx)
    P = ambient_vector(P, ctx)
    N = len(A)
    s, dt = ctx.s, ctx.denom_tol
    Ab = A[base]
    others = [k for k in range(N) if k != base]
    a = _add(np.broadcast_to(-Ab, (N - 1, ctx.n)), A[others], s, dt)
    p = _add(-Ab, P, s, dt)
    spread = float(np.max(norm(a), initial=0.0)) if N > 1 else s
    c = _lstsq(a.T, p, max(spread, 1e-300), NotInGyroflat, "gyroflat")
    m = np.empty(N)
    m[others] = c / _gamma(a, s)
    m[base] = 1.0 - math.fsum(c)
    m = canonical_weights(m)
    return GyrobarycentricRep(A, m, rep_constant_sq(A, m, ctx))


def transform_rep(motion: GyroMotion, rep: GyrobarycentricRep, ctx: SpaceContext) -> GyrobarycentricRep:
    """Move the anchors by a gyromotion; weights are kept as they are."""
    moved = apply_gyromotion(motion, rep.anchors, ctx)
    return GyrobarycentricRep(moved, rep.weights, rep_constant_sq(moved, rep.weights, ctx))
