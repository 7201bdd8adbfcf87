"""Lorentz boosts, four-vectors and the resultant invariant mass of particle systems.

Four-vectors use the ``(t, x)`` convention with Minkowski norm squared
``t^2 - |x|^2 / s^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .ball import SignedGamma, SpaceContext, _add, _gamma, ambient_vector, ball_point, dot, norm
from .errors import DegenerateSystem, DimensionMismatch
from .gyration import LawReport, vec_residual

__all__ = [
    "FourVector",
    "Particle",
    "SystemResult",
    "boost_apply",
    "boost_matrix",
    "galilei_boost",
    "minkowski_norm_sq",
    "four_velocity",
    "four_momentum",
    "pair_gamma_minus_one",
    "resultant_invariant_mass",
    "newtonian_resultant",
    "check_resultant_laws",
]


@dataclass(frozen=True)
class FourVector:
    t: float
    x: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        x = np.asarray(self.x, dtype=float)
        if x.ndim != 1:
            raise DimensionMismatch("spatial part must be a single vector")
        object.__setattr__(self, "x", x)

    def as_array(self) -> np.ndarray:
        return np.concatenate([[self.t], self.x])

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x)

    def __rmul__(self, k: float) -> "FourVector":
        return FourVector(k * self.t, k * self.x)


@dataclass(frozen=True)
class Particle:
    """Invariant mass ``m`` moving with velocity ``v``.

    Negative ``m`` is accepted so that systems double as weighted point sets.
    """

    m: float
    v: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "m", float(self.m))
        object.__setattr__(self, "v", np.asarray(self.v, dtype=float))


Classification = Literal["inside", "boundary", "outside"]


@dataclass(frozen=True)
class SystemResult:
    """Resultant of a particle system.

    ``m0`` is real when ``m0_sq > 0``, zero on the boundary and a purely
    imaginary ``complex`` otherwise.  ``v0`` lies inside, on or outside the
    ball according to ``classification``.
    """

    m0_sq: float
    m0: float | complex
    v0: np.ndarray
    gamma_v0: SignedGamma
    classification: Classification
    gamma_mass: float  # sum of m_k gamma_k, the relativistic mass


def boost_apply(u, fv: FourVector, ctx: SpaceContext) -> FourVector:
    """Lorentz boost ``L(u)`` in vector form, valid in every dimension."""
    u = ball_point(u, ctx)
    x = ambient_vector(fv.x, ctx)
    s2 = ctx.s * ctx.s
    g = float(_gamma(u, ctx.s))
    ux = float(dot(u, x))
    t = g * (fv.t + ux / s2)
    xp = g * u * fv.t + x + (g * g / (1.0 + g)) * ux * u / s2
    return FourVector(t, xp)


def boost_matrix(u, ctx: SpaceContext) -> np.ndarray:
    """The 4x4 matrix of ``L(u)`` acting on ``(t, x1, x2, x3)``.

    Raises
    ------
    DimensionMismatch
        Unless ``ctx.n == 3``.
    """
    if ctx.n != 3:
        raise DimensionMismatch("the boost matrix is defined for n = 3")
    u = ball_point(u, ctx)
    s2 = ctx.s * ctx.s
    g = float(_gamma(u, ctx.s))
    L = np.empty((4, 4))
    L[0, 0] = g
    L[0, 1:] = g * u / s2
    L[1:, 0] = g * u
    L[1:, 1:] = np.eye(3) + (g * g / (1.0 + g)) * np.outer(u, u) / s2
    return L


def galilei_boost(v, fv: FourVector) -> FourVector:
    """``(t, x + v t)``."""
    return FourVector(fv.t, fv.x + np.asarray(v, dtype=float) * fv.t)


def minkowski_norm_sq(fv: FourVector, ctx: SpaceContext) -> float:
    """``t^2 - |x|^2 / s^2``, which may be negative."""
    return fv.t * fv.t - float(dot(fv.x, fv.x)) / (ctx.s * ctx.s)


def four_velocity(v, ctx: SpaceContext) -> FourVector:
    """``(gamma_v, gamma_v v)``."""
    v = ball_point(v, ctx)
    g = float(_gamma(v, ctx.s))
    return FourVector(g, g * v)


def four_momentum(p: Particle, ctx: SpaceContext) -> FourVector:
    """``m (gamma_v, gamma_v v)``."""
    return p.m * four_velocity(p.v, ctx)


def _wedge_sq(u, v):
    # |u ^ v|^2 = sum_{i<j} (u_i v_j - u_j v_i)^2, free of the cancellation in |u|^2|v|^2 - (u.v)^2
    M = u[..., :, None] * v[..., None, :]
    return 0.5 * np.sum((M - np.swapaxes(M, -1, -2)) ** 2, axis=(-2, -1))


def pair_gamma_minus_one(u, v, ctx: SpaceContext):
    """``gamma((-u) (+) v) - 1`` without forming the gyrodifference.

    Uses ``gamma^2 |(-u) (+) v|^2 / s^2 = gamma_u^2 gamma_v^2 (|u - v|^2/s^2
    - |u ^ v|^2/s^4)`` so nearly equal velocities and large ``s`` keep full
    relative accuracy.
    """
    u = ball_point(u, ctx)
    v = ball_point(v, ctx)
    return _pair_gm1(u, v, ctx.s)


def _pair_gm1(u, v, s):
    s2 = s * s
    gu = _gamma(u, s)
    gv = _gamma(v, s)
    d = u - v
    q = gu * gu * gv * gv * (dot(d, d) / s2 - _wedge_sq(u, v) / (s2 * s2))
    q = np.maximum(q, 0.0)
    return q / (np.sqrt(1.0 + q) + 1.0)


def _unpack(system, ctx):
    if len(system) == 0:
        raise DegenerateSystem("empty particle system")
    ms, vs = [], []
    for p in system:
        if isinstance(p, Particle):
            ms.append(p.m)
            vs.append(p.v)
        else:
            m, v = p
            ms.append(float(m))
            vs.append(v)
    return np.asarray(ms, dtype=float), ball_point(np.asarray(vs, dtype=float), ctx)


def _classify(value: float, band: float) -> Classification:
    if value > band:
        return "inside"
    if value < -band:
        return "outside"
    return "boundary"


def _resultant(m, V, ctx: SpaceContext) -> SystemResult:
    s = ctx.s
    g = _gamma(V, s)
    mg = m * g
    total = math.fsum(mg)
    scale = math.fsum(np.abs(mg))
    if abs(total) <= ctx.tol(scale):
        raise DegenerateSystem("sum of m_k gamma_k vanishes; the resultant is undefined")
    N = len(m)
    j, k = np.triu_indices(N, 1)
    cross = 2.0 * m[j] * m[k] * _pair_gm1(V[j], V[k], s)
    msum = math.fsum(m)
    m0_sq = math.fsum(np.concatenate([[msum * msum], cross]))
    v0 = np.array([math.fsum(col) for col in (mg[:, None] * V).T]) / total
    kind = _classify(m0_sq, ctx.tol(scale * scale))
    if kind == "inside":
        m0 = math.copysign(math.sqrt(m0_sq), total)
        gv0 = SignedGamma((total / m0) ** 2, "real")
    elif kind == "boundary":
        m0 = 0.0
        gv0 = SignedGamma(math.inf, "infinite")
    else:
        m0 = complex(0.0, math.sqrt(-m0_sq))
        gv0 = SignedGamma(total * total / m0_sq, "imaginary")
    return SystemResult(m0_sq, m0, v0, gv0, kind, total)


def resultant_invariant_mass(system: Sequence, ctx: SpaceContext) -> SystemResult:
    """Resultant invariant mass ``m0`` and center-of-momentum velocity ``v0``.

    Parameters
    ----------
    system : sequence of Particle or (m, v) pairs
        Velocities inside the ball; masses of either sign.
    ctx : SpaceContext

    Returns
    -------
    SystemResult
        ``m0_sq = (sum m)^2 + 2 sum_{j<k} m_j m_k (gamma_jk - 1)``,
        ``v0 = sum m gamma v / sum m gamma`` and, when ``m0_sq > 0``,
        ``m0 = sign(sum m gamma) sqrt(m0_sq)`` and
        ``gamma_v0 = sum m gamma / m0``.

    Raises
    ------
    DegenerateSystem
        If ``sum m_k gamma_k`` vanishes relative to ``sum |m_k| gamma_k``.
    """
    m, V = _unpack(system, ctx)
    return _resultant(m, V, ctx)


def newtonian_resultant(system: Sequence, ctx: SpaceContext | None = None):
    """Newtonian counterpart ``(sum m, sum m v / sum m)``.

    Raises
    ------
    DegenerateSystem
        If the total mass vanishes.
    """
    if len(system) == 0:
        raise DegenerateSystem("empty particle system")
    ms, vs = [], []
    for p in system:
        m, v = (p.m, p.v) if isinstance(p, Particle) else p
        ms.append(float(m))
        vs.append(np.asarray(v, dtype=float))
    m = np.asarray(ms)
    V = np.stack(vs)
    if ctx is not None:
        V = ambient_vector(V, ctx)
    m0 = math.fsum(m)
    if abs(m0) <= 1e-12 * math.fsum(np.abs(m)):
        raise DegenerateSystem("total mass vanishes")
    v0 = np.array([math.fsum(col) for col in (m[:, None] * V).T]) / m0
    return m0, v0


def check_resultant_laws(system: Sequence, ws, ctx: SpaceContext,
                         tol: float | None = None) -> LawReport:
    """Consistency of the resultant with four-momentum algebra.

    Residuals are normalized by ``E = sum |m_k| gamma_k``:

    * ``minkowski``: ``|m0^2 - |sum P_k|^2| / E^2``
    * ``rest frame momentum``: three-momentum left after boosting the total
      by ``-v0``, over ``|m0 gamma_v0|`` (real resultants only)
    * ``mass additivity``: ``|m0 gamma_v0 - sum m gamma| / E``
    * covariance of ``v0``, ``gamma_v0`` and ``m0^2`` under ``v -> w (+) v``
      for each ``w`` in ``ws``
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    m, V = _unpack(system, ctx)
    s = ctx.s
    res = _resultant(m, V, ctx)
    g = _gamma(V, s)
    E = math.fsum(np.abs(m * g))
    T = math.fsum(m * g)
    P = np.array([math.fsum(col) for col in ((m * g)[:, None] * V).T])
    mink = T * T - float(dot(P, P)) / (s * s)
    report.record("minkowski", abs(res.m0_sq - mink) / (E * E))
    if res.classification == "inside":
        boosted = boost_apply(-res.v0, FourVector(T, P), ctx)
        report.record("rest frame momentum", norm(boosted.x) / abs(res.m0 * res.gamma_v0.gamma))
        report.record("mass additivity", abs(res.m0 * res.gamma_v0.gamma - T) / E)
    for w in np.reshape(np.asarray(ws, dtype=float), (-1, ctx.n)):
        w = ball_point(w, ctx)
        Vw = _add(np.broadcast_to(w, V.shape), V, s, ctx.denom_tol)
        moved = _resultant(m, Vw, ctx)
        report.record("m0 invariance", abs(moved.m0_sq - res.m0_sq) / (E * E))
        if 1.0 + float(dot(w, res.v0)) / (s * s) > ctx.denom_tol:
            wv0 = _add(w, res.v0, s, ctx.denom_tol)
            report.record("v0 covariance", vec_residual(wv0, moved.v0, s))
            if res.classification == "inside":
                gw = float(_gamma(wv0, s))
                report.record("gamma covariance", abs(gw - moved.gamma_mass / res.m0) / gw)
    return report
