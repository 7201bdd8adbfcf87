"""Gyrations gyr[u, v] as linear maps of R^n, and the gyrogroup law checker."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .ball import SpaceContext, _add, _gamma, ambient_vector, ball_point, dot, norm
from .errors import GyroError

__all__ = [
    "LawReport",
    "gyr_apply",
    "gyr_matrix",
    "check_gyration_matrices",
    "check_gyrogroup_axioms",
]


def _coefficients(u, v, w, s):
    """Return ``(A, B, D)`` so that ``gyr[u, v] w = w + (A u + B v) / D``."""
    s2 = s * s
    gu = _gamma(u, s)
    gv = _gamma(v, s)
    uv = dot(u, v)
    uw = dot(u, w)
    vw = dot(v, w)
    A = (-(gu * gu / (gu + 1.0)) * (gv - 1.0) * uw / s2
         + gu * gv * vw / s2
         + 2.0 * (gu * gu * gv * gv / ((gu + 1.0) * (gv + 1.0))) * uv * vw / (s2 * s2))
    B = -(gv / (gv + 1.0)) * (gu * (gv + 1.0) * uw + (gu - 1.0) * gv * vw) / s2
    D = gu * gv * (1.0 + uv / s2) + 1.0
    return A, B, D


def _gyr(u, v, w, s):
    A, B, D = _coefficients(u, v, w, s)
    return w + (A[..., None] * u + B[..., None] * v) / D[..., None]


def gyr_apply(u, v, w, ctx: SpaceContext) -> np.ndarray:
    """Apply the gyration ``gyr[u, v]`` to ``w``.

    Parameters
    ----------
    u, v : array_like, shape (..., n)
        Generating pair, strictly inside the ball.
    w : array_like, shape (..., n)
        Any vector of ``R^n``; gyrations extend linearly beyond the ball.
    ctx : SpaceContext

    Returns
    -------
    numpy.ndarray
        ``gyr[u, v] w``, broadcast over the leading axes.
    """
    u = ball_point(u, ctx)
    v = ball_point(v, ctx)
    w = ambient_vector(w, ctx)
    return _gyr(u, v, w, ctx.s)


def _gyr_matrix(u, v, s):
    n = u.shape[-1]
    eye = np.eye(n)
    rows = _gyr(u[..., None, :], v[..., None, :], eye, s)
    # rows[..., i, :] is the image of e_i, i.e. column i of the matrix
    return np.swapaxes(rows, -1, -2)


def gyr_matrix(u, v, ctx: SpaceContext) -> np.ndarray:
    """Matrix ``M`` of ``gyr[u, v]``, so that ``M @ w == gyr_apply(u, v, w)``.

    Stacks of pairs give stacks of matrices of shape ``(..., n, n)``.
    """
    return _gyr_matrix(ball_point(u, ctx), ball_point(v, ctx), ctx.s)


@dataclass
class LawReport:
    """Worst-case residual of each law over a sample."""

    residuals: dict = field(default_factory=dict)
    tol: float = 1e-9

    def record(self, law: str, value) -> None:
        value = float(np.max(value)) if np.size(value) else 0.0
        if np.isnan(value):
            value = np.inf
        self.residuals[law] = max(self.residuals.get(law, 0.0), value)

    def evaluate(self, law: str, residual) -> None:
        """Record ``residual()``; a law whose terms are undefined gets ``inf``."""
        try:
            value = residual()
        except GyroError:
            value = np.inf
        self.record(law, value)

    def merge(self, other: "LawReport") -> "LawReport":
        for law, value in other.residuals.items():
            self.record(law, value)
        return self

    @property
    def failures(self) -> list:
        return [law for law, r in self.residuals.items() if not r < self.tol]

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def worst(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def table(self) -> str:
        width = max((len(k) for k in self.residuals), default=4)
        lines = [f"{'law':<{width}}  {'max residual':>12}  status"]
        for law, r in self.residuals.items():
            status = "ok" if r < self.tol else "FAIL"
            lines.append(f"{law:<{width}}  {r:12.3e}  {status}")
        return "\n".join(lines)


def vec_residual(x, y, s):
    """Per-sample ``|x - y| / max(s, |x|, |y|)``."""
    scale = np.maximum(np.maximum(norm(x), norm(y)), s)
    return norm(np.asarray(x) - np.asarray(y)) / scale


def mat_residual(M, N):
    """Per-sample max-abs entry of ``M - N``."""
    return np.max(np.abs(np.asarray(M) - np.asarray(N)), axis=(-2, -1))


def _split_triples(triples, ctx):
    t = ball_point(triples, ctx)
    if t.ndim == 2:
        t = t[None]
    if t.ndim != 3 or t.shape[1] != 3:
        raise ValueError("expected triples of shape (count, 3, n)")
    return t[:, 0], t[:, 1], t[:, 2]


def check_gyrogroup_axioms(triples, ctx: SpaceContext, tol: float | None = None) -> LawReport:
    """Evaluate the gyrocommutative gyrogroup laws on sampled triples.

    Parameters
    ----------
    triples : array_like, shape (count, 3, n)
        Sample ``(a, b, c)`` triples inside the ball.  ``c`` and ``a`` also
        serve as the pair ``(x, y)`` in the automorphism law.
    ctx : SpaceContext
    tol : float, optional
        Pass threshold attached to the report, ``ctx.rel_tol`` by default.

    Returns
    -------
    LawReport
        Worst residual per law.  Vector residuals are relative to
        ``max(s, |lhs|, |rhs|)``; matrix residuals are max-abs entries.
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    a, b, c = _split_triples(triples, ctx)
    if len(a) == 0:
        return report
    s, dt = ctx.s, ctx.denom_tol

    def add(x, y):
        return _add(x, y, s, dt)

    def gyr(x, y, w):
        return _gyr(x, y, w, s)

    def gmat(x, y):
        return _gyr_matrix(x, y, s)

    def r(x, y):
        return vec_residual(x, y, s)

    zero = np.zeros_like(a)
    ab = add(a, b)
    ba = add(b, a)
    report.evaluate("G1 left identity", lambda: r(add(zero, a), a))
    report.evaluate("G2 left inverse", lambda: r(add(-a, a), zero))
    report.evaluate("G3 left gyroassociativity", lambda: r(add(a, add(b, c)), add(ab, gyr(a, b, c))))
    x, y = c, a
    report.evaluate("G4 gyroautomorphism",
                    lambda: r(gyr(a, b, add(x, y)), add(gyr(a, b, x), gyr(a, b, y))))
    G_ab = gmat(a, b)
    report.evaluate("G5 left loop property", lambda: mat_residual(G_ab, gmat(ab, b)))
    report.evaluate("G6 gyrocommutativity", lambda: r(ab, gyr(a, b, ba)))
    report.evaluate("right gyroassociativity", lambda: r(add(ab, c), add(a, add(b, gyr(b, a, c)))))
    report.evaluate("right loop property", lambda: mat_residual(gmat(a, add(b, a)), G_ab))
    report.evaluate("even property", lambda: mat_residual(gmat(-a, -b), G_ab))
    eye = np.eye(a.shape[-1])
    report.evaluate("inversion law", lambda: mat_residual(G_ab @ gmat(b, a), eye))
    report.evaluate("gyroautomorphic inverse", lambda: r(-ab, add(-a, -b)))
    report.evaluate("left cancellation", lambda: r(add(-a, ab), b))
    return report


def check_gyration_matrices(pairs, ctx: SpaceContext, tol: float | None = None) -> LawReport:
    """Orthogonality and unit determinant of ``gyr[u, v]`` for sampled pairs.

    ``pairs`` has shape ``(count, 2, n)``.
    """
    report = LawReport(tol=ctx.rel_tol if tol is None else tol)
    p = ball_point(pairs, ctx)
    if p.ndim == 2:
        p = p[None]
    if len(p) == 0:
        return report
    M = _gyr_matrix(p[:, 0], p[:, 1], ctx.s)
    eye = np.eye(p.shape[-1])
    report.record("orthogonality", mat_residual(np.swapaxes(M, -1, -2) @ M, eye))
    report.record("unit determinant", np.abs(np.linalg.det(M) - 1.0))
    return report
