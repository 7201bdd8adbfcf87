"""The open s-ball, Lorentz gamma factors and Einstein addition.

Points are plain float ``numpy`` arrays whose last axis is the space
dimension, so every kernel here also works on stacks of points of shape
``(..., n)``.  :func:`ball_point` and :func:`ambient_vector` are the
validating constructors for the two point types used throughout the
package: points strictly inside the ball, and unrestricted vectors of
``R^n`` (boundary points, points beyond the ball, gyration arguments).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .errors import DenominatorVanishes, DimensionMismatch, OutsideBall

__all__ = [
    "SpaceContext",
    "SignedGamma",
    "ambient_vector",
    "ball_point",
    "dot",
    "norm",
    "gamma",
    "gamma_signed",
    "einstein_add",
    "einstein_sub",
    "gamma_of_sum",
    "scalar_norm_add",
]


@dataclass(frozen=True)
class SpaceContext:
    """Ball radius, dimension and comparison tolerances.

    ``s`` plays the role of the speed of light; every operation takes the
    context explicitly so that several spaces can coexist.
    """

    s: float = 1.0
    n: int = 3
    rel_tol: float = 1e-9
    abs_tol: float = 1e-12
    denom_tol: float = 1e-13

    def __post_init__(self):
        if not (self.s > 0 and math.isfinite(self.s)):
            raise ValueError(f"ball radius must be positive and finite, got {self.s!r}")
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"dimension must be an integer >= 1, got {self.n!r}")
        if min(self.rel_tol, self.abs_tol, self.denom_tol) <= 0:
            raise ValueError("tolerances must be positive")

    def tol(self, scale: float = 1.0) -> float:
        """Equality tolerance ``max(abs_tol, rel_tol * scale)``."""
        return max(self.abs_tol, self.rel_tol * abs(scale))

    def with_s(self, s: float) -> "SpaceContext":
        return SpaceContext(s=s, n=self.n, rel_tol=self.rel_tol,
                            abs_tol=self.abs_tol, denom_tol=self.denom_tol)


def ambient_vector(x, ctx: SpaceContext) -> np.ndarray:
    """Validate ``x`` as (a stack of) vectors of ``R^n``."""
    a = np.asarray(x, dtype=float)
    if a.ndim == 0 or a.shape[-1] != ctx.n:
        raise DimensionMismatch(f"expected vectors of dimension {ctx.n}, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("vector components must be finite")
    return a


def ball_point(x, ctx: SpaceContext) -> np.ndarray:
    """Validate ``x`` as (a stack of) points strictly inside the s-ball."""
    a = ambient_vector(x, ctx)
    if np.any(norm(a) >= ctx.s):
        raise OutsideBall(f"point(s) not strictly inside the ball of radius {ctx.s}")
    return a


def dot(u, v) -> np.ndarray:
    return np.sum(np.multiply(u, v), axis=-1)


def norm(v) -> np.ndarray:
    return np.linalg.norm(v, axis=-1)


def _gamma(v, s):
    r = norm(v) / s
    # factored radicand: no cancellation as |v| -> s
    return 1.0 / np.sqrt((1.0 - r) * (1.0 + r))


def gamma(v, ctx: SpaceContext):
    """Lorentz factor ``1/sqrt(1 - |v|^2/s^2)`` of a ball point."""
    return _gamma(ball_point(v, ctx), ctx.s)


@dataclass(frozen=True)
class SignedGamma:
    """Gamma factor of an arbitrary vector, kept as a signed square.

    ``kind`` is ``"real"`` inside the ball, ``"infinite"`` on its boundary
    and ``"imaginary"`` beyond it (``gamma_sq < 0``).
    """

    gamma_sq: float
    kind: Literal["real", "infinite", "imaginary"]

    @property
    def gamma(self):
        if self.kind == "real":
            return math.sqrt(self.gamma_sq)
        if self.kind == "infinite":
            return math.inf
        return complex(0.0, math.sqrt(-self.gamma_sq))

    @classmethod
    def from_square(cls, gamma_sq: float) -> "SignedGamma":
        if math.isinf(gamma_sq):
            return cls(math.inf, "infinite")
        return cls(float(gamma_sq), "real" if gamma_sq > 0 else "imaginary")


def gamma_signed(v, ctx: SpaceContext) -> SignedGamma:
    """Gamma factor of a single vector of ``R^n``, never raising."""
    v = ambient_vector(v, ctx)
    if v.ndim != 1:
        raise DimensionMismatch("gamma_signed takes a single vector")
    r = float(norm(v)) / ctx.s
    radicand = (1.0 - r) * (1.0 + r)
    if abs(radicand) <= ctx.abs_tol:
        return SignedGamma(math.inf, "infinite")
    return SignedGamma.from_square(1.0 / radicand)


def _add(u, v, s, denom_tol):
    uv = dot(u, v)[..., None] / (s * s)
    denom = 1.0 + uv
    if np.any(denom <= denom_tol):
        raise DenominatorVanishes("1 + u.v/s^2 vanishes or is negative; u (+) v is undefined")
    gu = _gamma(u, s)[..., None]
    return (u + v / gu + (gu / (1.0 + gu)) * uv * u) / denom


def einstein_add(u, v, ctx: SpaceContext) -> np.ndarray:
    """Einstein sum ``u (+) v``.

    ``u`` must lie inside the ball; ``v`` may be any vector of ``R^n``, in
    which case the sum is defined whenever ``1 + u.v/s^2 > 0``.

    Raises
    ------
    DenominatorVanishes
        If ``1 + u.v/s^2 <= ctx.denom_tol``.
    """
    return _add(ball_point(u, ctx), ambient_vector(v, ctx), ctx.s, ctx.denom_tol)


def einstein_sub(u, v, ctx: SpaceContext) -> np.ndarray:
    """``u (-) v = u (+) (-v)``."""
    return einstein_add(u, -np.asarray(v, dtype=float), ctx)


def gamma_of_sum(u, v, ctx: SpaceContext):
    """``gamma(u (+) v)`` through the gamma identity, without forming the sum."""
    u = ball_point(u, ctx)
    v = ball_point(v, ctx)
    s = ctx.s
    return _gamma(u, s) * _gamma(v, s) * (1.0 + dot(u, v) / (s * s))


def scalar_norm_add(a, b, ctx: SpaceContext):
    """Einstein addition of parallel magnitudes, ``(a + b)/(1 + ab/s^2)``.

    Accepts signed values in ``(-s, s)``.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if np.any(np.abs(a) >= ctx.s) or np.any(np.abs(b) >= ctx.s):
        raise OutsideBall("magnitudes must lie in (-s, s)")
    return (a + b) / (1.0 + a * b / (ctx.s * ctx.s))
