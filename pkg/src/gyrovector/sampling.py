"""Seeded random samples: ball points, rotations and weights."""

from __future__ import annotations

import numpy as np


def random_directions(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    d = rng.standard_normal((count, n))
    nrm = np.linalg.norm(d, axis=-1, keepdims=True)
    while np.any(nrm == 0):
        d = np.where(nrm == 0, rng.standard_normal((count, n)), d)
        nrm = np.linalg.norm(d, axis=-1, keepdims=True)
    return d / nrm


def random_ball_points(rng: np.random.Generator, count: int, n: int, s: float = 1.0,
                       max_ratio: float = 0.95) -> np.ndarray:
    """``count`` points uniform in the ball of radius ``max_ratio * s``."""
    radius = max_ratio * s * rng.random(count) ** (1.0 / n)
    return random_directions(rng, count, n) * radius[:, None]


def random_rotation(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-random matrix of SO(n)."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def random_rotations(rng: np.random.Generator, count: int, n: int) -> np.ndarray:
    return np.stack([random_rotation(rng, n) for _ in range(count)]) if count else np.zeros((0, n, n))
