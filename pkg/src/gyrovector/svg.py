"""Deterministic SVG rendering of the Beltrami-Klein disk.

Gyrolines are Euclidean chords of the disk, so every anchor pair is drawn
as the straight segment between its two boundary points.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np

from .ball import SpaceContext
from .space import boundary_points, gyromidpoint

SIZE = 400
MARGIN = 20


def _fmt(x: float) -> str:
    out = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if out == "-0" else out


class _Canvas:
    def __init__(self, s: float):
        self.s = s
        self.half = (SIZE - 2 * MARGIN) / 2.0
        self.centre = SIZE / 2.0
        self.items: list[str] = []

    def xy(self, p) -> tuple[str, str]:
        x = self.centre + self.half * float(p[0]) / self.s
        y = self.centre - self.half * float(p[1]) / self.s
        return _fmt(x), _fmt(y)

    def line(self, p, q, cls):
        (x1, y1), (x2, y2) = self.xy(p), self.xy(q)
        self.items.append(f'<line class="{cls}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>')

    def dot(self, p, cls, r=3.0, label=None):
        x, y = self.xy(p)
        self.items.append(f'<circle class="{cls}" cx="{x}" cy="{y}" r="{_fmt(r)}"/>')
        if label:
            tx, ty = self.xy(p)
            self.items.append(
                f'<text x="{_fmt(float(tx) + 5)}" y="{_fmt(float(ty) - 5)}">{label}</text>')


STYLE = (
    ".disk{fill:none;stroke:#000;stroke-width:1}"
    ".chord{stroke:#36c;stroke-width:1}"
    ".anchor{fill:#000}.mid{fill:#c33}.end{fill:#fff;stroke:#36c}"
    ".point{fill:#393}text{font-family:sans-serif;font-size:11px}"
)


def render_klein_disk(anchors, ctx: SpaceContext, point=None, query=None) -> str:
    """SVG 1.1 document for a two-dimensional point set.

    Parameters
    ----------
    anchors : array_like, shape (N, 2)
    ctx : SpaceContext
        Must have ``n == 2``.
    point : array_like, optional
        Evaluated gyrobarycentric point, labelled ``P``.
    query : array_like, optional
        Query point, labelled ``Q``.
    """
    A = np.asarray(anchors, dtype=float).reshape(-1, 2)
    cv = _Canvas(ctx.s)
    for i, j in combinations(range(len(A)), 2):
        e1, e2 = boundary_points(A[i], A[j], ctx)
        cv.line(e1, e2, "chord")
    for i, j in combinations(range(len(A)), 2):
        e1, e2 = boundary_points(A[i], A[j], ctx)
        cv.dot(e1, "end", 2.5)
        cv.dot(e2, "end", 2.5)
        cv.dot(gyromidpoint(A[i], A[j], ctx), "mid", 2.5, f"M{i + 1}{j + 1}")
    for k, a in enumerate(A, 1):
        cv.dot(a, "anchor", 3.0, f"A{k}")
    if point is not None and np.all(np.isfinite(point)):
        cv.dot(point, "point", 3.0, "P")
    if query is not None:
        cv.dot(query, "point", 3.0, "Q")
    c = _fmt(cv.centre)
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
        f"<style>{STYLE}</style>",
        f'<circle class="disk" cx="{c}" cy="{c}" r="{_fmt(cv.half)}"/>',
    ]
    return "\n".join(head + cv.items + ["</svg>"]) + "\n"
