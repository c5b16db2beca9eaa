"""Fixed Gauss-Legendre panel quadrature over straight segments in the complex plane.

Everything here is deterministic: panel layouts are pure functions of their
arguments, so repeated runs produce bitwise-identical results.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "NODES_PER_PANEL",
    "gl_segments",
    "geometric_edges",
    "uniform_edges",
]

NODES_PER_PANEL = 64

_GL_X, _GL_W = np.polynomial.legendre.leggauss(NODES_PER_PANEL)


def gl_segments(edges: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for GL panels between consecutive complex edge points."""
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)[:, None]
    half = 0.5 * (b - a)[:, None]
    nodes = (mid + half * _GL_X[None, :]).ravel()
    weights = (half * _GL_W[None, :]).ravel()
    return nodes, weights


def geometric_edges(lo: float, hi: float, ratio: float = 2.0) -> np.ndarray:
    """Edges lo, lo*ratio, ... capped at hi (ascending, includes both ends)."""
    if not (0 < lo < hi):
        raise ValueError("need 0 < lo < hi")
    pts = [lo]
    while pts[-1] * ratio < hi:
        pts.append(pts[-1] * ratio)
    pts.append(hi)
    return np.asarray(pts)


def uniform_edges(lo: float, hi: float, n_panels: int) -> np.ndarray:
    if n_panels < 1:
        raise ValueError("n_panels must be positive")
    return np.linspace(lo, hi, n_panels + 1)
