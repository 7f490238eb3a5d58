"""Small numerical kernels: finite-difference stencils and quadrature."""

from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator


def central_diff1(y: np.ndarray, h: float):
    """Fourth-order first derivative on a uniform grid.

    Returns ``(dy, sl)`` where ``dy`` holds derivatives for the interior
    samples ``y[sl]`` with ``sl = slice(2, len(y) - 2)``.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for the 4th-order stencil")
    sl = slice(2, n - 2)
    dy = (y[:-4] - 8.0 * y[1:-3] + 8.0 * y[3:-1] - y[4:]) / (12.0 * h)
    return dy, sl


def central_diff2(y: np.ndarray, h: float):
    """Fourth-order second derivative on a uniform grid; interior as above."""
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 5:
        raise ValueError("need at least 5 samples for the 4th-order stencil")
    sl = slice(2, n - 2)
    d2 = (
        -y[:-4] + 16.0 * y[1:-3] - 30.0 * y[2:-2] + 16.0 * y[3:-1] - y[4:]
    ) / (12.0 * h * h)
    return d2, sl


def adaptive_simpson(fn, a: float, b: float, tol: float = 1e-10, max_depth: int = 40) -> float:
    """Adaptive Simpson quadrature of a scalar function on [a, b]."""

    def simpson(x0, x2, f0, f1, f2):
        return (x2 - x0) / 6.0 * (f0 + 4.0 * f1 + f2)

    def recurse(x0, x2, f0, f1, f2, whole, eps, depth):
        x1 = 0.5 * (x0 + x2)
        lm = 0.5 * (x0 + x1)
        rm = 0.5 * (x1 + x2)
        flm = fn(lm)
        frm = fn(rm)
        left = simpson(x0, x1, f0, flm, f1)
        right = simpson(x1, x2, f1, frm, f2)
        delta = left + right - whole
        if depth >= max_depth or abs(delta) <= 15.0 * eps:
            return left + right + delta / 15.0
        half = 0.5 * eps
        return recurse(x0, x1, f0, flm, f1, left, half, depth + 1) + recurse(
            x1, x2, f1, frm, f2, right, half, depth + 1
        )

    if a == b:
        return 0.0
    fa, fm, fb = fn(a), fn(0.5 * (a + b)), fn(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 0)


def uniform_arclength_nodes(speed_fn, u0: float, u1: float, n: int, quad_tol: float = 1e-10):
    """Place ``n`` parameter values equally spaced in arc length.

    ``speed_fn`` is ds/du > 0.  Integrates segmentwise with adaptive Simpson,
    inverts with monotone cubic interpolation, and polishes each node with
    Newton steps (ds/du is exact).  Returns ``(u_nodes, s_nodes)`` with
    ``s_nodes`` uniform from 0 to the total arc length.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    dense = max(801, 4 * n + 1)
    u_dense = np.linspace(u0, u1, dense)
    seg = np.empty(dense)
    seg[0] = 0.0
    for i in range(dense - 1):
        seg[i + 1] = adaptive_simpson(speed_fn, u_dense[i], u_dense[i + 1], quad_tol)
    s_dense = np.cumsum(seg)
    if np.any(np.diff(s_dense) <= 0.0):
        raise ValueError("arc length is not strictly increasing on the range")
    inverse = PchipInterpolator(s_dense, u_dense)
    s_nodes = np.linspace(0.0, s_dense[-1], n)
    u_nodes = np.asarray(inverse(s_nodes), dtype=float)
    u_nodes[0], u_nodes[-1] = u0, u1
    for i in range(1, n - 1):
        u = u_nodes[i]
        # s(u) from the nearest dense node keeps the Newton correction local
        j = int(np.searchsorted(u_dense, u)) - 1
        j = min(max(j, 0), dense - 2)
        for _ in range(2):
            s_here = s_dense[j] + adaptive_simpson(speed_fn, u_dense[j], u, quad_tol)
            u = u - (s_here - s_nodes[i]) / speed_fn(u)
        u_nodes[i] = u
    return u_nodes, s_nodes
