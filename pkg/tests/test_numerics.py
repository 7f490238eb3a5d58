"""Finite-difference stencils, adaptive quadrature, arc-length placement."""

import math

import numpy as np
import pytest

from minkruled.numerics import (
    adaptive_simpson,
    central_diff1,
    central_diff2,
    uniform_arclength_nodes,
)


def test_central_diff_exact_on_cubics():
    h = 0.1
    x = np.arange(11) * h
    y = x**3 - 2 * x
    dy, sl = central_diff1(y, h)
    assert np.allclose(dy, 3 * x[sl] ** 2 - 2, atol=1e-12)
    d2y, _ = central_diff2(y, h)
    assert np.allclose(d2y, 6 * x[sl], atol=1e-11)


def test_central_diff_fourth_order():
    errors = []
    for n in (40, 80):
        h = 2.0 / n
        x = np.arange(n + 1) * h
        dy, sl = central_diff1(np.sin(x), h)
        errors.append(np.max(np.abs(dy - np.cos(x[sl]))))
    order = math.log2(errors[0] / errors[1])
    assert 3.7 <= order <= 4.3


def test_central_diff_vector_samples():
    h = 0.05
    x = np.arange(21) * h
    y = np.stack([np.cos(x), np.sin(x), x], axis=-1)
    dy, sl = central_diff1(y, h)
    expected = np.stack([-np.sin(x[sl]), np.cos(x[sl]), np.ones_like(x[sl])], axis=-1)
    assert np.max(np.abs(dy - expected)) < 1e-6  # O(h^4) at h = 0.05


def test_central_diff_needs_five_samples():
    with pytest.raises(ValueError):
        central_diff1(np.zeros(4), 0.1)


def test_adaptive_simpson():
    assert adaptive_simpson(lambda x: 4.0 / (1.0 + x * x), 0.0, 1.0) == pytest.approx(
        math.pi, abs=1e-10
    )
    assert adaptive_simpson(math.cosh, 0.0, 2.0) == pytest.approx(math.sinh(2.0), abs=1e-10)
    assert adaptive_simpson(math.exp, 1.0, 1.0) == 0.0


def test_uniform_arclength_nodes():
    # speed cosh(u) integrates to arc length sinh(u)
    u, s = uniform_arclength_nodes(math.cosh, 0.0, 2.0, 33)
    assert s[0] == 0.0
    assert s[-1] == pytest.approx(math.sinh(2.0), abs=1e-9)
    assert np.allclose(np.diff(s), s[-1] / 32, atol=1e-12)
    assert np.max(np.abs(np.sinh(u) - s)) < 1e-9
    assert u[0] == 0.0 and u[-1] == 2.0
