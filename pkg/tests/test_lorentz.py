"""Metric, cross product, causal classification, angles, frame validation."""

import math

import numpy as np
import pytest

from minkruled.errors import (
    DegenerateSpanError,
    NullInputError,
    OppositeOrientationError,
)
from minkruled.lorentz import (
    DEFAULT_TOLERANCES,
    AngleKind,
    CausalCharacter,
    frame_check,
    lorentz_angle,
    lorentz_cross,
    lorentz_dot,
    norm_and_character,
    vec3,
)


def cross_oracle(x, y):
    """Independent componentwise expansion of the vector product."""
    return np.array(
        [
            x[1] * y[2] - x[2] * y[1],
            x[0] * y[2] - x[2] * y[0],
            x[1] * y[0] - x[0] * y[1],
        ]
    )


def test_metric_basis_vectors():
    assert lorentz_dot(vec3(1, 0, 0), vec3(1, 0, 0)) == -1.0
    assert lorentz_dot(vec3(0, 1, 0), vec3(0, 1, 0)) == 1.0
    assert lorentz_dot(vec3(1, 2, 2), vec3(3, 0, 1)) == -1.0


def test_cross_product_values():
    assert np.array_equal(lorentz_cross(vec3(1, 0, 0), vec3(0, 1, 0)), [0.0, 0.0, -1.0])
    x = vec3(0.3, -1.2, 2.0)
    assert np.array_equal(lorentz_cross(x, x), [0.0, 0.0, 0.0])
    expected = cross_oracle(vec3(0, 1, 0), vec3(0, 0, 1))
    assert np.array_equal(lorentz_cross(vec3(0, 1, 0), vec3(0, 0, 1)), expected)
    assert np.array_equal(expected, [1.0, 0.0, 0.0])


def test_cross_random_against_oracle_and_orthogonality():
    rng = np.random.default_rng(7)
    for _ in range(200):
        x = rng.uniform(-1e3, 1e3, 3)
        y = rng.uniform(-1e3, 1e3, 3)
        c = lorentz_cross(x, y)
        assert np.array_equal(c, cross_oracle(x, y))
        scale = 1.0 + np.linalg.norm(x) * np.linalg.norm(y) * (
            np.linalg.norm(x) + np.linalg.norm(y)
        )
        assert abs(lorentz_dot(c, x)) <= 1e-12 * scale
        assert abs(lorentz_dot(c, y)) <= 1e-12 * scale
        assert np.array_equal(c, -lorentz_cross(y, x))


def test_bilinearity():
    rng = np.random.default_rng(11)
    for _ in range(200):
        x, y, z = rng.uniform(-1e3, 1e3, (3, 3))
        a, b = rng.uniform(-10, 10, 2)
        lhs = lorentz_dot(a * x + b * y, z)
        rhs = a * lorentz_dot(x, z) + b * lorentz_dot(y, z)
        assert abs(lhs - rhs) <= 1e-12 * (1.0 + abs(lhs) + abs(rhs))


def test_norm_and_character():
    norm, char = norm_and_character(vec3(1, 0, 0))
    assert norm == 1.0 and char is CausalCharacter.TIMELIKE
    norm, char = norm_and_character(vec3(1, 1, 0))
    assert norm == 0.0 and char is CausalCharacter.NULL
    norm, char = norm_and_character(vec3(2, 1, 0))
    assert char is CausalCharacter.TIMELIKE
    assert norm == pytest.approx(math.sqrt(3), abs=1e-15)
    assert norm_and_character(vec3(0, 0, 0))[1] is CausalCharacter.SPACELIKE
    # classification is scale invariant: huge null vector stays null
    assert norm_and_character(vec3(1e8, 1e8, 0))[1] is CausalCharacter.NULL


def test_vec3_rejects_non_finite():
    with pytest.raises(ValueError):
        vec3(float("nan"), 0, 0)
    with pytest.raises(ValueError):
        vec3(0, float("inf"), 0)


def test_angle_hyperbolic():
    # oracle: arccosh of the normalized product
    x, y = vec3(1, 0, 0), vec3(math.cosh(1), math.sinh(1), 0)
    expected = math.acosh(-lorentz_dot(x, y))
    res = lorentz_angle(x, y)
    assert res.kind is AngleKind.HYPERBOLIC
    assert res.theta == pytest.approx(expected, abs=1e-14)
    assert res.theta == pytest.approx(1.0, abs=1e-14)


def test_angle_central():
    x, y = vec3(0, 1, 0), vec3(math.sinh(1), math.cosh(1), 0)
    res = lorentz_angle(x, y)
    assert res.kind is AngleKind.CENTRAL
    assert res.theta == pytest.approx(math.acosh(math.cosh(1)), abs=1e-12)


def test_angle_spacelike_plane():
    phi = 0.8
    res = lorentz_angle(vec3(0, 1, 0), vec3(0, math.cos(phi), math.sin(phi)))
    assert res.kind is AngleKind.SPACELIKE
    assert res.theta == pytest.approx(phi, abs=1e-14)


def test_angle_mixed():
    res = lorentz_angle(vec3(0, 1, 0), vec3(1, 0, 0))
    assert res.kind is AngleKind.LORENTZIAN_TIMELIKE
    assert res.theta == 0.0
    res = lorentz_angle(vec3(0, 1, 0), vec3(2, math.sqrt(3), 0))
    assert res.theta == pytest.approx(math.asinh(math.sqrt(3)), abs=1e-12)
    assert res.signed_theta == pytest.approx(math.asinh(math.sqrt(3)), abs=1e-12)


def test_angle_errors():
    with pytest.raises(NullInputError):
        lorentz_angle(vec3(1, 1, 0), vec3(0, 1, 0))
    with pytest.raises(NullInputError):
        lorentz_angle(vec3(0, 0, 0), vec3(0, 1, 0))
    with pytest.raises(OppositeOrientationError):
        lorentz_angle(vec3(1, 0, 0), vec3(-1, 0, 0))
    with pytest.raises(DegenerateSpanError):
        lorentz_angle(vec3(0, 1, 0), vec3(0, 2, 0))


def _random_unit_timelike(rng):
    b, c = rng.uniform(-2, 2, 2)
    x1 = math.sqrt(1.0 + b * b + c * c)
    return vec3(x1, b, c)


def test_hyperbolic_angle_consistency():
    rng = np.random.default_rng(23)
    for _ in range(200):
        x = _random_unit_timelike(rng)
        y = _random_unit_timelike(rng)
        theta = lorentz_angle(x, y).theta
        assert abs(lorentz_dot(x, y) + math.cosh(theta)) <= 1e-10


def test_frame_check_canonical():
    report = frame_check(vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, -1), -1)
    assert report.orthonormal and report.h_is_cross and report.canonical
    assert report.det == pytest.approx(-1.0, abs=1e-15)


def test_frame_check_non_canonical_orientation():
    report = frame_check(vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1), -1)
    assert report.orthonormal
    assert report.det == pytest.approx(1.0, abs=1e-15)
    assert not report.h_is_cross
    assert not report.canonical


def test_frame_check_invalid():
    report = frame_check(vec3(1, 0, 0), vec3(1, 1, 0), vec3(0, 0, 1), -1)
    assert not report.orthonormal
    assert report.residuals["qh"] == pytest.approx(1.0, abs=1e-15)


def test_frame_check_positive_epsilon():
    report = frame_check(vec3(0, 1, 0), vec3(0, 0, -1), vec3(1, 0, 0), 1)
    assert report.orthonormal and report.canonical


def test_tolerances_positive():
    from minkruled.lorentz import Tolerances

    with pytest.raises(ValueError):
        Tolerances(causal_eps=0.0)
    assert DEFAULT_TOLERANCES.causal_eps == 1e-10
