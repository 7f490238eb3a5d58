"""Explicit ruled surfaces: invariants, moving frame, classification, predicates."""

import math

import numpy as np
import pytest

from minkruled.errors import CylindricalRulingError, DegenerateNormalError
from minkruled.lorentz import CausalCharacter, frame_check, lorentz_dot
from minkruled.ruled import (
    ExplicitSurface,
    asymptotic_normal,
    classify,
    distribution_parameter,
    frame_consistency,
    frenet_frame_at,
    normal_limit_agreement,
    sample_frames,
    striction,
    striction_predicates,
    surface_point,
    unit_normal,
)
from minkruled.synthesis import from_constants, synthesize_surface


@pytest.fixture(scope="module")
def helicoid():
    """Timelike ruled surface with unit timelike ruling and spacelike striction."""
    return ExplicitSurface.from_strings(("0", "0", "s"), ("cosh(s)", "sinh(s)", "0"), (0.0, 1.0))


def syn1_explicit(tau: float) -> ExplicitSurface:
    """Closed-form surface generated by k1 = 1, k2 = 0, theta = tau."""
    ct, st = math.cosh(tau), math.sinh(tau)
    return ExplicitSurface.from_strings(
        (f"{ct!r}*sinh(s)", f"{ct!r}*(cosh(s) - 1)", f"{-st!r}*s"),
        ("cosh(s)", "sinh(s)", "0"),
        (0.0, 1.0),
    )


def test_surface_point(helicoid):
    assert np.allclose(surface_point(helicoid, 0.0, 2.0), [2.0, 0.0, 0.0], atol=1e-15)
    assert np.allclose(surface_point(helicoid, 0.7, 0.0), [0.0, 0.0, 0.7], atol=1e-15)
    assert np.allclose(
        surface_point(helicoid, 1.0, 1.0),
        [math.cosh(1), math.sinh(1), 1.0],
        atol=1e-15,
    )


def test_distribution_parameter_helicoid(helicoid):
    for u in np.linspace(0.0, 1.0, 7):
        assert distribution_parameter(helicoid, float(u)) == pytest.approx(1.0, abs=1e-12)


def test_distribution_parameter_cylinder():
    cylinder = ExplicitSurface.from_strings(("0", "0", "s"), ("1", "0", "0"), (0.0, 1.0))
    with pytest.raises(CylindricalRulingError):
        distribution_parameter(cylinder, 0.5)


def test_unit_normal(helicoid):
    assert np.allclose(unit_normal(helicoid, 0.0, 0.0), [0.0, -1.0, 0.0], atol=1e-15)
    rng = np.random.default_rng(5)
    d = helicoid._d
    from minkruled.ruled import eval_triple

    for _ in range(100):
        u = float(rng.uniform(0.0, 1.0))
        v = float(rng.uniform(-2.0, 2.0))
        m = unit_normal(helicoid, u, v)
        ru = eval_triple(d.fdot, u) + v * eval_triple(d.qdot, u)
        rv = eval_triple(d.q, u)
        assert abs(lorentz_dot(m, ru)) <= 1e-10 * (1 + np.linalg.norm(ru))
        assert abs(lorentz_dot(m, rv)) <= 1e-10
        assert abs(lorentz_dot(m, m) - 1.0) <= 1e-10


def test_unit_normal_degenerate():
    # spacelike surface: both tangent directions spacelike spanning a
    # spacelike plane, so the normal radicand is negative
    spacelike = ExplicitSurface.from_strings(
        ("0", "s", "0"), ("0", "sin(s)", "cos(s)"), (-0.5, 0.5)
    )
    with pytest.raises(DegenerateNormalError):
        unit_normal(spacelike, 0.0, 0.0)


def test_asymptotic_normal(helicoid):
    a = asymptotic_normal(helicoid, 0.0)
    assert np.allclose(a, [0.0, 0.0, 1.0], atol=1e-15)
    for u in (0.0, 0.4, 1.0):
        a = asymptotic_normal(helicoid, u)
        d = helicoid._d
        from minkruled.ruled import eval_triple

        assert abs(lorentz_dot(a, eval_triple(d.q, u))) <= 1e-10
        assert abs(lorentz_dot(a, eval_triple(d.qdot, u))) <= 1e-10


def test_normal_limit_agreement(helicoid):
    out = normal_limit_agreement(helicoid, 0.3, v_mag=1e4)
    assert min(out["+v"], out["-v"]) <= 1e-3
    assert out["matching_sign"] in (1, -1)
    # for this surface the +v limit matches the formula direction
    assert out["matching_sign"] == 1


def test_striction(helicoid):
    v0, point = striction(helicoid, 0.7)
    assert v0 == pytest.approx(0.0, abs=1e-15)
    assert np.allclose(point, [0.0, 0.0, 0.7], atol=1e-15)


def test_striction_shifted_base():
    surf = ExplicitSurface.from_strings(("s", "0", "0"), ("cosh(s)", "sinh(s)", "0"), (0.0, 1.0))
    u = 0.6
    v0, point = striction(surf, u)
    assert v0 == pytest.approx(math.sinh(u), abs=1e-12)
    assert np.allclose(
        point,
        [u + math.sinh(u) * math.cosh(u), math.sinh(u) ** 2, 0.0],
        atol=1e-12,
    )


def test_striction_invariant_under_base_shift_along_ruling():
    base = ExplicitSurface.from_strings(("s", "0", "0"), ("cosh(s)", "sinh(s)", "0"), (0.0, 1.0))
    shifted = ExplicitSurface.from_strings(
        ("s + 3*cosh(s)", "3*sinh(s)", "0"), ("cosh(s)", "sinh(s)", "0"), (0.0, 1.0)
    )
    for u in (0.1, 0.5, 0.9):
        _, p1 = striction(base, u)
        _, p2 = striction(shifted, u)
        assert np.allclose(p1, p2, atol=1e-9)


def test_frenet_frame_helicoid(helicoid):
    f = frenet_frame_at(helicoid, 0.5)
    assert f.theta is None  # striction tangent (0, 0, 1) is spacelike
    assert f.epsilon == -1
    assert f.k1 == pytest.approx(1.0, abs=1e-12)
    assert f.k2 == pytest.approx(0.0, abs=1e-12)
    assert frame_check(f.q, f.h, f.a, f.epsilon).canonical


def test_frenet_frame_recovers_synthesis_data():
    surface = syn1_explicit(1.0)
    f = frenet_frame_at(surface, 0.0)
    assert np.allclose(f.q, [1.0, 0.0, 0.0], atol=1e-6)
    assert np.allclose(f.h, [0.0, 1.0, 0.0], atol=1e-6)
    assert np.allclose(f.a, [0.0, 0.0, -1.0], atol=1e-6)
    assert f.k1 == pytest.approx(1.0, abs=1e-6)
    assert f.k2 == pytest.approx(0.0, abs=1e-6)
    assert f.theta == pytest.approx(1.0, abs=1e-6)
    # same data recovered away from the start
    g = frenet_frame_at(surface, 0.5)
    assert g.k1 == pytest.approx(1.0, abs=1e-6)
    assert g.theta == pytest.approx(1.0, abs=1e-6)
    assert g.s == pytest.approx(0.5, abs=1e-9)  # unit-speed striction curve


def test_frame_consistency_cross_extraction():
    surface = syn1_explicit(0.7)
    for u in (0.1, 0.5, 0.9):
        res = frame_consistency(surface, u)
        assert res["k1"] <= 1e-6
        assert res["k2"] <= 1e-6


def test_classify_helicoid(helicoid):
    cls = classify(helicoid, samples=101)
    assert cls.ruling_character is CausalCharacter.TIMELIKE
    assert cls.developable is False
    assert cls.cylindrical is False
    assert cls.conoid is True  # k1 = 1, k2 = 0
    assert cls.max_abs_drall == pytest.approx(1.0, abs=1e-9)


def test_classify_cylinder():
    cylinder = ExplicitSurface.from_strings(("0", "0", "s"), ("1", "0", "0"), (0.0, 1.0))
    cls = classify(cylinder, samples=33)
    assert cls.cylindrical is True
    assert cls.developable is True


def test_classify_tangent_type_developable():
    cls = classify(syn1_explicit(0.0), samples=101)
    assert cls.developable is True
    assert cls.conoid is True


def test_normalize_q_flag():
    scaled = ExplicitSurface.from_strings(
        ("0", "0", "s"), ("2*cosh(s)", "2*sinh(s)", "0"), (0.0, 1.0), normalize_q=True
    )
    assert distribution_parameter(scaled, 0.3) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        ExplicitSurface.from_strings(
            ("0", "0", "s"), ("2*cosh(s)", "2*sinh(s)", "0"), (0.0, 1.0)
        )._d  # unnormalized non-unit ruling is rejected


def test_reparametrization_invariance():
    base = ExplicitSurface.from_strings(("s", "0", "0"), ("cosh(s)", "sinh(s)", "0"), (0.0, 1.0))
    half = ExplicitSurface.from_strings(
        ("2*s", "0", "0"), ("cosh(2*s)", "sinh(2*s)", "0"), (0.0, 0.5)
    )
    for u in (0.1, 0.3, 0.45):
        assert distribution_parameter(half, u) == pytest.approx(
            distribution_parameter(base, 2 * u), abs=1e-8
        )
        _, p1 = striction(half, u)
        _, p2 = striction(base, 2 * u)
        assert np.allclose(p1, p2, atol=1e-8)


def test_predicates_geodesic_constant_theta():
    surf = synthesize_surface(from_constants(1.0, 0.5, 0.8, (0.0, 1.0), 1e-3))
    report = striction_predicates(surf.frames(), 1e-6)
    geo = report.geodesic
    assert geo.geometric_pass and geo.curvature_pass and geo.agree


def test_predicates_asymptotic():
    theta = math.atanh(0.5)  # tanh(theta) = k1/k2 = 1/2
    surf = synthesize_surface(from_constants(1.0, 2.0, theta, (0.0, 1.0), 1e-3))
    report = striction_predicates(surf.frames(), 1e-6)
    asym = report.asymptotic
    assert asym.satisfiable and asym.geometric_pass and asym.curvature_pass and asym.agree
    # spec of the geometric side: <h, c''> = k1 cosh(theta) - k2 sinh(theta) = 0
    assert asym.geometric_residual <= 1e-8


def test_predicates_line_of_curvature():
    theta = math.atanh(0.5)  # tanh(theta) = k2/k1 = 1/2
    surf = synthesize_surface(from_constants(2.0, 1.0, theta, (0.0, 1.0), 1e-3))
    report = striction_predicates(surf.frames(), 1e-6)
    locus = report.line_of_curvature
    assert locus.satisfiable and locus.geometric_pass and locus.curvature_pass and locus.agree


def test_predicates_unsatisfiable_recorded():
    surf = synthesize_surface(from_constants(1.0, 0.5, 0.3, (0.0, 1.0), 1e-3))
    report = striction_predicates(surf.frames(), 1e-6)
    assert not report.asymptotic.satisfiable  # |k1/k2| = 2 outside tanh range
    assert report.asymptotic.agree is None


def test_predicates_symbolic_path():
    frames = sample_frames(syn1_explicit(1.0), 201)
    assert all(f.c2 is not None and f.hprime is not None for f in frames)
    report = striction_predicates(frames, 1e-6)
    assert report.geodesic.geometric_pass and report.geodesic.curvature_pass
    # theta = 1 with k2 = 0: asymptotic condition unsatisfiable, recorded so
    assert not report.asymptotic.satisfiable


def test_sample_frames_uniform_arclength():
    frames = sample_frames(syn1_explicit(0.7), 51)
    s = np.array([f.s for f in frames])
    assert np.allclose(np.diff(s), s[-1] / 50, atol=1e-9)
