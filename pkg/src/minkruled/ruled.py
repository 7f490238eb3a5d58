"""Analysis of explicitly parametrized ruled surfaces r(u, v) = f(u) + v q(u).

The base curve and ruling are symbolic expression triples in the variable
``s`` (read as the surface parameter u).  All derivatives entering the
invariants below are exact symbolic derivatives; the drall (distribution
parameter), striction curve, unit normal, asymptotic normal and the moving
frame along the striction curve follow the standard Lorentzian formulas:

    d   = det(f', q, q') / <q', q'>
    v0  = -<q', f'> / <q', q'>          (strictional distance)
    m   = ((f' + v q') * q) / sqrt(<f',q>^2 - <q,q><f'+vq', f'+vq'>)
    a   = (q' * q) / |q'|               (asymptotic normal direction)

with ``*`` the Lorentzian cross product.  The frame orientation is fixed so
that the first curvature k1 = |dq/ds| is positive, which pins the sign of
``a`` (and hence h = a*q) left free by the limiting-direction definition.

A finite-difference twin of the striction/drall formulas operates on
sampled curves (``sampled_ruled_invariants``); it is the generic oracle
used to cross-check every closed form in the rest of the library.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import expressions as ex
from .errors import (
    CylindricalRulingError,
    DegenerateNormalError,
    NonTimelikeStrictionError,
    NullDerivativeError,
)
from .frame import FrameSample
from .lorentz import (
    DEFAULT_TOLERANCES,
    CausalCharacter,
    Tolerances,
    Vec3,
    lorentz_cross,
    lorentz_dot,
    norm_and_character,
)
from .numerics import adaptive_simpson, central_diff1, central_diff2, uniform_arclength_nodes

CYLINDRICAL_EPS = 1e-8  # Euclidean |q'| below this counts as a constant ruling

ExprTriple = tuple[ex.Expr, ex.Expr, ex.Expr]


def _dot_expr(x: ExprTriple, y: ExprTriple) -> ex.Expr:
    return ex.add(
        ex.neg(ex.mul(x[0], y[0])),
        ex.add(ex.mul(x[1], y[1]), ex.mul(x[2], y[2])),
    )


def _cross_expr(x: ExprTriple, y: ExprTriple) -> ExprTriple:
    return (
        ex.sub(ex.mul(x[1], y[2]), ex.mul(x[2], y[1])),
        ex.sub(ex.mul(x[0], y[2]), ex.mul(x[2], y[0])),
        ex.sub(ex.mul(x[1], y[0]), ex.mul(x[0], y[1])),
    )


def _scale_expr(c: ex.Expr, x: ExprTriple) -> ExprTriple:
    return (ex.mul(c, x[0]), ex.mul(c, x[1]), ex.mul(c, x[2]))


def _add_expr(x: ExprTriple, y: ExprTriple) -> ExprTriple:
    return (ex.add(x[0], y[0]), ex.add(x[1], y[1]), ex.add(x[2], y[2]))


def _diff_triple(x: ExprTriple) -> ExprTriple:
    return tuple(ex.differentiate(c) for c in x)


def eval_triple(triple: ExprTriple, u):
    """Evaluate an expression triple at scalar or array u -> (..., 3)."""
    arr = np.asarray(u, dtype=float)
    comps = [ex.evaluate(t, arr) for t in triple]
    if arr.ndim == 0:
        return np.array(comps, dtype=float)
    return np.stack(comps, axis=-1)


@dataclass(eq=False)
class ExplicitSurface:
    """Ruled surface from expression triples for base curve and ruling.

    With ``normalize_q`` the ruling is rescaled to unit Lorentzian norm
    symbolically before any analysis; otherwise |<q,q>| must already be 1
    on the sampled range.
    """

    f: ExprTriple
    q: ExprTriple
    u_range: tuple[float, float]
    normalize_q: bool = False

    def __post_init__(self):
        if not self.u_range[1] > self.u_range[0]:
            raise ValueError("u_range must be increasing")
        self.f = tuple(self.f)
        self.q = tuple(self.q)

    @classmethod
    def from_strings(cls, f, q, u_range, normalize_q=False) -> "ExplicitSurface":
        return cls(
            f=tuple(ex.parse(t) for t in f),
            q=tuple(ex.parse(t) for t in q),
            u_range=tuple(u_range),
            normalize_q=normalize_q,
        )

    @cached_property
    def _d(self):
        return _Derived(self)


class _Derived:
    """Symbolic derivatives and frame expressions, built once per surface."""

    def __init__(self, surf: ExplicitSurface):
        if surf.normalize_q:
            qq = _dot_expr(surf.q, surf.q)
            inv = ex.div(ex.const(1.0), ex.call("sqrt", ex.call("abs", qq)))
            self.q = _scale_expr(inv, surf.q)
        else:
            self.q = surf.q
            self._check_unit(surf)
        self.f = surf.f
        self.fdot = _diff_triple(self.f)
        self.qdot = _diff_triple(self.q)
        self.qq = _dot_expr(self.q, self.q)
        self.qdqd = _dot_expr(self.qdot, self.qdot)
        v0 = ex.neg(ex.div(_dot_expr(self.qdot, self.fdot), self.qdqd))
        self.v0 = v0
        self.c = _add_expr(self.f, _scale_expr(v0, self.q))
        self.cdot = _diff_triple(self.c)
        self.speed = ex.call("sqrt", ex.call("abs", _dot_expr(self.cdot, self.cdot)))
        inv_qd = ex.div(ex.const(1.0), ex.call("sqrt", ex.call("abs", self.qdqd)))
        self.a_raw = _scale_expr(inv_qd, _cross_expr(self.qdot, self.q))
        self.h_raw = _cross_expr(self.a_raw, self.q)
        self.adot_raw = _diff_triple(self.a_raw)
        self.hdot_raw = _diff_triple(self.h_raw)
        self.t = _scale_expr(ex.div(ex.const(1.0), self.speed), self.cdot)
        self.tdot = _diff_triple(self.t)

    @staticmethod
    def _check_unit(surf: ExplicitSurface, tol: Tolerances = DEFAULT_TOLERANCES):
        u = np.linspace(surf.u_range[0], surf.u_range[1], 33)
        qq = ex.evaluate(_dot_expr(surf.q, surf.q), u)
        if np.max(np.abs(np.abs(qq) - 1.0)) > max(tol.general_eps, 1e-6):
            raise ValueError(
                "ruling is not unit on the range; set normalize_q=True "
                f"(max | |<q,q>| - 1 | = {np.max(np.abs(np.abs(qq) - 1.0)):.3e})"
            )


# ---------------------------------------------------------------------------
# pointwise invariants
# ---------------------------------------------------------------------------


def surface_point(surface: ExplicitSurface, u: float, v: float) -> Vec3:
    """r(u, v) = f(u) + v q(u) (with the normalized ruling if requested)."""
    d = surface._d
    return eval_triple(d.f, u) + v * eval_triple(d.q, u)


def _ruling_derivative_checked(surface: ExplicitSurface, u: float, tol: Tolerances):
    d = surface._d
    qdot = eval_triple(d.qdot, u)
    if float(np.linalg.norm(qdot)) <= CYLINDRICAL_EPS:
        raise CylindricalRulingError(f"ruling derivative vanishes at u = {u}")
    _, char = norm_and_character(qdot, tol)
    if char is CausalCharacter.NULL:
        raise NullDerivativeError(f"ruling derivative is null at u = {u}")
    return qdot


def distribution_parameter(
    surface: ExplicitSurface, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """Drall d = det(f', q, q') / <q', q'> at the given parameter."""
    d = surface._d
    qdot = _ruling_derivative_checked(surface, u, tol)
    fdot = eval_triple(d.fdot, u)
    q = eval_triple(d.q, u)
    det = float(np.linalg.det(np.stack([fdot, q, qdot])))
    return det / float(lorentz_dot(qdot, qdot))


def unit_normal(
    surface: ExplicitSurface, u: float, v: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Vec3:
    """Unit (spacelike) surface normal at (u, v)."""
    d = surface._d
    fdot = eval_triple(d.fdot, u)
    qdot = eval_triple(d.qdot, u)
    q = eval_triple(d.q, u)
    ru = fdot + v * qdot
    radicand = float(lorentz_dot(fdot, q)) ** 2 - float(lorentz_dot(q, q)) * float(
        lorentz_dot(ru, ru)
    )
    scale = max(1.0, float(np.dot(ru, ru)))
    if radicand <= tol.general_eps * scale:
        raise DegenerateNormalError(
            f"normal radicand {radicand:.3e} is not positive at (u, v) = ({u}, {v})"
        )
    return lorentz_cross(ru, q) / math.sqrt(radicand)


def asymptotic_normal(
    surface: ExplicitSurface, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Vec3:
    """Limiting normal direction a = (q' * q)/|q'| along the ruling at u."""
    d = surface._d
    qdot = _ruling_derivative_checked(surface, u, tol)
    q = eval_triple(d.q, u)
    norm = math.sqrt(abs(float(lorentz_dot(qdot, qdot))))
    return lorentz_cross(qdot, q) / norm


def normal_limit_agreement(
    surface: ExplicitSurface, u: float, v_mag: float = 1e4
) -> dict:
    """Compare the unit normal at v = +/- v_mag against the asymptotic normal.

    Returns the deviation of m from +a at both ends and the sign of v whose
    limit matches +a.  (The limiting direction flips with the sign of v, so
    exactly one of the two matches.)
    """
    a = asymptotic_normal(surface, u)
    out = {}
    for label, v in (("+v", v_mag), ("-v", -v_mag)):
        m = unit_normal(surface, u, v)
        out[label] = float(np.max(np.abs(m - a)))
    out["matching_sign"] = 1 if out["+v"] <= out["-v"] else -1
    return out


def striction(
    surface: ExplicitSurface, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> tuple[float, Vec3]:
    """Strictional distance v0 and striction point c(u) = f(u) + v0 q(u)."""
    d = surface._d
    qdot = _ruling_derivative_checked(surface, u, tol)
    fdot = eval_triple(d.fdot, u)
    v0 = -float(lorentz_dot(qdot, fdot)) / float(lorentz_dot(qdot, qdot))
    point = eval_triple(d.f, u) + v0 * eval_triple(d.q, u)
    return v0, point


def arc_length(surface: ExplicitSurface, u: float, tol_quad: float = 1e-10) -> float:
    """Striction-curve arc length from the start of the range to u."""
    d = surface._d

    def speed(x):
        return ex.evaluate(d.speed, x)

    return adaptive_simpson(speed, surface.u_range[0], u, tol_quad)


# ---------------------------------------------------------------------------
# moving frame along the striction curve
# ---------------------------------------------------------------------------


def _frames_at(surface: ExplicitSurface, u, s_labels, tol: Tolerances) -> list[FrameSample]:
    d = surface._d
    u = np.atleast_1d(np.asarray(u, dtype=float))
    qdot = eval_triple(d.qdot, u)
    if np.min(np.linalg.norm(qdot, axis=-1)) <= CYLINDRICAL_EPS:
        raise CylindricalRulingError("ruling derivative vanishes on the range")
    qdqd = lorentz_dot(qdot, qdot)
    if np.min(np.abs(qdqd) / np.maximum(1.0, np.sum(qdot * qdot, axis=-1))) <= tol.causal_eps:
        raise NullDerivativeError("ruling derivative is null on the range")

    q = eval_triple(d.q, u)
    qq = lorentz_dot(q, q)
    if not (np.all(qq < 0.0) or np.all(qq > 0.0)):
        raise ValueError("ruling changes causal character on the range")
    epsilon = -1 if qq[0] < 0.0 else 1

    c = eval_triple(d.c, u)
    cdot = eval_triple(d.cdot, u)
    speed = ex.evaluate(d.speed, u)
    a = eval_triple(d.a_raw, u)
    h = eval_triple(d.h_raw, u)
    adot = eval_triple(d.adot_raw, u)
    hdot = eval_triple(d.hdot_raw, u)

    k1_raw = lorentz_dot(qdot, h) / speed
    flip = np.where(k1_raw < 0.0, -1.0, 1.0)
    a = flip[..., None] * a
    h = flip[..., None] * h
    hdot = flip[..., None] * hdot
    # k2 is even under the gauge flip (both a and h change sign)
    k1 = np.abs(k1_raw)
    k2 = epsilon * lorentz_dot(adot, h) / speed

    cc = lorentz_dot(cdot, cdot)
    cc_unit = cc / np.maximum(1e-300, np.sum(cdot * cdot, axis=-1))
    t = cdot / speed[..., None]
    sinh_theta = -epsilon * lorentz_dot(t, a)
    cosh_theta = epsilon * lorentz_dot(t, q)

    tdot = eval_triple(d.tdot, u)
    c2 = tdot / speed[..., None]
    hprime = hdot / speed[..., None]

    samples = []
    s_labels = np.atleast_1d(np.asarray(s_labels, dtype=float))
    for i in range(u.shape[0]):
        theta = None
        if cc_unit[i] < -tol.causal_eps and cosh_theta[i] > 0.0:
            theta = math.asinh(float(sinh_theta[i]))
        samples.append(
            FrameSample(
                s=float(s_labels[i]),
                c=c[i],
                q=q[i],
                h=h[i],
                a=a[i],
                k1=float(k1[i]),
                k2=float(k2[i]),
                theta=theta,
                epsilon=epsilon,
                c2=c2[i],
                hprime=hprime[i],
            )
        )
    return samples


def frenet_frame_at(
    surface: ExplicitSurface, u: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> FrameSample:
    """Frame, curvatures and angle at one parameter value.

    ``theta`` is None when the striction tangent is not timelike (then the
    hyperbolic angle of the frame decomposition does not exist); all other
    fields are still filled.
    """
    s = arc_length(surface, u)
    return _frames_at(surface, [u], [s], tol)[0]


def frame_consistency(surface: ExplicitSurface, u: float, tol: Tolerances = DEFAULT_TOLERANCES):
    """Residuals between curvature extractions from dq/ds, da/ds and dh/ds."""
    sample = frenet_frame_at(surface, u, tol)
    d = surface._d
    speed = ex.evaluate(d.speed, float(u))
    hdot = eval_triple(d.hdot_raw, float(u))
    # re-apply the gauge flip used for the sample
    if float(lorentz_dot(eval_triple(d.qdot, float(u)), eval_triple(d.h_raw, float(u)))) < 0.0:
        hdot = -hdot
    k1_h = -float(lorentz_dot(hdot, sample.q)) / speed
    k2_h = -sample.epsilon * float(lorentz_dot(hdot, sample.a)) / speed
    return {"k1": abs(sample.k1 - k1_h), "k2": abs(sample.k2 - k2_h)}


def sample_frames(
    surface: ExplicitSurface, n: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> list[FrameSample]:
    """Frames at n points equally spaced in striction arc length."""
    d = surface._d

    def speed(x):
        return ex.evaluate(d.speed, x)

    u_nodes, s_nodes = uniform_arclength_nodes(
        speed, surface.u_range[0], surface.u_range[1], n
    )
    return _frames_at(surface, u_nodes, s_nodes, tol)


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SurfaceClassification:
    """Coarse classification flags; None means the test could not be run."""

    ruling_character: CausalCharacter
    developable: bool | None
    conoid: bool | None
    cylindrical: bool | None
    max_abs_drall: float | None


def classify(
    surface: ExplicitSurface, samples: int = 201, tol: Tolerances = DEFAULT_TOLERANCES
) -> SurfaceClassification:
    """Evaluate ruling character and developable/conoid/cylindrical flags."""
    d = surface._d
    u = np.linspace(surface.u_range[0], surface.u_range[1], samples)
    q = eval_triple(d.q, u)
    characters = {norm_and_character(q[i], tol)[1] for i in range(samples)}
    if len(characters) != 1:
        raise ValueError("ruling changes causal character on the range")
    ruling_character = characters.pop()

    qdot = eval_triple(d.qdot, u)
    cylindrical = bool(np.max(np.linalg.norm(qdot, axis=-1)) <= CYLINDRICAL_EPS)

    developable = None
    max_abs_drall = None
    if cylindrical:
        developable = True  # constant tangent plane along each ruling
    else:
        try:
            drall = np.array([distribution_parameter(surface, ui, tol) for ui in u])
            max_abs_drall = float(np.max(np.abs(drall)))
            developable = max_abs_drall <= tol.general_eps
        except (CylindricalRulingError, NullDerivativeError):
            pass

    conoid = None
    if not cylindrical:
        try:
            frames = _frames_at(surface, u, np.zeros_like(u), tol)
            k1 = np.array([f.k1 for f in frames])
            k2 = np.array([f.k2 for f in frames])
            conoid = bool(np.min(np.abs(k1)) > tol.general_eps and np.max(np.abs(k2)) <= tol.general_eps)
        except (CylindricalRulingError, NullDerivativeError, ValueError):
            pass

    return SurfaceClassification(
        ruling_character=ruling_character,
        developable=developable,
        conoid=conoid,
        cylindrical=cylindrical,
        max_abs_drall=max_abs_drall,
    )


# ---------------------------------------------------------------------------
# striction-curve predicates (asymptotic / geodesic / line of curvature)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PredicateResult:
    """Both characterizations of one striction-curve property.

    The geometric side tests the defining property of the curve on the
    surface; the curvature side tests the equivalent condition on
    (k1, k2, theta).  ``agree`` is None when the curvature condition is
    unsatisfiable (|ratio| >= 1 cannot equal a tanh).
    """

    name: str
    geometric_residual: float
    geometric_pass: bool
    curvature_residual: float | None
    curvature_pass: bool | None
    satisfiable: bool
    agree: bool | None


@dataclass(frozen=True)
class PredicateReport:
    asymptotic: PredicateResult
    geodesic: PredicateResult
    line_of_curvature: PredicateResult
    tol: float
    n_samples: int

    def results(self) -> list[PredicateResult]:
        return [self.asymptotic, self.geodesic, self.line_of_curvature]


def _agreement(geo_res, geo_pass, cur_res, cur_pass, tol):
    if cur_pass is None:
        return None
    if geo_pass and cur_pass:
        return True
    if (not geo_pass) and (not cur_pass):
        return bool(geo_res >= 10.0 * tol and cur_res >= 10.0 * tol)
    return False


def striction_predicates(frames, tol: float = 1e-6) -> PredicateReport:
    """Test asymptotic / geodesic / line-of-curvature along the striction curve.

    ``frames`` must be uniformly spaced in arc length with a timelike
    striction tangent (theta present).  Second derivatives use attached
    symbolic values when every sample carries them, otherwise 4th-order
    central differences; either way residuals are evaluated on the interior
    samples the stencil supports.
    """
    frames = list(frames)
    if len(frames) < 7:
        raise ValueError("need at least 7 frames")
    if any(f.theta is None for f in frames):
        raise NonTimelikeStrictionError("striction tangent must be timelike for predicates")
    s = np.array([f.s for f in frames])
    step = float(s[1] - s[0])
    if np.max(np.abs(np.diff(s) - step)) > 1e-9 * (1.0 + abs(step)):
        raise ValueError("frames must be uniformly spaced in arc length")
    c = np.stack([f.c for f in frames])
    h = np.stack([f.h for f in frames])
    q = np.stack([f.q for f in frames])
    a = np.stack([f.a for f in frames])
    k1 = np.array([f.k1 for f in frames])
    k2 = np.array([f.k2 for f in frames])
    theta = np.array([f.theta for f in frames])

    cprime, sl = central_diff1(c, step)
    if all(f.c2 is not None for f in frames):
        c2 = np.stack([f.c2 for f in frames])[sl]
    else:
        c2, _ = central_diff2(c, step)
    if all(f.hprime is not None for f in frames):
        hprime = np.stack([f.hprime for f in frames])[sl]
    else:
        hprime, _ = central_diff1(h, step)
    theta_prime, _ = central_diff1(theta, step)

    h_i, k1_i, k2_i, theta_i = h[sl], k1[sl], k2[sl], theta[sl]
    tanh_theta = np.tanh(theta_i)

    geo_asym = float(np.max(np.abs(lorentz_dot(h_i, c2))))
    proj = lorentz_dot(c2, h_i)[..., None] * h_i
    geo_geod = float(np.max(np.linalg.norm(c2 - proj, axis=-1)))
    coeff = lorentz_dot(hprime, cprime) / lorentz_dot(cprime, cprime)
    geo_locus = float(np.max(np.linalg.norm(hprime - coeff[..., None] * cprime, axis=-1)))

    def curvature_side(num, den):
        if np.min(np.abs(den)) <= 1e-300 or np.max(np.abs(num / den)) >= 1.0:
            return None, None, False
        res = float(np.max(np.abs(tanh_theta - num / den)))
        return res, res <= tol, True

    asym_res, asym_pass, asym_sat = curvature_side(k1_i, k2_i)
    locus_res, locus_pass, locus_sat = curvature_side(k2_i, k1_i)
    geod_res = float(np.max(np.abs(theta_prime)))
    geod_pass = geod_res <= tol

    results = {}
    for name, geo, cur_res, cur_pass, sat in (
        ("asymptotic", geo_asym, asym_res, asym_pass, asym_sat),
        ("geodesic", geo_geod, geod_res, geod_pass, True),
        ("line_of_curvature", geo_locus, locus_res, locus_pass, locus_sat),
    ):
        geo_pass = geo <= tol
        results[name] = PredicateResult(
            name=name,
            geometric_residual=geo,
            geometric_pass=geo_pass,
            curvature_residual=cur_res,
            curvature_pass=cur_pass,
            satisfiable=sat,
            agree=_agreement(geo, geo_pass, cur_res, cur_pass, tol),
        )
    return PredicateReport(
        asymptotic=results["asymptotic"],
        geodesic=results["geodesic"],
        line_of_curvature=results["line_of_curvature"],
        tol=tol,
        n_samples=len(frames),
    )


# ---------------------------------------------------------------------------
# finite-difference oracle for sampled ruled surfaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SampledInvariants:
    """Strictional distance and drall of a sampled ruled surface.

    Values live on the interior slice ``sl`` of the input grid.  Samples
    where the ruling derivative degenerates (cylindrical or null) are
    masked out in ``valid`` and carry NaN; consumers must check the mask.
    """

    v0: np.ndarray
    drall: np.ndarray
    valid: np.ndarray
    sl: slice


def sampled_ruled_invariants(base: np.ndarray, ruling: np.ndarray, step: float) -> SampledInvariants:
    """Apply the generic v0/drall formulas to a sampled base curve and ruling.

    Both invariants are parametrization independent, so any regular sample
    parameter works; derivatives are 4th-order central differences.
    """
    fdot, sl = central_diff1(base, step)
    qdot, _ = central_diff1(ruling, step)
    q = np.asarray(ruling, dtype=float)[sl]
    qdqd = lorentz_dot(qdot, qdot)
    euclid = np.sum(qdot * qdot, axis=-1)
    valid = (np.sqrt(euclid) > CYLINDRICAL_EPS) & (
        np.abs(qdqd) > 1e-10 * np.maximum(1.0, euclid)
    )
    det = np.einsum("ij,ij->i", fdot, np.cross(q, qdot))
    with np.errstate(all="ignore"):
        v0 = np.where(valid, -lorentz_dot(qdot, fdot) / qdqd, np.nan)
        drall = np.where(valid, det / qdqd, np.nan)
    return SampledInvariants(v0=v0, drall=drall, valid=valid, sl=sl)


def recover_frame_data(s: np.ndarray, striction_curve: np.ndarray, ruling: np.ndarray):
    """Finite-difference twin of ``frenet_frame_at`` for sampled surfaces.

    ``striction_curve`` must already be the striction curve sampled at arc
    length ``s`` (uniform) with a unit non-null ruling.  Returns a dict of
    interior arrays (k1, k2, theta, a, h, plus the interior slice) computed
    purely from the samples; ``theta`` is NaN where the striction tangent
    is not timelike.  The frame orientation follows the k1 > 0 gauge of the
    symbolic path.
    """
    s = np.asarray(s, dtype=float)
    step = float(s[1] - s[0])
    cdot, sl = central_diff1(np.asarray(striction_curve, dtype=float), step)
    qdot, _ = central_diff1(np.asarray(ruling, dtype=float), step)
    q = np.asarray(ruling, dtype=float)[sl]
    qq = lorentz_dot(q, q)
    if not (np.all(qq < 0.0) or np.all(qq > 0.0)):
        raise ValueError("ruling changes causal character on the range")
    epsilon = -1 if qq[0] < 0.0 else 1
    qdqd = lorentz_dot(qdot, qdot)
    if np.min(np.abs(qdqd)) <= 1e-12:
        raise NullDerivativeError("ruling derivative is null or zero on the range")
    a = lorentz_cross(qdot, q) / np.sqrt(np.abs(qdqd))[..., None]
    h = lorentz_cross(a, q)
    k1_raw = lorentz_dot(qdot, h)
    flip = np.where(k1_raw < 0.0, -1.0, 1.0)
    a = flip[..., None] * a
    h = flip[..., None] * h
    k1 = np.abs(k1_raw)
    # second interior pass for the derivative of the recovered a
    adot, sl2 = central_diff1(a, step)
    k2 = epsilon * lorentz_dot(adot, h[sl2])
    cc = lorentz_dot(cdot, cdot)
    with np.errstate(all="ignore"):
        t = cdot / np.sqrt(np.abs(cc))[..., None]
        theta = np.where(cc < 0.0, np.arcsinh(-epsilon * lorentz_dot(t, a)), np.nan)
    outer = slice(sl.start + sl2.start, sl.start + sl2.start + k2.shape[0])
    return {
        "slice": outer,
        "epsilon": epsilon,
        "k1": k1[sl2],
        "k2": k2,
        "theta": theta[sl2],
        "a": a[sl2],
        "h": h[sl2],
    }
