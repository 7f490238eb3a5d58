"""Batch verification of the striction, coincidence and developability laws.

Each suite sweeps a grid of constant curvature data (k1, k2, theta),
synthesizes the base surface, and tests both directions of every
if-and-only-if statement:

  forward    construct an instance satisfying the condition and require the
             geometric property to hold within tolerance;
  backward   violate the condition by a margin (0.1 on the relevant
             quantity) and require the property to fail with residual at
             least 10x tolerance.

Unsatisfiable conditions (a tanh can never reach a ratio >= 1 in magnitude)
are recorded as skips, never failures.  Every residual in a report is
finite or the case is marked errored with a reason; two runs with the same
configuration produce identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expressions as ex
from .errors import ExprError, GeometryError
from .numerics import central_diff1
from .ruled import striction_predicates
from .synthesis import IntrinsicData, SampledSurface, from_constants, synthesize_surface
from .transversal import (
    Branch,
    Family,
    TransversalSpec,
    analyze,
    coefficients,
    coincident_angle,
    corollary_checks,
    developability_condition,
    linear_angle,
)

ANGLE_MARGIN = 0.1  # size of the condition violation in backward cases


@dataclass(frozen=True)
class SuiteConfig:
    """Grids and tolerances for the verification suites."""

    k1_values: tuple = (0.5, 1.0, 2.0)
    k2_values: tuple = (0.0, 0.5, 1.0)
    theta_values: tuple = (0.0, 0.5, 1.0)
    angle_values: tuple = (0.5, 1.0)
    families: tuple = (Family.ALPHA, Family.BETA, Family.GAMMA)
    tolerance: float = 1e-6
    s_range: tuple = (0.0, 1.0)
    step: float = 1e-3

    def __post_init__(self):
        if not (self.k1_values and self.k2_values and self.theta_values and self.angle_values):
            raise ValueError("value grids must be non-empty")
        if not self.tolerance > 0.0:
            raise ValueError("tolerance must be positive")

    @property
    def coincidence_tolerance(self) -> float:
        return self.tolerance / 10.0

    def grid(self):
        return [
            (k1, k2, th)
            for k1 in self.k1_values
            for k2 in self.k2_values
            for th in self.theta_values
        ]

    def to_dict(self) -> dict:
        return {
            "k1_values": list(self.k1_values),
            "k2_values": list(self.k2_values),
            "theta_values": list(self.theta_values),
            "angle_values": list(self.angle_values),
            "families": [f.value for f in self.families],
            "tolerance": self.tolerance,
            "s_range": list(self.s_range),
            "step": self.step,
        }


@dataclass
class CaseRecord:
    suite: str
    check: str
    family: str | None
    params: dict
    residuals: dict
    verdict: str  # pass | fail | skip | error
    note: str = ""

    def to_dict(self) -> dict:
        residuals = {}
        for key, value in self.residuals.items():
            if value is None or (isinstance(value, float) and not math.isfinite(value)):
                residuals[key] = None
            else:
                residuals[key] = float(value)
        return {
            "suite": self.suite,
            "check": self.check,
            "family": self.family,
            "params": self.params,
            "residuals": residuals,
            "verdict": self.verdict,
            "note": self.note,
        }


@dataclass
class SuiteReport:
    suite: str
    config: dict
    cases: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def summary(self) -> dict:
        counts = {"pass": 0, "fail": 0, "skip": 0, "error": 0}
        for case in self.cases:
            counts[case.verdict] += 1
        return counts

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "summary": self.summary,
            "warnings": list(self.warnings),
            "cases": [case.to_dict() for case in self.cases],
        }


def _surface(cfg: SuiteConfig, k1, k2, theta, s_range=None) -> SampledSurface:
    data = from_constants(
        k1, k2, theta, s_range=s_range or cfg.s_range, step=cfg.step
    )
    return synthesize_surface(data)


def _capped_range(cfg: SuiteConfig, angle0: float, slope: float, lo: float, hi: float):
    """Largest [s0, s0+L] on which angle0 + slope*s stays inside (lo, hi)."""
    s0, s1 = cfg.s_range
    length = s1 - s0
    if slope > 0.0:
        length = min(length, (hi - angle0) / slope)
    elif slope < 0.0:
        length = min(length, (lo - angle0) / slope)
    length = max(length, 50.0 * cfg.step)
    return (s0, s0 + length)


def _fd_slope_residual(surf: SampledSurface, angle: ex.Expr, target: float) -> float:
    values = np.asarray(ex.evaluate(angle, surf.s), dtype=float)
    slope, _ = central_diff1(values, surf.step)
    return float(np.max(np.abs(slope - target)))


# ---------------------------------------------------------------------------
# striction-curve suite
# ---------------------------------------------------------------------------


def run_striction_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Asymptotic / geodesic / line-of-curvature laws on the (k1,k2,theta) grid.

    One record per grid triple and predicate.  Each record carries the
    agreement verdict of the two characterizations on the grid surface plus
    targeted forward (condition tuned) and backward (condition violated by
    0.1) instances where the condition is satisfiable.
    """
    report = SuiteReport("striction", cfg.to_dict())
    tol = cfg.tolerance
    for k1, k2, th in cfg.grid():
        try:
            base = _surface(cfg, k1, k2, th)
            grid_predicates = striction_predicates(base.frames(), tol)
        except (GeometryError, ExprError, ValueError) as exc:
            for name in ("asymptotic", "geodesic", "line_of_curvature"):
                report.cases.append(
                    CaseRecord(
                        "striction", name, None,
                        {"k1": k1, "k2": k2, "theta": th}, {}, "error", str(exc),
                    )
                )
            continue
        for name, ratio in (
            ("asymptotic", (k1, k2)),
            ("geodesic", None),
            ("line_of_curvature", (k2, k1)),
        ):
            result = getattr(grid_predicates, name)
            params = {"k1": k1, "k2": k2, "theta": th}
            residuals = {
                "grid_geometric": result.geometric_residual,
                "grid_curvature": result.curvature_residual,
            }
            if not result.satisfiable:
                report.cases.append(
                    CaseRecord(
                        "striction", name, None, params, residuals, "skip",
                        "curvature condition unsatisfiable (ratio outside tanh range)",
                    )
                )
                continue
            note = ""
            ok = result.agree is True
            try:
                if name == "geodesic":
                    # forward: the grid surface itself has constant theta
                    forward = result.geometric_residual
                    drift = linear_angle(th, ANGLE_MARGIN)
                    data = IntrinsicData(
                        k1=ex.const(k1), k2=ex.const(k2), theta=drift,
                        s_range=cfg.s_range, step=cfg.step,
                    )
                    back = striction_predicates(
                        synthesize_surface(data).frames(), tol
                    ).geodesic
                    backward = back.geometric_residual
                    backward_cur = back.curvature_residual
                else:
                    num, den = ratio
                    theta_star = math.atanh(num / den)
                    tuned = striction_predicates(
                        _surface(cfg, k1, k2, theta_star).frames(), tol
                    )
                    violated = striction_predicates(
                        _surface(cfg, k1, k2, theta_star + ANGLE_MARGIN).frames(), tol
                    )
                    forward = getattr(tuned, name).geometric_residual
                    backward = getattr(violated, name).geometric_residual
                    backward_cur = getattr(violated, name).curvature_residual
                residuals["forward_geometric"] = forward
                residuals["backward_geometric"] = backward
                residuals["backward_curvature"] = backward_cur
                ok = ok and forward <= tol and backward >= 10.0 * tol
                if backward_cur is not None:
                    ok = ok and backward_cur >= 10.0 * tol
            except (GeometryError, ExprError, ValueError) as exc:
                report.cases.append(
                    CaseRecord("striction", name, None, params, residuals, "error", str(exc))
                )
                continue
            report.cases.append(
                CaseRecord(
                    "striction", name, None, params, residuals,
                    "pass" if ok else "fail", note,
                )
            )
    return report


# ---------------------------------------------------------------------------
# coincidence suite
# ---------------------------------------------------------------------------

_ALPHA_ANGLE0 = 1.5  # keeps sinh(angle) bounded away from zero on capped ranges
_BETA_ANGLE0 = 0.7  # mid (0, pi/2); capped ranges stay inside (0.1, pi/2 - 0.1)
_BETA_BOUNDS = (0.1, math.pi / 2.0 - 0.1)


def _tuned_coincidence(cfg, family, k1, k2, th):
    """Instance (surface, spec) whose transversal striction curve coincides."""
    if family is Family.ALPHA:
        if k2 == 0.0:
            return None, "coincidence needs k2 != 0 (ruling derivative degenerates)"
        angle = coincident_angle(k1, k2, th, family, _ALPHA_ANGLE0)
        slope = math.tanh(th) * k2 - k1
        rng = _capped_range(cfg, _ALPHA_ANGLE0, slope, 0.25, math.inf)
        spec = TransversalSpec(family, angle, Branch.TIMELIKE)
    elif family is Family.BETA:
        if abs(math.tanh(th)) < 1e-12:
            return None, "coincidence unattainable for theta = 0 (k1 != 0)"
        angle = coincident_angle(k1, k2, th, family, _BETA_ANGLE0)
        slope = k1 / math.tanh(th) - k2
        rng = _capped_range(cfg, _BETA_ANGLE0, slope, *_BETA_BOUNDS)
        spec = TransversalSpec(family, angle)
    else:
        angle = coincident_angle(k1, k2, th, family, cfg.angle_values[0])
        rng = cfg.s_range
        spec = TransversalSpec(family, angle, Branch.TIMELIKE)
    surf = _surface(cfg, k1, k2, th, s_range=rng)
    return (surf, spec), ""


def _violated_coincidence(cfg, family, k1, k2, th):
    """Instance violating the coincidence condition by the standard margin."""
    if family is Family.ALPHA:
        slope = (math.tanh(th) * k2 - k1) + ANGLE_MARGIN
        angle = linear_angle(_ALPHA_ANGLE0, slope)
        rng = _capped_range(cfg, _ALPHA_ANGLE0, slope, 0.25, math.inf)
        spec = TransversalSpec(family, angle, Branch.TIMELIKE)
    elif family is Family.BETA:
        slope = (k1 / math.tanh(th) - k2 + ANGLE_MARGIN) if abs(th) > 1e-12 else 0.0
        angle = linear_angle(_BETA_ANGLE0, slope)
        rng = _capped_range(cfg, _BETA_ANGLE0, slope, *_BETA_BOUNDS)
        spec = TransversalSpec(family, angle)
    else:
        angle = linear_angle(th + 0.2, ANGLE_MARGIN)
        rng = cfg.s_range
        spec = TransversalSpec(family, angle, Branch.TIMELIKE)
    surf = _surface(cfg, k1, k2, th, s_range=rng)
    return surf, spec


def _specialization_residuals(cfg, family, k1, k2, th, residuals, notes):
    """Constant-angle / parameter-identity specializations of coincidence."""
    ctol = cfg.coincidence_tolerance
    ok = True
    # asymptotic striction (tanh theta = k1/k2) forces a constant angle
    if abs(k2) > 0.0 and abs(k1 / k2) < 1.0:
        theta_star = math.atanh(k1 / k2)
        if family is Family.ALPHA:
            slope = math.tanh(theta_star) * k2 - k1
        elif family is Family.BETA:
            slope = k1 / math.tanh(theta_star) - k2 if theta_star != 0.0 else math.nan
        else:
            mu, eta = math.cosh(theta_star), math.sinh(theta_star)
            slope = abs(eta / mu - k1 / k2)  # identity residual, not a slope
        residuals["asymptotic_spec"] = abs(slope)
        ok = ok and abs(slope) <= 1e-6
    # geodesic striction (constant theta): angle slope is x k2 - k1 etc.
    surf_spec, reason = _tuned_coincidence(cfg, family, k1, k2, th)
    if surf_spec is not None:
        surf, spec = surf_spec
        x = math.tanh(th)
        if family is Family.ALPHA:
            target = x * k2 - k1
            res = _fd_slope_residual(surf, spec.angle, target)
        elif family is Family.BETA:
            target = k1 / x - k2
            res = _fd_slope_residual(surf, spec.angle, target)
        else:
            if abs(th) < 1e-12:
                res = None
            else:
                gamma = math.atanh(math.tanh(th))  # gamma = theta, timelike branch
                res = abs(math.sinh(gamma) - x * math.cosh(gamma))
        if res is not None:
            residuals["geodesic_spec"] = res
            ok = ok and res <= 1e-7 * max(1.0, abs(k1) + abs(k2))
    elif reason:
        notes.append(f"geodesic specialization skipped: {reason}")
    # line-of-curvature striction (tanh theta = k2/k1)
    if abs(k1) > 0.0 and abs(k2 / k1) < 1.0:
        theta_star = math.atanh(k2 / k1)
        if family is Family.ALPHA and k2 != 0.0:
            fitted = math.tanh(theta_star) * k2 - k1
            residuals["curvature_line_spec"] = abs(fitted - (k2**2 - k1**2) / k1)
        elif family is Family.BETA and k2 != 0.0:
            fitted = k1 / math.tanh(theta_star) - k2
            residuals["curvature_line_spec"] = abs(fitted - (k1**2 - k2**2) / k2)
        elif family is Family.GAMMA and k2 != 0.0:
            gamma = math.atanh(k2 / k1)
            residuals["curvature_line_spec"] = abs(math.tanh(gamma) - k2 / k1)
        if "curvature_line_spec" in residuals:
            ok = ok and residuals["curvature_line_spec"] <= 1e-7 * max(1.0, k1 + k1**2)
    return ok


def run_coincidence_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Coincidence of the transversal striction curve with the base one.

    One record per (family, grid triple): forward tuned instance (max |v_T|
    small), backward margin-violated instance (min |v_T| bounded away), and
    the applicable specialization identities.
    """
    report = SuiteReport("coincidence", cfg.to_dict())
    ctol = cfg.coincidence_tolerance
    for family in cfg.families:
        for k1, k2, th in cfg.grid():
            params = {"k1": k1, "k2": k2, "theta": th}
            residuals: dict = {}
            notes: list = []
            verdict = "pass"
            try:
                tuned, reason = _tuned_coincidence(cfg, family, k1, k2, th)
                applicable = tuned is not None
                ok = True
                if applicable:
                    surf, spec = tuned
                    analysis = analyze(surf, spec)
                    residuals["forward_max_v_closed"] = float(
                        np.max(np.abs(analysis.v_closed))
                    )
                    valid = analysis.oracle.valid
                    residuals["forward_max_v_oracle"] = (
                        float(np.max(np.abs(analysis.oracle.v0[valid])))
                        if np.any(valid)
                        else math.inf
                    )
                    ok = (
                        residuals["forward_max_v_closed"] <= ctol
                        and residuals["forward_max_v_oracle"] <= ctol
                    )
                else:
                    notes.append(f"forward skipped: {reason}")
                surf, spec = _violated_coincidence(cfg, family, k1, k2, th)
                analysis = analyze(surf, spec)
                valid = analysis.oracle.valid
                residuals["backward_min_v_closed"] = float(
                    np.min(np.abs(analysis.v_closed))
                )
                residuals["backward_min_v_oracle"] = (
                    float(np.min(np.abs(analysis.oracle.v0[valid])))
                    if np.any(valid)
                    else math.inf
                )
                ok = ok and residuals["backward_min_v_closed"] >= 10.0 * ctol
                ok = ok and residuals["backward_min_v_oracle"] >= 10.0 * ctol
                ok = _specialization_residuals(cfg, family, k1, k2, th, residuals, notes) and ok
                if not applicable and len(residuals) <= 2:
                    verdict = "skip"
                elif not ok:
                    verdict = "fail"
            except (GeometryError, ExprError, ValueError) as exc:
                verdict = "error"
                notes.append(str(exc))
            report.cases.append(
                CaseRecord(
                    "coincidence",
                    f"coincidence.{family.value}",
                    family.value,
                    params,
                    residuals,
                    verdict,
                    "; ".join(notes),
                )
            )
    return report


# ---------------------------------------------------------------------------
# developability suite
# ---------------------------------------------------------------------------


def _tuned_developable(cfg, family, k1, k2, th):
    """(theta, spec) making the transversal drall vanish, or None + reason."""
    angle0 = cfg.angle_values[0]
    if family is Family.ALPHA:
        # constant angle; theta solves the drall numerator
        value = -math.sinh(angle0) ** 2 * k2 / k1
        if abs(value) >= 1.0:
            return None, "tuning angle outside tanh range"
        return (math.atanh(value), TransversalSpec(family, ex.const(angle0), Branch.TIMELIKE)), ""
    if family is Family.BETA:
        value = k2 / (k1 * math.cos(angle0) ** 2)
        if abs(value) >= 1.0:
            return None, "tuning angle outside tanh range"
        return (math.atanh(value), TransversalSpec(family, ex.const(angle0))), ""
    # gamma: a constant angle equal to theta zeroes the angle factor of the
    # drall numerator without degenerating the denominator (which needs
    # mu k1 != eta k2).  The other factor, mu k1 = eta k2 with a constant
    # angle, makes the transversal cylindrical and is handled separately.
    if th == 0.0:
        return None, "angle = theta = 0 is a trivial ruling"
    if k2 != 0.0 and abs(math.tanh(th) - k1 / k2) < 1e-3:
        return None, "angle factor and cylindrical factor coincide"
    return (th, TransversalSpec(family, ex.const(th), Branch.TIMELIKE)), ""


def run_developability_suite(cfg: SuiteConfig = SuiteConfig()) -> SuiteReport:
    """Developability of transversal surfaces: closed form vs oracle vs
    the stated angle conditions, plus the developable-base corollaries.

    One record per (family, grid triple).  On tuned instances the alpha
    family's stated condition is expected to disagree with the (verified)
    drall numerator; that is recorded as a documented discrepancy warning,
    not a failure.
    """
    report = SuiteReport("developability", cfg.to_dict())
    tol = cfg.tolerance
    discrepancy_seen = False
    for family in cfg.families:
        for k1, k2, th in cfg.grid():
            params = {"k1": k1, "k2": k2, "theta": th}
            residuals: dict = {}
            notes: list = []
            verdict = "pass"
            try:
                ok = True
                tuned, reason = _tuned_developable(cfg, family, k1, k2, th)
                if tuned is None:
                    notes.append(f"forward skipped: {reason}")
                else:
                    theta_t, spec = tuned
                    surf = _surface(cfg, k1, k2, theta_t)
                    cond = developability_condition(surf, spec, tol)
                    residuals["forward_numerator"] = cond.residuals["numerator"]
                    residuals["forward_oracle"] = cond.residuals["oracle_drall"]
                    residuals["forward_stated"] = cond.residuals["stated_condition"]
                    ok = (
                        cond.flags["numerator_vanishes"]
                        and cond.flags["oracle_developable"]
                    )
                    if cond.notes:
                        discrepancy_seen = True
                        notes.append("stated-condition discrepancy (documented)")
                    # backward: shift theta off the tuned value
                    surf_b = _surface(cfg, k1, k2, theta_t + ANGLE_MARGIN)
                    cond_b = developability_condition(surf_b, spec, tol)
                    residuals["backward_numerator"] = cond_b.residuals["numerator"]
                    residuals["backward_oracle"] = cond_b.residuals["oracle_drall"]
                    ok = ok and residuals["backward_numerator"] >= 10.0 * tol
                    ok = ok and residuals["backward_oracle"] >= 10.0 * tol
                if th == 0.0:
                    ok = _corollary_case(cfg, family, k1, k2, residuals, notes) and ok
                if not residuals:
                    verdict = "skip"
                elif not ok:
                    verdict = "fail"
            except (GeometryError, ExprError, ValueError) as exc:
                verdict = "error"
                notes.append(str(exc))
            report.cases.append(
                CaseRecord(
                    "developability",
                    f"developability.{family.value}",
                    family.value,
                    params,
                    residuals,
                    verdict,
                    "; ".join(notes),
                )
            )
    if discrepancy_seen:
        report.warnings.append(
            "alpha developability: the stated angle condition does not match the "
            "drall numerator; the direct oracle confirms the numerator form"
        )
    return report


def _corollary_case(cfg, family, k1, k2, residuals, notes) -> bool:
    """Developable-base (theta = 0) corollaries, forward or contrapositive."""
    tol = cfg.tolerance
    ok = True
    if family is Family.ALPHA:
        spec = TransversalSpec(family, ex.const(cfg.angle_values[0]), Branch.TIMELIKE)
        surf = _surface(cfg, k1, k2, 0.0)
        cond = corollary_checks(surf, spec, tol)
        key = "corollary_forward" if k2 == 0.0 else "corollary_backward"
        residuals[key] = cond.residuals["oracle_drall"]
        ok = cond.flags["equivalent"]
    elif family is Family.BETA:
        surf = _surface(
            cfg, k1, k2, 0.0,
            s_range=_capped_range(cfg, _BETA_ANGLE0, -k2, *_BETA_BOUNDS),
        )
        spec = TransversalSpec(family, linear_angle(_BETA_ANGLE0, -k2))
        cond = corollary_checks(surf, spec, tol)
        residuals["corollary_forward"] = cond.residuals["oracle_drall"]
        ok = cond.flags["equivalent"]
        slope = -k2 + ANGLE_MARGIN
        surf_b = _surface(
            cfg, k1, k2, 0.0,
            s_range=_capped_range(cfg, _BETA_ANGLE0, slope, *_BETA_BOUNDS),
        )
        cond_b = corollary_checks(
            surf_b, TransversalSpec(family, linear_angle(_BETA_ANGLE0, slope)), tol
        )
        residuals["corollary_backward"] = cond_b.residuals["oracle_drall"]
        ok = ok and cond_b.flags["equivalent"]
    else:
        surf = _surface(cfg, k1, k2, 0.0)
        if k2 != 0.0 and abs(k1 / k2) < 1.0:
            spec = TransversalSpec(family, ex.const(math.atanh(k1 / k2)), Branch.TIMELIKE)
            cond = corollary_checks(surf, spec, tol)
            residuals["corollary_forward"] = cond.residuals["oracle_drall"]
            ok = cond.flags["equivalent"]
        elif k2 != 0.0 and abs(k2 / k1) < 1.0:
            spec = TransversalSpec(family, ex.const(math.atanh(k2 / k1)), Branch.SPACELIKE)
            cond = corollary_checks(surf, spec, tol)
            residuals["corollary_forward"] = cond.residuals["oracle_drall"]
            ok = cond.flags["equivalent"]
        else:
            notes.append("gamma corollary forward skipped: ratio outside both branches")
        spec_b = TransversalSpec(family, ex.const(cfg.angle_values[0]), Branch.TIMELIKE)
        cond_b = corollary_checks(surf, spec_b, tol)
        residuals["corollary_backward"] = cond_b.residuals["oracle_drall"]
        ok = ok and cond_b.flags["equivalent"]
    return ok


def run_all(cfg: SuiteConfig = SuiteConfig()) -> dict:
    """Run the three suites; returns a JSON-ready combined report."""
    reports = [
        run_striction_suite(cfg),
        run_coincidence_suite(cfg),
        run_developability_suite(cfg),
    ]
    combined = {
        "suites": [r.to_dict() for r in reports],
        "warnings": [w for r in reports for w in r.warnings],
        "summary": {
            key: sum(r.summary[key] for r in reports)
            for key in ("pass", "fail", "skip", "error")
        },
    }
    return combined
