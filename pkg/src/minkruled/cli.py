"""Command-line front end: JSON config in, JSON report / OBJ mesh out.

    minkruled <command> --config cfg.json [--output-dir DIR] [--tolerance X]

Commands: analyze, synthesize, transversal, verify, mesh.  Exit codes:
0 success, 1 numerical degeneracy aborted the computation, 2 config error.
Reports are deterministic: fixed key order, round-trip float formatting,
no timestamps; file writes are atomic (write temp, rename).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass

import numpy as np

from . import expressions as ex
from ._version import __version__
from .errors import ConfigError, ExprError, GeometryError, ParseError
from .lorentz import DEFAULT_TOLERANCES, CausalCharacter, Tolerances
from .ruled import (
    ExplicitSurface,
    classify,
    distribution_parameter,
    sample_frames,
    striction,
    striction_predicates,
)
from .synthesis import IntrinsicData, synthesize_surface, to_explicit_grid
from .transversal import (
    TransversalSpec,
    analyze as analyze_transversal,
    coincidence_condition,
    corollary_checks,
    developability_condition,
    to_explicit,
)
from .errors import BaseNotDevelopableError
from .lorentz import lorentz_dot
from .ruled import sampled_ruled_invariants
from .verify import Family, SuiteConfig, run_all

COMMANDS = ("analyze", "synthesize", "transversal", "verify", "mesh")


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

_TOP_KEYS = {
    "mode",
    "f",
    "q",
    "u_range",
    "samples",
    "normalize_q",
    "k1",
    "k2",
    "theta",
    "epsilon",
    "s_range",
    "step",
    "initial_frame",
    "transversal",
    "output",
    "tolerances",
    "suite",
}
_TRANSVERSAL_KEYS = {"kind", "angle", "branch"}
_OUTPUT_KEYS = {"report_path", "mesh_path", "v_range", "v_samples"}
_TOLERANCE_KEYS = {"causal_eps", "frame_eps", "general_eps"}
_SUITE_KEYS = {
    "k1_values",
    "k2_values",
    "theta_values",
    "angle_values",
    "families",
    "tolerance",
    "s_range",
    "step",
}


def _reject_unknown(obj: dict, allowed: set, context: str):
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{context}: unknown key {key!r}")


def _require(obj: dict, key: str, context: str):
    if key not in obj:
        raise ConfigError(f"{context}: missing required key {key!r}")
    return obj[key]


def _parse_expr(text, context: str) -> ex.Expr:
    if not isinstance(text, str):
        raise ConfigError(f"{context}: expected an expression string")
    try:
        return ex.parse(text)
    except ParseError as err:
        raise ConfigError(f"{context}: {err.message} at offset {err.position}") from err


def _pair(value, context: str) -> tuple:
    if (
        not isinstance(value, (list, tuple))
        or len(value) != 2
        or not all(isinstance(x, (int, float)) for x in value)
    ):
        raise ConfigError(f"{context}: expected a numeric pair [lo, hi]")
    if not value[1] > value[0]:
        raise ConfigError(f"{context}: range must be increasing")
    return (float(value[0]), float(value[1]))


@dataclass
class Config:
    """Validated run configuration plus the raw dict for report echoes."""

    mode: str
    raw: dict
    f: tuple | None = None
    q: tuple | None = None
    u_range: tuple | None = None
    samples: int | None = None
    normalize_q: bool = False
    k1: ex.Expr | None = None
    k2: ex.Expr | None = None
    theta: ex.Expr | None = None
    epsilon: int = -1
    s_range: tuple | None = None
    step: float | None = None
    initial_frame: tuple | None = None
    transversal_spec: TransversalSpec | None = None
    report_path: str = "report.json"
    mesh_path: str | None = None
    v_range: tuple = (-1.0, 1.0)
    v_samples: int = 11
    tolerances: Tolerances = DEFAULT_TOLERANCES
    suite: SuiteConfig | None = None


def parse_config(path: str) -> Config:
    """Load and strictly validate a JSON config; ConfigError on any problem."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as err:
        raise ConfigError(f"cannot read config {path!r}: {err}") from err
    except json.JSONDecodeError as err:
        raise ConfigError(f"config {path!r} is not valid JSON: {err}") from err
    if not isinstance(raw, dict):
        raise ConfigError("config root must be a JSON object")
    _reject_unknown(raw, _TOP_KEYS, "config")
    mode = _require(raw, "mode", "config")
    if mode not in ("explicit", "intrinsic"):
        raise ConfigError(f"config: mode must be 'explicit' or 'intrinsic', got {mode!r}")
    cfg = Config(mode=mode, raw=raw)

    if mode == "explicit":
        for name in ("f", "q"):
            triple = _require(raw, name, "config")
            if not isinstance(triple, list) or len(triple) != 3:
                raise ConfigError(f"config.{name}: expected three expression strings")
            setattr(
                cfg, name, tuple(_parse_expr(t, f"config.{name}[{i}]") for i, t in enumerate(triple))
            )
        cfg.u_range = _pair(_require(raw, "u_range", "config"), "config.u_range")
        samples = _require(raw, "samples", "config")
        if not isinstance(samples, int) or samples < 2:
            raise ConfigError("config.samples: expected an integer >= 2")
        cfg.samples = samples
        cfg.normalize_q = bool(raw.get("normalize_q", False))
    else:
        for name in ("k1", "k2", "theta"):
            setattr(cfg, name, _parse_expr(_require(raw, name, "config"), f"config.{name}"))
        cfg.s_range = _pair(_require(raw, "s_range", "config"), "config.s_range")
        step = _require(raw, "step", "config")
        if not isinstance(step, (int, float)) or not step > 0:
            raise ConfigError("config.step: expected a positive number")
        cfg.step = float(step)
        epsilon = raw.get("epsilon", -1)
        if epsilon not in (-1, 1):
            raise ConfigError("config.epsilon: expected -1 or 1")
        cfg.epsilon = int(epsilon)
        if "initial_frame" in raw:
            frame = raw["initial_frame"]
            if (
                not isinstance(frame, list)
                or len(frame) != 3
                or not all(isinstance(v, list) and len(v) == 3 for v in frame)
            ):
                raise ConfigError("config.initial_frame: expected three 3-vectors")
            cfg.initial_frame = tuple(np.array(v, dtype=float) for v in frame)

    if "transversal" in raw:
        block = raw["transversal"]
        if not isinstance(block, dict):
            raise ConfigError("config.transversal: expected an object")
        _reject_unknown(block, _TRANSVERSAL_KEYS, "config.transversal")
        kind = _require(block, "kind", "config.transversal")
        if kind not in ("alpha", "beta", "gamma"):
            raise ConfigError(f"config.transversal.kind: unknown family {kind!r}")
        angle = _parse_expr(_require(block, "angle", "config.transversal"), "config.transversal.angle")
        branch = block.get("branch")
        if kind in ("alpha", "gamma"):
            if branch not in ("timelike", "spacelike"):
                raise ConfigError(
                    "config.transversal.branch: alpha/gamma need 'timelike' or 'spacelike'"
                )
        elif branch is not None:
            raise ConfigError("config.transversal.branch: beta has no causal branch")
        try:
            cfg.transversal_spec = TransversalSpec.from_strings(kind, "0", branch)
        except ValueError as err:
            raise ConfigError(f"config.transversal: {err}") from err
        cfg.transversal_spec = TransversalSpec(
            cfg.transversal_spec.family, angle, cfg.transversal_spec.branch
        )

    if "output" in raw:
        block = raw["output"]
        if not isinstance(block, dict):
            raise ConfigError("config.output: expected an object")
        _reject_unknown(block, _OUTPUT_KEYS, "config.output")
        if "report_path" in block:
            cfg.report_path = str(block["report_path"])
        if "mesh_path" in block:
            cfg.mesh_path = str(block["mesh_path"])
        if "v_range" in block:
            cfg.v_range = _pair(block["v_range"], "config.output.v_range")
        if "v_samples" in block:
            if not isinstance(block["v_samples"], int) or block["v_samples"] < 2:
                raise ConfigError("config.output.v_samples: expected an integer >= 2")
            cfg.v_samples = block["v_samples"]

    if "tolerances" in raw:
        block = raw["tolerances"]
        if not isinstance(block, dict):
            raise ConfigError("config.tolerances: expected an object")
        _reject_unknown(block, _TOLERANCE_KEYS, "config.tolerances")
        values = {
            "causal_eps": DEFAULT_TOLERANCES.causal_eps,
            "frame_eps": DEFAULT_TOLERANCES.frame_eps,
            "general_eps": DEFAULT_TOLERANCES.general_eps,
        }
        for key in block:
            if not isinstance(block[key], (int, float)) or not block[key] > 0:
                raise ConfigError(f"config.tolerances.{key}: expected a positive number")
            values[key] = float(block[key])
        cfg.tolerances = Tolerances(**values)

    if "suite" in raw:
        block = raw["suite"]
        if not isinstance(block, dict):
            raise ConfigError("config.suite: expected an object")
        _reject_unknown(block, _SUITE_KEYS, "config.suite")
        kwargs = {}
        for key in ("k1_values", "k2_values", "theta_values", "angle_values"):
            if key in block:
                if not isinstance(block[key], list) or not block[key]:
                    raise ConfigError(f"config.suite.{key}: expected a non-empty list")
                kwargs[key] = tuple(float(x) for x in block[key])
        if "families" in block:
            try:
                kwargs["families"] = tuple(Family(f) for f in block["families"])
            except ValueError as err:
                raise ConfigError(f"config.suite.families: {err}") from err
        if "tolerance" in block:
            kwargs["tolerance"] = float(block["tolerance"])
        if "s_range" in block:
            kwargs["s_range"] = _pair(block["s_range"], "config.suite.s_range")
        if "step" in block:
            kwargs["step"] = float(block["step"])
        try:
            cfg.suite = SuiteConfig(**kwargs)
        except ValueError as err:
            raise ConfigError(f"config.suite: {err}") from err
    return cfg


# ---------------------------------------------------------------------------
# exporters
# ---------------------------------------------------------------------------


def _atomic_write(path: str, text: str):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_obj(grid: np.ndarray, path: str):
    """Write a quad-mesh Wavefront OBJ for a (ns, nv, 3) vertex grid."""
    grid = np.asarray(grid, dtype=float)
    if grid.ndim != 3 or grid.shape[2] != 3 or grid.shape[0] < 2 or grid.shape[1] < 2:
        raise ValueError("mesh grid must have shape (ns >= 2, nv >= 2, 3)")
    ns, nv, _ = grid.shape
    lines = []
    for i in range(ns):
        for j in range(nv):
            x, y, z = grid[i, j]
            lines.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for i in range(ns - 1):
        for j in range(nv - 1):
            base = i * nv + j + 1
            lines.append(f"f {base} {base + nv} {base + nv + 1} {base + 1}")
    _atomic_write(path, "\n".join(lines) + "\n")


def _sanitize(value, warnings: list, context: str):
    """Replace non-finite numbers with null, recording a warning."""
    if isinstance(value, dict):
        return {k: _sanitize(v, warnings, f"{context}.{k}") for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_sanitize(v, warnings, context) for v in value]
    if isinstance(value, np.ndarray):
        return _sanitize(value.tolist(), warnings, context)
    if isinstance(value, (np.floating, np.integer)):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        warnings.append(f"{context}: non-finite value replaced by null")
        return None
    return value


def export_report(report: dict, path: str):
    """Serialize a report deterministically (fixed key order, UTF-8, LF)."""
    warnings = report.setdefault("warnings", [])
    body = {k: _sanitize(v, warnings, k) for k, v in report.items() if k != "warnings"}
    body["warnings"] = list(warnings)
    _atomic_write(path, json.dumps(body, indent=2, allow_nan=False) + "\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _envelope(command: str, cfg: Config) -> dict:
    return {"version": __version__, "command": command, "config": cfg.raw}


def _explicit_surface(cfg: Config) -> ExplicitSurface:
    return ExplicitSurface(f=cfg.f, q=cfg.q, u_range=cfg.u_range, normalize_q=cfg.normalize_q)


def _intrinsic_data(cfg: Config) -> IntrinsicData:
    kwargs = dict(
        k1=cfg.k1, k2=cfg.k2, theta=cfg.theta,
        epsilon=cfg.epsilon, s_range=cfg.s_range, step=cfg.step,
    )
    if cfg.initial_frame is not None:
        kwargs["initial_frame"] = cfg.initial_frame
    return IntrinsicData(**kwargs)


def _condition_dict(report) -> dict:
    return {
        "kind": report.kind,
        "family": report.family,
        "residuals": report.residuals,
        "flags": report.flags,
        "notes": report.notes,
    }


def _cmd_analyze(cfg: Config) -> dict:
    if cfg.mode != "explicit":
        raise ConfigError("analyze requires mode = 'explicit'")
    surface = _explicit_surface(cfg)
    report = _envelope("analyze", cfg)
    warnings: list = []
    cls = classify(surface, cfg.samples, cfg.tolerances)
    report["classification"] = {
        "ruling_character": cls.ruling_character.value,
        "class": "N-" if cls.ruling_character is CausalCharacter.TIMELIKE else "N+",
        "developable": cls.developable,
        "skew": (not cls.developable) if cls.developable is not None else None,
        "conoid": cls.conoid,
        "cylindrical": cls.cylindrical,
        "max_abs_drall": cls.max_abs_drall,
    }
    u = np.linspace(cfg.u_range[0], cfg.u_range[1], cfg.samples)
    drall = [distribution_parameter(surface, float(ui), cfg.tolerances) for ui in u]
    v0 = [striction(surface, float(ui), cfg.tolerances)[0] for ui in u]
    frames = sample_frames(surface, cfg.samples, cfg.tolerances)
    report["samples"] = {
        "u": u.tolist(),
        "drall": drall,
        "strictional_distance": v0,
        "arc_length": [f.s for f in frames],
        "k1": [f.k1 for f in frames],
        "k2": [f.k2 for f in frames],
        "theta": [f.theta for f in frames],
    }
    if all(f.theta is not None for f in frames):
        report["striction_predicates"] = {
            r.name: {
                "geometric_residual": r.geometric_residual,
                "geometric_pass": r.geometric_pass,
                "curvature_residual": r.curvature_residual,
                "curvature_pass": r.curvature_pass,
                "satisfiable": r.satisfiable,
                "agree": r.agree,
            }
            for r in striction_predicates(frames, cfg.tolerances.general_eps * 100).results()
        }
    else:
        report["striction_predicates"] = None
        warnings.append("striction tangent is not timelike; predicates skipped")
    report["warnings"] = warnings
    return report


def _cmd_synthesize(cfg: Config) -> dict:
    if cfg.mode != "intrinsic":
        raise ConfigError("synthesize requires mode = 'intrinsic'")
    surf = synthesize_surface(_intrinsic_data(cfg), cfg.tolerances)
    report = _envelope("synthesize", cfg)
    qq = lorentz_dot(surf.q, surf.q)
    hh = lorentz_dot(surf.h, surf.h)
    aa = lorentz_dot(surf.a, surf.a)
    dets = np.linalg.det(np.stack([surf.q, surf.h, surf.a], axis=1))
    report["frame_residuals"] = {
        "ruling_norm": float(np.max(np.abs(qq + 1))),
        "central_normal_norm": float(np.max(np.abs(hh - 1))),
        "central_tangent_norm": float(np.max(np.abs(aa - 1))),
        "orientation": float(np.max(np.abs(dets + 1))),
    }
    oracle = sampled_ruled_invariants(surf.c, surf.q, surf.step)
    with np.errstate(all="ignore"):
        closed = np.where(np.abs(surf.k1) > 0, -np.sinh(surf.theta) / surf.k1, np.nan)
    gap = None
    if np.any(oracle.valid):
        gap = float(
            np.max(np.abs(closed[oracle.sl][oracle.valid] - oracle.drall[oracle.valid]))
        )
    report["drall"] = {
        "closed_form": closed.tolist(),
        "oracle_max_gap": gap,
    }
    report["samples"] = {
        "s": surf.s.tolist(),
        "k1": surf.k1.tolist(),
        "k2": surf.k2.tolist(),
        "theta": surf.theta.tolist(),
        "striction_curve": surf.c.tolist(),
    }
    report["warnings"] = []
    return report


def _cmd_transversal(cfg: Config) -> dict:
    if cfg.mode != "intrinsic":
        raise ConfigError("transversal requires mode = 'intrinsic'")
    if cfg.transversal_spec is None:
        raise ConfigError("transversal requires a 'transversal' config block")
    surf = synthesize_surface(_intrinsic_data(cfg), cfg.tolerances)
    spec = cfg.transversal_spec
    analysis = analyze_transversal(surf, spec)
    report = _envelope("transversal", cfg)
    warnings: list = []
    report["family"] = spec.family.value
    report["ruling_norm"] = analysis.ell
    report["samples"] = {
        "s": analysis.s.tolist(),
        "v_closed": analysis.v_closed.tolist(),
        "v_printed": analysis.v_printed.tolist(),
        "d_closed": analysis.d_closed.tolist(),
        "d_via_base_drall": analysis.d_via_base.tolist(),
    }
    report["oracle"] = {
        "interior_offset": analysis.sl.start,
        "v": analysis.oracle.v0.tolist(),
        "d": analysis.oracle.drall.tolist(),
        "valid": analysis.oracle.valid.tolist(),
    }
    report["agreement"] = {
        "rel_v": analysis.rel_v,
        "rel_d": analysis.rel_d,
        "closed_form_suspect": analysis.suspect,
        "printed_sign_flip": analysis.printed_sign_flip,
    }
    if analysis.printed_sign_flip:
        warnings.append(
            "commonly printed strictional-distance form disagrees with the "
            "defining quotient by an overall sign; the oracle-backed value is reported"
        )
    if analysis.suspect:
        warnings.append("closed form disagrees with the sampled oracle beyond 1e-4")
    report["coincidence"] = _condition_dict(coincidence_condition(surf, spec))
    development = developability_condition(surf, spec)
    report["developability"] = _condition_dict(development)
    warnings.extend(development.notes)
    try:
        report["corollaries"] = _condition_dict(corollary_checks(surf, spec))
    except BaseNotDevelopableError as err:
        report["corollaries"] = None
        warnings.append(f"corollary checks skipped: {err}")
    report["warnings"] = warnings
    return report


def _cmd_verify(cfg: Config) -> dict:
    report = _envelope("verify", cfg)
    combined = run_all(cfg.suite or SuiteConfig())
    report["suites"] = combined["suites"]
    report["summary"] = combined["summary"]
    report["warnings"] = combined["warnings"]
    return report


def _mesh_grid(cfg: Config) -> np.ndarray:
    if cfg.mode == "explicit":
        surface = _explicit_surface(cfg)
        u = np.linspace(cfg.u_range[0], cfg.u_range[1], cfg.samples)
        v = np.linspace(cfg.v_range[0], cfg.v_range[1], cfg.v_samples)
        from .ruled import eval_triple

        f = eval_triple(surface._d.f, u)
        q = eval_triple(surface._d.q, u)
        return f[:, None, :] + v[None, :, None] * q[:, None, :]
    surf = synthesize_surface(_intrinsic_data(cfg), cfg.tolerances)
    if cfg.transversal_spec is not None:
        grid, _ = to_explicit(surf, cfg.transversal_spec, cfg.v_range, cfg.v_samples)
        return grid
    return to_explicit_grid(surf, cfg.v_range, cfg.v_samples)


def run(command: str, cfg: Config, output_dir: str | None = None, tolerance: float | None = None) -> int:
    """Dispatch a command; returns the process exit code."""
    if command not in COMMANDS:
        raise ConfigError(f"unknown command {command!r}")
    if tolerance is not None:
        if not tolerance > 0:
            raise ConfigError("--tolerance must be positive")
        cfg.tolerances = Tolerances(
            causal_eps=cfg.tolerances.causal_eps,
            frame_eps=cfg.tolerances.frame_eps,
            general_eps=tolerance,
        )
        base = cfg.suite or SuiteConfig()
        cfg.suite = SuiteConfig(
            k1_values=base.k1_values,
            k2_values=base.k2_values,
            theta_values=base.theta_values,
            angle_values=base.angle_values,
            families=base.families,
            tolerance=tolerance,
            s_range=base.s_range,
            step=base.step,
        )

    def resolve(path: str) -> str:
        if output_dir is not None and not os.path.isabs(path):
            return os.path.join(output_dir, path)
        return path

    try:
        if command == "mesh":
            if cfg.mesh_path is None:
                cfg.mesh_path = "mesh.obj"
            export_obj(_mesh_grid(cfg), resolve(cfg.mesh_path))
            return 0
        builders = {
            "analyze": _cmd_analyze,
            "synthesize": _cmd_synthesize,
            "transversal": _cmd_transversal,
            "verify": _cmd_verify,
        }
        report = builders[command](cfg)
        export_report(report, resolve(cfg.report_path))
        if cfg.mesh_path is not None and command in ("synthesize", "transversal"):
            export_obj(_mesh_grid(cfg), resolve(cfg.mesh_path))
        return 0
    except (GeometryError, ExprError, ValueError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 1
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="minkruled",
        description="Timelike ruled surfaces in Minkowski 3-space: analysis, "
        "synthesis, transversal families, verification and mesh export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="path to the JSON run configuration")
        p.add_argument("--output-dir", default=None, help="directory for relative output paths")
        p.add_argument("--tolerance", type=float, default=None, help="override the general tolerance")
    args = parser.parse_args(argv)
    try:
        cfg = parse_config(args.config)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2
    try:
        return run(args.command, cfg, args.output_dir, args.tolerance)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
