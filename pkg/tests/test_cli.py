"""CLI: config validation, commands, exit codes, report and mesh formats."""

import json
import math
import os

import jsonschema
import numpy as np
import pytest

from minkruled.cli import main, parse_config
from minkruled.errors import ConfigError

HERE = os.path.dirname(__file__)
SCHEMA_PATH = os.path.join(HERE, "..", "docs", "report.schema.json")
CONFIG_DIR = os.path.join(HERE, "..", "demos", "configs")


@pytest.fixture(scope="module")
def schema():
    with open(SCHEMA_PATH, "r", encoding="utf-8") as fh:
        return json.load(fh)


def write_config(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


MINIMAL_INTRINSIC = {
    "mode": "intrinsic",
    "k1": "1",
    "k2": "0",
    "theta": "1",
    "s_range": [0.0, 1.0],
    "step": 0.001,
}


def validate_report(path, schema):
    with open(path, "r", encoding="utf-8") as fh:
        report = json.load(fh)
    jsonschema.validate(report, schema)
    return report


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------


def test_parse_config_minimal(tmp_path):
    cfg = parse_config(write_config(tmp_path, "c.json", MINIMAL_INTRINSIC))
    assert cfg.mode == "intrinsic"
    assert cfg.step == 0.001
    assert cfg.epsilon == -1


def test_parse_config_bad_expression(tmp_path):
    payload = dict(MINIMAL_INTRINSIC, k1="cosh(")
    with pytest.raises(ConfigError, match="offset 5"):
        parse_config(write_config(tmp_path, "c.json", payload))


def test_parse_config_unknown_key(tmp_path):
    payload = dict(MINIMAL_INTRINSIC, kappa1="1")
    with pytest.raises(ConfigError, match="kappa1"):
        parse_config(write_config(tmp_path, "c.json", payload))


def test_parse_config_missing_key(tmp_path):
    payload = {k: v for k, v in MINIMAL_INTRINSIC.items() if k != "step"}
    with pytest.raises(ConfigError, match="step"):
        parse_config(write_config(tmp_path, "c.json", payload))


def test_main_exit_code_2_on_config_error(tmp_path, capsys):
    path = write_config(tmp_path, "c.json", dict(MINIMAL_INTRINSIC, kappa1="1"))
    assert main(["synthesize", "--config", path]) == 2
    assert "kappa1" in capsys.readouterr().err
    assert main(["synthesize", "--config", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_main_exit_code_1_on_degeneracy(tmp_path, capsys):
    payload = {
        "mode": "explicit",
        "f": ["0", "0", "s"],
        "q": ["1", "0", "0"],  # constant ruling: cylinder
        "u_range": [0.0, 1.0],
        "samples": 21,
        "output": {"report_path": "r.json"},
    }
    path = write_config(tmp_path, "c.json", payload)
    assert main(["analyze", "--config", path, "--output-dir", str(tmp_path)]) == 1
    capsys.readouterr()


# ---------------------------------------------------------------------------
# end-to-end commands
# ---------------------------------------------------------------------------


def test_analyze_helicoid_end_to_end(tmp_path, schema):
    config = os.path.join(CONFIG_DIR, "helicoid_analyze.json")
    assert main(["analyze", "--config", config, "--output-dir", str(tmp_path)]) == 0
    report = validate_report(tmp_path / "helicoid_report.json", schema)
    assert report["classification"]["class"] == "N-"
    assert report["classification"]["skew"] is True
    drall = np.array(report["samples"]["drall"], dtype=float)
    assert np.max(np.abs(drall - 1.0)) <= 1e-9
    # deterministic: a second run produces byte-identical output
    first = (tmp_path / "helicoid_report.json").read_bytes()
    assert main(["analyze", "--config", config, "--output-dir", str(tmp_path)]) == 0
    assert (tmp_path / "helicoid_report.json").read_bytes() == first


def test_synthesize_end_to_end(tmp_path, schema):
    config = os.path.join(CONFIG_DIR, "hyperbolic_synthesize.json")
    assert main(["synthesize", "--config", config, "--output-dir", str(tmp_path)]) == 0
    report = validate_report(tmp_path / "synthesis_report.json", schema)
    assert report["frame_residuals"]["ruling_norm"] <= 1e-9
    assert report["drall"]["oracle_max_gap"] <= 1e-6


def test_transversal_end_to_end(tmp_path, schema):
    config = os.path.join(CONFIG_DIR, "beta_transversal.json")
    assert main(["transversal", "--config", config, "--output-dir", str(tmp_path)]) == 0
    report = validate_report(tmp_path / "beta_report.json", schema)
    d = np.array(report["samples"]["d_closed"], dtype=float)
    assert np.max(np.abs(d + math.sinh(1.0))) <= 1e-9
    assert report["agreement"]["rel_d"] <= 1e-5
    assert report["agreement"]["printed_sign_flip"] is True
    assert not report["agreement"]["closed_form_suspect"]
    assert any("sign" in w for w in report["warnings"])


def test_mesh_end_to_end(tmp_path):
    config = os.path.join(CONFIG_DIR, "hyperbolic_mesh.json")
    assert main(["mesh", "--config", config, "--output-dir", str(tmp_path)]) == 0
    lines = (tmp_path / "surface.obj").read_text().splitlines()
    vertices = [l for l in lines if l.startswith("v ")]
    faces = [l for l in lines if l.startswith("f ")]
    assert len(vertices) == 101 * 21
    assert len(faces) == 100 * 20
    # striction curve starts at the origin and v = 0 is the middle column:
    # vertex (s=0, v=0) is the canonical zero line
    assert "v 0 0 0" in vertices
    first = (tmp_path / "surface.obj").read_bytes()
    assert main(["mesh", "--config", config, "--output-dir", str(tmp_path)]) == 0
    assert (tmp_path / "surface.obj").read_bytes() == first


def test_verify_end_to_end_small(tmp_path, schema):
    payload = dict(
        MINIMAL_INTRINSIC,
        suite={
            "k1_values": [1.0],
            "k2_values": [0.0, 2.0],
            "theta_values": [0.0, 0.5493061443340549],
            "step": 0.002,
        },
        output={"report_path": "verify.json"},
    )
    path = write_config(tmp_path, "c.json", payload)
    assert main(["verify", "--config", path, "--output-dir", str(tmp_path)]) == 0
    report = validate_report(tmp_path / "verify.json", schema)
    assert report["summary"]["fail"] == 0
    assert report["summary"]["error"] == 0
    assert len(report["suites"]) == 3


def test_transversal_requires_intrinsic(tmp_path, capsys):
    payload = {
        "mode": "explicit",
        "f": ["0", "0", "s"],
        "q": ["cosh(s)", "sinh(s)", "0"],
        "u_range": [0.0, 1.0],
        "samples": 11,
    }
    path = write_config(tmp_path, "c.json", payload)
    assert main(["transversal", "--config", path]) == 2
    capsys.readouterr()


def test_tolerance_flag(tmp_path, schema):
    config = os.path.join(CONFIG_DIR, "helicoid_analyze.json")
    assert (
        main(
            [
                "analyze",
                "--config",
                config,
                "--output-dir",
                str(tmp_path),
                "--tolerance",
                "2.0",
            ]
        )
        == 0
    )
    report = validate_report(tmp_path / "helicoid_report.json", schema)
    # with a huge tolerance the |d| = 1 surface counts as developable
    assert report["classification"]["developable"] is True


def test_report_echoes_expressions(tmp_path, schema):
    config = os.path.join(CONFIG_DIR, "beta_transversal.json")
    assert main(["transversal", "--config", config, "--output-dir", str(tmp_path)]) == 0
    report = validate_report(tmp_path / "beta_report.json", schema)
    assert report["config"]["k1"] == "1"
    assert report["config"]["transversal"]["angle"] == "pi/4"
