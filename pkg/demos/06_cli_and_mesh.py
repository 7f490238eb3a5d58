"""Drive the command-line interface and export an OBJ mesh.

Equivalent shell usage:

    minkruled analyze     --config demos/configs/helicoid_analyze.json
    minkruled synthesize  --config demos/configs/hyperbolic_synthesize.json
    minkruled transversal --config demos/configs/beta_transversal.json
    minkruled mesh        --config demos/configs/hyperbolic_mesh.json
    minkruled verify      --config demos/configs/verify_default.json

Run:  python demos/06_cli_and_mesh.py
"""

import json
import os
import tempfile

from minkruled.cli import main

CONFIGS = os.path.join(os.path.dirname(__file__), "configs")

with tempfile.TemporaryDirectory() as out:
    code = main(["analyze", "--config", os.path.join(CONFIGS, "helicoid_analyze.json"), "--output-dir", out])
    report = json.load(open(os.path.join(out, "helicoid_report.json")))
    print("analyze exit", code, "- classification:", report["classification"]["class"],
          "skew" if report["classification"]["skew"] else "developable")

    code = main(["transversal", "--config", os.path.join(CONFIGS, "beta_transversal.json"), "--output-dir", out])
    report = json.load(open(os.path.join(out, "beta_report.json")))
    print("transversal exit", code, "- d_closed[0] =", report["samples"]["d_closed"][0])
    print("  warnings:", *report["warnings"], sep="\n    ")

    code = main(["mesh", "--config", os.path.join(CONFIGS, "hyperbolic_mesh.json"), "--output-dir", out])
    lines = open(os.path.join(out, "surface.obj")).read().splitlines()
    n_vertices = sum(1 for l in lines if l.startswith("v "))
    n_faces = sum(1 for l in lines if l.startswith("f "))
    print("mesh exit", code, f"- {n_vertices} vertices, {n_faces} quad faces")
    print("  first vertex line:", lines[0])
