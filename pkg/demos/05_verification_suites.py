"""Sweep the verification suites over a grid of constant curvature data.

Every if-and-only-if law is tested in both directions: instances tuned to
satisfy a condition must show the geometric property within tolerance,
and instances violating it by a margin must fail it by at least ten times
the tolerance.  Unsatisfiable conditions (a ratio outside the tanh range)
are recorded as skips.

Run:  python demos/05_verification_suites.py
"""

from minkruled import SuiteConfig, run_all

cfg = SuiteConfig()  # default grids: k1 x k2 x theta = 3 x 3 x 3
combined = run_all(cfg)

print("summary:", combined["summary"])
print("warnings:")
for warning in combined["warnings"]:
    print("  -", warning)

for suite in combined["suites"]:
    print(f"\n== {suite['suite']} suite: {suite['summary']} ==")
    shown = 0
    for case in suite["cases"]:
        if case["verdict"] == "skip" and shown < 3:
            print(f"  skip {case['check']} {case['params']}: {case['note']}")
            shown += 1
    for case in suite["cases"]:
        if case["verdict"] in ("fail", "error"):
            print(f"  {case['verdict'].upper()} {case['check']} {case['params']}: {case['note']}")
