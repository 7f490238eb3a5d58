"""Lorentzian vector algebra: metric, causal characters, angles, frames.

Run:  python demos/01_lorentz_basics.py
"""

import math

from minkruled import (
    frame_check,
    lorentz_angle,
    lorentz_cross,
    lorentz_dot,
    norm_and_character,
    vec3,
)

print("== the (-, +, +) metric ==")
e1, e2, e3 = vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1)
print("<e1, e1> =", lorentz_dot(e1, e1), " (timelike axis)")
print("<e2, e2> =", lorentz_dot(e2, e2))
print("<(1,1,0), (1,1,0)> =", lorentz_dot(vec3(1, 1, 0), vec3(1, 1, 0)), " (null)")

print("\n== causal characters ==")
for v in (e1, e2, vec3(1, 1, 0), vec3(2, 1, 0), vec3(0, 0, 0)):
    norm, char = norm_and_character(v)
    print(f"  {tuple(v.tolist())}: {char.value}, norm {norm:.6f}")

print("\n== the Lorentzian cross product ==")
print("e1 x e2 =", lorentz_cross(e1, e2), " (note the sign: <x*y, z> = -det(z, x, y))")
print("orthogonality: <e1 x e2, e1> =", lorentz_dot(lorentz_cross(e1, e2), e1))

print("\n== the four angle notions ==")
pairs = [
    ("timelike/timelike (hyperbolic)", e1, vec3(math.cosh(1), math.sinh(1), 0)),
    ("spacelike pair, timelike span (central)", e2, vec3(math.sinh(1), math.cosh(1), 0)),
    ("spacelike pair, spacelike span", e2, vec3(0, math.cos(0.8), math.sin(0.8))),
    ("mixed (lorentzian timelike)", e2, vec3(2, math.sqrt(3), 0)),
]
for label, x, y in pairs:
    res = lorentz_angle(x, y)
    print(f"  {label}: kind={res.kind.value}, theta={res.theta:.6f}")

print("\n== frame validation ==")
report = frame_check(vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, -1), epsilon=-1)
print("canonical frame: orthonormal =", report.orthonormal, ", det =", report.det)
report = frame_check(vec3(1, 0, 0), vec3(0, 1, 0), vec3(0, 0, 1), epsilon=-1)
print("flipped tangent: orthonormal =", report.orthonormal, ", canonical =", report.canonical)
