"""Frenet frame samples for ruled surfaces and frame re-orthonormalization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FrameDegenerateError
from .lorentz import Vec3, lorentz_dot


@dataclass(frozen=True)
class FrameSample:
    """One striction-curve sample: frame vectors, curvatures and angle.

    ``s`` is arc length along the striction curve, ``c`` the striction point.
    ``theta`` is the hyperbolic angle between striction tangent and ruling;
    it is None when the striction tangent is not timelike.  ``c2`` and
    ``hprime`` optionally carry d2c/ds2 and dh/ds computed by the producer
    (symbolically for expression-backed surfaces).
    """

    s: float
    c: Vec3
    q: Vec3
    h: Vec3
    a: Vec3
    k1: float
    k2: float
    theta: float | None
    epsilon: int
    c2: Vec3 | None = None
    hprime: Vec3 | None = None


def canonical_frame() -> tuple[Vec3, Vec3, Vec3]:
    """Default initial frame: q, h, a with h = a*q and det(q, h, a) = -1."""
    return (
        np.array([1.0, 0.0, 0.0]),
        np.array([0.0, 1.0, 0.0]),
        np.array([0.0, 0.0, -1.0]),
    )


def _renormalize(v: np.ndarray, sign: int) -> np.ndarray:
    vv = float(lorentz_dot(v, v))
    if sign * vv <= 0.0 or abs(vv) < 1e-300:
        raise FrameDegenerateError("frame vector became null during re-projection")
    return v / np.sqrt(abs(vv))


def gram_schmidt(frame: np.ndarray, epsilon: int) -> np.ndarray:
    """Lorentzian Gram-Schmidt on rows (q, h, a) with signatures (eps, 1, -eps)."""
    q = _renormalize(frame[0], epsilon)
    h = frame[1] - (float(lorentz_dot(frame[1], q)) / epsilon) * q
    h = _renormalize(h, 1)
    a = frame[2] - (float(lorentz_dot(frame[2], q)) / epsilon) * q
    a = a - float(lorentz_dot(a, h)) * h
    a = _renormalize(a, -epsilon)
    return np.stack([q, h, a])
