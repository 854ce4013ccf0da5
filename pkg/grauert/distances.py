"""
Distances to the totally real line for the flat, elliptic and hyperbolic
metrics on C, plus brute-force oracles and the product-metric potential.

    flat:        |y|
    elliptic:    arccos( sqrt(1 + x^2) / sqrt(1 + x^2 + y^2) )   (V = real axis, chart [1 : z])
    hyperbolic:  arccosh( sqrt(x^2 + y^2) / y ),  y > 0          (V = imaginary axis, upper half plane)
"""
from __future__ import annotations

import math
from typing import Literal

import numpy as np
from scipy.optimize import minimize_scalar

from cartan.errors import DomainError

DistanceKind = Literal["flat", "elliptic", "hyperbolic"]

KIND_ALIASES = {
    "flat": "flat",
    "ell": "elliptic",
    "elliptic": "elliptic",
    "hyp": "hyperbolic",
    "hyperbolic": "hyperbolic",
}

ORACLE_XTOL = 1e-8


def canonical_kind(kind: str) -> str:
    try:
        return KIND_ALIASES[kind]
    except KeyError:
        raise DomainError(f"unknown metric kind '{kind}' (expected flat, ell(iptic) or hyp(erbolic))") from None


def distances(kind: str, x: float, y: float) -> float:
    """
    Distance from (x, y) to the totally real set of the given model.

    Args:
        kind: flat | elliptic | hyperbolic (or ell / hyp).
        x: real part.
        y: imaginary part; must be positive for the hyperbolic model.

    Returns:
        Non-negative distance, zero exactly on the totally real set.
    """
    kind = canonical_kind(kind)
    if kind == "flat":
        return abs(y)
    if kind == "elliptic":
        ratio = math.sqrt(1.0 + x * x) / math.sqrt(1.0 + x * x + y * y)
        return math.acos(min(1.0, ratio))
    if not y > 0:
        raise DomainError(f"hyperbolic distance needs y > 0, got {y!r}")
    return math.acosh(max(1.0, math.hypot(x, y) / y))


def _sphere_point(x: float, y: float) -> np.ndarray:
    return np.array([1.0, x, y]) / math.sqrt(1.0 + x * x + y * y)


def elliptic_distance_oracle(x: float, y: float) -> float:
    """Minimize the spherical distance from [1 : x + iy] to [1 : alpha] over real alpha."""
    p = _sphere_point(x, y)

    def angle(alpha: float) -> float:
        q = _sphere_point(alpha, 0.0)
        return math.atan2(float(np.linalg.norm(np.cross(p, q))), float(np.dot(p, q)))

    res = minimize_scalar(angle, bracket=(x - 1.0, x + 1.0), method="golden", options={"xtol": ORACLE_XTOL})
    return float(res.fun)


def hyperbolic_distance_oracle(x: float, y: float) -> float:
    """Minimize the upper-half-plane distance from x + iy to it over t > 0 (t = exp(s))."""
    if not y > 0:
        raise DomainError(f"hyperbolic distance needs y > 0, got {y!r}")

    def dist(s: float) -> float:
        t = math.exp(s)
        # cosh d = 1 + |p - q|^2 / (2 y t) written through sinh(d/2)
        return 2.0 * math.asinh(math.sqrt((x * x + (y - t) ** 2) / (4.0 * y * t)))

    s0 = math.log(y)
    res = minimize_scalar(dist, bracket=(s0 - 1.0, s0 + 1.0), method="golden", options={"xtol": ORACLE_XTOL})
    return float(res.fun)


def product_rho(left: str, right: str, x: float, y: float, u: float, v: float) -> float:
    """rho = d_left((x, y))^2 + d_right((u, v))^2 for the product metric."""
    return distances(left, x, y) ** 2 + distances(right, u, v) ** 2


__all__ = [
    "DistanceKind",
    "KIND_ALIASES",
    "canonical_kind",
    "distances",
    "elliptic_distance_oracle",
    "hyperbolic_distance_oracle",
    "product_rho",
]
