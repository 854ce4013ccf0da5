"""
Kaehler potential of the hyperbolic Grauert tube and the reparametrization
epsilon(eps) that normalizes its boundary.

Coordinates follow the complexified half plane {(u + iv, x + iy) : x > 0}.
The boundary {rho = eps} is

    v^2 - a x^2 + b y^2 = 0,   a = (1 - cos sqrt(eps)) / 2,  b = (1 + cos sqrt(eps)) / 2,

and scaling x + iy by sqrt(b) maps it onto v^2 - epsilon^2 x^2 + y^2 = 0.
"""
from __future__ import annotations

import math
from typing import Tuple

from cartan.errors import DomainError

EPS_MAX = (math.pi / 2) ** 2

R_EPSILON = "2*v^2 - (1 - cos(sqrt(eps)))*x^2 + (1 + cos(sqrt(eps)))*y^2"
RHO_HYPERBOLIC = "arccos(1 - 2*(y^2 + v^2)/(x^2 + y^2))^2"


def _check_eps(eps: float) -> None:
    if not 0 < eps < EPS_MAX:
        raise DomainError(f"eps must lie in (0, (pi/2)^2), got {eps!r}")


def eps_reparam(eps: float) -> float:
    """
    epsilon = sqrt((1 - cos sqrt(eps)) / (1 + cos sqrt(eps))), in (0, 1).

    Evaluated as tan(sqrt(eps) / 2), the same quantity without cancellation near 0.
    """
    _check_eps(eps)
    return math.tan(0.5 * math.sqrt(eps))


def eps_reparam_inverse(epsilon: float) -> float:
    """eps with eps_reparam(eps) = epsilon, i.e. arccos((1 - e^2) / (1 + e^2))^2."""
    if not 0 < epsilon < 1:
        raise DomainError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    return (2.0 * math.atan(epsilon)) ** 2


def level_coefficients(eps: float) -> Tuple[float, float]:
    """(a, b) of the boundary equation v^2 - a x^2 + b y^2 = 0."""
    _check_eps(eps)
    c = math.cos(math.sqrt(eps))
    return 0.5 * (1.0 - c), 0.5 * (1.0 + c)


def rho_hyperbolic(u: float, v: float, x: float, y: float) -> float:
    """
    Potential rho = arccos(1 - 2 (y^2 + v^2) / (x^2 + y^2))^2.

    Defined on the security cone x > 0, 2 y^2 + v^2 <= x^2; ``u`` does not enter.
    """
    if not x > 0 or 2 * y * y + v * v > x * x * (1 + 1e-12):
        raise DomainError(f"(x, y, v) = ({x}, {y}, {v}) outside the security cone 2y^2 + v^2 <= x^2, x > 0")
    ratio = 1.0 - 2.0 * (y * y + v * v) / (x * x + y * y)
    return math.acos(max(-1.0, min(1.0, ratio))) ** 2


def normalize_point(eps: float, z: complex, w: complex) -> Tuple[complex, complex]:
    """Map a point of the eps-boundary (z = u + iv, w = x + iy) onto the normalized boundary."""
    _, b = level_coefficients(eps)
    return complex(z), complex(w) * math.sqrt(b)


def denormalize_point(eps: float, z: complex, w: complex) -> Tuple[complex, complex]:
    _, b = level_coefficients(eps)
    return complex(z), complex(w) / math.sqrt(b)


__all__ = [
    "EPS_MAX",
    "R_EPSILON",
    "RHO_HYPERBOLIC",
    "eps_reparam",
    "eps_reparam_inverse",
    "level_coefficients",
    "rho_hyperbolic",
    "normalize_point",
    "denormalize_point",
]
