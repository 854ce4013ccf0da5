import math

import pytest

from cartan.errors import DomainError
from grauert.potentials import (
    EPS_MAX,
    denormalize_point,
    eps_reparam,
    eps_reparam_inverse,
    level_coefficients,
    normalize_point,
    rho_hyperbolic,
)


def test_reparam_reference_value():
    assert eps_reparam((math.pi / 3) ** 2) == pytest.approx(1 / math.sqrt(3), rel=1e-12)


def test_reparam_matches_defining_ratio():
    for eps in (1e-6, 0.3, 1.0, 2.4):
        c = math.cos(math.sqrt(eps))
        assert eps_reparam(eps) == pytest.approx(math.sqrt((1 - c) / (1 + c)), rel=1e-9)


def test_reparam_is_increasing_and_invertible():
    grid = [EPS_MAX * k / 1001 for k in range(1, 1001)]
    values = [eps_reparam(eps) for eps in grid]
    assert all(0 < a < b < 1 for a, b in zip(values, values[1:]))
    for eps, epsilon in zip(grid, values):
        assert eps_reparam_inverse(epsilon) == pytest.approx(eps, rel=1e-12)


@pytest.mark.parametrize("eps", [0.0, -1.0, EPS_MAX, 3.0])
def test_reparam_domain(eps):
    with pytest.raises(DomainError):
        eps_reparam(eps)


@pytest.mark.parametrize("epsilon", [0.0, 1.0, 1.5])
def test_inverse_domain(epsilon):
    with pytest.raises(DomainError):
        eps_reparam_inverse(epsilon)


def test_level_coefficients_ratio():
    eps = 1.3
    a, b = level_coefficients(eps)
    assert a + b == pytest.approx(1.0)
    assert math.sqrt(a / b) == pytest.approx(eps_reparam(eps), rel=1e-12)


def test_rho_vanishes_on_real_plane():
    assert rho_hyperbolic(0.7, 0.0, 1.0, 0.0) == 0.0


def test_rho_equals_eps_on_boundary(rng):
    eps = 1.0
    a, b = level_coefficients(eps)
    for _ in range(20):
        x = rng.uniform(0.5, 3.0)
        y = math.sqrt(a / b) * x * rng.uniform(-0.9, 0.9)
        v = math.sqrt(a * x * x - b * y * y)
        assert rho_hyperbolic(rng.uniform(-1, 1), v, x, y) == pytest.approx(eps, rel=1e-10)


def test_rho_reference_point():
    eps = 0.8
    v = math.sin(math.sqrt(eps) / 2)
    assert rho_hyperbolic(0.0, v, 1.0, 0.0) == pytest.approx(eps, rel=1e-12)


@pytest.mark.parametrize("v, x, y", [(0.1, 0.0, 0.0), (0.1, -1.0, 0.0), (0.9, 1.0, 0.5)])
def test_rho_outside_cone(v, x, y):
    with pytest.raises(DomainError):
        rho_hyperbolic(0.0, v, x, y)


def test_normalizing_map():
    eps = 0.6
    epsilon = eps_reparam(eps)
    a, b = level_coefficients(eps)
    x, y = 1.2, 0.1
    z, w = complex(0.3, math.sqrt(a * x * x - b * y * y)), complex(x, y)
    zn, wn = normalize_point(eps, z, w)
    assert zn.imag ** 2 - epsilon ** 2 * wn.real ** 2 + wn.imag ** 2 == pytest.approx(0.0, abs=1e-14)
    assert denormalize_point(eps, zn, wn) == pytest.approx((z, w), rel=1e-14)
