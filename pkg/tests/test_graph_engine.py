import cmath
import math

import pytest

from cartan.errors import DomainError, LeviDegenerateError
from cartan.graph_engine import (
    GraphHypersurface,
    apply_vector_field,
    cartan_invariant_graph,
    commutator_levi_coefficient,
    key_function_pbar,
    levi_factor,
)
from cartan.jet_algebra import constant_jet, variable_jets
from grauert.catalog import get_model

HEISENBERG = GraphHypersurface.from_text("x^2 + y^2")


def hyperbolic_v_graph(epsilon):
    return get_model("hyperbolic", epsilon=epsilon).chart("v-graph").surface


def closed_form_v_graph(epsilon, x, y):
    """Closed form of the six-term bracket (6 J) on the v-graph."""
    z, zb = complex(x, y), complex(x, -y)
    return -(9 / 16) * (1 - epsilon ** 4) / (epsilon ** 2 * x * x - y * y) ** 2 * z ** 2 / zb ** 2


def sample_cone(rng, epsilon, n):
    for _ in range(n):
        x = rng.uniform(0.5, 3.0)
        yield x, epsilon * x * rng.uniform(-0.9, 0.9), rng.uniform(-1.0, 1.0)


def test_heisenberg_levi_and_key_function(rng):
    for point in rng.uniform(-2, 2, size=(10, 3)):
        assert levi_factor(HEISENBERG, tuple(point)) == pytest.approx(2.0, rel=1e-14)
        assert abs(key_function_pbar(HEISENBERG, tuple(point))) < 1e-14


def test_heisenberg_is_flat(rng):
    for point in rng.uniform(-2, 2, size=(200, 3)):
        result = cartan_invariant_graph(HEISENBERG, tuple(point))
        assert abs(result.j_star) < 1e-9


def test_levi_flat_plane_is_degenerate():
    plane = GraphHypersurface.from_text("u")
    assert levi_factor(plane, (0.1, 0.2, 0.3)) == 0.0
    with pytest.raises(LeviDegenerateError):
        cartan_invariant_graph(plane, (0.1, 0.2, 0.3))


def test_hyperbolic_reference_value():
    result = cartan_invariant_graph(hyperbolic_v_graph(0.5), (1.0, 0.0, 0.0))
    assert result.bracket.real == pytest.approx(-8.4375, rel=1e-8)
    assert result.j_star.real == pytest.approx(-1.40625, rel=1e-8)
    assert abs(result.j_star.imag) < 1e-8
    assert len(result.terms) == 6
    assert sum(result.terms) == pytest.approx(result.j_star, rel=1e-14)


def test_hyperbolic_levi_and_pbar_are_finite():
    surface = hyperbolic_v_graph(0.5)
    levi = levi_factor(surface, (2.0, 0.5, 0.0))
    assert math.isfinite(levi) and abs(levi) > 1e-6
    assert cmath.isfinite(key_function_pbar(surface, (2.0, 0.5, 0.0)))


@pytest.mark.parametrize("epsilon", [0.2, 0.5, 0.8])
def test_hyperbolic_matches_closed_form(rng, epsilon):
    surface = hyperbolic_v_graph(epsilon)
    for x, y, u in sample_cone(rng, epsilon, 100):
        result = cartan_invariant_graph(surface, (x, y, u))
        expected = closed_form_v_graph(epsilon, x, y)
        assert abs(result.bracket - expected) <= 1e-8 * abs(expected)


def test_hyperbolic_phase_identity(rng):
    surface = hyperbolic_v_graph(0.5)
    for x, y, u in sample_cone(rng, 0.5, 20):
        j = cartan_invariant_graph(surface, (x, y, u)).j_star
        expected_phase = 2 * cmath.phase(complex(x, y) / complex(x, -y)) + math.pi
        assert cmath.exp(1j * cmath.phase(j)) == pytest.approx(cmath.exp(1j * expected_phase), abs=1e-8)


@pytest.mark.parametrize("epsilon", [0.2, 0.5, 0.8])
@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_y_graph_matches_closed_form(epsilon, x):
    surface = get_model("hyperbolic", epsilon=epsilon).chart("y-graph").surface
    # chart coordinates (u, v, x) of the point (x, y, u, v) = (x, y, 0.3, 0)
    result = cartan_invariant_graph(surface, (0.3, 0.0, x))
    expected = (9 / 16) * (1 - epsilon ** 2) / ((epsilon + 1j) ** 2 * epsilon ** 4 * x ** 4)
    assert abs(result.bracket - expected) <= 1e-8 * abs(expected)


def test_y_graph_value_at_unit_point():
    surface = get_model("hyperbolic", epsilon=0.5).chart("y-graph").surface
    result = cartan_invariant_graph(surface, (0.3, 0.0, 1.0))
    assert result.bracket == pytest.approx(-3.24 - 4.32j, rel=1e-8)
    assert result.j_star == pytest.approx(-0.54 - 0.72j, rel=1e-8)


def test_commutator_reproduces_levi_factor(rng):
    surface = hyperbolic_v_graph(0.5)
    for point in sample_cone(rng, 0.5, 20):
        levi = levi_factor(surface, point)
        bracket = commutator_levi_coefficient(surface, point)
        assert bracket.real == pytest.approx(levi, rel=1e-8)
        assert abs(bracket.imag) <= 1e-8 * abs(levi)


def test_apply_vector_field_basics():
    x, y, u = (j.as_complex() for j in variable_jets((0.4, -0.2, 0.1), 3))
    a = constant_jet(0.3 - 0.7j, 3, 2)
    abar = constant_jet(0.3 + 0.7j, 3, 2)
    assert apply_vector_field("L", x + 1j * y, a, abar).value == pytest.approx(1.0)
    assert apply_vector_field("Lbar", x + 1j * y, a, abar).value == pytest.approx(0.0)
    assert apply_vector_field("L", u, a, abar).value == pytest.approx(0.3 - 0.7j)
    constant = constant_jet(2.0, 3, 3, kind="complex")
    assert apply_vector_field("L", constant, a, abar).max_abs() == 0.0
    with pytest.raises(ValueError):
        apply_vector_field("T", constant, a, abar)


def test_domain_predicate_is_enforced():
    surface = hyperbolic_v_graph(0.5)
    assert not surface.is_admissible((1.0, 0.6, 0.0))
    with pytest.raises(DomainError):
        cartan_invariant_graph(surface, (1.0, 0.6, 0.0))


@pytest.mark.parametrize("beta", [0.0, 1.0])
@pytest.mark.parametrize("x", [0.1, 0.3])
def test_torus_case2_closed_form(beta, x):
    # J = 3 / (32 (eps^2 - x^2)^2), independent of beta and of (y, u)
    eps = 0.5
    surface = get_model("torus-case2", beta=beta, eps=eps).chart().surface
    result = cartan_invariant_graph(surface, (x, 0.2, -0.4))
    expected = 3 / (32 * (eps * eps - x * x) ** 2)
    assert abs(result.j_star - expected) <= 1e-8 * expected
    assert abs(result.j_star) > 1e-3


def test_torus_case2_reference_value():
    surface = get_model("torus-case2", beta=1.0, eps=0.5).chart().surface
    result = cartan_invariant_graph(surface, (0.3, 0.0, 0.0))
    assert result.j_star == pytest.approx(3.662109375, rel=1e-8)
    assert result.bracket == pytest.approx(6 * 3.662109375, rel=1e-8)


def test_torus_case2_graph_value():
    surface = get_model("torus-case2", beta=0.0, eps=0.5).chart().surface
    assert surface.phi_value((0.3, 0.0, 0.0)) == pytest.approx(-0.4, rel=1e-14)


def test_torus_case1_never_vanishes(rng):
    surface = get_model("torus-case1", alpha=0.5, beta=0.3, eps=0.5).chart().surface
    for point in rng.uniform(-0.3, 0.3, size=(30, 3)):
        assert abs(cartan_invariant_graph(surface, tuple(point)).j_star) > 1e-3
