import math

import numpy as np
import pytest

from cartan.errors import JetDomainError, JetShapeError
from cartan.jet_algebra import (
    Jet,
    apply_function,
    arith,
    coefficient,
    constant_jet,
    derivative_value,
    layout_size,
    make_variable_jet,
    partial_derivative,
    variable_jets,
)


def random_jet(rng, num_vars=3, degree=4, offset=0.0):
    coeffs = rng.normal(size=layout_size(num_vars, degree))
    coeffs[0] += offset
    return Jet(coeffs, num_vars, degree)


def assert_jets_close(a, b, rel=1e-12, abs_=1e-13):
    assert a.num_vars == b.num_vars and a.degree == b.degree
    np.testing.assert_allclose(a.coeffs, b.coeffs, rtol=rel, atol=abs_)


def test_layout_size_matches_binomial():
    assert layout_size(4, 6) == 210
    assert layout_size(3, 6) == 84
    assert len(constant_jet(1.0, 4, 6).coeffs) == 210


def test_variable_seed():
    x = make_variable_jet(0, 2.0, 2, 2)
    assert x.value == 2.0
    assert coefficient(x, (1, 0)) == 1.0
    assert coefficient(x, (0, 1)) == 0.0
    assert all(coefficient(x, alpha) == 0.0 for alpha in [(2, 0), (1, 1), (0, 2)])


def test_constant_jet_has_no_slope():
    c = constant_jet(5.0, 2, 3)
    assert c.value == 5.0
    assert np.count_nonzero(c.coeffs) == 1


def test_variable_index_out_of_range():
    with pytest.raises(JetShapeError):
        make_variable_jet(2, 0.0, 2, 3)


def test_product_of_linear_jets():
    x, y = variable_jets((0.0, 0.0), 2)
    prod = arith("mul", 1.0 + x, 1.0 + y)
    expected = Jet.from_coefficients({(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, 2, 2)
    assert_jets_close(prod, expected)


def test_geometric_series():
    (x,) = variable_jets((0.0,), 3)
    q = arith("div", constant_jet(1.0, 1, 3), 1.0 - x)
    np.testing.assert_allclose(q.coeffs, [1, 1, 1, 1])


def test_mul_div_round_trip(rng):
    for _ in range(20):
        a = random_jet(rng)
        b = random_jet(rng, offset=3.0)
        assert_jets_close(arith("div", arith("mul", a, b), b), a, rel=1e-12, abs_=1e-11)


def test_division_by_zero_constant_term():
    x, _ = variable_jets((0.0, 1.0), 2)
    with pytest.raises(JetDomainError):
        arith("div", constant_jet(1.0, 2, 2), x)


def test_shape_and_kind_mismatch():
    a = constant_jet(1.0, 2, 3)
    with pytest.raises(JetShapeError):
        arith("add", a, constant_jet(1.0, 2, 4))
    with pytest.raises(JetShapeError):
        arith("add", a, constant_jet(1.0, 3, 3))
    with pytest.raises(JetShapeError):
        arith("add", a, constant_jet(1.0, 2, 3, kind="complex"))


def test_ring_laws(rng):
    a, b, c = (random_jet(rng) for _ in range(3))
    assert_jets_close(a * b, b * a)
    assert_jets_close(a + b, b + a)
    assert_jets_close((a * b) * c, a * (b * c), abs_=1e-12)
    assert_jets_close(a * (b + c), a * b + a * c, abs_=1e-12)


def test_exp_series():
    (x,) = variable_jets((0.0,), 3)
    np.testing.assert_allclose(apply_function("exp", x).coeffs, [1, 1, 0.5, 1 / 6])


def test_arccosh_at_two():
    (t,) = variable_jets((2.0,), 1)
    result = apply_function("arccosh", t)
    assert result.value == pytest.approx(1.316958, abs=1e-6)
    assert coefficient(result, (1,)) == pytest.approx(1 / math.sqrt(3), rel=1e-12)


def test_sqrt_of_perfect_square():
    (x,) = variable_jets((0.0,), 2)
    root = apply_function("sqrt", x * x + 2.0 * x + 1.0)
    np.testing.assert_allclose(root.coeffs, [1, 1, 0], atol=1e-15)


@pytest.mark.parametrize(
    "name, value",
    [("sqrt", -1.0), ("log", 0.0), ("arccosh", 1.0), ("arcsin", 1.0), ("arccos", -1.5)],
)
def test_function_domain_violations(name, value):
    with pytest.raises(JetDomainError):
        apply_function(name, make_variable_jet(0, value, 1, 3))


@pytest.mark.parametrize(
    "name, value, expected",
    [("sqrt", 0.0, 0.0), ("arccosh", 1.0, 0.0), ("arccos", 1.0, 0.0), ("arcsin", -1.0, -math.pi / 2)],
)
def test_degree_zero_accepts_domain_boundary(name, value, expected):
    assert apply_function(name, constant_jet(value, 1, 0)).value == pytest.approx(expected, abs=1e-15)
    with pytest.raises(JetDomainError):
        apply_function(name, make_variable_jet(0, value, 1, 1))


def test_complex_branch_restrictions():
    z = make_variable_jet(0, 0.5 + 0.5j, 1, 3)
    with pytest.raises(JetDomainError):
        apply_function("arcsin", z)
    root = apply_function("sqrt", z)
    assert root.value == pytest.approx(np.sqrt(0.5 + 0.5j), rel=1e-14)


def test_exp_log_composition(rng):
    for _ in range(10):
        a = random_jet(rng, offset=5.0)
        assert_jets_close(apply_function("exp", apply_function("log", a)), a, rel=1e-10, abs_=1e-10)


@pytest.mark.parametrize("name", ["sin", "cos", "sinh", "cosh", "arcsin", "arccos", "arcsinh"])
def test_univariate_functions_match_numpy(name):
    (x,) = variable_jets((0.3,), 4)
    fn = getattr(np, name)
    jet = apply_function(name, x)
    h = 1e-5
    assert jet.value == pytest.approx(fn(0.3), rel=1e-14)
    fd = (fn(0.3 + h) - fn(0.3 - h)) / (2 * h)
    assert coefficient(jet, (1,)) == pytest.approx(fd, rel=1e-8)


def test_partial_derivative_examples():
    (x,) = variable_jets((0.0,), 2)
    d = partial_derivative(1.0 + x + x * x, 0)
    assert d.degree == 1
    np.testing.assert_allclose(d.coeffs, [1, 2])

    x, y = variable_jets((0.0, 0.0), 2)
    dy = partial_derivative(x * y, 1)
    assert dy.degree == 1
    assert_jets_close(dy, x.truncate(1))


def test_partial_of_degree_zero():
    with pytest.raises(JetShapeError):
        partial_derivative(constant_jet(1.0, 2, 0), 0)


def test_leibniz_rule(rng):
    a, b = random_jet(rng), random_jet(rng)
    for k in range(3):
        lhs = partial_derivative(a * b, k)
        rhs = partial_derivative(a, k) * b.truncate(3) + a.truncate(3) * partial_derivative(b, k)
        assert_jets_close(lhs, rhs, abs_=1e-12)


def test_coefficient_bounds():
    x, y = variable_jets((0.0, 0.0), 2)
    assert coefficient(x * x, (0, 0)) == 0.0
    assert derivative_value(x * x, (2, 0)) == 2.0
    with pytest.raises(JetShapeError):
        coefficient(x, (2, 1))


def test_derivatives_of_trig_product():
    point = (0.3, -0.2, 0.7)
    x, y, u = variable_jets(point, 4)
    jet = apply_function("sin", x) * apply_function("cos", u) + y * y
    x0, y0, u0 = point
    for alpha in jet.exponents:
        a, b, c = alpha
        expected = 0.0
        if b == 0:
            expected += math.sin(x0 + a * math.pi / 2) * math.cos(u0 + c * math.pi / 2)
        if a == 0 and c == 0:
            expected += [y0 * y0, 2 * y0, 2.0, 0.0, 0.0][b]
        assert derivative_value(jet, alpha) == pytest.approx(expected, rel=1e-10, abs=1e-12), alpha


def _test_field(x, y):
    return np.exp(x) * np.sin(y) + x * y ** 2


def test_finite_difference_consistency():
    x0, y0 = 0.4, -0.7
    x, y = variable_jets((x0, y0), 3)
    jet = apply_function("exp", x) * apply_function("sin", y) + x * y * y
    f = _test_field

    h = 1e-5
    fx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h)
    fy = (f(x0, y0 + h) - f(x0, y0 - h)) / (2 * h)
    assert derivative_value(jet, (1, 0)) == pytest.approx(fx, rel=1e-5)
    assert derivative_value(jet, (0, 1)) == pytest.approx(fy, rel=1e-5)

    h = 1e-4
    fxx = (f(x0 + h, y0) - 2 * f(x0, y0) + f(x0 - h, y0)) / h ** 2
    fxy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4 * h * h)
    assert derivative_value(jet, (2, 0)) == pytest.approx(fxx, rel=1e-5)
    assert derivative_value(jet, (1, 1)) == pytest.approx(fxy, rel=1e-5)

    h = 1e-2
    fyyy = (f(x0, y0 + 2 * h) - 2 * f(x0, y0 + h) + 2 * f(x0, y0 - h) - f(x0, y0 - 2 * h)) / (2 * h ** 3)
    assert derivative_value(jet, (0, 3)) == pytest.approx(fyyy, rel=1e-3)


def test_polynomial_exactness():
    x, y, u = variable_jets((0.5, -1.0, 2.0), 6)
    jet = x ** 3 * y ** 2 - 4.0 * u * x + u ** 6
    assert derivative_value(jet, (3, 2, 0)) == pytest.approx(12.0, rel=1e-14)
    assert derivative_value(jet, (0, 0, 6)) == pytest.approx(720.0, rel=1e-14)
    assert derivative_value(jet, (1, 0, 1)) == pytest.approx(-4.0, rel=1e-14)


def test_polynomial_evaluation_matches_taylor_expansion():
    x, y = variable_jets((1.0, 2.0), 3)
    jet = x * x * y - y ** 3
    offset = (0.1, -0.2)
    expected = (1.1 ** 2) * 1.8 - 1.8 ** 3
    assert jet.evaluate_polynomial(offset) == pytest.approx(expected, rel=1e-13)


def test_jets_are_read_only():
    x = make_variable_jet(0, 1.0, 1, 2)
    with pytest.raises(ValueError):
        x.coeffs[0] = 3.0


def test_non_finite_coefficients_rejected():
    with pytest.raises(JetDomainError):
        Jet([1.0, float("nan")], 1, 1)


def test_real_imag_and_conjugate_parts():
    x, y = variable_jets((0.3, -0.4), 3)
    f = apply_function("exp", x.as_complex() + 1j * y.as_complex())
    re, im = f.real_part(), f.imag_part()
    assert re.kind == im.kind == "real"
    assert re.value == pytest.approx(math.exp(0.3) * math.cos(-0.4), rel=1e-14)
    assert im.value == pytest.approx(math.exp(0.3) * math.sin(-0.4), rel=1e-14)
    conj = f.conjugate_coefficients()
    assert conj.kind == "complex"
    assert np.allclose(conj.real_part().coeffs, re.coeffs)
    assert np.allclose(conj.imag_part().coeffs, -im.coeffs)
    # d/dy of Re exp(x + iy) is -Im
    assert derivative_value(re, (0, 1)) == pytest.approx(-im.value, rel=1e-12)
