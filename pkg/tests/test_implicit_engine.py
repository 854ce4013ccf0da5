import math

import numpy as np
import pytest

from cartan.errors import LeviDegenerateError, OffSurfaceError, VanishingFwError
from cartan.implicit_engine import (
    ImplicitHypersurface,
    cartan_locus_iw,
    lbar_apply,
    second_order_combinations,
)
from cartan.jet_algebra import variable_jets
from grauert.catalog import get_model
from grauert.potentials import eps_reparam, level_coefficients, normalize_point

SPHERE = ImplicitHypersurface.from_text("z*zb + w*wb - 1")


def sphere_points(rng, n, min_abs_w=0.1):
    points = []
    while len(points) < n:
        v = rng.normal(size=4)
        v /= np.linalg.norm(v)
        z, w = complex(v[0], v[1]), complex(v[2], v[3])
        if abs(w) > min_abs_w:
            points.append((z, w))
    return points


NORMALIZED_TUBE = "-(z - zb)^2/4 - (1 + epsilon^2)*(w^2 + wb^2)/4 + (1 - epsilon^2)*w*wb/2"
CHART_TUBE = "(z - zb)^2 + (1 + epsilon^2)*(w^2 + wb^2) - 2*(1 - epsilon^2)*w*wb"
# the chart F is -4 times the normalized one and I_[w] has degree 16 in F
CHART_SCALE = 2.0 ** 32


def closed_form_iw(epsilon, w):
    """I_[w] of v^2 - epsilon^2 x^2 + y^2 = 0 (z = u + iv, w = x + iy)."""
    return (27 / 64) * epsilon ** 8 * (1 - epsilon ** 4) * w.conjugate() ** 2 * w ** 6


def test_sphere_second_order_combinations():
    z, w = 0.6, 0.8j
    f = SPHERE.f_jet((z, w))
    h, l = second_order_combinations(f)
    assert h.degree == 4 and l.degree == 4
    assert h.max_abs() == 0.0
    assert l.value == pytest.approx(1.0, rel=1e-14)


def test_lbar_on_sphere():
    z, w, zb, wb = variable_jets((0.6, 0.8j, 0.6, -0.8j), 4, kind="complex")
    F = z * zb + w * wb - 1.0
    assert lbar_apply(zb, F).value == pytest.approx(-0.8j)
    assert lbar_apply(F.constant_like(3.0), F).max_abs() == 0.0
    holomorphic = z * w + z ** 3 - 2.0 * w
    assert lbar_apply(holomorphic, F).max_abs() == 0.0


def test_sphere_is_umbilical(rng):
    for point in sphere_points(rng, 200):
        result = cartan_locus_iw(SPHERE, point)
        assert abs(result.i_w) < 1e-9


def test_reference_value_on_normalized_tube():
    epsilon = 0.5
    surface = ImplicitHypersurface.from_text(NORMALIZED_TUBE, {"epsilon": epsilon})
    result = cartan_locus_iw(surface, (0.5j, 1.0))
    assert result.i_w == pytest.approx(1.54495e-3, rel=1e-5)
    assert result.i_w == pytest.approx(closed_form_iw(epsilon, 1.0 + 0j), rel=1e-8)
    assert len(result.terms) == 7
    assert not result.projected


def test_scaled_defining_function_scales_invariant():
    epsilon = 0.5
    normalized = cartan_locus_iw(ImplicitHypersurface.from_text(NORMALIZED_TUBE, {"epsilon": epsilon}), (0.5j, 1.0))
    chart_form = cartan_locus_iw(ImplicitHypersurface.from_text(CHART_TUBE, {"epsilon": epsilon}), (0.5j, 1.0))
    assert chart_form.i_w == pytest.approx(6635520.0, rel=1e-8)
    assert chart_form.i_w == pytest.approx(CHART_SCALE * normalized.i_w, rel=1e-8)
    assert chart_form.f_w == pytest.approx(-4 * normalized.f_w, rel=1e-12)


@pytest.mark.parametrize("epsilon", [0.2, 0.5, 0.8])
def test_normalized_tube_matches_closed_form(rng, epsilon):
    chart = get_model("hyperbolic", epsilon=epsilon).chart("implicit")
    for _ in range(100):
        x = rng.uniform(0.2, 3.0)
        coords = (x, epsilon * x * rng.uniform(-0.9, 0.9), rng.uniform(-1.0, 1.0))
        z, w = chart.surface_point(coords)
        result = cartan_locus_iw(chart.surface, (z, w))
        expected = CHART_SCALE * closed_form_iw(epsilon, w)
        assert abs(result.i_w - expected) <= 1e-8 * abs(expected)


def test_original_tube_normalizes_onto_closed_form(rng):
    eps = 1.0
    epsilon = eps_reparam(eps)
    a, b = level_coefficients(eps)
    entry = get_model("hyperbolic", eps=eps)
    original = entry.chart("implicit-original")
    normalized = entry.chart("implicit")
    for _ in range(30):
        x = rng.uniform(0.5, 3.0)
        coords = (x, math.sqrt(a / b) * x * rng.uniform(-0.9, 0.9), rng.uniform(-1.0, 1.0))
        z, w = original.surface_point(coords)
        assert abs(cartan_locus_iw(original.surface, (z, w)).i_w) > 0.0

        zn, wn = normalize_point(eps, z, w)
        assert abs(normalized.surface.f_value((zn, wn))) < 1e-12
        result = cartan_locus_iw(normalized.surface, (zn, wn))
        assert abs(result.i_w - CHART_SCALE * closed_form_iw(epsilon, wn)) <= 1e-8 * abs(result.i_w)


def test_torus_case3_never_vanishes():
    eps = 0.3
    chart = get_model("torus-case3", eps=eps).chart()
    t = math.atan2(0.24, 0.18)
    for y, v in [(0.0, 0.0), (0.5, -0.2), (-1.0, 1.5)]:
        result = chart.evaluate((t, y, v))
        assert abs(result.i_w) > 1e-12 * abs(12 * result.f_w ** 9)


def test_off_surface_point_rejected():
    with pytest.raises(OffSurfaceError):
        cartan_locus_iw(SPHERE, (0.0, 0.0))


def test_near_surface_point_is_projected():
    scale = 1.0 + 5e-8
    result = cartan_locus_iw(SPHERE, (0.6 * scale, 0.8j * scale))
    assert result.projected
    assert abs(result.f_value) < 1e-12
    assert abs(result.i_w) < 1e-9


def test_vanishing_fw():
    with pytest.raises(VanishingFwError):
        cartan_locus_iw(SPHERE, (1.0, 0.0))


def test_levi_flat_surface_is_degenerate():
    plane = ImplicitHypersurface.from_text("w + wb")
    with pytest.raises(LeviDegenerateError):
        cartan_locus_iw(plane, (0.3 + 0.2j, 0.5j))


def test_reality_on_conjugate_locus(rng):
    chart = get_model("hyperbolic", epsilon=0.5).chart("implicit")
    points = [complex(*rng.normal(size=2)) for _ in range(20)]
    assert chart.surface.check_reality(zip(points, reversed(points))) < 1e-9
    skew = ImplicitHypersurface.from_text("z - zb")
    assert skew.check_reality([(0.3 + 0.4j, 1.0)]) == pytest.approx(0.8)
