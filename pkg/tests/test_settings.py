import pytest
from pydantic import ValidationError

from cartan.settings import Tolerances, load_tolerances, resolve


@pytest.fixture
def fresh_tolerances():
    load_tolerances.cache_clear()
    yield
    load_tolerances.cache_clear()


def test_defaults():
    tol = Tolerances()
    assert tol.levi_tol == 1e-10
    assert tol.on_surface_tol == 1e-8
    assert tol.zero_threshold == 1e-7


def test_environment_override(monkeypatch, fresh_tolerances):
    monkeypatch.setenv("CARTAN_LEVI_TOL", "1e-12")
    monkeypatch.setenv("CARTAN_DOMAIN_MARGIN", " ")
    tol = load_tolerances()
    assert tol.levi_tol == 1e-12
    assert tol.domain_margin == 1e-6


def test_invalid_override(monkeypatch, fresh_tolerances):
    monkeypatch.setenv("CARTAN_FW_TOL", "-1")
    with pytest.raises(ValidationError):
        load_tolerances()


def test_resolve_prefers_explicit():
    explicit = Tolerances(zero_threshold=1e-3)
    assert resolve(explicit) is explicit
    assert isinstance(resolve(None), Tolerances)
