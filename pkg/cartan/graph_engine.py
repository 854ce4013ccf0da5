"""
Cartan invariant of a hypersurface graphed as v = phi(x, y, u), with
z = x + iy, w = u + iv.

Pipeline: phi at degree 6 -> Levi factor l at degree 4 -> key function Pbar at
degree 3 -> three applications of L / Lbar -> scalar. The group factor
1/(c cbar^3) is dropped; zero loci are unaffected.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Literal, Mapping, Optional, Protocol, Sequence, Tuple

from .errors import DomainError, ExprEvaluationError, LeviDegenerateError, NonRealLeviFactorError
from .expr_lang import GRAPH_VARIABLES, Expr, eval_jet, eval_scalar, parse, to_text
from .jet_algebra import Jet, partial_derivative, variable_jets
from .models import CartanGraphResult
from .settings import DEFAULT_DEGREE, Tolerances, resolve

logger = logging.getLogger(__name__)

Point3 = Tuple[float, float, float]

X, Y, U = 0, 1, 2


class GraphSource(Protocol):
    """Anything that yields the jet of a graphing function v = phi(x, y, u)."""

    def phi_jet(self, point: Point3, degree: int) -> Jet: ...

    def phi_value(self, point: Point3) -> float: ...

    def check_domain(self, point: Point3, margin: float) -> None: ...


@dataclass(frozen=True)
class GraphHypersurface:
    """Graph v = phi(x, y, u); admissible where every domain expression exceeds the margin."""
    phi: Expr
    params: Mapping[str, float] = field(default_factory=dict)
    domain: Tuple[Expr, ...] = ()

    @classmethod
    def from_text(
        cls,
        phi: str,
        params: Optional[Mapping[str, float]] = None,
        domain: Sequence[str] = (),
    ) -> "GraphHypersurface":
        params = dict(params or {})
        return cls(
            phi=parse(phi, GRAPH_VARIABLES, params.keys()),
            params=params,
            domain=tuple(parse(text, GRAPH_VARIABLES, params.keys()) for text in domain),
        )

    def _bindings(self, point: Point3) -> Dict[str, float]:
        return dict(zip(GRAPH_VARIABLES, (float(c) for c in point)))

    def is_admissible(self, point: Point3, margin: float = 0.0) -> bool:
        try:
            self.check_domain(point, margin)
        except DomainError:
            return False
        return True

    def check_domain(self, point: Point3, margin: float) -> None:
        bindings = self._bindings(point)
        for predicate in self.domain:
            try:
                value = eval_scalar(predicate, bindings, self.params)
            except ExprEvaluationError as exc:
                raise DomainError(f"domain predicate '{to_text(predicate)}' failed: {exc}") from exc
            if not value.real > margin:
                raise DomainError(f"point {tuple(point)} outside chart domain: '{to_text(predicate)}' = {value.real:.3g}")

    def phi_value(self, point: Point3) -> float:
        return float(eval_scalar(self.phi, self._bindings(point), self.params).real)

    def phi_jet(self, point: Point3, degree: int = DEFAULT_DEGREE) -> Jet:
        jets = variable_jets([float(c) for c in point], degree)
        return eval_jet(self.phi, dict(zip(GRAPH_VARIABLES, jets)), self.params)


@dataclass(frozen=True)
class _GraphFrame:
    phi: Jet
    a: Jet
    abar: Jet
    levi: Jet
    levi_value: float


def _z(f: Jet) -> Jet:
    return 0.5 * (partial_derivative(f, X) - 1j * partial_derivative(f, Y))


def _zbar(f: Jet) -> Jet:
    return 0.5 * (partial_derivative(f, X) + 1j * partial_derivative(f, Y))


def _levi_jet(phi: Jet) -> Tuple[Jet, Jet, Jet]:
    """Return (l, A, Abar); l at degree phi.degree - 2, A and Abar at phi.degree - 1."""
    px = partial_derivative(phi, X)
    py = partial_derivative(phi, Y)
    pu = partial_derivative(phi, U)
    pz = 0.5 * (px - 1j * py)
    pzb = 0.5 * (px + 1j * py)
    a = -pz / (1j + pu)
    abar = -pzb / (-1j + pu)

    pzzb = 0.25 * (partial_derivative(px, X) + partial_derivative(py, Y))
    pzu = partial_derivative(pz, U)
    pzbu = partial_derivative(pzb, U)
    puu = partial_derivative(pu, U)
    d = pzzb.degree
    pz, pzb, pu = pz.truncate(d), pzb.truncate(d), pu.truncate(d)

    one_plus = 1.0 + pu * pu
    bracket = (
        pzzb * one_plus
        - 1j * pzb * pzu
        + 1j * pz * pzbu
        - pzb * pzu * pu
        - pz * pzbu * pu
        + pz * pzb * puu
    )
    return 2.0 * bracket / (one_plus * one_plus), a, abar


def _frame(source: GraphSource, point: Point3, tol: Tolerances, degree: int = DEFAULT_DEGREE) -> _GraphFrame:
    source.check_domain(point, tol.domain_margin)
    phi = source.phi_jet(point, degree).as_complex()
    levi, a, abar = _levi_jet(phi)
    value = levi.value
    if abs(value.imag) > tol.levi_real_tol * (1.0 + abs(value.real)):
        raise NonRealLeviFactorError(f"Levi factor {value!r} is not real at {tuple(point)}")
    levi = levi.real_part().as_complex()
    return _GraphFrame(phi=phi, a=a, abar=abar, levi=levi, levi_value=float(value.real))


def levi_factor(h: GraphSource, point: Point3, tolerances: Optional[Tolerances] = None) -> float:
    """
    Levi factor l of the graph at ``point``.

    Args:
        h: graph source.
        point: (x, y, u).
        tolerances: defaults from ``load_tolerances()``.

    Returns:
        Real l; a residual imaginary part beyond tolerance raises ``NonRealLeviFactorError``.
    """
    return _frame(h, point, resolve(tolerances), degree=2).levi_value


def _pbar_from_frame(frame: _GraphFrame, tol: Tolerances, point: Point3) -> Jet:
    if abs(frame.levi_value) <= tol.levi_tol:
        raise LeviDegenerateError(f"Levi factor {frame.levi_value:.3g} vanishes at {tuple(point)}")
    levi = frame.levi
    d = levi.degree - 1
    levi_zb = _zbar(levi)
    levi_u = partial_derivative(levi, U)
    abar_u = partial_derivative(frame.abar, U).truncate(d)
    abar = frame.abar.truncate(d)
    levi_d = levi.truncate(d)
    # lbar = l since l is real
    return (levi_zb - levi_d * abar_u + abar * levi_u) / levi_d


def pbar_jet(h: GraphSource, point: Point3, tolerances: Optional[Tolerances] = None) -> Jet:
    tol = resolve(tolerances)
    return _pbar_from_frame(_frame(h, point, tol), tol, point)


def key_function_pbar(h: GraphSource, point: Point3, tolerances: Optional[Tolerances] = None) -> complex:
    """Value of Pbar = (l_zb - l Abar_u + Abar l_u) / l at ``point``."""
    return complex(pbar_jet(h, point, tolerances).value)


def apply_vector_field(which: Literal["L", "Lbar"], f: Jet, a: Jet, abar: Jet) -> Jet:
    """
    L(f) = f_z + A f_u  or  Lbar(f) = f_zb + Abar f_u.

    Args:
        which: "L" or "Lbar".
        f: field over (x, y, u), degree >= 1.
        a: coefficient A of L (degree >= f.degree - 1).
        abar: coefficient Abar of Lbar.

    Returns:
        Jet one degree lower than ``f``.
    """
    f = f.as_complex()
    if which == "L":
        return _z(f) + a.truncate(f.degree - 1) * partial_derivative(f, U)
    if which == "Lbar":
        return _zbar(f) + abar.truncate(f.degree - 1) * partial_derivative(f, U)
    raise ValueError(f"unknown vector field {which!r}")


def commutator_levi_coefficient(h: GraphSource, point: Point3, tolerances: Optional[Tolerances] = None) -> complex:
    """d/du coefficient of i[L, Lbar], i.e. i (L(Abar) - Lbar(A))."""
    tol = resolve(tolerances)
    frame = _frame(h, point, tol, degree=3)
    a, abar = frame.a, frame.abar
    bracket = apply_vector_field("L", abar, a, abar) - apply_vector_field("Lbar", a, a, abar)
    return complex(1j * bracket.value)


def cartan_invariant_graph(
    h: GraphSource,
    point: Point3,
    tolerances: Optional[Tolerances] = None,
) -> CartanGraphResult:
    """
    Evaluate the Cartan invariant J of the graph at ``point``.

    J = (1/6) [ -2 Lbar L Lbar P + 3 Lbar Lbar L P - 7 P Lbar L P
                + 4 P L Lbar P - L P * Lbar P + 2 P^2 L P ],  P = Pbar.

    Args:
        h: graph source (``GraphHypersurface`` or any ``GraphSource``).
        point: (x, y, u) inside the chart domain.
        tolerances: defaults from ``load_tolerances()``.

    Returns:
        ``CartanGraphResult`` with the invariant, Levi factor, Pbar and the six terms.
    """
    tol = resolve(tolerances)
    point = tuple(float(c) for c in point)
    frame = _frame(h, point, tol)
    p = _pbar_from_frame(frame, tol, point)
    a, abar = frame.a, frame.abar

    def L(f: Jet) -> Jet:
        return apply_vector_field("L", f, a, abar)

    def Lb(f: Jet) -> Jet:
        return apply_vector_field("Lbar", f, a, abar)

    lp = L(p)
    lbp = Lb(p)
    lb_lp = Lb(lp)
    l_lbp = L(lbp)
    lb_l_lbp = Lb(l_lbp)
    lb_lb_lp = Lb(lb_lp)

    pv = complex(p.value)
    terms = [
        -2.0 * lb_l_lbp.value,
        3.0 * lb_lb_lp.value,
        -7.0 * pv * lb_lp.value,
        4.0 * pv * l_lbp.value,
        -lp.value * lbp.value,
        2.0 * pv * pv * lp.value,
    ]
    terms = [complex(t) / 6.0 for t in terms]
    j_star = sum(terms)
    logger.debug("graph invariant at %s: %s (levi=%.6g)", point, j_star, frame.levi_value)
    return CartanGraphResult(
        j_star=j_star,
        levi_factor=frame.levi_value,
        pbar_value=pv,
        point=point,
        terms=terms,
        phi_value=float(frame.phi.value.real),
    )


__all__ = [
    "Point3",
    "GraphSource",
    "GraphHypersurface",
    "levi_factor",
    "pbar_jet",
    "key_function_pbar",
    "apply_vector_field",
    "commutator_levi_coefficient",
    "cartan_invariant_graph",
]
