"""
Cartan locus invariant I_[w] for a hypersurface 0 = F(z, w, zb, wb).

z, w, zb, wb are four independent complex jet variables (polarization) seeded
at (z0, w0, conj z0, conj w0). With

    h(F) = F_z F_z F_ww - 2 F_z F_w F_zw + F_w F_w F_zz
    l(F) = F_zb F_z F_wwb - F_zb F_w F_zwb - F_wb F_z F_zwb + F_wb F_w F_zzb
    Lbar = -F_wb d/dzb + F_zb d/dwb

and Q = l/F_w^2, R = h/F_w^3, the invariant is I_[w] = 12 F_w^9 (I_1 + ... + I_7).
On {F_w != 0} it vanishes exactly at CR-umbilical points.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Tuple

import numpy as np

from .errors import LeviDegenerateError, OffSurfaceError, VanishingFwError
from .expr_lang import IMPLICIT_VARIABLES, Expr, eval_jet, eval_scalar, parse
from .jet_algebra import Jet, partial_derivative, variable_jets
from .models import ImplicitResult
from .settings import DEFAULT_DEGREE, Tolerances, resolve

logger = logging.getLogger(__name__)

PointZW = Tuple[complex, complex]

Z, W, ZB, WB = 0, 1, 2, 3

# a point this close to the surface (relative to on_surface_tol) is projected instead of rejected
PROJECTION_FACTOR = 100.0


@dataclass(frozen=True)
class ImplicitHypersurface:
    """Real hypersurface 0 = F(z, w, zb, wb); F must be real on zb = conj(z), wb = conj(w)."""
    F: Expr
    params: Mapping[str, complex] = field(default_factory=dict)

    @classmethod
    def from_text(cls, text: str, params: Optional[Mapping[str, complex]] = None) -> "ImplicitHypersurface":
        params = dict(params or {})
        return cls(F=parse(text, IMPLICIT_VARIABLES, params.keys()), params=params)

    @staticmethod
    def _seed(point: PointZW) -> Tuple[complex, complex, complex, complex]:
        z, w = complex(point[0]), complex(point[1])
        return z, w, z.conjugate(), w.conjugate()

    def f_jet(self, point: PointZW, degree: int = DEFAULT_DEGREE) -> Jet:
        jets = variable_jets(self._seed(point), degree, kind="complex")
        return eval_jet(self.F, dict(zip(IMPLICIT_VARIABLES, jets)), self.params)

    def f_value(self, point: PointZW) -> complex:
        return complex(eval_scalar(self.F, dict(zip(IMPLICIT_VARIABLES, self._seed(point))), self.params))

    def check_reality(self, points: Iterable[PointZW]) -> float:
        """Worst |Im F| / max(1, |Re F|) over ``points`` on the conjugate locus."""
        worst = 0.0
        for point in points:
            value = self.f_value(point)
            worst = max(worst, abs(value.imag) / max(1.0, abs(value.real)))
        return worst


def second_order_combinations(f: Jet) -> Tuple[Jet, Jet]:
    """
    The combinations h(F) and l(F), two degrees below ``f``.

    Args:
        f: jet of F in (z, w, zb, wb).

    Returns:
        (h, l) as jets.
    """
    fz = partial_derivative(f, Z)
    fw = partial_derivative(f, W)
    fzb = partial_derivative(f, ZB)
    fwb = partial_derivative(f, WB)
    fzz = partial_derivative(fz, Z)
    fzw = partial_derivative(fz, W)
    fww = partial_derivative(fw, W)
    fwwb = partial_derivative(fw, WB)
    fzwb = partial_derivative(fz, WB)
    fzzb = partial_derivative(fz, ZB)
    d = fzz.degree
    fz, fw, fzb, fwb = (j.truncate(d) for j in (fz, fw, fzb, fwb))
    h = fz * fz * fww - 2.0 * fz * fw * fzw + fw * fw * fzz
    l = fzb * fz * fwwb - fzb * fw * fzwb - fwb * fz * fzwb + fwb * fw * fzzb
    return h, l


class _LbarOperator:
    """Lbar with F_zb, F_wb computed once."""

    def __init__(self, f: Jet) -> None:
        self.fzb = partial_derivative(f, ZB)
        self.fwb = partial_derivative(f, WB)

    def __call__(self, g: Jet) -> Jet:
        d = g.degree - 1
        return -self.fwb.truncate(d) * partial_derivative(g, ZB) + self.fzb.truncate(d) * partial_derivative(g, WB)


def lbar_apply(f: Jet, F: Jet) -> Jet:
    """Lbar(f) = -F_wb f_zb + F_zb f_wb, one degree lower than ``f``."""
    return _LbarOperator(F)(f)


def _project(h: ImplicitHypersurface, point: PointZW, f: Jet) -> PointZW:
    """One Newton step along the conjugate gradient of the real function F."""
    f0 = f.value.real
    gz = partial_derivative(f, Z).value
    gw = partial_derivative(f, W).value
    norm = 2.0 * (abs(gz) ** 2 + abs(gw) ** 2)
    z, w = complex(point[0]), complex(point[1])
    return z - f0 * np.conj(gz) / norm, w - f0 * np.conj(gw) / norm


def _first_order_scale(f: Jet) -> float:
    return max([1.0] + [abs(partial_derivative(f, k).value) for k in range(4)])


def cartan_locus_iw(
    h: ImplicitHypersurface,
    point: PointZW,
    tolerances: Optional[Tolerances] = None,
) -> ImplicitResult:
    """
    Evaluate I_[w] at ``point`` = (z, w).

    Args:
        h: implicit hypersurface.
        point: (z, w) on or within projection distance of the surface.
        tolerances: defaults from ``load_tolerances()``.

    Returns:
        ``ImplicitResult`` with I_[w], the seven terms I_1..I_7 and F_w.
    """
    tol = resolve(tolerances)
    point = (complex(point[0]), complex(point[1]))
    f = h.f_jet(point)
    scale = _first_order_scale(f)
    projected = False
    residual = abs(f.value)
    if residual >= tol.on_surface_tol * scale:
        if residual >= PROJECTION_FACTOR * tol.on_surface_tol * scale:
            raise OffSurfaceError(f"|F| = {residual:.3g} at {point}; point is not on the hypersurface")
        point = _project(h, point, f)
        f = h.f_jet(point)
        projected = True
        logger.warning("Projected near-surface point onto F = 0 (|F| was %.3g, now %.3g)", residual, abs(f.value))

    fw_jet = partial_derivative(f, W)
    fw0 = complex(fw_jet.value)
    if abs(fw0) <= tol.fw_tol:
        raise VanishingFwError(f"F_w = {fw0!r} vanishes at {point}")

    h_jet, l_jet = second_order_combinations(f)
    fw = fw_jet.truncate(h_jet.degree)
    q = l_jet / (fw * fw)
    r = h_jet / (fw * fw * fw)
    if abs(q.value) <= tol.levi_tol:
        raise LeviDegenerateError(f"l(F)/F_w^2 = {q.value!r} vanishes at {point}")

    lbar = _LbarOperator(f)
    q1 = lbar(q)
    q2 = lbar(q1)
    q3 = lbar(q2)
    r1 = lbar(r)
    r2 = lbar(r1)
    r3 = lbar(r2)
    r4 = lbar(r3)

    qv, q1v, q2v, q3v = (complex(j.value) for j in (q, q1, q2, q3))
    r1v, r2v, r3v, r4v = (complex(j.value) for j in (r1, r2, r3, r4))
    terms = [
        qv ** 3 * r4v,
        -6.0 * qv ** 2 * q1v * r3v,
        -4.0 * qv ** 2 * q2v * r2v,
        -(qv ** 2) * q3v * r1v,
        15.0 * qv * q1v ** 2 * r2v,
        10.0 * qv * q1v * q2v * r1v,
        -15.0 * q1v ** 3 * r1v,
    ]
    i_w = 12.0 * fw0 ** 9 * sum(terms)
    logger.debug("implicit invariant at %s: %s (F_w=%s)", point, i_w, fw0)
    return ImplicitResult(
        i_w=i_w,
        terms=terms,
        f_w=fw0,
        point=point,
        f_value=complex(f.value),
        projected=projected,
        l_value=complex(l_jet.value),
    )


__all__ = [
    "PointZW",
    "ImplicitHypersurface",
    "second_order_combinations",
    "lbar_apply",
    "cartan_locus_iw",
]
