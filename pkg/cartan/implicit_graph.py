"""
Graphing function recovered from an implicit defining function.

For F(z, w, zb, wb) in the graph convention z = x + iy, w = u + iv, the real
function G(x, y, u, v) = F(x+iy, u+iv, x-iy, u-iv) vanishes on the surface.
``ImplicitGraph`` solves G(x, y, u, phi) = 0 for the jet of phi, which lets
implicit-only models feed the graph engine.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from scipy.optimize import brentq

from .errors import CartanError, DomainError, ExprEvaluationError
from .expr_lang import GRAPH_VARIABLES, IMPLICIT_VARIABLES, Expr, eval_jet, eval_scalar, parse, to_text
from .implicit_engine import ImplicitHypersurface
from .jet_algebra import Jet, constant_jet, make_variable_jet, variable_jets
from .settings import DEFAULT_DEGREE

logger = logging.getLogger(__name__)

Point3 = Tuple[float, float, float]


@dataclass(frozen=True)
class ImplicitGraph:
    """
    Graph source v = phi(x, y, u) defined by G(x, y, u, phi) = 0.

    The root is taken in ``bracket`` and G must change sign across it. ``domain``
    holds predicates over (x, y, u) in the surface parameters; a point is
    admissible where each exceeds the margin and G_v does not vanish.
    """
    surface: ImplicitHypersurface
    bracket: Tuple[float, float] = (0.0, 1.0)
    min_slope: float = field(default=1e-10)
    domain: Tuple[Expr, ...] = ()

    @classmethod
    def with_domain(
        cls,
        surface: ImplicitHypersurface,
        domain: Sequence[str],
        bracket: Tuple[float, float] = (0.0, 1.0),
        min_slope: float = 1e-10,
    ) -> "ImplicitGraph":
        predicates = tuple(parse(text, GRAPH_VARIABLES, surface.params.keys()) for text in domain)
        return cls(surface, bracket=bracket, min_slope=min_slope, domain=predicates)

    def _g(self, point: Point3, v: float) -> float:
        x, y, u = point
        values = (complex(x, y), complex(u, v), complex(x, -y), complex(u, -v))
        return float(eval_scalar(self.surface.F, dict(zip(IMPLICIT_VARIABLES, values)), self.surface.params).real)

    def solve_v(self, point: Point3) -> float:
        lo, hi = self.bracket
        try:
            g_lo, g_hi = self._g(point, lo), self._g(point, hi)
            if not g_lo * g_hi < 0:
                raise DomainError(
                    f"G does not change sign on v in {self.bracket} over {tuple(point)} (G = {g_lo:.3g}, {g_hi:.3g})"
                )
            return float(brentq(lambda v: self._g(point, v), lo, hi, xtol=1e-15))
        except DomainError:
            raise
        except (CartanError, RuntimeError, ValueError) as exc:
            raise DomainError(f"no graph value v over {tuple(point)}: {exc}") from exc

    def phi_value(self, point: Point3) -> float:
        return self.solve_v(point)

    def is_admissible(self, point: Point3, margin: float = 0.0) -> bool:
        try:
            self.check_domain(point, margin)
        except DomainError:
            return False
        return True

    def check_domain(self, point: Point3, margin: float) -> None:
        point = tuple(float(c) for c in point)
        bindings: Dict[str, float] = dict(zip(GRAPH_VARIABLES, point))
        for predicate in self.domain:
            try:
                value = eval_scalar(predicate, bindings, self.surface.params)
            except ExprEvaluationError as exc:
                raise DomainError(f"domain predicate '{to_text(predicate)}' failed: {exc}") from exc
            if not value.real > margin:
                raise DomainError(f"point {point} outside chart domain: '{to_text(predicate)}' = {value.real:.3g}")
        self._slope(point, self.solve_v(point))

    def _slope(self, point: Point3, v0: float) -> float:
        """G_v at the base point, from a one-variable degree-1 jet in v."""
        x, y, u = point
        t = make_variable_jet(0, complex(v0), 1, 1, kind="complex")
        bindings = {
            "z": constant_jet(complex(x, y), 1, 1),
            "w": complex(u) + 1j * t,
            "zb": constant_jet(complex(x, -y), 1, 1),
            "wb": complex(u) - 1j * t,
        }
        slope = eval_jet(self.surface.F, bindings, self.surface.params).coefficient((1,)).real
        if abs(slope) <= self.min_slope:
            raise DomainError(f"G_v = {slope:.3g} vanishes over {tuple(point)}; surface is not a v-graph there")
        return slope

    def phi_jet(self, point: Point3, degree: int = DEFAULT_DEGREE) -> Jet:
        point = tuple(float(c) for c in point)
        v0 = self.solve_v(point)
        slope = self._slope(point, v0)
        x, y, u = (j.as_complex() for j in variable_jets(point, degree))
        z, zb = x + 1j * y, x - 1j * y
        phi = constant_jet(v0, 3, degree)
        # chord iteration: each pass fixes at least one more degree
        for _ in range(degree + 1):
            phi_c = phi.as_complex()
            bindings = {"z": z, "w": u + 1j * phi_c, "zb": zb, "wb": u - 1j * phi_c}
            g = eval_jet(self.surface.F, bindings, self.surface.params).real_part()
            phi = phi - g / slope
        return phi


__all__ = ["ImplicitGraph"]
