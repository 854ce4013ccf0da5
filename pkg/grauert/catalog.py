"""
Model catalog: hypersurfaces of the Grauert-tube gallery with their charts.

Each entry provides:
  - id and kind (graph | implicit | both)
  - parameters with admissible ranges
  - charts (graph charts v = phi(x, y, u), implicit charts F = 0 with a
    coordinate parametrization of on-surface points)
  - level convention of the tube ("rho = eps" intrinsic, "rho = eps^2" extrinsic)
  - links between a graph chart and an implicit chart for cross checks
"""
from __future__ import annotations

import inspect
import math
from dataclasses import dataclass, field
from functools import partial
from typing import Callable, Dict, List, Literal, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from scipy.optimize import brentq

from cartan.errors import DomainError, ExprEvaluationError, ModelNotFoundError
from cartan.expr_lang import GRAPH_VARIABLES, Expr, eval_scalar, parse, to_text
from cartan.graph_engine import GraphHypersurface, GraphSource, Point3, cartan_invariant_graph
from cartan.implicit_engine import ImplicitHypersurface, PointZW, cartan_locus_iw
from cartan.implicit_graph import ImplicitGraph
from cartan.models import CartanGraphResult, ImplicitResult
from cartan.settings import Tolerances

from .distances import canonical_kind, product_rho
from .potentials import EPS_MAX, eps_reparam, eps_reparam_inverse, level_coefficients

DEFAULT_EPSILON = 0.5
DEFAULT_PRODUCT_EPS = 0.3
DEFAULT_TORUS_EPS = 0.5
DEFAULT_SPHERE_TUBE_EPS = 0.1
SPHERE_TUBE_EPS_MAX = 0.25
# -F at v = 0 over (x, y, u); F > 0 at v = 1 whenever eps < 0.25, so this
# is exactly where the v-graph has a root in (0, 1)
SPHERE_TUBE_GRAPH_DOMAIN = "cosh(sqrt(eps)) - x^2 - y^2 - u^2 - sqrt((1 - x^2 + y^2 - u^2)^2 + 4*x^2*y^2)"

LEVEL_INTRINSIC = "rho = eps"
LEVEL_EXTRINSIC = "rho = eps^2"

ChartKind = Literal["graph", "implicit"]


def _check_predicates(predicates: Sequence[Expr], bindings: Mapping[str, float], params: Mapping[str, float], margin: float) -> None:
    for predicate in predicates:
        try:
            value = eval_scalar(predicate, bindings, params)
        except ExprEvaluationError as exc:
            raise DomainError(f"domain predicate '{to_text(predicate)}' failed: {exc}") from exc
        if not value.real > margin:
            raise DomainError(
                f"point {tuple(bindings.values())} outside chart domain: '{to_text(predicate)}' = {value.real:.3g}"
            )


@dataclass(frozen=True)
class Chart:
    """
    One coordinate description of a model surface.

    Graph charts are evaluated by the graph engine at (x, y, u); their domain
    lives on the graph source. Implicit charts carry ``coords`` for grids, a
    ``domain`` over those coords and ``parametrize`` mapping coords to an
    on-surface point (z, w).
    """
    name: str
    kind: ChartKind
    surface: Union[GraphSource, ImplicitHypersurface]
    coords: Tuple[str, ...] = GRAPH_VARIABLES
    domain: Tuple[Expr, ...] = ()
    domain_params: Mapping[str, float] = field(default_factory=dict)
    parametrize: Optional[Callable[[Sequence[float]], PointZW]] = None
    description: str = ""

    def check_domain(self, coords: Sequence[float], margin: float) -> None:
        coords = tuple(float(c) for c in coords)
        if self.kind == "graph":
            self.surface.check_domain(coords, margin)
            return
        _check_predicates(self.domain, dict(zip(self.coords, coords)), self.domain_params, margin)

    def is_admissible(self, coords: Sequence[float], margin: float = 0.0) -> bool:
        try:
            self.check_domain(coords, margin)
        except DomainError:
            return False
        return True

    def surface_point(self, coords: Sequence[float]) -> PointZW:
        """On-surface (z, w) of an implicit chart."""
        if self.parametrize is None:
            raise DomainError(f"chart '{self.name}' has no parametrization")
        try:
            return self.parametrize(tuple(float(c) for c in coords))
        except (ValueError, RuntimeError) as exc:
            if isinstance(exc, DomainError):
                raise
            raise DomainError(f"chart '{self.name}' cannot place {tuple(coords)} on the surface: {exc}") from exc

    def evaluate(
        self, coords: Sequence[float], tolerances: Optional[Tolerances] = None
    ) -> Union[CartanGraphResult, ImplicitResult]:
        if self.kind == "graph":
            return cartan_invariant_graph(self.surface, tuple(coords), tolerances)
        return cartan_locus_iw(self.surface, self.surface_point(coords), tolerances)


@dataclass(frozen=True)
class ChartLink:
    """Maps a graph chart point (x, y, u) with graph value v to (z, w) of an implicit chart."""
    graph_chart: str
    implicit_chart: str
    to_implicit: Callable[[Point3, float], PointZW]
    sampler: Callable[[np.random.Generator], Point3]


@dataclass(frozen=True)
class ModelEntry:
    id: str
    kind: Literal["graph", "implicit", "both"]
    parameters: Mapping[str, float]
    ranges: Mapping[str, Tuple[float, float]]
    charts: Mapping[str, Chart]
    level: str
    notes: str = ""
    links: Tuple[ChartLink, ...] = ()
    metadata: Mapping[str, str] = field(default_factory=dict)

    @property
    def default_chart(self) -> str:
        return next(iter(self.charts))

    def chart(self, name: Optional[str] = None) -> Chart:
        name = name or self.default_chart
        if name not in self.charts:
            raise ModelNotFoundError(f"Chart '{name}' not found in model '{self.id}'; available: {', '.join(self.charts)}")
        return self.charts[name]

    def link(self, chart_name: Optional[str] = None) -> ChartLink:
        for link in self.links:
            if chart_name is None or chart_name in (link.graph_chart, link.implicit_chart):
                return link
        where = f" for chart '{chart_name}'" if chart_name else ""
        raise ModelNotFoundError(f"Model '{self.id}' has no graph/implicit link{where}")

    def describe(self) -> str:
        params = ", ".join(f"{k}={v:.6g}" for k, v in self.parameters.items()) or "-"
        ranges = ", ".join(f"{k} in ({lo:.6g}, {hi:.6g})" for k, (lo, hi) in self.ranges.items())
        lines = [f"{self.id} [{self.kind}] level: {self.level}", f"  parameters: {params}"]
        if ranges:
            lines.append(f"  ranges: {ranges}")
        for chart in self.charts.values():
            lines.append(f"  chart {chart.name} ({chart.kind}, coords {','.join(chart.coords)}): {chart.description}")
        if self.notes:
            lines.append(f"  notes: {self.notes}")
        return "\n".join(lines)


def _check_range(name: str, value: float, lo: float, hi: float) -> float:
    value = float(value)
    if not lo < value < hi:
        raise DomainError(f"{name} must lie in ({lo:.6g}, {hi:.6g}), got {value!r}")
    return value


def _graph_chart(name: str, phi: str, params: Mapping[str, float], domain: Sequence[str], description: str) -> Chart:
    return Chart(
        name=name,
        kind="graph",
        surface=GraphHypersurface.from_text(phi, params, domain),
        description=description or f"v = {phi}",
    )


def _implicit_chart(
    name: str,
    F: str,
    params: Mapping[str, float],
    coords: Tuple[str, ...],
    domain: Sequence[str],
    parametrize: Callable[[Sequence[float]], PointZW],
    description: str,
) -> Chart:
    return Chart(
        name=name,
        kind="implicit",
        surface=ImplicitHypersurface.from_text(F, params),
        coords=coords,
        domain=tuple(parse(text, coords, params.keys()) for text in domain),
        domain_params=dict(params),
        parametrize=parametrize,
        description=description or f"F = {F}",
    )


def _graph_to_implicit(point: Point3, v: float) -> PointZW:
    """Same complex structure: z = x + iy, w = u + iv."""
    x, y, u = point
    return complex(x, y), complex(u, v)


# --------------------------------------------------------------------------- gallery extras


def heisenberg() -> ModelEntry:
    return ModelEntry(
        id="heisenberg",
        kind="graph",
        parameters={},
        ranges={},
        charts={"v-graph": _graph_chart("v-graph", "x^2 + y^2", {}, (), "v = x^2 + y^2 (flat model)")},
        level="v = |z|^2",
        notes="Every point is CR-umbilical.",
    )


def unit_sphere() -> ModelEntry:
    def on_sphere(c: Sequence[float]) -> PointZW:
        x, y, u = c
        return complex(x, y), complex(u, math.sqrt(1.0 - x * x - y * y - u * u))

    def sampler(rng: np.random.Generator) -> Point3:
        return tuple(rng.uniform(-0.55, 0.55, 3))

    radicand = "1 - x^2 - y^2 - u^2"
    return ModelEntry(
        id="unit-sphere",
        kind="both",
        parameters={},
        ranges={},
        charts={
            "v-graph": _graph_chart("v-graph", f"sqrt({radicand})", {}, (radicand,), "upper hemisphere v > 0"),
            "implicit": _implicit_chart(
                "implicit", "z*zb + w*wb - 1", {}, GRAPH_VARIABLES, (radicand,), on_sphere, "F = |z|^2 + |w|^2 - 1"
            ),
        },
        level="|z|^2 + |w|^2 = 1",
        notes="Every point is CR-umbilical.",
        links=(ChartLink("v-graph", "implicit", _graph_to_implicit, sampler),),
    )


# --------------------------------------------------------------------------- hyperbolic tube


def hyperbolic_tube(eps: Optional[float] = None, epsilon: Optional[float] = None) -> ModelEntry:
    """
    Boundary {rho = eps} of the Grauert tube of the hyperbolic plane.

    Charts use z = u + iv, w = x + iy. Either ``eps`` (tube radius) or the
    normalized ``epsilon`` = eps_reparam(eps) may be given; default epsilon = 0.5.

    Args:
        eps: radius in (0, (pi/2)^2).
        epsilon: normalized parameter in (0, 1).

    Returns:
        ``ModelEntry`` with v-graph, y-graph, implicit and implicit-original charts.
    """
    if eps is not None and epsilon is not None:
        raise DomainError("give either eps or epsilon, not both")
    if eps is None:
        epsilon = _check_range("epsilon", DEFAULT_EPSILON if epsilon is None else epsilon, 0.0, 1.0)
        eps = eps_reparam_inverse(epsilon)
    else:
        eps = _check_range("eps", eps, 0.0, EPS_MAX)
        epsilon = eps_reparam(eps)
    a, b = level_coefficients(eps)
    e2 = epsilon * epsilon
    params = {"epsilon": epsilon}

    def on_normalized(c: Sequence[float]) -> PointZW:
        x, y, u = c
        return complex(u, math.sqrt(e2 * x * x - y * y)), complex(x, y)

    def on_original(c: Sequence[float]) -> PointZW:
        x, y, u = c
        return complex(u, math.sqrt(a * x * x - b * y * y)), complex(x, y)

    def v_graph_to_implicit(point: Point3, v: float) -> PointZW:
        x, y, u = point
        return complex(u, v), complex(x, y)

    def sample_cone(rng: np.random.Generator) -> Point3:
        x = rng.uniform(0.5, 3.0)
        return x, epsilon * x * rng.uniform(-0.9, 0.9), rng.uniform(-1.0, 1.0)

    def sample_y_graph(rng: np.random.Generator) -> Point3:
        x, y, u = sample_cone(rng)
        return u, y, x

    charts = {
        "v-graph": _graph_chart(
            "v-graph",
            "sqrt(epsilon^2*x^2 - y^2)",
            params,
            ("x", "epsilon^2*x^2 - y^2"),
            "v = sqrt(epsilon^2 x^2 - y^2), x > 0",
        ),
        "y-graph": _graph_chart(
            "y-graph",
            "sqrt(epsilon^2*u^2 - y^2)",
            params,
            ("u", "epsilon^2*u^2 - y^2"),
            "y = sqrt(epsilon^2 x^2 - v^2) graphed over chart coordinates (x, y, u) = (u, v, x)",
        ),
        "implicit": _implicit_chart(
            "implicit",
            "(z - zb)^2 + (1 + epsilon^2)*(w^2 + wb^2) - 2*(1 - epsilon^2)*w*wb",
            params,
            GRAPH_VARIABLES,
            ("x", "epsilon^2*x^2 - y^2"),
            on_normalized,
            "normalized boundary v^2 - epsilon^2 x^2 + y^2 = 0 at (u + iv, x + iy)",
        ),
        "implicit-original": _implicit_chart(
            "implicit-original",
            "(z - zb)^2 + a*(w + wb)^2 + b*(w - wb)^2",
            {"a": a, "b": b},
            GRAPH_VARIABLES,
            ("x", "a*x^2 - b*y^2"),
            on_original,
            "level set 2v^2 - (1 - cos sqrt(eps)) x^2 + (1 + cos sqrt(eps)) y^2 = 0",
        ),
    }
    return ModelEntry(
        id="hyperbolic",
        kind="both",
        parameters={"eps": eps, "epsilon": epsilon},
        ranges={"eps": (0.0, EPS_MAX), "epsilon": (0.0, 1.0)},
        charts=charts,
        level=LEVEL_INTRINSIC,
        notes=(
            "Charts use z = u + iv, w = x + iy. implicit-original maps onto implicit by "
            "w -> sqrt((1 + cos sqrt(eps))/2) w (normalize_point). "
            "Graph closed forms are for the bracket 6 J: v-graph -(9/16)(1 - epsilon^4) z^2 / "
            "((epsilon^2 x^2 - y^2)^2 zb^2). The implicit F equals -4 (v^2 - epsilon^2 x^2 + y^2) and "
            "I_[w] has degree 16 in F, so I_[w] = 2^32 (27/64) epsilon^8 (1 - epsilon^4) wb^2 w^6."
        ),
        links=(
            ChartLink("v-graph", "implicit", v_graph_to_implicit, sample_cone),
            ChartLink("y-graph", "implicit", _graph_to_implicit, sample_y_graph),
        ),
    )


def hyperbolic_tube_normalized(epsilon: float = DEFAULT_EPSILON) -> ModelEntry:
    return hyperbolic_tube(epsilon=epsilon)


# --------------------------------------------------------------------------- torus tubes


def torus_tubes(case: int, alpha: float = 0.0, beta: float = 0.0, eps: float = DEFAULT_TORUS_EPS) -> ModelEntry:
    """
    Tubes of radius eps around the totally real tori of the flat product.

    Case 1: v = beta u - (beta^2 + 1) sqrt(eps^2 - (alpha x - y)^2 / (alpha^2 + 1)^2)
    Case 2: v = beta u - (beta^2 + 1) sqrt(eps^2 - x^2)
    Case 3: x^2 + u^2 = eps^2, parametrized by (t, y, v) with x = eps cos t, u = eps sin t
    """
    eps = _check_range("eps", eps, 0.0, math.inf)
    if case == 1:
        params = {"alpha": float(alpha), "beta": float(beta), "eps": eps}
        radicand = "eps^2 - (alpha*x - y)^2/(alpha^2 + 1)^2"
        chart = _graph_chart("v-graph", f"beta*u - (beta^2 + 1)*sqrt({radicand})", params, (radicand,), "")
        kind = "graph"
        notes = "Invariant nowhere vanishing; only that property is checked."
    elif case == 2:
        params = {"beta": float(beta), "eps": eps}
        radicand = "eps^2 - x^2"
        chart = _graph_chart("v-graph", f"beta*u - (beta^2 + 1)*sqrt({radicand})", params, (radicand,), "")
        kind = "graph"
        notes = (
            "J = 3 / (32 (eps^2 - x^2)^2), independent of beta; nowhere vanishing. "
            "The quoted closed form 9 (beta^2 + 1)^16 eps^8 / (x^2 - eps^2)^8 does not reproduce "
            "from the six-term bracket and is not asserted."
        )
    elif case == 3:
        params = {"eps": eps}

        def on_cylinder(c: Sequence[float]) -> PointZW:
            t, y, v = c
            return complex(eps * math.cos(t), y), complex(eps * math.sin(t), v)

        chart = _implicit_chart(
            "implicit",
            "((z + zb)/2)^2 + ((w + wb)/2)^2 - eps^2",
            params,
            ("t", "y", "v"),
            ("sin(t)^2",),
            on_cylinder,
            "x^2 + u^2 = eps^2 with x = eps cos t, u = eps sin t; F_w = u must not vanish",
        )
        kind = "implicit"
        notes = "Invariant nowhere vanishing where F_w != 0."
    else:
        raise DomainError(f"torus case must be 1, 2 or 3, got {case!r}")
    return ModelEntry(
        id=f"torus-case{case}",
        kind=kind,
        parameters=params,
        ranges={"eps": (0.0, math.inf)},
        charts={chart.name: chart},
        level=LEVEL_EXTRINSIC,
        notes=notes,
    )


def torus_case1(alpha: float = 0.0, beta: float = 0.0, eps: float = DEFAULT_TORUS_EPS) -> ModelEntry:
    return torus_tubes(1, alpha=alpha, beta=beta, eps=eps)


def torus_case2(beta: float = 0.0, eps: float = DEFAULT_TORUS_EPS) -> ModelEntry:
    return torus_tubes(2, beta=beta, eps=eps)


def torus_case3(eps: float = DEFAULT_TORUS_EPS) -> ModelEntry:
    return torus_tubes(3, eps=eps)


# --------------------------------------------------------------------------- product tubes

PRODUCT_KINDS = ("flat", "ell", "hyp")
TABLE_ROWS = {("flat", "flat"), ("ell", "flat"), ("hyp", "flat"), ("hyp", "hyp"), ("ell", "hyp"), ("ell", "ell")}

# squared distances to the totally real set, analytic across it
_SQUARED_DISTANCE = {
    "flat": "y^2",
    "elliptic": "arcsin(y/sqrt(1 + x^2 + y^2))^2",
    "hyperbolic": "arcsinh(x/y)^2",
}
_LEFT_DOMAIN = {"hyperbolic": ("y",)}
_RIGHT_GRAPH = {
    "flat": "{R}",
    "hyperbolic": "u/sinh({R})",
    "elliptic": "sqrt(1 + u^2)*sin({R})/cos({R})",
}
_RIGHT_DOMAIN = {"hyperbolic": ("u",)}
_ELL_ELL_PRINTED = "(1 + sqrt(1 - 4*(1 + u^2)*sin({R})^2))/(2*sin({R}))"
_SHORT_NAMES = {"flat": "flat", "elliptic": "ell", "hyperbolic": "hyp"}


def product_tube(left: str, right: str, eps: float = DEFAULT_PRODUCT_EPS) -> ModelEntry:
    """
    Boundary rho = d_left((x, y))^2 + d_right((u, v))^2 = eps^2 of a product tube, graphed for v.

    With R = sqrt(eps^2 - d_left^2): right flat gives v = R, right hyperbolic
    v = u / sinh R, right elliptic v = sqrt(1 + u^2) tan R.

    Args:
        left: flat | ell | hyp metric on the (x, y) factor.
        right: flat | ell | hyp metric on the (u, v) factor.
        eps: tube radius.

    Returns:
        ``ModelEntry`` with a ``v-graph`` chart (ell-ell also carries ``v-graph-derived``).
    """
    left_kind, right_kind = canonical_kind(left), canonical_kind(right)
    left, right = _SHORT_NAMES[left_kind], _SHORT_NAMES[right_kind]
    eps = _check_range("eps", eps, 0.0, math.inf)
    params = {"eps": eps}
    radicand = f"eps^2 - {_SQUARED_DISTANCE[left_kind]}"
    radius = f"sqrt({radicand})"
    domain = _LEFT_DOMAIN.get(left_kind, ()) + (radicand,) + _RIGHT_DOMAIN.get(right_kind, ())

    charts: Dict[str, Chart] = {}
    if (left, right) == ("ell", "ell"):
        printed = _ELL_ELL_PRINTED.format(R=radius)
        charts["v-graph"] = _graph_chart(
            "v-graph",
            printed,
            params,
            domain + (f"1 - 4*(1 + u^2)*sin({radius})^2",),
            "printed table row v = (1 + sqrt(1 - 4 (1 + u^2) sin^2 E)) / (2 sin E)",
        )
        charts["v-graph-derived"] = _graph_chart(
            "v-graph-derived", _RIGHT_GRAPH["elliptic"].format(R=radius), params, domain, "v = sqrt(1 + u^2) tan E"
        )
        notes = "Printed row could not be re-derived; its residual against rho is diagnostic only."
    else:
        charts["v-graph"] = _graph_chart("v-graph", _RIGHT_GRAPH[right_kind].format(R=radius), params, domain, "")
        notes = "Table row (squared distance form)." if (left, right) in TABLE_ROWS else "Same rule; not a table row."

    return ModelEntry(
        id=f"product-{left}-{right}",
        kind="graph",
        parameters=params,
        ranges={"eps": (0.0, math.inf)},
        charts=charts,
        level=LEVEL_EXTRINSIC,
        notes=notes,
        metadata={"left": left_kind, "right": right_kind},
    )


def product_residual(entry: ModelEntry, point: Sequence[float], chart: Optional[str] = None) -> float:
    """rho(x, y, u, phi(x, y, u)) - eps^2 for a product tube graph."""
    if "left" not in entry.metadata:
        raise DomainError(f"model '{entry.id}' is not a product tube")
    x, y, u = (float(c) for c in point)
    v = entry.chart(chart).surface.phi_value((x, y, u))
    eps = entry.parameters["eps"]
    return product_rho(entry.metadata["left"], entry.metadata["right"], x, y, u, v) - eps * eps


# --------------------------------------------------------------------------- sphere tube


def sphere_tube(eps: float = DEFAULT_SPHERE_TUBE_EPS, max_eps: float = SPHERE_TUBE_EPS_MAX) -> ModelEntry:
    """
    Tube {rho = eps} around the real 2-sphere, rho = arccosh(|z1|^2 + |z2|^2 + |z3|^2)^2,
    in the chart z3 = sqrt(1 - z1^2 - z2^2) (principal branch) with z1 -> z, z2 -> w.

    On-surface points: from a small real base point (a, b), brentq along the
    imaginary direction (cos theta, sin theta) for the scale t in (0, 1).
    """
    eps = _check_range("eps", eps, 0.0, max_eps)
    params = {"eps": eps}
    surface = ImplicitHypersurface.from_text(
        "z*zb + w*wb + sqrt(1 - z^2 - w^2)*sqrt(1 - zb^2 - wb^2) - cosh(sqrt(eps))", params
    )

    def on_tube(c: Sequence[float]) -> PointZW:
        a, b, theta = c
        ct, st = math.cos(theta), math.sin(theta)

        def along(t: float) -> float:
            return surface.f_value((complex(a, t * ct), complex(b, t * st))).real

        # F < 0 at t = 0 and F > 0 well before t = 1 for eps < 1
        t = brentq(along, 0.0, 1.0, xtol=1e-15)
        return complex(a, t * ct), complex(b, t * st)

    def sampler(rng: np.random.Generator) -> Point3:
        a, b = rng.uniform(-0.3, 0.3, 2)
        z, w = on_tube((a, b, rng.uniform(0.3, math.pi - 0.3)))
        return z.real, z.imag, w.real

    implicit = Chart(
        name="implicit",
        kind="implicit",
        surface=surface,
        coords=("a", "b", "theta"),
        domain=tuple(parse(t, ("a", "b", "theta"), ()) for t in ("0.25 - a^2 - b^2", "sin(theta)^2")),
        parametrize=on_tube,
        description="on-surface point (a + i t cos theta, b + i t sin theta)",
    )
    graph = Chart(
        name="v-graph",
        kind="graph",
        surface=ImplicitGraph.with_domain(surface, (SPHERE_TUBE_GRAPH_DOMAIN,), bracket=(0.0, 1.0)),
        description="v in (0, 1) solved from F(x + iy, u + iv) = 0 where F < 0 at v = 0",
    )
    return ModelEntry(
        id="sphere-tube",
        kind="both",
        parameters=params,
        ranges={"eps": (0.0, max_eps)},
        charts={"implicit": implicit, "v-graph": graph},
        level=LEVEL_INTRINSIC,
        notes=(
            "Quadric chart z3 = sqrt(1 - z^2 - w^2), principal branch. Nowhere CR-umbilical; "
            "neither engine finds a vanishing point over the sampled region."
        ),
        links=(ChartLink("v-graph", "implicit", _graph_to_implicit, sampler),),
    )


# --------------------------------------------------------------------------- registry

MODEL_BUILDERS: Dict[str, Callable[..., ModelEntry]] = {
    "heisenberg": heisenberg,
    "unit-sphere": unit_sphere,
    "hyperbolic": hyperbolic_tube,
    "torus-case1": torus_case1,
    "torus-case2": torus_case2,
    "torus-case3": torus_case3,
    **{f"product-{l}-{r}": partial(product_tube, l, r) for l in PRODUCT_KINDS for r in PRODUCT_KINDS},
    "sphere-tube": sphere_tube,
}

MODEL_IDS: List[str] = list(MODEL_BUILDERS.keys())


def get_model(model_id: str, **params: float) -> ModelEntry:
    if model_id not in MODEL_BUILDERS:
        raise ModelNotFoundError(f"Model '{model_id}' not found; known models: {', '.join(MODEL_IDS)}")
    builder = MODEL_BUILDERS[model_id]
    accepted = inspect.signature(builder).parameters
    unknown = sorted(set(params) - set(accepted))
    if unknown:
        raise ModelNotFoundError(
            f"Model '{model_id}' has no parameter(s) {', '.join(unknown)}; accepted: {', '.join(accepted) or 'none'}"
        )
    return builder(**params)


def list_models() -> List[ModelEntry]:
    return [get_model(model_id) for model_id in MODEL_IDS]


__all__ = [
    "Chart",
    "ChartLink",
    "ModelEntry",
    "MODEL_BUILDERS",
    "MODEL_IDS",
    "get_model",
    "list_models",
    "heisenberg",
    "unit_sphere",
    "hyperbolic_tube",
    "hyperbolic_tube_normalized",
    "torus_tubes",
    "product_tube",
    "product_residual",
    "sphere_tube",
]
