"""
Grid scanner for CR-umbilical points of a model chart.

Grid points are independent work items. With ``workers > 1`` they run on a
thread pool and are re-gathered by grid index, so records always come out in
grid order.
"""
from __future__ import annotations

import itertools
import logging
import math
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from cartan.errors import (
    CartanError,
    DomainError,
    LeviDegenerateError,
    ModelNotFoundError,
    NonRealLeviFactorError,
    OffSurfaceError,
    ScanError,
    VanishingFwError,
)
from cartan.implicit_engine import cartan_locus_iw
from cartan.models import CartanGraphResult, ImplicitResult
from cartan.settings import Tolerances, resolve

from .catalog import Chart, ChartLink, ModelEntry, get_model
from .schemas import Candidate, Engine, EngineMinimum, ScanConfig, ScanRecord, ScanSummary

logger = logging.getLogger(__name__)

Coords = Tuple[float, ...]
PointEvaluator = Callable[[Coords], List[ScanRecord]]


def _status_for(exc: CartanError) -> str:
    if isinstance(exc, (LeviDegenerateError, NonRealLeviFactorError)):
        return "levi-degenerate"
    if isinstance(exc, (DomainError, OffSurfaceError, VanishingFwError)):
        return "domain-skipped"
    return "error"


def _record(
    model_id: str, chart: Chart, engine: Engine, coords: Coords, result: CartanGraphResult | ImplicitResult
) -> ScanRecord:
    if isinstance(result, CartanGraphResult):
        value, levi = result.j_star, abs(result.levi_factor)
    else:
        value, levi = result.i_w, abs(result.f_w)
    return ScanRecord(
        model=model_id,
        chart=chart.name,
        engine=engine,
        coords=dict(zip(chart.coords, coords)),
        inv_re=value.real,
        inv_im=value.imag,
        inv_abs=abs(value),
        normalized_abs=result.normalized_magnitude(),
        levi_or_fw_abs=levi,
        status="ok",
    )


def _failed(model_id: str, chart: Chart, engine: Engine, coords: Coords, exc: CartanError) -> ScanRecord:
    logger.debug("%s/%s at %s: %s", model_id, chart.name, coords, exc)
    return ScanRecord(
        model=model_id,
        chart=chart.name,
        engine=engine,
        coords=dict(zip(chart.coords, coords)),
        status=_status_for(exc),
        message=str(exc),
    )


def evaluate_chart_point(
    entry: ModelEntry, chart: Chart, coords: Sequence[float], tolerances: Optional[Tolerances] = None
) -> ScanRecord:
    """Evaluate the chart's own engine at ``coords``; failures become record statuses."""
    tol = resolve(tolerances)
    coords = tuple(float(c) for c in coords)
    engine: Engine = "graph" if chart.kind == "graph" else "implicit"
    try:
        chart.check_domain(coords, tol.domain_margin)
        return _record(entry.id, chart, engine, coords, chart.evaluate(coords, tol))
    except CartanError as exc:
        return _failed(entry.id, chart, engine, coords, exc)


def evaluate_linked_point(
    entry: ModelEntry, link: ChartLink, coords: Sequence[float], tolerances: Optional[Tolerances] = None
) -> ScanRecord:
    """I_[w] of the linked implicit chart at the graph point (x, y, u, phi(x, y, u))."""
    tol = resolve(tolerances)
    coords = tuple(float(c) for c in coords)
    graph = entry.chart(link.graph_chart)
    implicit = entry.chart(link.implicit_chart)
    # graph coordinates index the implicit rows too, keeping one CSV schema
    row_chart = Chart(name=implicit.name, kind="implicit", surface=implicit.surface, coords=graph.coords)
    try:
        graph.check_domain(coords, tol.domain_margin)
        point = link.to_implicit(coords, graph.surface.phi_value(coords))
        return _record(entry.id, row_chart, "implicit", coords, cartan_locus_iw(implicit.surface, point, tol))
    except CartanError as exc:
        return _failed(entry.id, row_chart, "implicit", coords, exc)


def resolve_chart(entry: ModelEntry, chart_name: Optional[str], engine: str) -> Tuple[Chart, Optional[ChartLink]]:
    """Pick the scanned chart (and link for ``both``) for an engine selector."""
    if engine == "both":
        link = entry.link(chart_name)
        return entry.chart(link.graph_chart), link
    if chart_name is None:
        matching = [c for c in entry.charts.values() if c.kind == engine]
        if not matching:
            raise ModelNotFoundError(f"Model '{entry.id}' has no {engine} chart")
        return matching[0], None
    chart = entry.chart(chart_name)
    if chart.kind != engine:
        raise ModelNotFoundError(f"Chart '{chart.name}' of model '{entry.id}' is {chart.kind}, not {engine}")
    return chart, None


def grid_points(chart: Chart, cfg: ScanConfig) -> List[Coords]:
    """Cartesian grid in chart-coordinate order; the last coordinate varies fastest."""
    unknown = sorted((set(cfg.ranges) | set(cfg.fixed)) - set(chart.coords))
    if unknown:
        raise ModelNotFoundError(
            f"Chart '{chart.name}' has no coordinate(s) {', '.join(unknown)}; coordinates: {', '.join(chart.coords)}"
        )
    axes = [
        [float(v) for v in cfg.ranges[name].values()] if name in cfg.ranges else [float(cfg.fixed.get(name, 0.0))]
        for name in chart.coords
    ]
    return [tuple(p) for p in itertools.product(*axes)]


def _run_points(points: Sequence[Coords], evaluate: PointEvaluator, workers: int) -> List[ScanRecord]:
    results: Dict[int, List[ScanRecord]] = {}
    if workers <= 1:
        for idx, coords in enumerate(points):
            results[idx] = evaluate(coords)
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            futures = {executor.submit(evaluate, coords): idx for idx, coords in enumerate(points)}
            for future in as_completed(futures):
                results[futures[future]] = future.result()
    return [record for idx in range(len(points)) for record in results[idx]]


def refine_minimum(
    objective: Callable[[Coords], float],
    start: Coords,
    steps: Dict[int, float],
    start_value: float,
    iterations: int = 20,
) -> Tuple[Coords, float, int]:
    """
    Coordinate descent on ``objective`` over the indices in ``steps``.

    A move is accepted only if it strictly lowers the objective; a sweep with
    no accepted move halves every step.

    Returns:
        (best coords, best objective value, number of accepted moves)
    """
    best = list(start)
    best_value = start_value
    step = dict(steps)
    accepted = 0
    for _ in range(iterations):
        improved = False
        for k in sorted(step):
            for sign in (1.0, -1.0):
                trial = list(best)
                trial[k] += sign * step[k]
                value = objective(tuple(trial))
                if value < best_value:
                    best, best_value = trial, value
                    improved = True
                    accepted += 1
                    break
        if not improved:
            step = {k: 0.5 * s for k, s in step.items()}
    return tuple(best), best_value, accepted


def _refine(
    record: ScanRecord,
    evaluate: PointEvaluator,
    chart: Chart,
    cfg: ScanConfig,
) -> Candidate:
    engine = record.engine
    start = tuple(record.coords[name] for name in chart.coords)
    steps = {k: cfg.ranges[name].step for k, name in enumerate(chart.coords) if name in cfg.ranges}

    def squared_magnitude(coords: Coords) -> float:
        for rec in evaluate(coords):
            if rec.engine == engine:
                return rec.inv_abs ** 2 if rec.is_ok else math.inf
        return math.inf

    best, value, accepted = refine_minimum(
        squared_magnitude, start, steps, record.inv_abs ** 2, iterations=cfg.refine_iterations
    )
    if not accepted:
        logger.warning("Refinement did not improve candidate at %s (|inv|=%.3g)", start, record.inv_abs)
    return Candidate(
        engine=engine,
        coords=record.coords,
        grid_abs=record.inv_abs,
        normalized_abs=record.normalized_abs,
        refined_coords=dict(zip(chart.coords, best)),
        refined_abs=min(record.inv_abs, math.sqrt(value)),
        iterations=accepted,
    )


def _engine_minima(ok: Sequence[ScanRecord]) -> Dict[Engine, EngineMinimum]:
    minima: Dict[Engine, EngineMinimum] = {}
    for engine in ("graph", "implicit"):
        rows = [r for r in ok if r.engine == engine]
        if rows:
            best = min(rows, key=lambda r: r.inv_abs)
            minima[engine] = EngineMinimum(
                n_ok=len(rows),
                min_abs=best.inv_abs,
                argmin=best.coords,
                min_normalized_abs=min(r.normalized_abs for r in rows),
            )
    return minima


def scan_grid(
    cfg: ScanConfig,
    tolerances: Optional[Tolerances] = None,
    entry: Optional[ModelEntry] = None,
) -> Tuple[List[ScanRecord], ScanSummary]:
    """
    Evaluate the invariant on a grid and summarize umbilical candidates.

    Args:
        cfg: scan configuration.
        tolerances: defaults from ``load_tolerances()``.
        entry: prebuilt model; built from ``cfg.model`` / ``cfg.params`` otherwise.

    Returns:
        (records in grid order, summary). Engine ``both`` yields a graph and an
        implicit record per point.
    """
    tol = resolve(tolerances)
    entry = entry or get_model(cfg.model, **cfg.params)
    chart, link = resolve_chart(entry, cfg.chart, cfg.engine)
    points = grid_points(chart, cfg)

    def evaluate(coords: Coords) -> List[ScanRecord]:
        records = [evaluate_chart_point(entry, chart, coords, tol)]
        if link is not None:
            records.append(evaluate_linked_point(entry, link, coords, tol))
        return records

    logger.info(
        "Scanning %s/%s: %d grid points (engine=%s, workers=%d)",
        entry.id, chart.name, len(points), cfg.engine, cfg.workers,
    )
    records = _run_points(points, evaluate, cfg.workers)

    ok = [r for r in records if r.is_ok]
    n_skipped = sum(1 for r in records if r.status == "domain-skipped")
    if n_skipped:
        logger.warning("Skipped %d of %d evaluations outside the chart domain", n_skipped, len(records))
    if not ok:
        raise ScanError(f"No admissible grid points for {entry.id}/{chart.name} in {dict(cfg.ranges)}")

    engines = _engine_minima(ok)
    own: Engine = "graph" if chart.kind == "graph" else "implicit"
    best = engines[own] if own in engines else next(iter(engines.values()))
    zero = [r for r in ok if r.normalized_abs < cfg.zero_threshold]
    if cfg.refine:
        candidates = [_refine(r, evaluate, chart, cfg) for r in zero]
    else:
        candidates = [
            Candidate(engine=r.engine, coords=r.coords, grid_abs=r.inv_abs, normalized_abs=r.normalized_abs)
            for r in zero
        ]

    summary = ScanSummary(
        model=entry.id,
        engine=cfg.engine,
        n_ok=len(ok),
        n_skipped=n_skipped,
        min_abs=best.min_abs,
        argmin=best.argmin,
        engines=engines,
        candidates=candidates,
    )
    logger.info("Scan finished: %d ok, %d skipped, %d candidates, min |inv| = %.6g", len(ok), n_skipped, len(candidates), best.min_abs)
    return records, summary


__all__ = [
    "evaluate_chart_point",
    "evaluate_linked_point",
    "resolve_chart",
    "grid_points",
    "refine_minimum",
    "scan_grid",
]
