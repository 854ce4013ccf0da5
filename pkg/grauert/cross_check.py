"""
Cross-engine zero-locus check: the graph invariant and I_[w] must classify
the same samples as umbilical / non-umbilical.
"""
from __future__ import annotations

import logging
from typing import List, Optional, Union

import numpy as np

from cartan.errors import CartanError, ScanError
from cartan.settings import Tolerances, resolve

from .catalog import ModelEntry, get_model
from .scanner import evaluate_chart_point, evaluate_linked_point
from .schemas import CrossCheckReport, Disagreement

logger = logging.getLogger(__name__)

DEFAULT_SAMPLES = 100


def cross_check(
    model: Union[str, ModelEntry],
    samples: int = DEFAULT_SAMPLES,
    seed: int = 0,
    chart: Optional[str] = None,
    zero_threshold: Optional[float] = None,
    tolerances: Optional[Tolerances] = None,
    **params: float,
) -> CrossCheckReport:
    """
    Classify both engines as zero / nonzero at random linked samples.

    Args:
        model: model id (built with ``params``) or a prebuilt entry.
        samples: number of points drawn from the link's sampler.
        seed: seed of ``numpy.random.default_rng``.
        chart: graph or implicit chart selecting the link; first link otherwise.
        zero_threshold: normalized magnitude below which a value counts as zero.
        tolerances: defaults from ``load_tolerances()``.

    Returns:
        ``CrossCheckReport`` with the agreement rate over compared samples.
    """
    tol = resolve(tolerances)
    entry = get_model(model, **params) if isinstance(model, str) else model
    threshold = tol.zero_threshold if zero_threshold is None else zero_threshold
    link = entry.link(chart)
    graph = entry.chart(link.graph_chart)
    rng = np.random.default_rng(seed)

    disagreements: List[Disagreement] = []
    compared = skipped = graph_zero = implicit_zero = 0
    for _ in range(samples):
        try:
            coords = tuple(float(c) for c in link.sampler(rng))
        except (CartanError, ValueError, RuntimeError) as exc:
            logger.debug("sampler failed: %s", exc)
            skipped += 1
            continue
        g = evaluate_chart_point(entry, graph, coords, tol)
        i = evaluate_linked_point(entry, link, coords, tol)
        if not (g.is_ok and i.is_ok):
            skipped += 1
            continue
        compared += 1
        g_zero = g.normalized_abs < threshold
        i_zero = i.normalized_abs < threshold
        graph_zero += g_zero
        implicit_zero += i_zero
        if g_zero != i_zero:
            logger.warning(
                "Engines disagree at %s: graph |J|=%.3g (zero=%s), implicit |I_w|=%.3g (zero=%s)",
                coords, g.inv_abs, g_zero, i.inv_abs, i_zero,
            )
            disagreements.append(
                Disagreement(
                    sample=g.coords,
                    graph_abs=g.inv_abs,
                    implicit_abs=i.inv_abs,
                    graph_zero=g_zero,
                    implicit_zero=i_zero,
                )
            )

    if compared == 0:
        raise ScanError(f"No common coverage of {link.graph_chart} and {link.implicit_chart} in {samples} samples")
    if skipped:
        logger.warning("Cross check skipped %d of %d samples", skipped, samples)

    return CrossCheckReport(
        model=entry.id,
        graph_chart=link.graph_chart,
        implicit_chart=link.implicit_chart,
        n_samples=samples,
        n_compared=compared,
        n_graph_zero=graph_zero,
        n_implicit_zero=implicit_zero,
        agreement_rate=(compared - len(disagreements)) / compared,
        disagreements=disagreements,
        skipped=skipped,
    )


__all__ = ["cross_check", "DEFAULT_SAMPLES"]
