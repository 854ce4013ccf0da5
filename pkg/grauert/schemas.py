"""Pydantic schemas for scan configuration, scan records, summaries and cross checks."""

from __future__ import annotations

import math
from typing import Dict, List, Literal, Optional

import numpy as np
from pydantic import BaseModel, Field, PositiveInt, model_validator

Engine = Literal["graph", "implicit"]
EngineSelector = Literal["graph", "implicit", "both"]
Status = Literal["ok", "domain-skipped", "levi-degenerate", "error"]

DEFAULT_ZERO_THRESHOLD = 1e-7
DEFAULT_REFINE_ITERATIONS = 20

CSV_TAIL_COLUMNS = ["inv_re", "inv_im", "inv_abs", "levi_or_fw_abs", "status"]


class AxisRange(BaseModel):
    """Closed interval [lo, hi] sampled at n equispaced points."""

    lo: float
    hi: float
    n: int = Field(ge=2, description="Grid count; at least 2 per scanned variable.")

    @model_validator(mode="after")
    def _check_order(self) -> "AxisRange":
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)) or self.hi <= self.lo:
            raise ValueError(f"range needs finite lo < hi, got {self.lo}:{self.hi}")
        return self

    @classmethod
    def parse(cls, text: str) -> "AxisRange":
        """Parse ``lo:hi:n``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"range '{text}' must look like lo:hi:n")
        try:
            return cls(lo=float(parts[0]), hi=float(parts[1]), n=int(parts[2]))
        except ValueError as exc:
            raise ValueError(f"range '{text}' must look like lo:hi:n ({exc})") from exc

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.n)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.n - 1)


class ScanConfig(BaseModel):
    """
    Grid scan of one model chart.

    - `ranges`: scanned chart coordinates (lo, hi, n).
    - `fixed`: values for chart coordinates that are not scanned (default 0).
    - `engine`: `both` evaluates the graph chart and its linked implicit chart at every point.
    """

    model: str
    params: Dict[str, float] = Field(default_factory=dict)
    chart: Optional[str] = None
    ranges: Dict[str, AxisRange]
    fixed: Dict[str, float] = Field(default_factory=dict)
    engine: EngineSelector = "graph"
    zero_threshold: float = Field(default=DEFAULT_ZERO_THRESHOLD, gt=0)
    refine: bool = False
    refine_iterations: PositiveInt = DEFAULT_REFINE_ITERATIONS
    workers: PositiveInt = Field(default=1, description="Thread pool size; 1 evaluates sequentially.")

    @model_validator(mode="after")
    def _check_axes(self) -> "ScanConfig":
        if not self.ranges:
            raise ValueError("at least one scanned coordinate is required")
        overlap = set(self.ranges) & set(self.fixed)
        if overlap:
            raise ValueError(f"coordinates both scanned and fixed: {sorted(overlap)}")
        return self


class ScanRecord(BaseModel):
    """One evaluation at one grid point."""

    model: str
    chart: str
    engine: Engine
    coords: Dict[str, float]
    inv_re: float = math.nan
    inv_im: float = math.nan
    inv_abs: float = math.nan
    normalized_abs: float = math.nan
    levi_or_fw_abs: float = math.nan
    status: Status
    message: str = ""

    @model_validator(mode="after")
    def _check_ok_is_finite(self) -> "ScanRecord":
        if self.status == "ok":
            values = (self.inv_re, self.inv_im, self.inv_abs, self.normalized_abs, self.levi_or_fw_abs)
            if not all(math.isfinite(v) for v in values):
                raise ValueError("ok records must carry finite values")
        return self

    @property
    def is_ok(self) -> bool:
        return self.status == "ok"

    def row(self) -> Dict[str, object]:
        """Flat row in CSV column order."""
        out: Dict[str, object] = {"model": self.model, "chart": self.chart, "engine": self.engine}
        out.update(self.coords)
        out.update({name: getattr(self, name) for name in CSV_TAIL_COLUMNS})
        return out


class Candidate(BaseModel):
    """Grid point whose normalized invariant fell below the zero threshold."""

    engine: Engine
    coords: Dict[str, float]
    grid_abs: float
    normalized_abs: float
    refined_coords: Optional[Dict[str, float]] = None
    refined_abs: Optional[float] = None
    iterations: int = 0

    @model_validator(mode="after")
    def _check_monotone(self) -> "Candidate":
        if self.refined_abs is not None and self.refined_abs > self.grid_abs:
            raise ValueError("refinement must not increase the invariant magnitude")
        return self


class EngineMinimum(BaseModel):
    """Smallest invariant magnitude one engine saw; graph J and implicit I_[w] are not comparable."""

    n_ok: int = Field(ge=0)
    min_abs: float
    argmin: Dict[str, float]
    min_normalized_abs: float


class ScanSummary(BaseModel):
    """
    ``min_abs`` / ``argmin`` belong to the scanned chart's own engine (the graph
    engine for ``both``); ``engines`` holds the minimum of each engine separately.
    """

    model: str
    engine: EngineSelector
    n_ok: int = Field(ge=0)
    n_skipped: int = Field(ge=0)
    min_abs: Optional[float] = None
    argmin: Dict[str, float] = Field(default_factory=dict)
    engines: Dict[Engine, EngineMinimum] = Field(default_factory=dict)
    candidates: List[Candidate] = Field(default_factory=list)


class Disagreement(BaseModel):
    sample: Dict[str, float]
    graph_abs: float
    implicit_abs: float
    graph_zero: bool
    implicit_zero: bool


class CrossCheckReport(BaseModel):
    """Zero/nonzero classification of both engines over common samples."""

    model: str
    graph_chart: str
    implicit_chart: str
    n_samples: int = Field(ge=0)
    n_compared: int = Field(ge=0)
    n_graph_zero: int = Field(ge=0)
    n_implicit_zero: int = Field(ge=0)
    agreement_rate: float = Field(ge=0.0, le=1.0)
    disagreements: List[Disagreement] = Field(default_factory=list)
    skipped: int = Field(default=0, ge=0)


__all__ = [
    "Engine",
    "EngineSelector",
    "Status",
    "CSV_TAIL_COLUMNS",
    "AxisRange",
    "ScanConfig",
    "ScanRecord",
    "Candidate",
    "EngineMinimum",
    "ScanSummary",
    "Disagreement",
    "CrossCheckReport",
]
