"""
Numeric tolerances for the invariant engines.

Defaults live on the ``Tolerances`` model; any field can be overridden from
the environment (or a ``.env`` file) as ``CARTAN_<FIELD_NAME>``, e.g.
``CARTAN_LEVI_TOL=1e-12``.
"""
from __future__ import annotations

import os
from functools import lru_cache
from typing import Dict

from dotenv import load_dotenv
from pydantic import BaseModel, Field

ENV_PREFIX = "CARTAN_"

DEFAULT_DEGREE = 6
MAX_DEGREE = 8


class Tolerances(BaseModel):
    """Thresholds used across the jet kernel, engines and scanner."""

    levi_tol: float = Field(default=1e-10, gt=0, description="Minimum |l| (graph) / |l/F_w^2| (implicit).")
    levi_real_tol: float = Field(default=1e-9, gt=0, description="Relative imaginary residue allowed on l.")
    fw_tol: float = Field(default=1e-10, gt=0, description="Minimum |F_w| for the implicit formula.")
    on_surface_tol: float = Field(default=1e-8, gt=0, description="Relative |F| accepted as on-surface.")
    domain_margin: float = Field(default=1e-6, ge=0, description="Chart predicates must exceed this value.")
    zero_threshold: float = Field(default=1e-7, gt=0, description="Normalized magnitude classified as zero.")
    reality_tol: float = Field(default=1e-9, gt=0, description="Relative |Im F| accepted on the real locus.")

    model_config = {"frozen": True}


def _env_overrides() -> Dict[str, str]:
    overrides: Dict[str, str] = {}
    for name in Tolerances.model_fields:
        raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None and raw.strip():
            overrides[name] = raw.strip()
    return overrides


@lru_cache(maxsize=1)
def load_tolerances() -> Tolerances:
    """
    Build the tolerance set from defaults plus environment overrides.

    Returns:
        Validated ``Tolerances``; invalid overrides raise pydantic ``ValidationError``.
    """
    load_dotenv()
    return Tolerances(**_env_overrides())


def resolve(tolerances: Tolerances | None) -> Tolerances:
    return tolerances if tolerances is not None else load_tolerances()


__all__ = ["DEFAULT_DEGREE", "MAX_DEGREE", "Tolerances", "load_tolerances", "resolve"]
