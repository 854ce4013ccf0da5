"""
Grauert-tube model gallery, umbilical-point scanner and cross checks.
"""

from .catalog import get_model, list_models  # noqa: F401
from .cross_check import cross_check  # noqa: F401
from .distances import distances  # noqa: F401
from .potentials import eps_reparam, rho_hyperbolic  # noqa: F401
from .scanner import scan_grid  # noqa: F401
