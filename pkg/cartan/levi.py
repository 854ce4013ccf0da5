"""
Plurisubharmonicity check: the complex Hessian (Levi matrix) of a real
function on C^2 and its eigenvalues.
"""
from __future__ import annotations

import math
from typing import Mapping, Optional, Sequence, Union

from .errors import DomainError, ExprSyntaxError
from .expr_lang import IMPLICIT_VARIABLES, REAL_C2_VARIABLES, Expr, eval_jet, free_symbols, parse
from .jet_algebra import derivative_value, variable_jets
from .models import LeviMatrixResult

HERMITIAN_TOL = 1e-10


def _hermitian_eigenvalues(a: float, d: float, b: complex) -> tuple[float, float]:
    mean = 0.5 * (a + d)
    radius = math.hypot(0.5 * (a - d), abs(b))
    return mean - radius, mean + radius


def _resolve_variables(r: Expr, variables: Optional[Sequence[str]]) -> tuple[str, ...]:
    if variables is not None:
        return tuple(variables)
    used, _ = free_symbols(r)
    if used and used <= set(IMPLICIT_VARIABLES):
        return IMPLICIT_VARIABLES
    if used <= set(REAL_C2_VARIABLES):
        return REAL_C2_VARIABLES
    raise ExprSyntaxError(f"variables {sorted(used)} mix the real and the polarized conventions", 0)


def psh_check(
    r: Union[str, Expr],
    point: Sequence[complex],
    variables: Optional[Sequence[str]] = None,
    params: Optional[Mapping[str, float]] = None,
) -> LeviMatrixResult:
    """
    Levi matrix H_jk = d^2 r / dz_j dzbar_k at ``point``.

    Args:
        r: expression over (x, y, u, v) with z = x + iy, w = u + iv, or over (z, w, zb, wb).
        point: (x, y, u, v) for real variables, (z, w) for polarized ones.
        variables: force one of the two conventions; inferred from ``r`` otherwise.
        params: scalar parameters of ``r``.

    Returns:
        ``LeviMatrixResult`` with the hermitian matrix and its eigenvalues (ascending).
    """
    params = dict(params or {})
    if isinstance(r, str):
        r = parse(r, REAL_C2_VARIABLES + IMPLICIT_VARIABLES, params.keys() if params else None)
    names = _resolve_variables(r, variables)

    if names == IMPLICIT_VARIABLES:
        z, w = complex(point[0]), complex(point[1])
        jets = variable_jets((z, w, z.conjugate(), w.conjugate()), 2, kind="complex")
        jet = eval_jet(r, dict(zip(names, jets)), params)
        h11 = derivative_value(jet, (1, 0, 1, 0))
        h12 = derivative_value(jet, (1, 0, 0, 1))
        h21 = derivative_value(jet, (0, 1, 1, 0))
        h22 = derivative_value(jet, (0, 1, 0, 1))
    else:
        if len(point) != 4:
            raise DomainError(f"expected (x, y, u, v), got {tuple(point)}")
        jets = variable_jets([float(c) for c in point], 2)
        jet = eval_jet(r, dict(zip(names, jets)), params)

        def d2(alpha: tuple[int, int, int, int]) -> float:
            return derivative_value(jet, alpha)

        rxx, ryy = d2((2, 0, 0, 0)), d2((0, 2, 0, 0))
        ruu, rvv = d2((0, 0, 2, 0)), d2((0, 0, 0, 2))
        rxu, ryv = d2((1, 0, 1, 0)), d2((0, 1, 0, 1))
        rxv, ryu = d2((1, 0, 0, 1)), d2((0, 1, 1, 0))
        h11 = 0.25 * (rxx + ryy)
        h22 = 0.25 * (ruu + rvv)
        h12 = 0.25 * complex(rxu + ryv, rxv - ryu)
        h21 = 0.25 * complex(rxu + ryv, ryu - rxv)

    h11, h12, h21, h22 = (complex(v) for v in (h11, h12, h21, h22))
    scale = max(1.0, abs(h11), abs(h22), abs(h12))
    if (
        abs(h12 - h21.conjugate()) > HERMITIAN_TOL * scale
        or abs(h11.imag) > HERMITIAN_TOL * scale
        or abs(h22.imag) > HERMITIAN_TOL * scale
    ):
        raise DomainError("complex Hessian is not hermitian; r is not real-valued")
    eigenvalues = _hermitian_eigenvalues(h11.real, h22.real, h12)
    return LeviMatrixResult(
        levi_matrix=[[h11, h12], [h21, h22]],
        eigenvalues=eigenvalues,
        min_eigenvalue=eigenvalues[0],
    )


__all__ = ["psh_check", "HERMITIAN_TOL"]
