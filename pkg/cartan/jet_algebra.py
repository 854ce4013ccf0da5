"""
Truncated multivariate Taylor series ("jets") with exact truncation.

A jet of ``num_vars`` variables and degree ``d`` stores, for every multi-index
alpha with |alpha| <= d, the coefficient  (d^alpha f)(p) / alpha!  of a field f
at a base point p. Coefficients live in a dense vector in graded order: all
degree-0 entries, then degree 1, and so on, reverse-lexicographic inside a
degree. Truncating to a lower degree is therefore a prefix slice.

Layout tables (exponents, product index triples, derivative maps) depend only
on ``(num_vars, degree)`` and are cached; jets themselves are immutable.
"""
from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Iterator, Literal, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.special import binom, comb

from .errors import JetDomainError, JetShapeError
from .settings import MAX_DEGREE

MultiIndex = Tuple[int, ...]
ScalarKind = Literal["real", "complex"]

DIVISION_TOL = 1e-300

REAL_FUNCTIONS = (
    "sqrt",
    "exp",
    "log",
    "sin",
    "cos",
    "sinh",
    "cosh",
    "arcsin",
    "arccos",
    "arcsinh",
    "arccosh",
    "pow_int",
)
# principal branch for sqrt/log
COMPLEX_FUNCTIONS = frozenset({"sqrt", "exp", "log", "sin", "cos", "sinh", "cosh", "pow_int"})


def _compositions(total: int, parts: int) -> Iterator[MultiIndex]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class _Layout:
    num_vars: int
    degree: int
    exponents: Tuple[MultiIndex, ...]
    exponent_array: np.ndarray
    index: Dict[MultiIndex, int]
    mul_left: np.ndarray
    mul_right: np.ndarray
    mul_out: np.ndarray

    @property
    def size(self) -> int:
        return len(self.exponents)


def layout_size(num_vars: int, degree: int) -> int:
    return int(comb(num_vars + degree, num_vars, exact=True))


@lru_cache(maxsize=None)
def _layout(num_vars: int, degree: int) -> _Layout:
    exponents = tuple(
        alpha for total in range(degree + 1) for alpha in _compositions(total, num_vars)
    )
    index = {alpha: pos for pos, alpha in enumerate(exponents)}
    left, right, out = [], [], []
    totals = [sum(alpha) for alpha in exponents]
    for i, alpha in enumerate(exponents):
        for j, beta in enumerate(exponents):
            if totals[i] + totals[j] > degree:
                continue
            left.append(i)
            right.append(j)
            out.append(index[tuple(a + b for a, b in zip(alpha, beta))])
    exponent_array = np.array(exponents, dtype=np.int64).reshape(len(exponents), num_vars)
    return _Layout(
        num_vars=num_vars,
        degree=degree,
        exponents=exponents,
        exponent_array=exponent_array,
        index=index,
        mul_left=np.array(left, dtype=np.intp),
        mul_right=np.array(right, dtype=np.intp),
        mul_out=np.array(out, dtype=np.intp),
    )


@lru_cache(maxsize=None)
def _derivative_map(num_vars: int, degree: int, var: int) -> Tuple[np.ndarray, np.ndarray]:
    source = _layout(num_vars, degree)
    target = _layout(num_vars, degree - 1)
    src = np.empty(target.size, dtype=np.intp)
    factor = np.empty(target.size, dtype=np.float64)
    for pos, alpha in enumerate(target.exponents):
        raised = list(alpha)
        raised[var] += 1
        src[pos] = source.index[tuple(raised)]
        factor[pos] = alpha[var] + 1
    return src, factor


def _check_shape(num_vars: int, degree: int) -> None:
    if num_vars < 1:
        raise JetShapeError(f"num_vars must be >= 1, got {num_vars}")
    if degree < 0 or degree > MAX_DEGREE:
        raise JetShapeError(f"degree must be in [0, {MAX_DEGREE}], got {degree}")


def _is_complex_scalar(value: object) -> bool:
    return isinstance(value, (complex, np.complexfloating))


class Jet:
    """Immutable truncated Taylor expansion of a scalar field at a point."""

    __slots__ = ("_coeffs", "num_vars", "degree")

    def __init__(self, coeffs: Sequence[complex] | np.ndarray, num_vars: int, degree: int) -> None:
        _check_shape(num_vars, degree)
        arr = np.array(coeffs)
        if arr.dtype.kind == "c":
            arr = arr.astype(np.complex128, copy=False)
        else:
            arr = arr.astype(np.float64, copy=False)
        expected = _layout(num_vars, degree).size
        if arr.ndim != 1 or arr.shape[0] != expected:
            raise JetShapeError(
                f"expected {expected} coefficients for num_vars={num_vars}, degree={degree}, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise JetDomainError("non-finite jet coefficient")
        arr.setflags(write=False)
        self._coeffs = arr
        self.num_vars = num_vars
        self.degree = degree

    # ------------------------------------------------------------------ basics
    @classmethod
    def from_coefficients(
        cls,
        coefficients: Mapping[MultiIndex, complex],
        num_vars: int,
        degree: int,
        kind: ScalarKind = "real",
    ) -> "Jet":
        _check_shape(num_vars, degree)
        layout = _layout(num_vars, degree)
        arr = np.zeros(layout.size, dtype=np.complex128 if kind == "complex" else np.float64)
        for alpha, value in coefficients.items():
            arr[_position(layout, alpha)] = value
        return cls(arr, num_vars, degree)

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def kind(self) -> ScalarKind:
        return "complex" if self._coeffs.dtype.kind == "c" else "real"

    @property
    def value(self) -> complex | float:
        v = self._coeffs[0]
        return complex(v) if self.kind == "complex" else float(v)

    @property
    def exponents(self) -> Tuple[MultiIndex, ...]:
        return _layout(self.num_vars, self.degree).exponents

    def _like(self, coeffs: np.ndarray, degree: Optional[int] = None) -> "Jet":
        return Jet(coeffs, self.num_vars, self.degree if degree is None else degree)

    def constant_like(self, value: complex | float) -> "Jet":
        kind: ScalarKind = "complex" if (self.kind == "complex" or _is_complex_scalar(value)) else "real"
        return constant_jet(value, self.num_vars, self.degree, kind=kind)

    def coefficient(self, alpha: Sequence[int]) -> complex | float:
        return coefficient(self, alpha)

    def derivative_value(self, alpha: Sequence[int]) -> complex | float:
        return derivative_value(self, alpha)

    def truncate(self, degree: int) -> "Jet":
        return truncate(self, degree)

    def as_complex(self) -> "Jet":
        if self.kind == "complex":
            return self
        return self._like(self._coeffs.astype(np.complex128))

    def real_part(self) -> "Jet":
        return self._like(np.real(self._coeffs).copy())

    def imag_part(self) -> "Jet":
        return self._like(np.imag(self._coeffs).copy())

    def conjugate_coefficients(self) -> "Jet":
        return self._like(np.conj(self._coeffs))

    def evaluate_polynomial(self, offset: Sequence[complex]) -> complex | float:
        """Evaluate the Taylor polynomial at ``base + offset``."""
        delta = np.asarray(offset)
        if delta.shape != (self.num_vars,):
            raise JetShapeError(f"offset must have {self.num_vars} entries")
        powers = np.prod(delta[np.newaxis, :] ** _layout(self.num_vars, self.degree).exponent_array, axis=1)
        total = np.sum(self._coeffs * powers)
        return complex(total) if np.iscomplexobj(total) else float(total)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self._coeffs)))

    # -------------------------------------------------------------- operators
    def _coerce_scalar(self, other: object) -> Optional[Tuple["Jet", "Jet"]]:
        if isinstance(other, Jet):
            return self, other
        if isinstance(other, numbers.Number):
            a = self.as_complex() if _is_complex_scalar(other) else self
            return a, a.constant_like(other)
        return None

    def __add__(self, other: object) -> "Jet":
        if isinstance(other, numbers.Number):
            a = self.as_complex() if _is_complex_scalar(other) else self
            coeffs = a._coeffs.copy()
            coeffs[0] += other
            return a._like(coeffs)
        pair = self._coerce_scalar(other)
        return NotImplemented if pair is None else arith("add", *pair)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Jet":
        if isinstance(other, numbers.Number):
            return self + (-other)
        pair = self._coerce_scalar(other)
        return NotImplemented if pair is None else arith("sub", *pair)

    def __rsub__(self, other: object) -> "Jet":
        return (-self) + other

    def __mul__(self, other: object) -> "Jet":
        if isinstance(other, numbers.Number):
            a = self.as_complex() if _is_complex_scalar(other) else self
            return a._like(a._coeffs * other)
        pair = self._coerce_scalar(other)
        return NotImplemented if pair is None else arith("mul", *pair)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "Jet":
        if isinstance(other, numbers.Number):
            if abs(other) <= DIVISION_TOL:
                raise JetDomainError("division by (near-)zero scalar")
            return self * (1.0 / other)
        pair = self._coerce_scalar(other)
        return NotImplemented if pair is None else arith("div", *pair)

    def __rtruediv__(self, other: object) -> "Jet":
        return reciprocal(self) * other

    def __neg__(self) -> "Jet":
        return self._like(-self._coeffs)

    def __pos__(self) -> "Jet":
        return self

    def __pow__(self, exponent: int) -> "Jet":
        return pow_int(self, exponent)

    def __repr__(self) -> str:
        terms = []
        for alpha, c in zip(self.exponents, self._coeffs):
            if c != 0:
                terms.append(f"{alpha}: {c!r}")
        return f"Jet(num_vars={self.num_vars}, degree={self.degree}, kind={self.kind}, {{{', '.join(terms)}}})"


# ---------------------------------------------------------------- constructors
def constant_jet(value: complex | float, num_vars: int, degree: int, kind: Optional[ScalarKind] = None) -> Jet:
    _check_shape(num_vars, degree)
    if kind is None:
        kind = "complex" if _is_complex_scalar(value) else "real"
    size = _layout(num_vars, degree).size
    coeffs = np.zeros(size, dtype=np.complex128 if kind == "complex" else np.float64)
    if kind == "real" and _is_complex_scalar(value):
        if value.imag != 0:
            raise JetShapeError(f"complex value {value!r} for a real jet")
        value = value.real
    coeffs[0] = value
    return Jet(coeffs, num_vars, degree)


def make_variable_jet(
    index: int,
    value: complex | float,
    num_vars: int,
    degree: int,
    kind: Optional[ScalarKind] = None,
) -> Jet:
    """
    Seed jet of the coordinate ``index`` at ``value``.

    Args:
        index: variable position, 0 <= index < num_vars.
        value: base point coordinate (constant term).
        num_vars: number of jet variables.
        degree: truncation degree.
        kind: force "complex" for polarized seeding; inferred from ``value`` otherwise.

    Returns:
        Jet with constant term ``value`` and unit coefficient at e_index.
    """
    _check_shape(num_vars, degree)
    if not 0 <= index < num_vars:
        raise JetShapeError(f"variable index {index} out of range for {num_vars} variables")
    jet = constant_jet(value, num_vars, degree, kind=kind)
    if degree == 0:
        return jet
    coeffs = jet.coeffs.copy()
    unit = tuple(1 if k == index else 0 for k in range(num_vars))
    coeffs[_layout(num_vars, degree).index[unit]] = 1.0
    return Jet(coeffs, num_vars, degree)


def variable_jets(values: Sequence[complex | float], degree: int, kind: Optional[ScalarKind] = None) -> Tuple[Jet, ...]:
    n = len(values)
    return tuple(make_variable_jet(i, v, n, degree, kind=kind) for i, v in enumerate(values))


# ------------------------------------------------------------------ arithmetic
def _check_compatible(a: Jet, b: Jet) -> None:
    if a.num_vars != b.num_vars or a.degree != b.degree:
        raise JetShapeError(
            f"jet shape mismatch: ({a.num_vars} vars, degree {a.degree}) vs ({b.num_vars} vars, degree {b.degree})"
        )
    if a.kind != b.kind:
        raise JetShapeError(f"jet scalar kind mismatch: {a.kind} vs {b.kind}")


def _mul_coeffs(x: np.ndarray, y: np.ndarray, layout: _Layout) -> np.ndarray:
    prod = x[layout.mul_left] * y[layout.mul_right]
    if np.iscomplexobj(prod):
        re = np.bincount(layout.mul_out, weights=prod.real, minlength=layout.size)
        im = np.bincount(layout.mul_out, weights=prod.imag, minlength=layout.size)
        return re + 1j * im
    return np.bincount(layout.mul_out, weights=prod, minlength=layout.size)


def _compose(a: Jet, taylor: np.ndarray) -> Jet:
    """Horner evaluation of sum_k taylor[k] * (a - a0)^k, truncated."""
    layout = _layout(a.num_vars, a.degree)
    shift = a.coeffs.copy()
    shift[0] = 0
    dtype = np.complex128 if (np.iscomplexobj(shift) or np.iscomplexobj(taylor)) else np.float64
    shift = shift.astype(dtype, copy=False)
    result = np.zeros(layout.size, dtype=dtype)
    result[0] = taylor[a.degree]
    for k in range(a.degree - 1, -1, -1):
        result = _mul_coeffs(result, shift, layout)
        result[0] += taylor[k]
    return Jet(result, a.num_vars, a.degree)


def reciprocal(b: Jet) -> Jet:
    b0 = b.coeffs[0]
    if abs(b0) <= DIVISION_TOL:
        raise JetDomainError(f"division by jet with (near-)zero constant term {b0!r}")
    k = np.arange(b.degree + 1)
    taylor = (-1.0) ** k / b0 ** (k + 1)
    return _compose(b, taylor)


def arith(op: str, a: Jet, b: Jet) -> Jet:
    """
    Jet arithmetic with exact truncation.

    Args:
        op: one of "add", "sub", "mul", "div".
        a: left operand.
        b: right operand; same num_vars, degree and kind as ``a``.

    Returns:
        The truncated result; ``div`` satisfies mul(result, b) = a.
    """
    _check_compatible(a, b)
    if op == "add":
        return Jet(a.coeffs + b.coeffs, a.num_vars, a.degree)
    if op == "sub":
        return Jet(a.coeffs - b.coeffs, a.num_vars, a.degree)
    if op == "mul":
        return Jet(_mul_coeffs(a.coeffs, b.coeffs, _layout(a.num_vars, a.degree)), a.num_vars, a.degree)
    if op == "div":
        inv = reciprocal(b)
        return Jet(_mul_coeffs(a.coeffs, inv.coeffs, _layout(a.num_vars, a.degree)), a.num_vars, a.degree)
    raise JetShapeError(f"unknown jet operation {op!r}")


def pow_int(a: Jet, exponent: int) -> Jet:
    if isinstance(exponent, bool) or not isinstance(exponent, (int, np.integer)):
        raise JetShapeError(f"pow_int needs an integer exponent, got {exponent!r}")
    n = int(exponent)
    if n < 0:
        return reciprocal(pow_int(a, -n))
    layout = _layout(a.num_vars, a.degree)
    result = a.constant_like(1.0).coeffs.copy()
    base = a.coeffs
    while n:
        if n & 1:
            result = _mul_coeffs(result, base, layout)
        n >>= 1
        if n:
            base = _mul_coeffs(base, base, layout)
    return Jet(result, a.num_vars, a.degree)


# ------------------------------------------------------------------ functions
def _power_taylor(a0: complex | float, p: float, order: int) -> np.ndarray:
    k = np.arange(order + 1)
    lead = np.power(a0, p)
    return binom(p, k) * lead / np.power(a0, k)


def _cyclic_taylor(cycle: Sequence[complex | float], order: int) -> np.ndarray:
    values = [cycle[k % len(cycle)] / math.factorial(k) for k in range(order + 1)]
    return np.array(values)


def _inverse_taylor(name: str, a0: float, order: int) -> np.ndarray:
    """Series of arcsin/arccos/arcsinh/arccosh by integrating their derivative series."""
    lead = {"arcsin": np.arcsin, "arccos": np.arccos, "arcsinh": np.arcsinh, "arccosh": np.arccosh}[name](a0)
    taylor = np.zeros(order + 1)
    taylor[0] = lead
    if order == 0:
        return taylor
    s = make_variable_jet(0, a0, 1, order - 1)
    if name in ("arcsin", "arccos"):
        radicand = 1.0 - s * s
    elif name == "arcsinh":
        radicand = 1.0 + s * s
    else:
        radicand = s * s - 1.0
    derivative = _compose(radicand, _power_taylor(radicand.value, -0.5, order - 1)).coeffs
    sign = -1.0 if name == "arccos" else 1.0
    taylor[1:] = sign * derivative / np.arange(1, order + 1)
    return taylor


def _check_domain(name: str, a: Jet) -> None:
    a0 = a.value
    # a degree-0 jet only needs the value, which exists on the closed domain
    closed = a.degree == 0
    if a.kind == "complex":
        if name not in COMPLEX_FUNCTIONS:
            raise JetDomainError(f"{name} is not supported for complex jets (ambiguous branch)")
        if (name == "log" or (name == "sqrt" and not closed)) and a0 == 0:
            raise JetDomainError(f"{name} at zero constant term")
        return
    if name == "log" and not a0 > 0:
        raise JetDomainError(f"log needs a positive constant term, got {a0!r}")
    if name == "sqrt" and not (a0 >= 0 if closed else a0 > 0):
        raise JetDomainError(f"sqrt needs a positive constant term, got {a0!r}")
    if name == "arccosh" and not (a0 >= 1 if closed else a0 > 1):
        raise JetDomainError(f"arccosh needs a constant term > 1, got {a0!r}")
    if name in ("arcsin", "arccos") and not (abs(a0) <= 1 if closed else abs(a0) < 1):
        raise JetDomainError(f"{name} needs |constant term| < 1, got {a0!r}")


def apply_function(name: str, a: Jet, exponent: Optional[int] = None) -> Jet:
    """
    Compose a univariate analytic function with a jet.

    Args:
        name: function name from ``REAL_FUNCTIONS``.
        a: argument jet.
        exponent: integer exponent, only for ``pow_int``.

    Returns:
        f(a) truncated to ``a.degree`` via the Taylor series of f at a0.
    """
    if name not in REAL_FUNCTIONS:
        raise JetShapeError(f"unknown function {name!r}")
    if name == "pow_int":
        if exponent is None:
            raise JetShapeError("pow_int needs an exponent")
        return pow_int(a, exponent)
    _check_domain(name, a)
    a0 = a.value
    order = a.degree
    if name == "exp":
        taylor = np.exp(a0) / np.array([math.factorial(k) for k in range(order + 1)], dtype=float)
    elif name == "log":
        k = np.arange(1, order + 1)
        taylor = np.concatenate([[np.log(a0)], (-1.0) ** (k + 1) / (k * np.power(a0, k))])
    elif name == "sqrt":
        taylor = np.array([np.sqrt(a0)]) if order == 0 else _power_taylor(a0, 0.5, order)
    elif name == "sin":
        taylor = _cyclic_taylor([np.sin(a0), np.cos(a0), -np.sin(a0), -np.cos(a0)], order)
    elif name == "cos":
        taylor = _cyclic_taylor([np.cos(a0), -np.sin(a0), -np.cos(a0), np.sin(a0)], order)
    elif name == "sinh":
        taylor = _cyclic_taylor([np.sinh(a0), np.cosh(a0)], order)
    elif name == "cosh":
        taylor = _cyclic_taylor([np.cosh(a0), np.sinh(a0)], order)
    else:
        taylor = _inverse_taylor(name, float(a0), order)
    return _compose(a, np.asarray(taylor))


# ----------------------------------------------------------------- derivatives
def _position(layout: _Layout, alpha: Sequence[int]) -> int:
    key = tuple(int(k) for k in alpha)
    if len(key) != layout.num_vars or any(k < 0 for k in key):
        raise JetShapeError(f"multi-index {key} invalid for {layout.num_vars} variables")
    if sum(key) > layout.degree:
        raise JetShapeError(f"multi-index {key} exceeds jet degree {layout.degree}")
    return layout.index[key]


def partial_derivative(a: Jet, index: int) -> Jet:
    """d/dx_index of a jet; the result has degree ``a.degree - 1``."""
    if a.degree == 0:
        raise JetShapeError("cannot differentiate a degree-0 jet (degree exhausted)")
    if not 0 <= index < a.num_vars:
        raise JetShapeError(f"variable index {index} out of range for {a.num_vars} variables")
    src, factor = _derivative_map(a.num_vars, a.degree, index)
    return Jet(a.coeffs[src] * factor, a.num_vars, a.degree - 1)


def coefficient(a: Jet, alpha: Sequence[int]) -> complex | float:
    c = a.coeffs[_position(_layout(a.num_vars, a.degree), alpha)]
    return complex(c) if a.kind == "complex" else float(c)


def derivative_value(a: Jet, alpha: Sequence[int]) -> complex | float:
    scale = math.prod(math.factorial(int(k)) for k in alpha)
    return coefficient(a, alpha) * scale


def truncate(a: Jet, degree: int) -> Jet:
    if degree > a.degree or degree < 0:
        raise JetShapeError(f"cannot truncate degree {a.degree} jet to degree {degree}")
    if degree == a.degree:
        return a
    return Jet(a.coeffs[: _layout(a.num_vars, degree).size], a.num_vars, degree)


__all__ = [
    "MultiIndex",
    "ScalarKind",
    "Jet",
    "REAL_FUNCTIONS",
    "COMPLEX_FUNCTIONS",
    "layout_size",
    "constant_jet",
    "make_variable_jet",
    "variable_jets",
    "arith",
    "reciprocal",
    "pow_int",
    "apply_function",
    "partial_derivative",
    "coefficient",
    "derivative_value",
    "truncate",
]
