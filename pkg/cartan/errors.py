"""
Exception hierarchy shared by the jet kernel, the invariant engines and the
Grauert tube tooling.

Every error carries an ``exit_code`` used by the command line wrapper:
1 for usage problems (bad input, unknown model), 2 for domain or math
failures at the evaluation point.
"""
from __future__ import annotations

from typing import Optional

USAGE_EXIT_CODE = 1
MATH_EXIT_CODE = 2


class CartanError(Exception):
    """Base class for all library errors."""

    exit_code: int = MATH_EXIT_CODE


class JetShapeError(CartanError, ValueError):
    """Operands disagree on num_vars/degree/kind, or an index is out of range."""

    exit_code = USAGE_EXIT_CODE


class JetDomainError(CartanError, ArithmeticError):
    """Function or division evaluated outside its domain at the constant term."""


class ExprSyntaxError(CartanError, ValueError):
    """Lexical, grammar or arity error while parsing an expression."""

    exit_code = USAGE_EXIT_CODE

    def __init__(self, message: str, position: int, text: str = "") -> None:
        super().__init__(f"{message} at position {position}")
        self.position = position
        self.text = text


class UnknownIdentifierError(ExprSyntaxError):
    """Identifier is neither a declared variable, a parameter nor a function."""

    def __init__(self, name: str, position: int, text: str = "") -> None:
        super().__init__(f"unknown identifier '{name}'", position, text)
        self.name = name


class ExprEvaluationError(CartanError, ArithmeticError):
    """Evaluation failed; ``location`` is the canonical text of the failing node."""

    def __init__(self, message: str, location: Optional[str] = None) -> None:
        detail = f"{message} (in '{location}')" if location else message
        super().__init__(detail)
        self.location = location


class LeviDegenerateError(CartanError, ArithmeticError):
    """Levi factor (graph) or l(F)/F_w^2 (implicit) vanishes at the point."""


class NonRealLeviFactorError(CartanError, ArithmeticError):
    """Levi factor has an imaginary residue beyond tolerance."""


class OffSurfaceError(CartanError, ValueError):
    """Point does not lie on the implicit hypersurface."""


class VanishingFwError(CartanError, ArithmeticError):
    """F_w vanishes at the point; the implicit formula does not apply there."""


class DomainError(CartanError, ValueError):
    """Model or chart domain violated (parameter range, radicand, cone)."""


class ModelNotFoundError(CartanError, KeyError):
    """Unknown model id or chart name."""

    exit_code = USAGE_EXIT_CODE

    def __str__(self) -> str:  # KeyError quotes its argument
        return str(self.args[0]) if self.args else ""


class ScanError(CartanError, RuntimeError):
    """Scan or cross check has nothing admissible to evaluate."""


__all__ = [
    "USAGE_EXIT_CODE",
    "MATH_EXIT_CODE",
    "CartanError",
    "JetShapeError",
    "JetDomainError",
    "ExprSyntaxError",
    "UnknownIdentifierError",
    "ExprEvaluationError",
    "LeviDegenerateError",
    "NonRealLeviFactorError",
    "OffSurfaceError",
    "VanishingFwError",
    "DomainError",
    "ModelNotFoundError",
    "ScanError",
]
