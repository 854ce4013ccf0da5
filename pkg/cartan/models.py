"""
Result models returned by the invariant engines.
Pydantic models keep the engine outputs validated and serializable.
"""
from typing import List, Tuple

from pydantic import BaseModel, Field, model_validator


class CartanGraphResult(BaseModel):
    """Cartan invariant J (group factor dropped) of a graph v = phi(x, y, u)."""
    j_star: complex
    levi_factor: float
    pbar_value: complex
    point: Tuple[float, float, float]
    terms: List[complex] = Field(default_factory=list, description="The six bracket terms, each divided by 6.")
    phi_value: float = 0.0

    @property
    def magnitude(self) -> float:
        return abs(self.j_star)

    @property
    def bracket(self) -> complex:
        """The six-term bracket itself, 6 J; closed forms of the tube models are quoted in this normalization."""
        return 6.0 * self.j_star

    def normalized_magnitude(self) -> float:
        scale = max([1.0] + [abs(t) for t in self.terms])
        return abs(self.j_star) / scale


class ImplicitResult(BaseModel):
    """I_[w] = 12 F_w^9 (I_1 + ... + I_7) at a point of 0 = F(z, w, zb, wb)."""
    i_w: complex
    terms: List[complex] = Field(min_length=7, max_length=7)
    f_w: complex
    point: Tuple[complex, complex]
    f_value: complex = 0j
    projected: bool = False
    l_value: complex = 0j

    @model_validator(mode="after")
    def _check_assembly(self) -> "ImplicitResult":
        assembled = 12 * self.f_w ** 9 * sum(self.terms)
        if abs(assembled - self.i_w) > 1e-12 * max(1.0, abs(assembled)):
            raise ValueError("i_w does not equal 12 * f_w^9 * sum(terms)")
        return self

    @property
    def magnitude(self) -> float:
        return abs(self.i_w)

    def normalized_magnitude(self) -> float:
        prefactor = abs(12 * self.f_w ** 9)
        scale = max([1.0] + [prefactor * abs(t) for t in self.terms])
        return abs(self.i_w) / scale


class LeviMatrixResult(BaseModel):
    """Complex Hessian (Levi matrix) of a real function on C^2."""
    levi_matrix: List[List[complex]]
    eigenvalues: Tuple[float, float]
    min_eigenvalue: float

    @property
    def is_strictly_psh(self) -> bool:
        return self.min_eigenvalue > 0


__all__ = ["CartanGraphResult", "ImplicitResult", "LeviMatrixResult"]
