"""The trivial-bundle model ``P = R^m x R^k`` with projection forgetting the fiber."""

from __future__ import annotations

from dataclasses import dataclass, field

from starbundle.common.exceptions import LayoutMismatch
from starbundle.formal_core.multiindex import MultiIndex
from starbundle.formal_core.polynomial import Polynomial, VariableLayout, monomials

__all__ = ["SubmersionModel"]


@dataclass(frozen=True)
class SubmersionModel:
    """Base variables ``x_1..x_m`` and fiber variables ``t_1..t_k``.

    Attributes:
        base: Base variable names
        fiber: Fiber variable names
    """

    base: tuple[str, ...]
    fiber: tuple[str, ...]
    total_layout: VariableLayout = field(init=False, repr=False, compare=False)
    base_layout: VariableLayout = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "fiber", tuple(self.fiber))
        object.__setattr__(self, "total_layout", VariableLayout(self.base, self.fiber))
        object.__setattr__(self, "base_layout", VariableLayout(self.base, ()))

    @property
    def base_size(self) -> int:
        return len(self.base)

    def pullback(self, function: Polynomial) -> Polynomial:
        """``pr^* f``; base polynomials embed with zero fiber exponents."""
        if not function.is_base_only():
            raise LayoutMismatch(f"{function} depends on fiber variables")
        return function.transfer(self.total_layout)

    def to_base(self, function: Polynomial) -> Polynomial:
        """Read a pulled-back function back on the base layout."""
        return function.transfer(self.base_layout)

    def is_pulled_back(self, function: Polynomial) -> bool:
        return function.is_base_only()

    def lift_index(self, beta: MultiIndex) -> MultiIndex:
        """A base multi-index as a total-space multi-index."""
        return tuple(beta) + (0,) * len(self.fiber)

    def base_part(self, alpha: MultiIndex) -> MultiIndex:
        """The base components of a total-space multi-index."""
        return tuple(alpha[: self.base_size])

    def base_monomials(self, degree_bound: int) -> list[Polynomial]:
        return monomials(self.base_layout, degree_bound)

    def total_monomials(self, degree_bound: int) -> list[Polynomial]:
        return monomials(self.total_layout, degree_bound, positions=range(self.total_layout.size))
