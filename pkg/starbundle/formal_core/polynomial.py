"""Multivariate polynomials over Gaussian rationals on split variable sets.

A ``VariableLayout`` fixes the ordered base variables ``x_1..x_m`` and fiber
variables ``t_1..t_k``. A ``Polynomial`` is a sparse map from exponent tuples
over all layout variables to ``ComplexScalar`` coefficients; zero coefficients
are never stored, so structural equality is mathematical equality.

Base functions are polynomials whose fiber exponents vanish, which makes the
pull-back along the projection an embedding of representations.

References:
    - [fractions - Rational numbers](https://docs.python.org/3/library/fractions.html)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from starbundle.common.exceptions import InvertError, LayoutMismatch
from starbundle.formal_core.multiindex import (
    MultiIndex,
    add_indices,
    falling_factorial,
    index_degree,
    indices_up_to,
    sub_indices,
    zero_index,
)
from starbundle.formal_core.scalars import ONE, ZERO, ComplexScalar, ScalarLike

__all__ = [
    "Polynomial",
    "VariableLayout",
    "monomials",
    "sum_polynomials",
]

IDENTIFIER_PATTERN = re.compile(r"^[A-Za-z][A-Za-z0-9]*$")


@dataclass(frozen=True)
class VariableLayout:
    """Ordered base and fiber variable names.

    Attributes:
        base: Base variable names x_1..x_m
        fiber: Fiber variable names t_1..t_k
    """

    base: tuple[str, ...]
    fiber: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(self.base))
        object.__setattr__(self, "fiber", tuple(self.fiber))
        names = self.names
        if len(set(names)) != len(names):
            raise LayoutMismatch(f"Variable names must be distinct: {names}")
        for name in names:
            if not IDENTIFIER_PATTERN.match(name):
                raise LayoutMismatch(f"Variable name '{name}' is not a plain identifier")

    @property
    def names(self) -> tuple[str, ...]:
        return self.base + self.fiber

    @property
    def size(self) -> int:
        return len(self.base) + len(self.fiber)

    @property
    def base_positions(self) -> tuple[int, ...]:
        return tuple(range(len(self.base)))

    @property
    def fiber_positions(self) -> tuple[int, ...]:
        return tuple(range(len(self.base), self.size))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError as e:
            raise LayoutMismatch(f"Variable '{name}' is not in layout {self.names}") from e

    def base_layout(self) -> VariableLayout:
        return VariableLayout(self.base, ())

    def is_base_index(self, alpha: MultiIndex) -> bool:
        """Whether ``alpha`` has no fiber components."""
        return all(alpha[position] == 0 for position in self.fiber_positions)

    def is_fiber_index(self, alpha: MultiIndex) -> bool:
        """Whether ``alpha`` has no base components."""
        return all(alpha[position] == 0 for position in self.base_positions)

    def transfer(self, alpha: MultiIndex, source: VariableLayout) -> MultiIndex:
        """Re-express a multi-index of ``source`` in this layout, matching variables by name.

        Raises:
            LayoutMismatch: If a nonzero component names a variable this layout lacks
        """
        if source == self:
            return alpha
        result = [0] * self.size
        for name, value in zip(source.names, alpha, strict=True):
            if value == 0:
                continue
            result[self.index(name)] = value
        return tuple(result)


class Polynomial:
    """A polynomial with ``ComplexScalar`` coefficients.

    Attributes:
        layout: The variable layout the exponents refer to
        terms: Mapping from exponent tuple to nonzero coefficient
    """

    __slots__ = ("_hash", "layout", "terms")

    def __init__(self, layout: VariableLayout, terms: Mapping[MultiIndex, ScalarLike] | None = None):
        self.layout = layout
        cleaned: dict[MultiIndex, ComplexScalar] = {}
        if terms:
            for exponent, coefficient in terms.items():
                if len(exponent) != layout.size:
                    raise LayoutMismatch(f"Exponent {exponent} does not fit layout {layout.names}")
                value = ComplexScalar.coerce(coefficient)
                if not value.is_zero():
                    cleaned[tuple(exponent)] = value
        self.terms: dict[MultiIndex, ComplexScalar] = cleaned
        self._hash: int | None = None

    @classmethod
    def _raw(cls, layout: VariableLayout, terms: dict[MultiIndex, ComplexScalar]) -> Polynomial:
        """Wrap an already-normalized term map without copying."""
        result = cls.__new__(cls)
        result.layout = layout
        result.terms = terms
        result._hash = None
        return result

    # Constructors

    @classmethod
    def zero(cls, layout: VariableLayout) -> Polynomial:
        return cls._raw(layout, {})

    @classmethod
    def constant(cls, layout: VariableLayout, value: ScalarLike) -> Polynomial:
        return cls(layout, {zero_index(layout.size): value})

    @classmethod
    def one(cls, layout: VariableLayout) -> Polynomial:
        return cls.constant(layout, ONE)

    @classmethod
    def variable(cls, layout: VariableLayout, name: str) -> Polynomial:
        position = layout.index(name)
        exponent = tuple(1 if slot == position else 0 for slot in range(layout.size))
        return cls._raw(layout, {exponent: ONE})

    @classmethod
    def monomial(cls, layout: VariableLayout, exponent: MultiIndex, coefficient: ScalarLike = ONE) -> Polynomial:
        return cls(layout, {tuple(exponent): coefficient})

    # Inspection

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(index_degree(exponent) == 0 for exponent in self.terms)

    def constant_term(self) -> ComplexScalar:
        return self.terms.get(zero_index(self.layout.size), ZERO)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((index_degree(exponent) for exponent in self.terms), default=-1)

    def is_base_only(self) -> bool:
        return all(self.layout.is_base_index(exponent) for exponent in self.terms)

    def is_real(self) -> bool:
        return all(coefficient.is_real() for coefficient in self.terms.values())

    def depends_on(self, position: int) -> bool:
        return any(exponent[position] for exponent in self.terms)

    # Ring operations

    def _coerce(self, other: object) -> Polynomial | None:
        if isinstance(other, Polynomial):
            if other.layout != self.layout:
                raise LayoutMismatch(f"Layouts differ: {self.layout.names} vs {other.layout.names}")
            return other
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return Polynomial.constant(self.layout, other)
        return None

    def __add__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        terms = dict(self.terms)
        for exponent, coefficient in rhs.terms.items():
            total = terms.get(exponent, ZERO) + coefficient
            if total.is_zero():
                terms.pop(exponent, None)
            else:
                terms[exponent] = total
        return Polynomial._raw(self.layout, terms)

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial._raw(self.layout, {exponent: -coefficient for exponent, coefficient in self.terms.items()})

    def __sub__(self, other: object) -> Polynomial:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return self + (-rhs)

    def __rsub__(self, other: object) -> Polynomial:
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def scale(self, factor: ScalarLike) -> Polynomial:
        value = ComplexScalar.coerce(factor)
        if value.is_zero():
            return Polynomial.zero(self.layout)
        terms = {exponent: coefficient * value for exponent, coefficient in self.terms.items()}
        return Polynomial._raw(self.layout, terms)

    def __mul__(self, other: object) -> Polynomial:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if other.layout != self.layout:
            raise LayoutMismatch(f"Layouts differ: {self.layout.names} vs {other.layout.names}")
        terms: dict[MultiIndex, ComplexScalar] = {}
        for left_exponent, left in self.terms.items():
            for right_exponent, right in other.terms.items():
                exponent = add_indices(left_exponent, right_exponent)
                terms[exponent] = terms.get(exponent, ZERO) + left * right
        return Polynomial._raw(self.layout, {e: c for e, c in terms.items() if not c.is_zero()})

    def __rmul__(self, other: object) -> Polynomial:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other: object) -> Polynomial:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(ComplexScalar.coerce(other).inverse())
        if isinstance(other, Polynomial) and other.is_constant():
            return self.scale(other.constant_term().inverse())
        return NotImplemented

    def __pow__(self, exponent: int) -> Polynomial:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Polynomial.one(self.layout)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> Polynomial:
        """Inverse of a nonzero constant polynomial.

        Raises:
            InvertError: If the polynomial is not a nonzero constant
        """
        if not self.is_constant() or self.is_zero():
            raise InvertError(f"polynomial {self} is not a nonzero constant")
        return Polynomial.constant(self.layout, self.constant_term().inverse())

    def conjugate(self) -> Polynomial:
        return Polynomial._raw(
            self.layout, {exponent: coefficient.conjugate() for exponent, coefficient in self.terms.items()}
        )

    # Calculus and substitution

    def derivative(self, alpha: MultiIndex) -> Polynomial:
        """Apply ``d^alpha``."""
        if not any(alpha):
            return self
        terms: dict[MultiIndex, ComplexScalar] = {}
        for exponent, coefficient in self.terms.items():
            weight = falling_factorial(exponent, alpha)
            if weight:
                terms[sub_indices(exponent, alpha)] = coefficient * weight
        return Polynomial._raw(self.layout, terms)

    def partial(self, name: str, times: int = 1) -> Polynomial:
        position = self.layout.index(name)
        alpha = tuple(times if slot == position else 0 for slot in range(self.layout.size))
        return self.derivative(alpha)

    def evaluate(self, point: Mapping[str, ScalarLike]) -> ComplexScalar:
        """Evaluate at a point given by variable name; missing variables default to 0."""
        values = [ComplexScalar.coerce(point.get(name, 0)) for name in self.layout.names]
        total = ZERO
        for exponent, coefficient in self.terms.items():
            term = coefficient
            for value, power in zip(values, exponent, strict=True):
                if power:
                    term = term * value**power
            total = total + term
        return total

    def substitute_shift(self, position: int, shift: ScalarLike) -> Polynomial:
        """Substitute ``v -> v + shift`` for the variable at ``position``."""
        amount = ComplexScalar.coerce(shift)
        if amount.is_zero():
            return self
        terms: dict[MultiIndex, ComplexScalar] = {}
        for exponent, coefficient in self.terms.items():
            power = exponent[position]
            for kept in range(power + 1):
                new_exponent = exponent[:position] + (kept,) + exponent[position + 1 :]
                value = coefficient * comb(power, kept) * amount ** (power - kept)
                terms[new_exponent] = terms.get(new_exponent, ZERO) + value
        return Polynomial._raw(self.layout, {e: c for e, c in terms.items() if not c.is_zero()})

    def transfer(self, layout: VariableLayout) -> Polynomial:
        """Re-express in another layout, matching variables by name.

        Raises:
            LayoutMismatch: If a variable in use is missing from ``layout``
        """
        if layout == self.layout:
            return self
        return Polynomial._raw(
            layout,
            {layout.transfer(exponent, self.layout): coefficient for exponent, coefficient in self.terms.items()},
        )

    # Comparison and formatting

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self.layout == other.layout and self.terms == other.terms
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            if not self.terms:
                return ComplexScalar.coerce(other).is_zero()
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.layout, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self) -> list[tuple[MultiIndex, ComplexScalar]]:
        """Terms in display order: higher total degree first, then lexicographically descending."""
        return sorted(self.terms.items(), key=lambda item: (index_degree(item[0]), item[0]), reverse=True)

    def _monomial_text(self, exponent: MultiIndex) -> str:
        factors = []
        for name, power in zip(self.layout.names, exponent, strict=True):
            if power == 1:
                factors.append(name)
            elif power > 1:
                factors.append(f"{name}^{power}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces: list[str] = []
        for exponent, coefficient in self.sorted_terms():
            monomial = self._monomial_text(exponent)
            if not monomial:
                text = str(coefficient)
            elif coefficient == 1:
                text = monomial
            elif coefficient == -1:
                text = f"-{monomial}"
            else:
                text = f"{coefficient}*{monomial}"
            pieces.append(text)
        rendered = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                rendered += f" - {piece[1:]}"
            else:
                rendered += f" + {piece}"
        return rendered

    def __repr__(self) -> str:
        return f"Polynomial({self!s})"


def monomials(layout: VariableLayout, degree_bound: int, positions: Sequence[int] | None = None) -> list[Polynomial]:
    """All monic monomials of total degree at most ``degree_bound``.

    Args:
        layout: Layout of the returned polynomials
        degree_bound: Largest total degree
        positions: Variable positions allowed to appear (defaults to the base variables)

    Returns:
        list[Polynomial]: Monomials ordered by degree, 1 first
    """
    active = layout.base_positions if positions is None else tuple(positions)
    return [Polynomial.monomial(layout, exponent) for exponent in indices_up_to(layout.size, degree_bound, active)]


def sum_polynomials(layout: VariableLayout, items: Iterable[Polynomial]) -> Polynomial:
    """Sum an iterable of polynomials on ``layout``."""
    total = Polynomial.zero(layout)
    for item in items:
        total = total + item
    return total
