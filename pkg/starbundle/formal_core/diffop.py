"""Differential and multidifferential operators with polynomial coefficients.

A ``DiffOp`` is kept in normal order, ``D = sum_alpha a_alpha d^alpha`` with
each coefficient to the left of its derivative. Normal order is unique for
polynomial coefficients, so structural equality is operator equality.

A ``MultiDiffOp`` of arity k is ``(f_1..f_k) -> sum c * prod d^{alpha_i} f_i``;
bidifferential star product cochains are the arity-2 case.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

from collections.abc import Mapping
from fractions import Fraction
from itertools import product

from starbundle.common.exceptions import InvertError, LayoutMismatch
from starbundle.formal_core.multiindex import (
    MultiIndex,
    add_indices,
    binomial,
    index_degree,
    leibniz_splits,
    lower_indices,
    sub_indices,
    zero_index,
)
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.scalars import ComplexScalar, ScalarLike

__all__ = [
    "DiffOp",
    "MultiDiffOp",
    "diffop_apply",
    "diffop_compose",
]


def _accumulate(target: dict, key: object, value: Polynomial) -> None:
    current = target.get(key)
    target[key] = value if current is None else current + value


def _clean(terms: dict) -> dict:
    return {key: value for key, value in terms.items() if not value.is_zero()}


class DiffOp:
    """A finite-order differential operator on one layout.

    Attributes:
        layout: Variables the operator differentiates and multiplies by
        terms: Mapping from derivative multi-index to nonzero coefficient
    """

    __slots__ = ("layout", "terms")

    def __init__(self, layout: VariableLayout, terms: Mapping[MultiIndex, Polynomial] | None = None):
        self.layout = layout
        cleaned: dict[MultiIndex, Polynomial] = {}
        for alpha, coefficient in (terms or {}).items():
            if coefficient.layout != layout or len(alpha) != layout.size:
                raise LayoutMismatch(f"Operator term {alpha} does not fit layout {layout.names}")
            if not coefficient.is_zero():
                _accumulate(cleaned, tuple(alpha), coefficient)
        self.terms: dict[MultiIndex, Polynomial] = _clean(cleaned)

    @classmethod
    def zero(cls, layout: VariableLayout) -> DiffOp:
        return cls(layout)

    @classmethod
    def multiplication(cls, coefficient: Polynomial) -> DiffOp:
        return cls(coefficient.layout, {zero_index(coefficient.layout.size): coefficient})

    @classmethod
    def identity(cls, layout: VariableLayout) -> DiffOp:
        return cls.multiplication(Polynomial.one(layout))

    @classmethod
    def scalar(cls, layout: VariableLayout, value: ScalarLike) -> DiffOp:
        return cls.multiplication(Polynomial.constant(layout, value))

    @classmethod
    def derivative(cls, layout: VariableLayout, alpha: MultiIndex, coefficient: Polynomial | None = None) -> DiffOp:
        return cls(layout, {tuple(alpha): coefficient if coefficient is not None else Polynomial.one(layout)})

    @classmethod
    def partial(cls, layout: VariableLayout, name: str, times: int = 1) -> DiffOp:
        position = layout.index(name)
        alpha = tuple(times if slot == position else 0 for slot in range(layout.size))
        return cls.derivative(layout, alpha)

    def is_zero(self) -> bool:
        return not self.terms

    def order(self) -> int:
        return max((index_degree(alpha) for alpha in self.terms), default=0)

    def is_vertical(self) -> bool:
        """No term differentiates along a base variable."""
        return all(self.layout.is_fiber_index(alpha) for alpha in self.terms)

    def is_t_independent(self) -> bool:
        """No coefficient depends on a fiber variable."""
        return all(coefficient.is_base_only() for coefficient in self.terms.values())

    def apply(self, function: Polynomial) -> Polynomial:
        if function.layout != self.layout:
            raise LayoutMismatch(f"Operator on {self.layout.names} applied to function on {function.layout.names}")
        result = Polynomial.zero(self.layout)
        for alpha, coefficient in self.terms.items():
            derived = function.derivative(alpha)
            if not derived.is_zero():
                result = result + coefficient * derived
        return result

    def __call__(self, function: Polynomial) -> Polynomial:
        return self.apply(function)

    def __add__(self, other: object) -> DiffOp:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            other = DiffOp.scalar(self.layout, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for alpha, coefficient in other.terms.items():
            _accumulate(terms, alpha, coefficient)
        return DiffOp(self.layout, _clean(terms))

    __radd__ = __add__

    def __neg__(self) -> DiffOp:
        return DiffOp(self.layout, {alpha: -coefficient for alpha, coefficient in self.terms.items()})

    def __sub__(self, other: object) -> DiffOp:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            other = DiffOp.scalar(self.layout, other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: object) -> DiffOp:
        return (-self) + other

    def scale(self, factor: ScalarLike) -> DiffOp:
        return DiffOp(self.layout, {alpha: coefficient.scale(factor) for alpha, coefficient in self.terms.items()})

    def __mul__(self, other: object) -> DiffOp:
        """Composition ``self o other``; scalars scale."""
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        self._check(other)
        terms: dict[MultiIndex, Polynomial] = {}
        for alpha, left in self.terms.items():
            for beta, right in other.terms.items():
                for gamma in lower_indices(alpha):
                    derived = right.derivative(gamma)
                    if derived.is_zero():
                        continue
                    weight = binomial(alpha, gamma)
                    key = add_indices(sub_indices(alpha, gamma), beta)
                    _accumulate(terms, key, (left * derived).scale(weight))
        return DiffOp(self.layout, _clean(terms))

    def __rmul__(self, other: object) -> DiffOp:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, exponent: int) -> DiffOp:
        result = DiffOp.identity(self.layout)
        for _ in range(exponent):
            result = result * self
        return result

    def commutator(self, other: DiffOp) -> DiffOp:
        return self * other - other * self

    def conjugate(self) -> DiffOp:
        """Conjugate coefficients; real derivatives are untouched."""
        return DiffOp(self.layout, {alpha: coefficient.conjugate() for alpha, coefficient in self.terms.items()})

    def inverse(self) -> DiffOp:
        """Inverse of a nonzero scalar multiple of the identity.

        Raises:
            InvertError: For any other operator
        """
        zero = zero_index(self.layout.size)
        if set(self.terms) != {zero} or not self.terms[zero].is_constant():
            raise InvertError(f"operator {self} is not an invertible scalar")
        return DiffOp.scalar(self.layout, self.terms[zero].constant_term().inverse())

    def substitute_shift(self, position: int, shift: ScalarLike) -> DiffOp:
        """Conjugate by the translation ``v -> v + shift``; derivatives are invariant."""
        return DiffOp(
            self.layout,
            {alpha: coefficient.substitute_shift(position, shift) for alpha, coefficient in self.terms.items()},
        )

    def transfer(self, layout: VariableLayout) -> DiffOp:
        """Re-express on another layout, matching variables by name."""
        if layout == self.layout:
            return self
        return DiffOp(
            layout,
            {
                layout.transfer(alpha, self.layout): coefficient.transfer(layout)
                for alpha, coefficient in self.terms.items()
            },
        )

    def _check(self, other: DiffOp) -> None:
        if other.layout != self.layout:
            raise LayoutMismatch(f"Layouts differ: {self.layout.names} vs {other.layout.names}")

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DiffOp):
            return self.layout == other.layout and self.terms == other.terms
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self == DiffOp.scalar(self.layout, other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.layout, frozenset(self.terms.items())))

    def _derivative_text(self, alpha: MultiIndex) -> str:
        factors = []
        for name, power in zip(self.layout.names, alpha, strict=True):
            if power == 1:
                factors.append(f"d_{name}")
            elif power > 1:
                factors.append(f"d_{name}^{power}")
        return "*".join(factors)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        ordered = sorted(self.terms.items(), key=lambda item: (index_degree(item[0]), item[0]), reverse=True)
        for alpha, coefficient in ordered:
            derivative = self._derivative_text(alpha)
            text = str(coefficient)
            if len(coefficient.terms) > 1:
                text = f"({text})"
            if not derivative:
                pieces.append(text)
            elif coefficient == 1:
                pieces.append(derivative)
            elif coefficient == -1:
                pieces.append(f"-{derivative}")
            else:
                pieces.append(f"{text}*{derivative}")
        rendered = pieces[0]
        for piece in pieces[1:]:
            rendered += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return rendered

    def __repr__(self) -> str:
        return f"DiffOp({self!s})"


def diffop_apply(operator: DiffOp, function: Polynomial) -> Polynomial:
    """Apply ``operator`` to ``function``."""
    return operator.apply(function)


def diffop_compose(first: DiffOp, second: DiffOp) -> DiffOp:
    """The composition ``first o second``."""
    return first * second


class MultiDiffOp:
    """A k-linear multidifferential operator.

    Attributes:
        layout: Variables of the arguments and coefficients
        arity: Number of arguments k
        terms: Mapping from a k-tuple of derivative multi-indices to nonzero coefficient
    """

    __slots__ = ("arity", "layout", "terms")

    def __init__(
        self, layout: VariableLayout, arity: int, terms: Mapping[tuple[MultiIndex, ...], Polynomial] | None = None
    ):
        self.layout = layout
        self.arity = arity
        cleaned: dict[tuple[MultiIndex, ...], Polynomial] = {}
        for key, coefficient in (terms or {}).items():
            if len(key) != arity or coefficient.layout != layout:
                raise LayoutMismatch(f"Cochain term {key} does not fit arity {arity} on {layout.names}")
            if not coefficient.is_zero():
                _accumulate(cleaned, tuple(tuple(alpha) for alpha in key), coefficient)
        self.terms: dict[tuple[MultiIndex, ...], Polynomial] = _clean(cleaned)

    @classmethod
    def zero(cls, layout: VariableLayout, arity: int) -> MultiDiffOp:
        return cls(layout, arity)

    @classmethod
    def pointwise_product(cls, layout: VariableLayout, arity: int = 2) -> MultiDiffOp:
        """The pointwise product ``f_1 ... f_k``."""
        return cls(layout, arity, {(zero_index(layout.size),) * arity: Polynomial.one(layout)})

    @classmethod
    def from_diffop(cls, operator: DiffOp) -> MultiDiffOp:
        """View a differential operator as an arity-1 cochain."""
        return cls(operator.layout, 1, {(alpha,): coefficient for alpha, coefficient in operator.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, *functions: Polynomial) -> Polynomial:
        if len(functions) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(functions)}")
        caches: list[dict[MultiIndex, Polynomial]] = [{} for _ in functions]
        result = Polynomial.zero(self.layout)
        for key, coefficient in self.terms.items():
            value = coefficient
            for slot, alpha in enumerate(key):
                cache = caches[slot]
                derived = cache.get(alpha)
                if derived is None:
                    derived = functions[slot].derivative(alpha)
                    cache[alpha] = derived
                if derived.is_zero():
                    value = Polynomial.zero(self.layout)
                    break
                value = value * derived
            result = result + value
        return result

    def __call__(self, *functions: Polynomial) -> Polynomial:
        return self.apply(*functions)

    def __add__(self, other: object) -> MultiDiffOp:
        if not isinstance(other, MultiDiffOp):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, coefficient in other.terms.items():
            _accumulate(terms, key, coefficient)
        return MultiDiffOp(self.layout, self.arity, _clean(terms))

    def __neg__(self) -> MultiDiffOp:
        return self.scale(-1)

    def __sub__(self, other: object) -> MultiDiffOp:
        if not isinstance(other, MultiDiffOp):
            return NotImplemented
        return self + (-other)

    def scale(self, factor: ScalarLike) -> MultiDiffOp:
        return MultiDiffOp(self.layout, self.arity, {key: value.scale(factor) for key, value in self.terms.items()})

    def __mul__(self, other: object) -> MultiDiffOp:
        if isinstance(other, (ComplexScalar, int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> MultiDiffOp:
        return MultiDiffOp(self.layout, self.arity, {key: value.conjugate() for key, value in self.terms.items()})

    def swapped(self) -> MultiDiffOp:
        """For arity 2, the operator ``(f, g) -> C(g, f)``."""
        if self.arity != 2:  # noqa: PLR2004
            raise ValueError("argument swap is defined for bidifferential operators")
        return MultiDiffOp(self.layout, 2, {(key[1], key[0]): value for key, value in self.terms.items()})

    def slot_orders(self) -> tuple[int, ...]:
        """Largest derivative order appearing in each argument slot."""
        orders = [0] * self.arity
        for key in self.terms:
            for slot, alpha in enumerate(key):
                orders[slot] = max(orders[slot], index_degree(alpha))
        return tuple(orders)

    def annihilates_constants(self) -> bool:
        """Whether the operator vanishes as soon as any argument is constant."""
        return all(all(any(alpha) for alpha in key) for key in self.terms)

    def compose_arguments(self, *operators: DiffOp) -> MultiDiffOp:
        """The operator ``(f_1..f_k) -> C(D_1 f_1, .., D_k f_k)``."""
        if len(operators) != self.arity:
            raise ValueError(f"expected {self.arity} operators, got {len(operators)}")
        terms: dict[tuple[MultiIndex, ...], Polynomial] = {}
        for key, coefficient in self.terms.items():
            expansions = [
                list((DiffOp.derivative(self.layout, alpha) * operator).terms.items())
                for alpha, operator in zip(key, operators, strict=True)
            ]
            for choice in product(*expansions):
                value = coefficient
                for _, factor in choice:
                    value = value * factor
                _accumulate(terms, tuple(alpha for alpha, _ in choice), value)
        return MultiDiffOp(self.layout, self.arity, _clean(terms))

    def after(self, operator: DiffOp) -> MultiDiffOp:
        """The operator ``(f_1..f_k) -> D(C(f_1..f_k))``."""
        terms: dict[tuple[MultiIndex, ...], Polynomial] = {}
        for gamma, outer in operator.terms.items():
            for key, coefficient in self.terms.items():
                for split, weight in leibniz_splits(gamma, self.arity + 1):
                    derived = coefficient.derivative(split[0])
                    if derived.is_zero():
                        continue
                    new_key = tuple(add_indices(alpha, part) for alpha, part in zip(key, split[1:], strict=True))
                    _accumulate(terms, new_key, (outer * derived).scale(weight))
        return MultiDiffOp(self.layout, self.arity, _clean(terms))

    def transfer(self, layout: VariableLayout) -> MultiDiffOp:
        """Re-express on another layout, matching variables by name."""
        if layout == self.layout:
            return self
        return MultiDiffOp(
            layout,
            self.arity,
            {
                tuple(layout.transfer(alpha, self.layout) for alpha in key): value.transfer(layout)
                for key, value in self.terms.items()
            },
        )

    def _check(self, other: MultiDiffOp) -> None:
        if other.layout != self.layout or other.arity != self.arity:
            raise LayoutMismatch("Multidifferential operators of different shape")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiDiffOp):
            return NotImplemented
        return self.layout == other.layout and self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.layout, self.arity, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiDiffOp(arity={self.arity}, terms={len(self.terms)})"
