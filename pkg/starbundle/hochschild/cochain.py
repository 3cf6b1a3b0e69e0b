"""Differential Hochschild cochains of base functions with values in total-space operators.

A k-cochain is stored in primitive form: a map from tuples of base multi-indices
``(beta_1..beta_k)`` to operators ``A`` on the total space, with value

    c(f_1..f_k) = sum A o mult(pr^*(d^{beta_1} f_1 ... d^{beta_k} f_k)).

The primitive form is canonical. Expanding it into normal order is unipotent
triangular in the total derivative order of the arguments, so a cochain
vanishes exactly when its term map is empty and equality is structural.

The bimodule actions are ``(a . c)(..) = c(..) o mult(a)`` on the left and
``(c . b)(..) = mult(b) o c(..)`` on the right. Moving ``mult(h)`` past an
operator uses

    mult(h) o a d^alpha = sum_gamma (-1)^|gamma| C(alpha, gamma) a d^{alpha-gamma} o mult(d^gamma h),

where only base directions ``gamma`` survive because ``h`` is pulled back.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Iterator, Mapping
from itertools import product

from starbundle.common.constants import EQ_COCYCLE
from starbundle.common.exceptions import ArityUnsupported, LayoutMismatch
from starbundle.common.reports import Verdict, VerificationReport
from starbundle.formal_core.diffop import DiffOp, MultiDiffOp
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
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.scalars import ScalarLike
from starbundle.hochschild.model import SubmersionModel

logger = logging.getLogger(__name__)

__all__ = [
    "Cochain",
    "hochschild_delta",
    "is_cocycle",
    "move_multiplication_right",
]

Key = tuple[MultiIndex, ...]
MAX_DELTA_ARITY = 2
ARGUMENT_NAMES = ("f", "g", "h")


def _accumulate(terms: dict[Key, DiffOp], key: Key, operator: DiffOp) -> None:
    current = terms.get(key)
    terms[key] = operator if current is None else current + operator


def move_multiplication_right(model: SubmersionModel, operator: DiffOp) -> dict[MultiIndex, DiffOp]:
    """Rewrite ``mult(h) o D`` as ``sum_gamma D_gamma o mult(d^gamma h)`` for pulled-back ``h``.

    Args:
        model: The bundle model
        operator: ``D`` on the total space

    Returns:
        dict: ``D_gamma`` keyed by base multi-index ``gamma``
    """
    result: dict[MultiIndex, DiffOp] = {}
    layout = model.total_layout
    for alpha, coefficient in operator.terms.items():
        for gamma in lower_indices(alpha, positions=layout.base_positions):
            sign = -1 if index_degree(gamma) % 2 else 1
            weight = sign * binomial(alpha, gamma)
            piece = DiffOp.derivative(layout, sub_indices(alpha, gamma), coefficient.scale(weight))
            base_gamma = model.base_part(gamma)
            current = result.get(base_gamma)
            result[base_gamma] = piece if current is None else current + piece
    return {gamma: value for gamma, value in result.items() if not value.is_zero()}


class Cochain:
    """A k-cochain in primitive form.

    Attributes:
        model: The bundle model
        arity: Number of base function arguments
        terms: Operators ``A`` keyed by tuples of base multi-indices
    """

    __slots__ = ("arity", "model", "terms")

    def __init__(self, model: SubmersionModel, arity: int, terms: Mapping[Key, DiffOp] | None = None):
        self.model = model
        self.arity = arity
        cleaned: dict[Key, DiffOp] = {}
        for key, operator in (terms or {}).items():
            if len(key) != arity or any(len(beta) != model.base_size for beta in key):
                raise LayoutMismatch(f"Cochain key {key} does not fit arity {arity} over {model.base}")
            if operator.layout != model.total_layout:
                raise LayoutMismatch("Cochain values must be operators on the total space")
            _accumulate(cleaned, tuple(tuple(beta) for beta in key), operator)
        self.terms: dict[Key, DiffOp] = {key: value for key, value in cleaned.items() if not value.is_zero()}

    # Constructors

    @classmethod
    def zero(cls, model: SubmersionModel, arity: int) -> Cochain:
        return cls(model, arity)

    @classmethod
    def from_operator(cls, model: SubmersionModel, operator: DiffOp) -> Cochain:
        """A 0-cochain."""
        return cls(model, 0, {(): operator})

    @classmethod
    def pullback_multiplication(cls, model: SubmersionModel) -> Cochain:
        """``f -> mult(pr^* f)``."""
        return cls(model, 1, {(zero_index(model.base_size),): DiffOp.identity(model.total_layout)})

    @classmethod
    def from_multiplication(cls, model: SubmersionModel, cochain: MultiDiffOp) -> Cochain:
        """``(f_1..f_k) -> mult(pr^* C(f_1..f_k))`` for a base multidifferential ``C``."""
        terms: dict[Key, DiffOp] = {}
        for key, coefficient in cochain.terms.items():
            _accumulate(terms, key, DiffOp.multiplication(model.pullback(coefficient.transfer(model.base_layout))))
        return cls(model, cochain.arity, terms)

    @classmethod
    def from_product_bundle(cls, model: SubmersionModel, cochain: MultiDiffOp) -> Cochain:
        """``f -> [F -> C(F, pr^* f)]`` for a base bidifferential ``C`` acting along base directions of ``F``."""
        layout = model.total_layout
        terms: dict[Key, DiffOp] = {}
        for (alpha, beta), coefficient in cochain.terms.items():
            operator = DiffOp.derivative(
                layout, model.lift_index(alpha), model.pullback(coefficient.transfer(model.base_layout))
            )
            for gamma, piece in move_multiplication_right(model, operator).items():
                _accumulate(terms, (add_indices(beta, gamma),), piece)
        return cls(model, 1, terms)

    # Evaluation

    @property
    def operator(self) -> DiffOp:
        """The value of a 0-cochain."""
        if self.arity != 0:
            raise ArityUnsupported(self.arity)
        return self.terms.get((), DiffOp.zero(self.model.total_layout))

    def evaluate(self, *functions: Polynomial) -> DiffOp:
        """The operator ``c(f_1..f_k)`` for base polynomials."""
        if len(functions) != self.arity:
            raise ValueError(f"expected {self.arity} arguments, got {len(functions)}")
        arguments = [function.transfer(self.model.base_layout) for function in functions]
        total = DiffOp.zero(self.model.total_layout)
        for key, operator in self.terms.items():
            product_value = Polynomial.one(self.model.base_layout)
            for beta, argument in zip(key, arguments, strict=True):
                product_value = product_value * argument.derivative(beta)
                if product_value.is_zero():
                    break
            if not product_value.is_zero():
                total = total + operator * DiffOp.multiplication(self.model.pullback(product_value))
        return total

    def __call__(self, *functions: Polynomial) -> DiffOp:
        return self.evaluate(*functions)

    # Linear structure

    def is_zero(self) -> bool:
        return not self.terms

    def is_t_independent(self) -> bool:
        return all(operator.is_t_independent() for operator in self.terms.values())

    def order(self) -> int:
        """Largest operator order among the values ``A``."""
        return max((operator.order() for operator in self.terms.values()), default=0)

    def __add__(self, other: Cochain) -> Cochain:
        self._check(other)
        terms = dict(self.terms)
        for key, operator in other.terms.items():
            _accumulate(terms, key, operator)
        return Cochain(self.model, self.arity, terms)

    def __neg__(self) -> Cochain:
        return self.scale(-1)

    def __sub__(self, other: Cochain) -> Cochain:
        return self + (-other)

    def scale(self, factor: ScalarLike) -> Cochain:
        return Cochain(self.model, self.arity, {key: operator.scale(factor) for key, operator in self.terms.items()})

    def _check(self, other: Cochain) -> None:
        if other.model != self.model or other.arity != self.arity:
            raise LayoutMismatch("Cochains of different shape")

    # Bimodule structure and composition

    def left_action(self) -> Cochain:
        """``(f, g_1..g_k) -> c(g_1..g_k) o mult(f)``."""
        zero = zero_index(self.model.base_size)
        return Cochain(self.model, self.arity + 1, {(zero, *key): operator for key, operator in self.terms.items()})

    def right_action(self) -> Cochain:
        """``(g_1..g_k, h) -> mult(h) o c(g_1..g_k)``."""
        terms: dict[Key, DiffOp] = {}
        for key, operator in self.terms.items():
            for gamma, piece in move_multiplication_right(self.model, operator).items():
                _accumulate(terms, (*key, gamma), piece)
        return Cochain(self.model, self.arity + 1, terms)

    def merge_slots(self, slot: int) -> Cochain:
        """``(f_1..f_{k+1}) -> c(.., f_slot f_{slot+1}, ..)`` with 0-based ``slot``."""
        if not 0 <= slot < self.arity:
            raise ValueError(f"cannot merge slot {slot} of a {self.arity}-cochain")
        terms: dict[Key, DiffOp] = {}
        for key, operator in self.terms.items():
            beta = key[slot]
            for gamma in lower_indices(beta):
                new_key = (*key[:slot], gamma, sub_indices(beta, gamma), *key[slot + 1 :])
                _accumulate(terms, new_key, operator.scale(binomial(beta, gamma)))
        return Cochain(self.model, self.arity + 1, terms)

    def postcompose(self, operator: DiffOp) -> Cochain:
        """``(..) -> D o c(..)``."""
        return Cochain(self.model, self.arity, {key: operator * value for key, value in self.terms.items()})

    def precompose(self, operator: DiffOp) -> Cochain:
        """``(..) -> c(..) o D``."""
        if self.arity == 0:
            return Cochain(self.model, 0, {key: value * operator for key, value in self.terms.items()})
        moved = move_multiplication_right(self.model, operator)
        terms: dict[Key, DiffOp] = {}
        for key, value in self.terms.items():
            for gamma, piece in moved.items():
                # d^gamma lands on the product of the argument factors
                for split, weight in leibniz_splits(gamma, self.arity):
                    new_key = tuple(add_indices(beta, part) for beta, part in zip(key, split, strict=True))
                    _accumulate(terms, new_key, (value * piece).scale(weight))
        return Cochain(self.model, self.arity, terms)

    def after(self, inner: Cochain) -> Cochain:
        """``(f.., g..) -> c(g..) o inner(f..)``: ``inner``'s arguments come first."""
        self._check_model(inner)
        terms: dict[Key, DiffOp] = {}
        for outer_key, outer_value in self.terms.items():
            for inner_key, inner_value in inner.terms.items():
                if self.arity == 0:
                    _accumulate(terms, inner_key, outer_value * inner_value)
                    continue
                for gamma, piece in move_multiplication_right(self.model, inner_value).items():
                    composite = outer_value * piece
                    for split, weight in leibniz_splits(gamma, self.arity):
                        moved = tuple(add_indices(beta, part) for beta, part in zip(outer_key, split, strict=True))
                        _accumulate(terms, (*inner_key, *moved), composite.scale(weight))
        return Cochain(self.model, inner.arity + self.arity, terms)

    def substitute_slot(self, slot: int, cochain: MultiDiffOp) -> Cochain:
        """Feed a base multidifferential ``C`` into one argument: ``c(.., C(g_1..g_j), ..)``."""
        if not 0 <= slot < self.arity:
            raise ValueError(f"cannot substitute slot {slot} of a {self.arity}-cochain")
        base_layout = self.model.base_layout
        inserted = cochain.arity
        terms: dict[Key, DiffOp] = {}
        for key, operator in self.terms.items():
            beta = key[slot]
            for inner_key, coefficient in cochain.terms.items():
                coefficient = coefficient.transfer(base_layout)
                for split, weight in leibniz_splits(beta, inserted + 1):
                    derived = coefficient.derivative(split[0])
                    if derived.is_zero():
                        continue
                    value = (operator * DiffOp.multiplication(self.model.pullback(derived))).scale(weight)
                    middle = tuple(add_indices(alpha, part) for alpha, part in zip(inner_key, split[1:], strict=True))
                    _accumulate(terms, (*key[:slot], *middle, *key[slot + 1 :]), value)
        return Cochain(self.model, self.arity - 1 + inserted, terms)

    def _check_model(self, other: Cochain) -> None:
        if other.model != self.model:
            raise LayoutMismatch("Cochains over different models")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cochain):
            return NotImplemented
        return self.model == other.model and self.arity == other.arity and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.model, self.arity, frozenset(self.terms.items())))

    def _slot_text(self, beta: MultiIndex, name: str) -> str:
        parts = []
        for variable, power in zip(self.model.base, beta, strict=True):
            if power:
                parts.append(f"d_{variable}" if power == 1 else f"d_{variable}^{power}")
        return " ".join([*parts, name])

    def __str__(self) -> str:
        """Terms ``(A) [d^beta_1 f] [d^beta_2 g]`` in key order; the bracket means a multiplication operator."""
        if not self.terms:
            return "0"
        names = ARGUMENT_NAMES[: self.arity]
        pieces = []
        for key in sorted(self.terms):
            slots = "".join(f" [{self._slot_text(beta, name)}]" for beta, name in zip(key, names, strict=True))
            pieces.append(f"({self.terms[key]}){slots}")
        return " + ".join(pieces)

    def __repr__(self) -> str:
        return f"Cochain(arity={self.arity}, terms={len(self.terms)})"


def hochschild_delta(cochain: Cochain) -> Cochain:
    """The Hochschild differential for the bimodule of total-space operators.

    ``(dc)(f_1..f_{k+1}) = f_1 . c(f_2..) + sum_i (-1)^i c(.., f_i f_{i+1}, ..) + (-1)^{k+1} c(f_1..f_k) . f_{k+1}``.

    Args:
        cochain: A cochain of arity at most 2

    Returns:
        Cochain: Its coboundary, of arity one more

    Raises:
        ArityUnsupported: For arity above 2
    """
    arity = cochain.arity
    if arity > MAX_DELTA_ARITY or arity < 0:
        raise ArityUnsupported(arity)
    result = cochain.left_action()
    for slot in range(arity):
        merged = cochain.merge_slots(slot)
        result = result - merged if slot % 2 == 0 else result + merged
    right = cochain.right_action()
    return result - right if arity % 2 == 0 else result + right


def _tuples(model: SubmersionModel, arity: int, degree_bound: int) -> Iterator[tuple[Polynomial, ...]]:
    return product(model.base_monomials(degree_bound), repeat=arity)


def is_cocycle(cochain: Cochain, degree_bound: int) -> VerificationReport:
    """Evaluate ``dc`` on every base monomial tuple up to the degree bound.

    Args:
        cochain: A cochain of arity at most 2
        degree_bound: Largest monomial degree

    Returns:
        VerificationReport: Pass, or the first tuple on which ``dc`` is a nonzero operator
    """
    delta = hochschild_delta(cochain)
    bounds = {"degree_bound": degree_bound}
    checked = 0
    for arguments in _tuples(cochain.model, delta.arity, degree_bound):
        checked += 1
        value = delta.evaluate(*arguments)
        if not value.is_zero():
            logger.info(f"Cocycle condition fails on {[str(argument) for argument in arguments]}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="cocycle",
                equation=EQ_COCYCLE,
                witness=[str(argument) for argument in arguments],
                bounds=bounds,
                checked=checked,
                result={"value": str(value)},
            )
    return VerificationReport(
        verdict=Verdict.PASS, check="cocycle", equation=EQ_COCYCLE, bounds=bounds, checked=checked
    )
