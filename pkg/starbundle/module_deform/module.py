"""Deformed projective modules, right actions on them and module transforms.

Module elements are column vectors ``phi`` of series with ``e*phi = phi``.
The standard action multiplies componentwise, ``(phi . f)_i = phi_i * f``.
Other actions come from it by transport along a transform ``T``
(``phi .~ f = T(T^{-1} phi . f)``) or by adding a first-order perturbation.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any, Protocol

from starbundle.common.exceptions import InvertError, LayoutMismatch, NotInModule
from starbundle.formal_core.diffop import MultiDiffOp
from starbundle.formal_core.polynomial import Polynomial, monomials
from starbundle.formal_core.series import FormalSeries, lift_series
from starbundle.module_deform.idempotent import SeriesMatrix
from starbundle.star_products.equivalence import EquivalenceTransform
from starbundle.star_products.star import StarProduct, star_multiply

logger = logging.getLogger(__name__)

__all__ = [
    "ComponentTransform",
    "DeformedModuleElement",
    "LeftStarTransform",
    "ModuleAction",
    "ModuleTransform",
    "PerturbedModuleAction",
    "StarModuleAction",
    "TransformedModuleAction",
    "module_action",
    "module_generators",
    "project_to_module",
]

PolySeries = FormalSeries[Polynomial]
Vector = list[PolySeries]


class ModuleAction(Protocol):
    """A right action of the star product algebra on column vectors."""

    star: StarProduct
    idempotent: SeriesMatrix | None

    def act(self, vector: Sequence[PolySeries], function: PolySeries | Polynomial) -> Vector: ...


class ModuleTransform(Protocol):
    """An invertible map between spaces of column vectors."""

    def apply(self, vector: Sequence[PolySeries]) -> Vector: ...

    def inverse(self) -> ModuleTransform: ...


class DeformedModuleElement:
    """A vector ``phi`` in the range of a deformed idempotent.

    Attributes:
        components: The series entries of ``phi``
        idempotent: The projector ``e`` with ``e*phi = phi``
        star: The product both are taken over
    """

    __slots__ = ("components", "idempotent", "star")

    def __init__(self, components: Sequence[PolySeries], idempotent: SeriesMatrix, star: StarProduct):
        """Store the element after checking ``e*phi = phi``.

        Raises:
            NotInModule: If ``phi`` is not fixed by ``e``
        """
        if len(components) != idempotent.shape[0]:
            raise LayoutMismatch(f"vector of length {len(components)} for a {idempotent.shape} projector")
        vector = [lift_series(component, star.order) for component in components]
        if idempotent.apply_to(vector, star) != vector:
            raise NotInModule("the vector is not fixed by the projector")
        self.components: tuple[PolySeries, ...] = tuple(vector)
        self.idempotent = idempotent
        self.star = star

    def __len__(self) -> int:
        return len(self.components)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DeformedModuleElement):
            return NotImplemented
        return self.components == other.components and self.idempotent == other.idempotent

    def __hash__(self) -> int:
        return hash(self.components)

    def __str__(self) -> str:
        return "[" + "; ".join(str(component) for component in self.components) + "]"


def project_to_module(
    idempotent: SeriesMatrix, vector: Sequence[PolySeries | Polynomial], star: StarProduct
) -> DeformedModuleElement:
    """``e*v``, which always lies in the module of ``e``."""
    lifted = [lift_series(component, star.order) for component in vector]
    return DeformedModuleElement(idempotent.apply_to(lifted, star), idempotent, star)


def module_action(element: DeformedModuleElement, function: PolySeries | Polynomial) -> DeformedModuleElement:
    """``phi . f`` with ``(phi . f)_i = phi_i * f``.

    Raises:
        NotInModule: If ``element`` is not fixed by its projector
    """
    action = StarModuleAction(element.star, element.idempotent)
    return DeformedModuleElement(action.act(element.components, function), element.idempotent, element.star)


def module_generators(idempotent: SeriesMatrix, star: StarProduct, degree_bound: int) -> list[Vector]:
    """The elements ``e*(m e_j)`` for base monomials ``m`` up to the degree bound and unit vectors ``e_j``."""
    size = idempotent.shape[0]
    zero = FormalSeries.constant(Polynomial.zero(star.layout), star.order)
    generators = []
    for column in range(size):
        for monomial in monomials(star.layout, degree_bound):
            vector = [FormalSeries.constant(monomial, star.order) if row == column else zero for row in range(size)]
            generators.append(idempotent.apply_to(vector, star))
    return generators


class StarModuleAction:
    """The componentwise action ``(phi . f)_i = phi_i * f``."""

    def __init__(self, star: StarProduct, idempotent: SeriesMatrix | None = None):
        self.star = star
        self.idempotent = idempotent

    def act(self, vector: Sequence[PolySeries], function: PolySeries | Polynomial) -> Vector:
        return [star_multiply(self.star, component, function) for component in vector]


class TransformedModuleAction:
    """The action ``phi .~ f = T(T^{-1} phi . f)`` transported along ``T``."""

    def __init__(self, base: ModuleAction, transform: ModuleTransform, idempotent: SeriesMatrix | None = None):
        self.base = base
        self.transform = transform
        self.inverse_transform = transform.inverse()
        self.star = base.star
        self.idempotent = idempotent

    def act(self, vector: Sequence[PolySeries], function: PolySeries | Polynomial) -> Vector:
        return self.transform.apply(self.base.act(self.inverse_transform.apply(vector), function))


class PerturbedModuleAction:
    """The action ``(phi . f)_i + lam^power C(phi_i, f)`` for a bidifferential ``C``."""

    def __init__(self, base: ModuleAction, cochain: MultiDiffOp, power: int = 1):
        if cochain.arity != 2:  # noqa: PLR2004
            raise LayoutMismatch("a module perturbation is bidifferential")
        self.base = base
        self.cochain = cochain
        self.power = power
        self.star = base.star
        self.idempotent = base.idempotent

    def _perturbation(self, component: PolySeries, function: PolySeries) -> PolySeries:
        order = self.star.order
        zero = Polynomial.zero(self.star.layout)
        coefficients = [zero] * (order + 1)
        for a in range(order + 1 - self.power):
            for b in range(order + 1 - self.power - a):
                coefficients[a + b + self.power] = coefficients[a + b + self.power] + self.cochain.apply(
                    component[a], function[b]
                )
        return FormalSeries(coefficients, order)

    def act(self, vector: Sequence[PolySeries], function: PolySeries | Polynomial) -> Vector:
        lifted: FormalSeries[Any] = lift_series(function, self.star.order)
        base = self.base.act(vector, lifted)
        return [value + self._perturbation(component, lifted) for value, component in zip(base, vector, strict=True)]


class ComponentTransform:
    """An equivalence transform applied to every component."""

    def __init__(self, transform: EquivalenceTransform):
        self.transform = transform

    def apply(self, vector: Sequence[PolySeries]) -> Vector:
        return [self.transform.apply(component) for component in vector]

    def inverse(self) -> ComponentTransform:
        return ComponentTransform(self.transform.inverse())


class LeftStarTransform:
    """``phi -> u*phi`` for a series matrix ``u`` that is the identity at order 0."""

    def __init__(self, matrix: SeriesMatrix, star: StarProduct):
        self.matrix = matrix
        self.star = star

    def apply(self, vector: Sequence[PolySeries]) -> Vector:
        return self.matrix.apply_to(list(vector), self.star)

    def inverse(self) -> LeftStarTransform:
        """``u^{-1} = sum_k (1 - u)^k``, a finite sum since ``1 - u`` starts at order 1.

        Raises:
            InvertError: If ``u`` is not the identity at order 0
        """
        size = self.matrix.shape[0]
        one = SeriesMatrix.identity(self.matrix.layout, size, self.matrix.order)
        if self.matrix.order0() != one.order0():
            raise InvertError("the module transform is not the identity at order 0")
        nilpotent = one - self.matrix
        total = one
        power = one
        for _ in range(self.matrix.order):
            power = power.star_matmul(nilpotent, self.star)
            total = total + power
        return LeftStarTransform(total, self.star)
