"""Deformed right module structures on total-space functions.

``F . f = F pr^*f + sum_r lam^r rho_r(f)(F)``, with each ``rho_r`` a 1-cochain
whose values are operators on the total space. The module law
``F . (f * g) = (F . f) . g`` is the operator identity
``rho(f * g) = rho(g) o rho(f)`` between series of operators.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from typing import Any

from starbundle.common.exceptions import LayoutMismatch, OrderMismatch
from starbundle.formal_core.diffop import DiffOp, MultiDiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.series import FormalSeries, lift_series
from starbundle.hochschild.cochain import Cochain
from starbundle.hochschild.model import SubmersionModel
from starbundle.star_products.equivalence import EquivalenceTransform, apply_equivalence
from starbundle.star_products.star import StarProduct

logger = logging.getLogger(__name__)

__all__ = [
    "ModuleDeformation",
    "product_bundle_module",
    "star_on_base",
]


def star_on_base(star: StarProduct, model: SubmersionModel) -> StarProduct:
    """Re-express a product on the base variables as a product on the model's base layout."""
    if star.layout == model.base_layout:
        return star
    if star.layout.names != model.base:
        raise LayoutMismatch(f"star product on {star.layout.names} does not live on the base {model.base}")
    return star.extend_to(model.base_layout)


class ModuleDeformation:
    """A truncated deformation ``rho_0 + lam rho_1 + ... + lam^k rho_k``.

    Attributes:
        star: The base star product ``S``
        model: The bundle model
        stages: ``rho_1..rho_k``; ``rho_0`` is the pulled-back multiplication
        label: Short description used in logs and reports
    """

    def __init__(self, star: StarProduct, model: SubmersionModel, stages: Sequence[Cochain], label: str = "module"):
        self.model = model
        self.star = star_on_base(star, model)
        for index, stage in enumerate(stages, start=1):
            if stage.arity != 1 or stage.model != model:
                raise LayoutMismatch(f"stage {index} is not a 1-cochain over {model}")
        self.stages: tuple[Cochain, ...] = tuple(stages)
        self.label = label

    @property
    def order(self) -> int:
        return len(self.stages)

    def stage(self, index: int) -> Cochain:
        if index == 0:
            return Cochain.pullback_multiplication(self.model)
        if index > self.order:
            return Cochain.zero(self.model, 1)
        return self.stages[index - 1]

    def star_at_order(self) -> StarProduct:
        """The base product truncated (or padded with zero cochains) to the module order."""
        star = self.star
        return StarProduct(
            star.layout,
            [star.cochain(r) for r in range(self.order + 1)],
            hermitian_claimed=star.hermitian_claimed,
            label=star.label,
            require_unital=star.is_unital(),
        )

    def operator(self, function: Polynomial | FormalSeries[Polynomial]) -> FormalSeries[DiffOp]:
        """The right-multiplication operator series ``F -> F . f``."""
        argument: FormalSeries[Any] = lift_series(function, self.order)
        zero = DiffOp.zero(self.model.total_layout)
        coefficients = [zero] * (self.order + 1)
        for b, coefficient in enumerate(argument):
            if coefficient.is_zero():
                continue
            base_value = self.model.to_base(coefficient)
            for a in range(self.order + 1 - b):
                stage = self.stage(a)
                if not stage.is_zero():
                    coefficients[a + b] = coefficients[a + b] + stage.evaluate(base_value)
        return FormalSeries(coefficients, self.order)

    def act(
        self, element: Polynomial | FormalSeries[Polynomial], function: Polynomial | FormalSeries[Polynomial]
    ) -> FormalSeries[Polynomial]:
        """``F . f`` for series on both sides."""
        operators = self.operator(function)
        argument: FormalSeries[Any] = lift_series(element, self.order)
        zero = Polynomial.zero(self.model.total_layout)
        coefficients = [zero] * (self.order + 1)
        for a, operator in enumerate(operators):
            for b in range(self.order + 1 - a):
                coefficients[a + b] = coefficients[a + b] + operator.apply(argument[b])
        return FormalSeries(coefficients, self.order)

    def truncate(self, order: int) -> ModuleDeformation:
        if order > self.order:
            raise OrderMismatch(self.order, order)
        return ModuleDeformation(self.star, self.model, self.stages[:order], label=self.label)

    def extended(self, stage: Cochain) -> ModuleDeformation:
        """Append ``rho_{k+1}``."""
        return ModuleDeformation(self.star, self.model, [*self.stages, stage], label=self.label)

    def conjugate(self, transform: EquivalenceTransform) -> ModuleDeformation:
        """The structure ``F .~ f = T(T^{-1} F . f)``, equivalent to this one through ``T``.

        Raises:
            OrderMismatch: If ``T`` is truncated at another order
            LayoutMismatch: If ``T`` does not act on the total space
        """
        if transform.order != self.order:
            raise OrderMismatch(self.order, transform.order)
        if transform.layout != self.model.total_layout:
            raise LayoutMismatch("the transform must act on total-space functions")
        inverse = transform.inverse()
        stages = []
        for n in range(1, self.order + 1):
            total = Cochain.zero(self.model, 1)
            for a in range(n + 1):
                outer = transform.stage(a)
                if outer.is_zero():
                    continue
                for b in range(n + 1 - a):
                    inner = inverse.stage(n - a - b)
                    if inner.is_zero():
                        continue
                    total = total + self.stage(b).precompose(inner).postcompose(outer)
            stages.append(total)
        return ModuleDeformation(self.star, self.model, stages, label=f"{self.label} conjugated")

    def reparametrize(self, transform: EquivalenceTransform, star: StarProduct | None = None) -> ModuleDeformation:
        """``F .~ f = F . Phi(f)``, a module over ``f *' g = Phi^{-1}(Phi f * Phi g)``.

        Args:
            transform: ``Phi`` on base functions
            star: The product ``*'`` when already known; computed from ``Phi`` otherwise

        Returns:
            ModuleDeformation: The reparametrized structure over ``*'``
        """
        if transform.order != self.order:
            raise OrderMismatch(self.order, transform.order)
        if star is None:
            star = apply_equivalence(transform.extend_to(self.star.layout), self.star_at_order())
        stages = []
        for n in range(1, self.order + 1):
            total = Cochain.zero(self.model, 1)
            for a in range(n + 1):
                step = transform.stage(n - a)
                if step.is_zero():
                    continue
                substitution = MultiDiffOp.from_diffop(step.transfer(self.model.base_layout))
                total = total + self.stage(a).substitute_slot(0, substitution)
            stages.append(total)
        return ModuleDeformation(star, self.model, stages, label=f"{self.label} reparametrized")

    def perturb(self, index: int, cochain: Cochain) -> ModuleDeformation:
        """Add ``cochain`` to ``rho_index``, padding with zero stages when needed."""
        if index < 1:
            raise ValueError("only stages rho_1 and above can be perturbed")
        stages = list(self.stages) + [Cochain.zero(self.model, 1)] * max(0, index - self.order)
        stages[index - 1] = stages[index - 1] + cochain
        return ModuleDeformation(self.star, self.model, stages, label=f"{self.label} perturbed")

    def is_t_independent(self) -> bool:
        return all(stage.is_t_independent() for stage in self.stages)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ModuleDeformation):
            return NotImplemented
        return self.model == other.model and self.star == other.star and self.stages == other.stages

    def __hash__(self) -> int:
        return hash((self.model, self.star, self.stages))

    def __repr__(self) -> str:
        return f"ModuleDeformation({self.label}, order={self.order})"


def product_bundle_module(star: StarProduct, model: SubmersionModel) -> ModuleDeformation:
    """The module of the product bundle: ``F . f = F (*) pr^*f`` with ``*`` acting on the base directions.

    Args:
        star: The base star product
        model: The bundle model

    Returns:
        ModuleDeformation: Stages ``rho_r(f)(F) = C_r(F, pr^*f)``, one for each cochain of ``star``
    """
    base_star = star_on_base(star, model)
    stages = [Cochain.from_product_bundle(model, base_star.cochain(r)) for r in range(1, base_star.order + 1)]
    logger.debug(f"Product bundle module over {base_star!r} with {len(stages)} stages")
    return ModuleDeformation(base_star, model, stages, label="product bundle")
