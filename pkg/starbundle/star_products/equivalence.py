"""Equivalence transformations ``T = id + sum lam^r T_r`` and their action on products.

``apply_equivalence`` produces ``f *' g = T^{-1}(T f * T g)``. The new cochains
are assembled as operators, ``C'_n = sum_{a+b+c+d=n} (T^{-1})_a o C_b o (T_c x T_d)``,
so the result is again an exact cochain list rather than a black box.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from fractions import Fraction
from math import factorial
from typing import Any

from starbundle.common.exceptions import LayoutMismatch, OrderMismatch, UnitalityViolation
from starbundle.formal_core.diffop import DiffOp, MultiDiffOp
from starbundle.formal_core.multiindex import zero_index
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.series import FormalSeries, lift_series
from starbundle.star_products.star import StarProduct

logger = logging.getLogger(__name__)

__all__ = [
    "EquivalenceTransform",
    "apply_equivalence",
    "exponential",
]


class EquivalenceTransform:
    """A formal series of operators starting at the identity.

    Attributes:
        layout: Variables the stages act on
        stages: ``T_1..T_N``; ``T_0`` is the identity
    """

    __slots__ = ("layout", "stages")

    def __init__(self, layout: VariableLayout, stages: Sequence[DiffOp]):
        for stage in stages:
            if stage.layout != layout:
                raise LayoutMismatch(f"Transform stage is not on layout {layout.names}")
        self.layout = layout
        self.stages: tuple[DiffOp, ...] = tuple(stages)

    @classmethod
    def identity(cls, layout: VariableLayout, order: int) -> EquivalenceTransform:
        return cls(layout, [DiffOp.zero(layout)] * order)

    @classmethod
    def from_series(cls, series: FormalSeries[DiffOp]) -> EquivalenceTransform:
        """Wrap an operator series whose order-0 part is the identity."""
        head = series[0]
        if head != DiffOp.identity(head.layout):
            raise ValueError("an equivalence transform starts with the identity")
        return cls(head.layout, list(series.coeffs[1:]))

    @property
    def order(self) -> int:
        return len(self.stages)

    def stage(self, index: int) -> DiffOp:
        if index == 0:
            return DiffOp.identity(self.layout)
        if index > self.order:
            return DiffOp.zero(self.layout)
        return self.stages[index - 1]

    def series(self) -> FormalSeries[DiffOp]:
        return FormalSeries([DiffOp.identity(self.layout), *self.stages], self.order)

    def apply(self, function: FormalSeries[Polynomial] | Polynomial) -> FormalSeries[Polynomial]:
        """``(T F)_n = sum_{a+b=n} T_a(F_b)``."""
        argument: FormalSeries[Any] = lift_series(function, self.order)
        zero = Polynomial.zero(self.layout)
        coefficients = [zero] * (self.order + 1)
        for a in range(self.order + 1):
            operator = self.stage(a)
            for b in range(self.order + 1 - a):
                coefficients[a + b] = coefficients[a + b] + operator.apply(argument[b])
        return FormalSeries(coefficients, self.order)

    def __call__(self, function: FormalSeries[Polynomial] | Polynomial) -> FormalSeries[Polynomial]:
        return self.apply(function)

    def inverse(self) -> EquivalenceTransform:
        return EquivalenceTransform.from_series(self.series().invert())

    def compose(self, other: EquivalenceTransform) -> EquivalenceTransform:
        """``self o other``."""
        if other.order != self.order:
            raise OrderMismatch(self.order, other.order)
        return EquivalenceTransform.from_series(self.series() * other.series())

    def is_real(self) -> bool:
        return all(stage.conjugate() == stage for stage in self.stages)

    def first_non_unital_stage(self) -> int | None:
        """The first ``r`` with ``T_r(1) != 0``, if any."""
        constant = zero_index(self.layout.size)
        for index, stage in enumerate(self.stages, start=1):
            if constant in stage.terms:
                return index
        return None

    def extend_to(self, layout: VariableLayout) -> EquivalenceTransform:
        return EquivalenceTransform(layout, [stage.transfer(layout) for stage in self.stages])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EquivalenceTransform):
            return NotImplemented
        return self.layout == other.layout and self.stages == other.stages

    def __hash__(self) -> int:
        return hash((self.layout, self.stages))

    def __repr__(self) -> str:
        return f"EquivalenceTransform({[str(stage) for stage in self.stages]})"


def exponential(generator: DiffOp, order: int) -> EquivalenceTransform:
    """``exp(lam D)`` truncated at ``order``, with stages ``D^r / r!``."""
    stages = []
    power = DiffOp.identity(generator.layout)
    for r in range(1, order + 1):
        power = power * generator
        stages.append(power.scale(Fraction(1, factorial(r))))
    return EquivalenceTransform(generator.layout, stages)


def apply_equivalence(transform: EquivalenceTransform, star: StarProduct) -> StarProduct:
    """The product ``f *' g = T^{-1}(T f * T g)``.

    Args:
        transform: ``T`` with ``T_r(1) = 0`` for every stage
        star: The product being transported

    Returns:
        StarProduct: The transported product, Hermitian when ``star`` is and ``T`` is real

    Raises:
        UnitalityViolation: If some ``T_r(1) != 0``
        OrderMismatch: If the truncation orders differ
    """
    if transform.order != star.order:
        raise OrderMismatch(star.order, transform.order)
    failing = transform.first_non_unital_stage()
    if failing is not None:
        raise UnitalityViolation(failing)
    order = star.order
    layout = star.layout
    inverse = transform.inverse()
    cochains = []
    for n in range(order + 1):
        total = MultiDiffOp.zero(layout, 2)
        for a in range(n + 1):
            outer = inverse.stage(a)
            if outer.is_zero():
                continue
            for b in range(n + 1 - a):
                cochain = star.cochain(b)
                if cochain.is_zero():
                    continue
                for c in range(n + 1 - a - b):
                    d = n - a - b - c
                    left, right = transform.stage(c), transform.stage(d)
                    if left.is_zero() or right.is_zero():
                        continue
                    total = total + cochain.compose_arguments(left, right).after(outer)
        cochains.append(total)
        logger.debug(f"Transported cochain of order {n}: {len(total.terms)} terms")
    return StarProduct(
        layout,
        cochains,
        hermitian_claimed=star.hermitian_claimed and transform.is_real(),
        label=f"{star.label}-transformed",
        require_unital=star.is_unital(),
    )
