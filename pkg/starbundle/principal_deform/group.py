"""Fiber translations as the structure group of the trivial-bundle model.

``g^*`` is the substitution ``t -> t + c``. Translations commute, so
``(g h)^* = h^* g^*`` holds as the sum of translation vectors, and a function
or operator is invariant exactly when its coefficients do not depend on ``t``.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from typing import overload

from starbundle.common.exceptions import LayoutMismatch
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.scalars import as_scalar
from starbundle.formal_core.series import FormalSeries
from starbundle.hochschild.model import SubmersionModel

__all__ = ["GroupActionModel", "Translation"]

Translation = tuple[Fraction, ...]


class GroupActionModel:
    """The translation group acting on the fiber variables.

    Attributes:
        model: The bundle model
        translations: Extra translation vectors tested on top of the unit generators
    """

    def __init__(self, model: SubmersionModel, translations: Sequence[Sequence[int | Fraction]] = ()):
        self.model = model
        checked = []
        for vector in translations:
            if len(vector) != len(model.fiber):
                raise LayoutMismatch(f"translation {vector} does not fit fiber {model.fiber}")
            checked.append(tuple(Fraction(value) for value in vector))
        self.translations: tuple[Translation, ...] = tuple(checked)

    def generators(self) -> list[Translation]:
        """Unit translations of each fiber variable, then the configured ones."""
        size = len(self.model.fiber)
        units = [tuple(Fraction(int(slot == position)) for slot in range(size)) for position in range(size)]
        return units + [vector for vector in self.translations if vector not in units]

    @staticmethod
    def compose(first: Translation, second: Translation) -> Translation:
        """The translation of ``g h``; its pullback is ``h^* o g^*``."""
        return tuple(a + b for a, b in zip(first, second, strict=True))

    def _fiber_positions(self) -> tuple[int, ...]:
        return self.model.total_layout.fiber_positions

    @overload
    def act(self, function: Polynomial, translation: Translation) -> Polynomial: ...

    @overload
    def act(self, function: FormalSeries[Polynomial], translation: Translation) -> FormalSeries[Polynomial]: ...

    def act(
        self, function: Polynomial | FormalSeries[Polynomial], translation: Translation
    ) -> Polynomial | FormalSeries[Polynomial]:
        """``g^* F``: substitute ``t -> t + c``."""
        if isinstance(function, FormalSeries):
            return function.map(lambda coefficient: self.act(coefficient, translation))
        result = function
        for position, shift in zip(self._fiber_positions(), translation, strict=True):
            if shift:
                result = result.substitute_shift(position, as_scalar(shift))
        return result

    def act_on_operator(self, operator: DiffOp, translation: Translation) -> DiffOp:
        """``g^* o D o (g^*)^{-1}``; an operator commutes with ``g^*`` iff this returns it unchanged."""
        result = operator
        for position, shift in zip(self._fiber_positions(), translation, strict=True):
            if shift:
                result = result.substitute_shift(position, as_scalar(shift))
        return result

    def __repr__(self) -> str:
        return f"GroupActionModel(fiber={self.model.fiber}, translations={len(self.translations)})"
