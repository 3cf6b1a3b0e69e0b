"""Matrices over the star product algebra and the deformation of idempotents.

``deform_idempotent`` runs the iteration ``e <- 3 e*e - 2 e*e*e``. If
``e*e - e`` vanishes below order ``p`` the update makes it vanish below ``2p``,
while the order-0 part stays ``e_0``. Starting from the classical projector the
defect is first seen at order 1, so ``ceil(log2(N+1))`` steps reach the
truncation order.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass

from starbundle.common.exceptions import LayoutMismatch, NotIdempotent, OrderMismatch
from starbundle.formal_core.matrix import PolyMatrix
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.series import FormalSeries
from starbundle.star_products.star import StarProduct, star_multiply

logger = logging.getLogger(__name__)

__all__ = [
    "IdempotentMatrix",
    "NewtonStep",
    "SeriesMatrix",
    "deform_idempotent",
    "intertwiner",
]

PolySeries = FormalSeries[Polynomial]


class SeriesMatrix:
    """A matrix whose entries are series of polynomials of one truncation order.

    Attributes:
        layout: Layout of every coefficient
        order: Shared truncation order
        rows: Entries, row-major
    """

    __slots__ = ("layout", "order", "rows")

    def __init__(self, layout: VariableLayout, order: int, rows: Sequence[Sequence[PolySeries]]):
        if len({len(row) for row in rows}) > 1:
            raise ValueError("matrix rows have different lengths")
        for row in rows:
            for entry in row:
                if entry.order != order:
                    raise OrderMismatch(order, entry.order)
                if entry[0].layout != layout:
                    raise LayoutMismatch(f"matrix entry is not on layout {layout.names}")
        self.layout = layout
        self.order = order
        self.rows: tuple[tuple[PolySeries, ...], ...] = tuple(tuple(row) for row in rows)

    @classmethod
    def from_classical(cls, matrix: PolyMatrix, order: int) -> SeriesMatrix:
        return cls(matrix.layout, order, [[FormalSeries.constant(entry, order) for entry in row] for row in matrix])

    @classmethod
    def identity(cls, layout: VariableLayout, size: int, order: int) -> SeriesMatrix:
        return cls.from_classical(PolyMatrix.identity(layout, size), order)

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def __getitem__(self, index: tuple[int, int]) -> PolySeries:
        row, column = index
        return self.rows[row][column]

    def __iter__(self) -> Iterator[tuple[PolySeries, ...]]:
        return iter(self.rows)

    def map(self, function: Callable[[PolySeries], PolySeries]) -> SeriesMatrix:
        return SeriesMatrix(self.layout, self.order, [[function(entry) for entry in row] for row in self.rows])

    def __add__(self, other: SeriesMatrix) -> SeriesMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shapes differ: {self.shape} vs {other.shape}")
        return SeriesMatrix(
            self.layout,
            self.order,
            [[a + b for a, b in zip(left, right, strict=True)] for left, right in zip(self, other, strict=True)],
        )

    def __sub__(self, other: SeriesMatrix) -> SeriesMatrix:
        return self + other.scale(-1)

    def scale(self, factor: int) -> SeriesMatrix:
        return self.map(lambda entry: entry * factor)

    def star_matmul(self, other: SeriesMatrix, star: StarProduct) -> SeriesMatrix:
        """Matrix product with entries multiplied by ``star``."""
        nrows, inner = self.shape
        other_rows, ncols = other.shape
        if inner != other_rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        zero = FormalSeries.constant(Polynomial.zero(self.layout), self.order)
        rows = []
        for i in range(nrows):
            row = []
            for j in range(ncols):
                total = zero
                for k in range(inner):
                    if self[i, k].is_zero() or other[k, j].is_zero():
                        continue
                    total = total + star_multiply(star, self[i, k], other[k, j])
                row.append(total)
            rows.append(row)
        return SeriesMatrix(self.layout, self.order, rows)

    def apply_to(self, vector: Sequence[PolySeries], star: StarProduct) -> list[PolySeries]:
        """``self * v`` for a column vector."""
        column = SeriesMatrix(self.layout, self.order, [[entry] for entry in vector])
        return [row[0] for row in self.star_matmul(column, star)]

    def conjugate_transpose(self) -> SeriesMatrix:
        nrows, ncols = self.shape
        rows = [[self[i, j].conjugate() for i in range(nrows)] for j in range(ncols)]
        return SeriesMatrix(self.layout, self.order, rows)

    def order0(self) -> PolyMatrix:
        return PolyMatrix(self.layout, [[entry[0] for entry in row] for row in self.rows])

    def lowest_order(self) -> int | None:
        """Lowest order at which any entry is nonzero."""
        orders = [entry.lowest_order() for row in self.rows for entry in row]
        found = [order for order in orders if order is not None]
        return min(found) if found else None

    def is_zero(self) -> bool:
        return self.lowest_order() is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SeriesMatrix):
            return NotImplemented
        return self.layout == other.layout and self.order == other.order and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.layout, self.order, self.rows))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(entry) for entry in row) for row in self.rows) + "]"


@dataclass(frozen=True)
class NewtonStep:
    """One step of the idempotent iteration.

    Attributes:
        step: 0 for the starting matrix, then 1, 2, ...
        defect_order: Lowest order of ``e*e - e`` after the step (None once it vanishes)
    """

    step: int
    defect_order: int | None


class IdempotentMatrix(SeriesMatrix):
    """A series matrix with ``e*e = e`` modulo ``lam^(N+1)``, plus how it was obtained.

    Attributes:
        classical: The order-0 projector ``e_0``
        history: Defect order after each iteration step
    """

    __slots__ = ("classical", "history")

    def __init__(self, matrix: SeriesMatrix, classical: PolyMatrix, history: Sequence[NewtonStep]):
        super().__init__(matrix.layout, matrix.order, matrix.rows)
        self.classical = classical
        self.history: tuple[NewtonStep, ...] = tuple(history)

    @property
    def size(self) -> int:
        return self.shape[0]


def _defect(e: SeriesMatrix, star: StarProduct) -> int | None:
    return (e.star_matmul(e, star) - e).lowest_order()


def deform_idempotent(
    classical: PolyMatrix, star: StarProduct, initial: SeriesMatrix | None = None
) -> IdempotentMatrix:
    """Deform a classical projector into a star-idempotent.

    Args:
        classical: ``e_0`` with ``e_0 e_0 = e_0`` pointwise
        star: An associative product
        initial: Optional starting series with order-0 part ``e_0``, selecting another iteration schedule

    Returns:
        IdempotentMatrix: ``e`` with ``e|_{lam=0} = e_0`` and ``e*e = e`` modulo ``lam^(N+1)``

    Raises:
        NotIdempotent: If ``e_0`` is not idempotent, or ``initial`` does not start at ``e_0``
    """
    if not classical.is_idempotent():
        raise NotIdempotent(f"classical matrix {classical} is not idempotent")
    classical = PolyMatrix(star.layout, [[entry.transfer(star.layout) for entry in row] for row in classical])
    order = star.order
    current = SeriesMatrix.from_classical(classical, order) if initial is None else initial
    if current.order0() != classical:
        raise NotIdempotent("the starting series does not reduce to the classical projector")
    defect = _defect(current, star)
    history = [NewtonStep(0, defect)]
    step = 0
    while defect is not None:
        step += 1
        square = current.star_matmul(current, star)
        cube = square.star_matmul(current, star)
        current = square.scale(3) - cube.scale(2)
        new_defect = _defect(current, star)
        logger.debug(f"Idempotent iteration step {step}: defect order {defect} -> {new_defect}")
        if new_defect is not None and new_defect < min(2 * defect, order + 1):
            logger.error(f"Iteration lost precision at step {step}: {defect} -> {new_defect}")
            raise NotIdempotent(f"the product is not associative enough to iterate (step {step})")
        defect = new_defect
        history.append(NewtonStep(step, defect))
    return IdempotentMatrix(current, classical, history)


def intertwiner(e: SeriesMatrix, other: SeriesMatrix, star: StarProduct) -> SeriesMatrix:
    """``u = e'*e + (1 - e')*(1 - e)``, which carries the range of ``e`` into the range of ``e'``.

    ``u`` reduces to the identity at order 0 when both deform the same ``e_0``.
    """
    size = e.shape[0]
    one = SeriesMatrix.identity(e.layout, size, e.order)
    return other.star_matmul(e, star) + (one - other).star_matmul(one - e, star)
