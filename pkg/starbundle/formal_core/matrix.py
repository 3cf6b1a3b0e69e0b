"""Immutable matrices of polynomials with the pointwise product."""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence

from starbundle.common.exceptions import LayoutMismatch
from starbundle.formal_core.polynomial import Polynomial, VariableLayout, sum_polynomials

__all__ = ["PolyMatrix"]


class PolyMatrix:
    """An ``n x k`` matrix of polynomials on one layout.

    Attributes:
        layout: Layout shared by every entry
        rows: Entries, row-major
    """

    __slots__ = ("layout", "rows")

    def __init__(self, layout: VariableLayout, rows: Sequence[Sequence[Polynomial]]):
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise ValueError("matrix rows have different lengths")
        for row in rows:
            for entry in row:
                if entry.layout != layout:
                    raise LayoutMismatch(f"matrix entry {entry} is not on layout {layout.names}")
        self.layout = layout
        self.rows: tuple[tuple[Polynomial, ...], ...] = tuple(tuple(row) for row in rows)

    @classmethod
    def identity(cls, layout: VariableLayout, size: int) -> PolyMatrix:
        one, zero = Polynomial.one(layout), Polynomial.zero(layout)
        return cls(layout, [[one if i == j else zero for j in range(size)] for i in range(size)])

    @classmethod
    def zeros(cls, layout: VariableLayout, nrows: int, ncols: int) -> PolyMatrix:
        return cls(layout, [[Polynomial.zero(layout)] * ncols for _ in range(nrows)])

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.rows[0]) if self.rows else 0

    def is_square(self) -> bool:
        nrows, ncols = self.shape
        return nrows == ncols

    def __getitem__(self, index: tuple[int, int]) -> Polynomial:
        row, column = index
        return self.rows[row][column]

    def __iter__(self) -> Iterator[tuple[Polynomial, ...]]:
        return iter(self.rows)

    def map(self, function: Callable[[Polynomial], Polynomial]) -> PolyMatrix:
        return PolyMatrix(self.layout, [[function(entry) for entry in row] for row in self.rows])

    def __add__(self, other: PolyMatrix) -> PolyMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shapes differ: {self.shape} vs {other.shape}")
        return PolyMatrix(
            self.layout,
            [[a + b for a, b in zip(left, right, strict=True)] for left, right in zip(self, other, strict=True)],
        )

    def __sub__(self, other: PolyMatrix) -> PolyMatrix:
        return self + other.map(lambda entry: -entry)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        nrows, inner = self.shape
        other_rows, ncols = other.shape
        if inner != other_rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        return PolyMatrix(
            self.layout,
            [
                [sum_polynomials(self.layout, (self[i, k] * other[k, j] for k in range(inner))) for j in range(ncols)]
                for i in range(nrows)
            ],
        )

    def conjugate_transpose(self) -> PolyMatrix:
        nrows, ncols = self.shape
        return PolyMatrix(self.layout, [[self[i, j].conjugate() for i in range(nrows)] for j in range(ncols)])

    def is_idempotent(self) -> bool:
        return self.is_square() and self @ self == self

    def is_hermitian(self) -> bool:
        return self.is_square() and self.conjugate_transpose() == self

    def is_base_only(self) -> bool:
        return all(entry.is_base_only() for row in self.rows for entry in row)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.layout == other.layout and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.layout, self.rows))

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(entry) for entry in row) for row in self.rows) + "]"

    def __repr__(self) -> str:
        return f"PolyMatrix({self!s})"
