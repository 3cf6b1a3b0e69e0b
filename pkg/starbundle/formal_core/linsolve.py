"""Exact sparse Gaussian elimination over Gaussian rationals.

Rows are sparse mappings from column index to ``ComplexScalar``. Each row
entering ``SparseEchelon`` is reduced against the pivot rows already held,
keyed by their leading column, so the pivot set depends only on the row space
and the column order. Back substitution with every free variable set to zero
then gives one canonical solution, which is why callers list their unknowns
from simplest to most complex.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

import logging
from collections.abc import Iterable, Mapping, Sequence

from starbundle.formal_core.scalars import ZERO, ComplexScalar

logger = logging.getLogger(__name__)

__all__ = [
    "Row",
    "SparseEchelon",
    "nullspace",
    "solve_linear_system",
]

Row = Mapping[int, ComplexScalar]


class SparseEchelon:
    """An incrementally built echelon form of a linear system.

    Attributes:
        ncols: Number of unknowns
        pivots: Pivot rows keyed by leading column, each with its right-hand side
        consistent: False once a row reduces to ``0 = nonzero``
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, tuple[dict[int, ComplexScalar], ComplexScalar]] = {}
        self.consistent = True
        self.rows_seen = 0

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def add_row(self, row: Row, rhs: ComplexScalar = ZERO) -> bool:
        """Reduce one equation into the echelon form.

        Args:
            row: Sparse coefficients of the equation
            rhs: Right-hand side

        Returns:
            bool: Whether the system is still consistent
        """
        self.rows_seen += 1
        current = {column: value for column, value in row.items() if not value.is_zero()}
        target = rhs
        while current:
            lead = min(current)
            if lead >= self.ncols:
                raise IndexError(f"column {lead} outside a system of {self.ncols} unknowns")
            pivot = self.pivots.get(lead)
            if pivot is None:
                self.pivots[lead] = (current, target)
                return self.consistent
            pivot_row, pivot_rhs = pivot
            factor = current[lead] / pivot_row[lead]
            for column, value in pivot_row.items():
                updated = current.get(column, ZERO) - factor * value
                if updated.is_zero():
                    current.pop(column, None)
                else:
                    current[column] = updated
            target = target - factor * pivot_rhs
        if not target.is_zero():
            self.consistent = False
        return self.consistent

    def add_rows(self, rows: Iterable[tuple[Row, ComplexScalar]]) -> bool:
        for row, rhs in rows:
            self.add_row(row, rhs)
        return self.consistent

    def free_columns(self) -> list[int]:
        return [column for column in range(self.ncols) if column not in self.pivots]

    def _back_substitute(self, solution: list[ComplexScalar], homogeneous: bool) -> list[ComplexScalar]:
        for lead in sorted(self.pivots, reverse=True):
            pivot_row, pivot_rhs = self.pivots[lead]
            total = ZERO if homogeneous else pivot_rhs
            for column, value in pivot_row.items():
                if column != lead:
                    total = total - value * solution[column]
            solution[lead] = total / pivot_row[lead]
        return solution

    def solve(self) -> list[ComplexScalar] | None:
        """The canonical solution with every free variable zero, or None when inconsistent."""
        if not self.consistent:
            return None
        logger.debug(f"Solving {self.rows_seen} equations in {self.ncols} unknowns, rank {self.rank}")
        return self._back_substitute([ZERO] * self.ncols, homogeneous=False)

    def nullspace(self) -> list[list[ComplexScalar]]:
        """A basis of the homogeneous solutions, one vector per free column in column order."""
        basis = []
        for free in self.free_columns():
            vector = [ZERO] * self.ncols
            vector[free] = ComplexScalar(1)
            basis.append(self._back_substitute(vector, homogeneous=True))
        return basis


def solve_linear_system(
    rows: Sequence[Row], rhs: Sequence[ComplexScalar], ncols: int
) -> list[ComplexScalar] | None:
    """Solve ``rows * x = rhs`` exactly.

    Args:
        rows: Sparse equations
        rhs: Right-hand sides, one per row
        ncols: Number of unknowns

    Returns:
        list | None: The canonical pivot solution (free variables zero), or None if inconsistent
    """
    if len(rows) != len(rhs):
        raise ValueError(f"{len(rows)} rows but {len(rhs)} right-hand sides")
    echelon = SparseEchelon(ncols)
    echelon.add_rows(zip(rows, rhs, strict=True))
    return echelon.solve()


def nullspace(rows: Sequence[Row], ncols: int) -> list[list[ComplexScalar]]:
    """Basis of ``{x : rows * x = 0}``.

    Args:
        rows: Sparse equations
        ncols: Number of unknowns

    Returns:
        list: Basis vectors, each with a single free coordinate equal to 1
    """
    echelon = SparseEchelon(ncols)
    for row in rows:
        echelon.add_row(row)
    return echelon.nullspace()
