"""Poisson tensors, their brackets and the Schouten self-bracket.

References:
    - [Poisson manifold](https://en.wikipedia.org/wiki/Poisson_manifold)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

from collections.abc import Mapping
from itertools import combinations

from starbundle.common.exceptions import LayoutMismatch
from starbundle.formal_core.multiindex import unit_index
from starbundle.formal_core.polynomial import Polynomial, VariableLayout, sum_polynomials
from starbundle.formal_core.scalars import ScalarLike

__all__ = [
    "PoissonTensor",
    "jacobi_defect",
    "schouten_square",
]

Trivector = dict[tuple[int, int, int], Polynomial]


class PoissonTensor:
    """An antisymmetric bivector ``theta^{mu nu}`` on the base variables.

    Attributes:
        layout: Base layout the components live on
        components: Full antisymmetric matrix of components, 0-indexed
    """

    __slots__ = ("components", "layout")

    def __init__(self, layout: VariableLayout, components: Mapping[tuple[int, int], Polynomial]):
        """Build the full antisymmetric matrix from upper or lower entries.

        Args:
            layout: Base layout (no fiber variables)
            components: Entries ``(mu, nu) -> theta^{mu nu}``; the transposed entry is filled in

        Raises:
            LayoutMismatch: On fiber variables, out-of-range indices or conflicting entries
        """
        if layout.fiber:
            raise LayoutMismatch("Poisson tensors live on base variables only")
        size = layout.size
        zero = Polynomial.zero(layout)
        matrix = [[zero] * size for _ in range(size)]
        for (mu, nu), value in components.items():
            if not (0 <= mu < size and 0 <= nu < size):
                raise LayoutMismatch(f"Component ({mu}, {nu}) outside dimension {size}")
            value = value.transfer(layout)
            if mu == nu:
                if not value.is_zero():
                    raise LayoutMismatch(f"Diagonal component ({mu}, {mu}) must vanish")
                continue
            existing = matrix[mu][nu]
            if not existing.is_zero() and existing != value:
                raise LayoutMismatch(f"Component ({mu}, {nu}) given twice with different values")
            matrix[mu][nu] = value
            matrix[nu][mu] = -value
        self.layout = layout
        self.components: tuple[tuple[Polynomial, ...], ...] = tuple(tuple(row) for row in matrix)

    @classmethod
    def constant(cls, layout: VariableLayout, entries: Mapping[tuple[int, int], ScalarLike]) -> PoissonTensor:
        return cls(layout, {key: Polynomial.constant(layout, value) for key, value in entries.items()})

    @property
    def dimension(self) -> int:
        return self.layout.size

    def component(self, mu: int, nu: int) -> Polynomial:
        return self.components[mu][nu]

    def is_constant(self) -> bool:
        return all(entry.is_constant() for row in self.components for entry in row)

    def is_real(self) -> bool:
        return all(entry.is_real() for row in self.components for entry in row)

    def bracket(self, f: Polynomial, g: Polynomial) -> Polynomial:
        """``{f, g} = theta^{mu nu} d_mu f d_nu g``."""
        size = self.dimension
        df = [f.derivative(unit_index(size, mu)) for mu in range(size)]
        dg = [g.derivative(unit_index(size, nu)) for nu in range(size)]
        return sum_polynomials(
            self.layout,
            (
                self.components[mu][nu] * df[mu] * dg[nu]
                for mu in range(size)
                for nu in range(size)
                if not self.components[mu][nu].is_zero()
            ),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PoissonTensor):
            return NotImplemented
        return self.layout == other.layout and self.components == other.components

    def __hash__(self) -> int:
        return hash((self.layout, self.components))

    def __repr__(self) -> str:
        return f"PoissonTensor({self.layout.base}, {[[str(e) for e in row] for row in self.components]})"


def schouten_square(theta: PoissonTensor) -> Trivector:
    """Cyclic-sum trivector whose vanishing is the Jacobi identity.

    ``J^{mu nu kappa} = sum_l (theta^{l mu} d_l theta^{nu kappa} + theta^{l nu} d_l theta^{kappa mu}
    + theta^{l kappa} d_l theta^{mu nu})`` for ``mu < nu < kappa``.

    Args:
        theta: The bivector

    Returns:
        dict: Components keyed by increasing index triples; all zero iff theta is Poisson
    """
    size = theta.dimension
    directions = [unit_index(size, position) for position in range(size)]

    def partial(a: int, b: int, position: int) -> Polynomial:
        return theta.component(a, b).derivative(directions[position])

    result: Trivector = {}
    for mu, nu, kappa in combinations(range(size), 3):
        terms = []
        for position in range(size):
            terms.append(theta.component(position, mu) * partial(nu, kappa, position))
            terms.append(theta.component(position, nu) * partial(kappa, mu, position))
            terms.append(theta.component(position, kappa) * partial(mu, nu, position))
        result[(mu, nu, kappa)] = sum_polynomials(theta.layout, terms)
    return result


def jacobi_defect(theta: PoissonTensor, f: Polynomial, g: Polynomial, h: Polynomial) -> Polynomial:
    """``{{f,g},h} + {{g,h},f} + {{h,f},g}``."""
    bracket = theta.bracket
    return bracket(bracket(f, g), h) + bracket(bracket(g, h), f) + bracket(bracket(h, f), g)
