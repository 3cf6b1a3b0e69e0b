"""Bounded coboundary solver: find ``phi`` with ``d phi = R`` inside a finite ansatz.

The unknown is a combination of primitive terms ``c * d^alpha o mult(d^beta f)``
with the operator order, the coefficient degree and the base derivative order
capped by ``AnsatzBounds``. Since the primitive form is canonical, ``d phi = R``
is equivalent to equating the coefficients of every (key, derivative, exponent)
triple, which is an exact linear system. A system without solutions is reported
as inconclusive and never as a nontrivial cohomology class.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from collections.abc import Iterator
from itertools import product

from pydantic import BaseModel, Field

from starbundle.common.exceptions import ArityUnsupported, CohomologyError, NoSolutionInTruncation, NotACocycle
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.linsolve import SparseEchelon
from starbundle.formal_core.multiindex import MultiIndex, index_degree, indices_up_to
from starbundle.formal_core.polynomial import monomials
from starbundle.formal_core.scalars import ZERO, ComplexScalar
from starbundle.hochschild.cochain import Cochain, Key, hochschild_delta, is_cocycle
from starbundle.hochschild.model import SubmersionModel
from starbundle.settings import Settings, get_app_settings

logger = logging.getLogger(__name__)

__all__ = [
    "AnsatzBounds",
    "ansatz_basis",
    "solve_coboundary",
]

RowKey = tuple[Key, MultiIndex, MultiIndex]


class AnsatzBounds(BaseModel):
    """Truncation of the coboundary ansatz.

    Attributes:
        max_diffop_order: Largest order of the operator part ``d^alpha``
        max_coeff_degree: Largest degree of the polynomial coefficient ``c``
        max_base_derivatives: Largest order of the base derivative ``d^beta`` on the argument
    """

    max_diffop_order: int = Field(default=3, ge=0, description="Largest operator order in the ansatz")
    max_coeff_degree: int = Field(default=0, ge=0, description="Largest coefficient degree in the ansatz")
    max_base_derivatives: int = Field(default=3, ge=0, description="Largest base derivative order on arguments")

    @classmethod
    def from_settings(cls, settings: Settings | None = None) -> AnsatzBounds:
        settings = settings or get_app_settings()
        return cls(
            max_diffop_order=settings.ansatz_max_diffop_order,
            max_coeff_degree=settings.ansatz_max_coeff_degree,
            max_base_derivatives=settings.ansatz_max_base_derivatives,
        )

    @classmethod
    def parse(cls, text: str) -> AnsatzBounds:
        """Read the ``o,d,b`` command-line form.

        Raises:
            ValueError: If the text is not three comma-separated integers
        """
        parts = [part.strip() for part in text.split(",")]
        if len(parts) != 3 or not all(part.lstrip("-").isdigit() for part in parts):
            raise ValueError(f"bounds must look like 'o,d,b', got {text!r}")
        order, degree, derivatives = (int(part) for part in parts)
        return cls(max_diffop_order=order, max_coeff_degree=degree, max_base_derivatives=derivatives)

    def __str__(self) -> str:
        return f"{self.max_diffop_order},{self.max_coeff_degree},{self.max_base_derivatives}"


def _operator_basis(model: SubmersionModel, bounds: AnsatzBounds, equivariant: bool) -> list[tuple[int, DiffOp]]:
    layout = model.total_layout
    # t-independent coefficients span the translation-invariant subcomplex
    positions = layout.base_positions if equivariant else tuple(range(layout.size))
    coefficients = monomials(layout, bounds.max_coeff_degree, positions=positions)
    basis = []
    for alpha in indices_up_to(layout.size, bounds.max_diffop_order):
        for coefficient in coefficients:
            basis.append((index_degree(alpha) + coefficient.degree(), DiffOp.derivative(layout, alpha, coefficient)))
    return basis


def ansatz_basis(model: SubmersionModel, arity: int, bounds: AnsatzBounds, equivariant: bool = False) -> list[Cochain]:
    """The primitive terms an unknown of the given arity is built from, simplest first.

    Args:
        model: The bundle model
        arity: 0 for an operator unknown, 1 for a 1-cochain unknown
        bounds: Ansatz truncation
        equivariant: Restrict to t-independent coefficients

    Returns:
        list[Cochain]: One single-term cochain per unknown

    Raises:
        ArityUnsupported: For any other arity
    """
    operators = _operator_basis(model, bounds, equivariant)
    if arity == 0:
        return [Cochain.from_operator(model, operator) for _, operator in operators]
    if arity != 1:
        raise ArityUnsupported(arity)
    ranked = []
    for beta in indices_up_to(model.base_size, bounds.max_base_derivatives):
        for weight, operator in operators:
            ranked.append((weight + index_degree(beta), Cochain(model, 1, {(beta,): operator})))
    ranked.sort(key=lambda pair: pair[0])
    return [cochain for _, cochain in ranked]


def _flatten(cochain: Cochain) -> Iterator[tuple[RowKey, ComplexScalar]]:
    for key, operator in cochain.terms.items():
        for alpha, coefficient in operator.terms.items():
            for exponent, value in coefficient.terms.items():
                yield (key, alpha, exponent), value


def _require_cocycle(target: Cochain, degree_bound: int) -> None:
    if hochschild_delta(target).is_zero():
        return
    report = is_cocycle(target, degree_bound)
    witness = report.witness or ["primitive form of d R is nonzero"]
    logger.error(f"Right-hand side of arity {target.arity} is not a cocycle: {witness}")
    raise NotACocycle(witness)


def _verify(solution: Cochain, target: Cochain, degree_bound: int) -> None:
    delta = hochschild_delta(solution)
    if delta != target:
        logger.error("Solver output fails the structural check d phi = R")
        raise CohomologyError("coboundary solution does not reproduce the right-hand side")
    for arguments in _argument_tuples(target, degree_bound):
        if delta.evaluate(*arguments) != target.evaluate(*arguments):
            logger.error(f"Solver output fails on {[str(argument) for argument in arguments]}")
            raise CohomologyError("coboundary solution fails the evaluation check")


def _argument_tuples(target: Cochain, degree_bound: int) -> Iterator[tuple]:
    return product(target.model.base_monomials(degree_bound), repeat=target.arity)


def solve_coboundary(
    target: Cochain,
    bounds: AnsatzBounds | None = None,
    equivariant: bool = False,
    order: int | None = None,
    degree_bound: int | None = None,
) -> Cochain:
    """Solve ``d phi = R`` for ``R`` of arity 1 or 2.

    Args:
        target: The cocycle ``R``
        bounds: Ansatz truncation (defaults from settings)
        equivariant: Search only t-independent ``phi``
        order: Deformation order being solved, carried into the inconclusive outcome
        degree_bound: Monomial degree for the independent evaluation re-check

    Returns:
        Cochain: The canonical pivot solution ``phi`` of arity one less than ``R``

    Raises:
        ArityUnsupported: If ``R`` has arity other than 1 or 2
        NotACocycle: If ``d R != 0``
        NoSolutionInTruncation: If the bounded ansatz holds no solution
    """
    bounds = bounds or AnsatzBounds.from_settings()
    if degree_bound is None:
        degree_bound = get_app_settings().default_degree_bound
    model = target.model
    basis = ansatz_basis(model, target.arity - 1, bounds, equivariant)
    if target.is_zero():
        return Cochain.zero(model, target.arity - 1)
    _require_cocycle(target, degree_bound)

    rows: dict[RowKey, dict[int, ComplexScalar]] = {}
    for column, element in enumerate(basis):
        for row_key, value in _flatten(hochschild_delta(element)):
            rows.setdefault(row_key, {})[column] = value
    rhs = dict(_flatten(target))

    echelon = SparseEchelon(len(basis))
    for row_key in sorted(set(rows) | set(rhs)):
        if not echelon.add_row(rows.get(row_key, {}), rhs.get(row_key, ZERO)):
            break
    solution = echelon.solve()
    if solution is None:
        logger.info(f"No coboundary within bounds {bounds} at order {order}")
        raise NoSolutionInTruncation(bounds.model_dump(), order)

    result = Cochain.zero(model, target.arity - 1)
    for value, element in zip(solution, basis, strict=True):
        if not value.is_zero():
            result = result + element.scale(value)
    _verify(result, target, degree_bound)
    logger.debug(f"Coboundary found with {len(result.terms)} primitive terms at order {order}")
    return result
