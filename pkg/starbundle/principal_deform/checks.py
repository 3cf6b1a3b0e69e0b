"""Exhaustive checks of the deformed principal module axioms.

Each axiom is an identity between operator series, so it is decided exactly
for every pair of base monomials up to the degree bound. A failing identity is
reported with the lowest order at which it fails and a total-space monomial
``F`` on which the two sides differ.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from itertools import product

from starbundle.common.constants import (
    AXIOM_EQUIVARIANCE,
    AXIOM_RIGHT_MODULE,
    AXIOM_UNITALITY,
    EQ_EQUIVARIANCE,
    EQ_PRINCIPAL_MODULE,
    EQ_UNITALITY,
)
from starbundle.common.reports import Verdict, VerificationReport, merge_reports
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.series import FormalSeries
from starbundle.principal_deform.bundle import ModuleDeformation
from starbundle.principal_deform.group import GroupActionModel, Translation
from starbundle.star_products.star import star_multiply

logger = logging.getLogger(__name__)

__all__ = [
    "check_equivariance",
    "check_module_structure",
    "check_right_module",
    "check_unit_projection",
    "check_unitality",
    "separating_monomial",
]

OperatorSeries = FormalSeries[DiffOp]


def separating_monomial(deformation: ModuleDeformation, operator: DiffOp) -> Polynomial:
    """A total-space monomial ``F`` with ``D(F) != 0`` for a nonzero ``D``.

    Some monomial of degree at most the order of ``D`` always works: on the
    lowest-degree derivative ``x^alpha`` of ``D`` only that term survives.
    """
    for candidate in deformation.model.total_monomials(operator.order()):
        if not operator.apply(candidate).is_zero():
            return candidate
    raise ValueError(f"operator {operator} vanishes on every monomial")


def _failure(
    deformation: ModuleDeformation,
    difference: OperatorSeries,
    equation: str,
    axiom: str,
    inputs: list[str],
    bounds: dict[str, int],
    checked: int,
) -> VerificationReport:
    failing = difference.lowest_order()
    if failing is None:
        raise ValueError("a vanishing difference has no failing order")
    element = separating_monomial(deformation, difference[failing])
    witness = [str(element), *inputs]
    logger.info(f"Module axiom {axiom} fails at order {failing} on {witness}")
    return VerificationReport(
        verdict=Verdict.FAIL,
        check="module-structure",
        equation=equation,
        axiom=axiom,
        failing_order=failing,
        witness=witness,
        bounds=bounds,
        checked=checked,
        result={"difference": str(difference[failing])},
    )


def _bounds(deformation: ModuleDeformation, degree_bound: int) -> dict[str, int]:
    return {"degree_bound": degree_bound, "order": deformation.order}


def check_right_module(deformation: ModuleDeformation, degree_bound: int) -> VerificationReport:
    """Check ``F . (f * g) = (F . f) . g`` as ``rho(f * g) = rho(g) o rho(f)`` on base monomials."""
    star = deformation.star_at_order()
    functions = deformation.model.base_monomials(degree_bound)
    operators = {function: deformation.operator(function) for function in functions}
    bounds = _bounds(deformation, degree_bound)
    checked = 0
    for f, g in product(functions, repeat=2):
        checked += 1
        difference = deformation.operator(star_multiply(star, f, g)) - operators[g] * operators[f]
        if not difference.is_zero():
            inputs = [str(f), str(g)]
            return _failure(deformation, difference, EQ_PRINCIPAL_MODULE, AXIOM_RIGHT_MODULE, inputs, bounds, checked)
    return VerificationReport(
        verdict=Verdict.PASS, check="module-structure", equation=EQ_PRINCIPAL_MODULE, bounds=bounds, checked=checked
    )


def check_unitality(deformation: ModuleDeformation) -> VerificationReport:
    """Check ``F . 1 = F``, i.e. ``rho_r(1) = 0`` for every ``r >= 1``."""
    one = Polynomial.one(deformation.model.base_layout)
    identity = FormalSeries.constant(DiffOp.identity(deformation.model.total_layout), deformation.order)
    difference = deformation.operator(one) - identity
    bounds = {"order": deformation.order}
    if not difference.is_zero():
        return _failure(deformation, difference, EQ_UNITALITY, AXIOM_UNITALITY, ["1"], bounds, 1)
    return VerificationReport(verdict=Verdict.PASS, check="unitality", equation=EQ_UNITALITY, bounds=bounds, checked=1)


def _translation_text(translation: Translation) -> str:
    return "t -> t + (" + ", ".join(str(shift) for shift in translation) + ")"


def check_equivariance(
    deformation: ModuleDeformation, degree_bound: int, group: GroupActionModel | None = None
) -> VerificationReport:
    """Check ``g^*(F . f) = g^*F . f`` for every generating translation and base monomial."""
    group = group or GroupActionModel(deformation.model)
    bounds = _bounds(deformation, degree_bound)
    checked = 0
    for function in deformation.model.base_monomials(degree_bound):
        operators = deformation.operator(function)
        for translation in group.generators():
            checked += 1
            moved = operators.map(lambda operator, shift=translation: group.act_on_operator(operator, shift))
            difference = moved - operators
            if not difference.is_zero():
                inputs = [str(function), _translation_text(translation)]
                return _failure(deformation, difference, EQ_EQUIVARIANCE, AXIOM_EQUIVARIANCE, inputs, bounds, checked)
    return VerificationReport(
        verdict=Verdict.PASS, check="equivariance", equation=EQ_EQUIVARIANCE, bounds=bounds, checked=checked
    )


def check_module_structure(
    deformation: ModuleDeformation, degree_bound: int, group: GroupActionModel | None = None
) -> VerificationReport:
    """Right-module law, unitality and equivariance, in that order.

    Args:
        deformation: The structure to check, modulo ``lam^{k+1}``
        degree_bound: Largest base monomial degree
        group: Translations to test (unit translations by default)

    Returns:
        VerificationReport: The first failing axiom, or a pass over all three
    """
    reports = [
        check_right_module(deformation, degree_bound),
        check_unitality(deformation),
        check_equivariance(deformation, degree_bound, group),
    ]
    return merge_reports("module-structure", EQ_PRINCIPAL_MODULE, reports)


def check_unit_projection(deformation: ModuleDeformation, degree_bound: int) -> VerificationReport:
    """Derive unitality from the module law on generators.

    ``P(F) = F . 1`` satisfies ``P o P = P`` because ``1 * 1 = 1``, and its
    order-0 part is the identity, so ``P`` is an invertible projection and
    therefore the identity. Each step is checked, then ``F . 1 = F`` is
    confirmed on total-space monomials up to the degree bound.
    """
    one = Polynomial.one(deformation.model.base_layout)
    projection = deformation.operator(one)
    layout = deformation.model.total_layout
    bounds = _bounds(deformation, degree_bound)

    def failure(axiom: str, failing: int | None, witness: list[str]) -> VerificationReport:
        return VerificationReport(
            verdict=Verdict.FAIL,
            check="unit-projection",
            equation=EQ_UNITALITY,
            axiom=axiom,
            failing_order=failing,
            witness=witness,
            bounds=bounds,
        )

    square = projection * projection - projection
    if not square.is_zero():
        return failure("idempotent", square.lowest_order(), ["1"])
    if projection[0] != DiffOp.identity(layout):
        return failure("invertible", 0, [str(projection[0])])
    checked = 0
    for element in deformation.model.total_monomials(degree_bound):
        checked += 1
        difference = deformation.act(element, one) - FormalSeries.constant(element, deformation.order)
        if not difference.is_zero():
            return failure("identity", difference.lowest_order(), [str(element)])
    return VerificationReport(
        verdict=Verdict.PASS, check="unit-projection", equation=EQ_UNITALITY, bounds=bounds, checked=checked
    )
