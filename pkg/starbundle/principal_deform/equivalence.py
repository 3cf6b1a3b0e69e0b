"""Equivalences between deformed principal module structures.

``T = id + lam T_1 + ...`` is an equivalence from ``.`` to ``.~`` when
``T(F . f) = T(F) .~ f`` and ``g^* T = T g^*``. At order ``n`` the unknown
``T_n`` enters only through ``d T_n = E_n`` with

    E_n(f) = sum_{a<n} [rho~_{n-a}(f) o T_a - T_a o rho_{n-a}(f)],

so the stages are found one after another with the operator-valued solver.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging

from starbundle.common.constants import EQ_BUNDLE_EQUIVALENCE
from starbundle.common.exceptions import CohomologyError, LayoutMismatch, OrderMismatch
from starbundle.common.reports import Verdict, VerificationReport
from starbundle.formal_core.diffop import DiffOp
from starbundle.hochschild.cochain import Cochain
from starbundle.hochschild.solver import AnsatzBounds, solve_coboundary
from starbundle.principal_deform.bundle import ModuleDeformation
from starbundle.principal_deform.checks import separating_monomial
from starbundle.principal_deform.group import GroupActionModel
from starbundle.settings import get_app_settings
from starbundle.star_products.equivalence import EquivalenceTransform

logger = logging.getLogger(__name__)

__all__ = [
    "check_bundle_equivalence",
    "equivalence_defect",
    "solve_module_equivalence",
]


def equivalence_defect(
    deformation: ModuleDeformation, other: ModuleDeformation, stages: list[DiffOp], head: DiffOp | None = None
) -> Cochain:
    """``E_n`` for known ``T_1..T_{n-1}``, where ``n = len(stages) + 1``.

    ``head`` replaces the identity as ``T_0``; with ``other`` equal to
    ``deformation`` this is the defect of a commutant lift.
    """
    model = deformation.model
    n = len(stages) + 1
    transform = [head if head is not None else DiffOp.identity(model.total_layout), *stages]
    result = Cochain.zero(model, 1)
    for a in range(n):
        step = transform[a]
        if step.is_zero():
            continue
        result = result + other.stage(n - a).precompose(step) - deformation.stage(n - a).postcompose(step)
    return result


def check_bundle_equivalence(
    transform: EquivalenceTransform,
    deformation: ModuleDeformation,
    other: ModuleDeformation,
    degree_bound: int,
    group: GroupActionModel | None = None,
) -> VerificationReport:
    """Check ``T o rho(f) = rho~(f) o T`` on base monomials and ``g^* T = T g^*`` on generators.

    Args:
        transform: The candidate ``T`` on total-space functions
        deformation: The source structure ``.``
        other: The target structure ``.~``
        degree_bound: Largest base monomial degree
        group: Translations to test (unit translations by default)

    Returns:
        VerificationReport: The first failing identity, or a pass
    """
    group = group or GroupActionModel(deformation.model)
    series = transform.series()
    bounds = {"degree_bound": degree_bound, "order": deformation.order}
    checked = 0
    for function in deformation.model.base_monomials(degree_bound):
        checked += 1
        difference = series * deformation.operator(function) - other.operator(function) * series
        failing = difference.lowest_order()
        if failing is not None:
            witness = [str(separating_monomial(deformation, difference[failing])), str(function)]
            logger.info(f"Bundle equivalence fails at order {failing} on {witness}")
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="bundle-equivalence",
                equation=EQ_BUNDLE_EQUIVALENCE,
                axiom="intertwining",
                failing_order=failing,
                witness=witness,
                bounds=bounds,
                checked=checked,
            )
    for translation in group.generators():
        checked += 1
        for index, stage in enumerate(transform.stages, start=1):
            if group.act_on_operator(stage, translation) != stage:
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="bundle-equivalence",
                    equation=EQ_BUNDLE_EQUIVALENCE,
                    axiom="equivariance",
                    failing_order=index,
                    witness=[str(stage), ", ".join(str(shift) for shift in translation)],
                    bounds=bounds,
                    checked=checked,
                )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="bundle-equivalence",
        equation=EQ_BUNDLE_EQUIVALENCE,
        bounds=bounds,
        checked=checked,
        result={f"T{index}": str(stage) for index, stage in enumerate(transform.stages, start=1)},
    )


def solve_module_equivalence(
    deformation: ModuleDeformation,
    other: ModuleDeformation,
    bounds: AnsatzBounds | None = None,
    equivariant: bool = True,
    degree_bound: int | None = None,
) -> EquivalenceTransform:
    """Find ``T`` with ``T(F . f) = T(F) .~ f``, stage by stage.

    Args:
        deformation: The source structure
        other: The target structure over the same base product
        bounds: Solver ansatz bounds
        equivariant: Search only t-independent stages
        degree_bound: Degree bound for the independent re-check

    Returns:
        EquivalenceTransform: ``T`` on total-space functions, re-verified

    Raises:
        NoSolutionInTruncation: If some stage has no solution within the bounds
        OrderMismatch: If the structures are truncated at different orders
        LayoutMismatch: If the structures live on different bundle models or base products
        CohomologyError: If the solved transform fails a requested axiom of the re-check
    """
    if deformation.order != other.order:
        raise OrderMismatch(deformation.order, other.order)
    if deformation.model != other.model:
        raise LayoutMismatch("module structures over different bundle models")
    if deformation.star_at_order() != other.star_at_order():
        raise LayoutMismatch("module structures over different base products")
    if degree_bound is None:
        degree_bound = get_app_settings().default_degree_bound
    stages: list[DiffOp] = []
    for n in range(1, deformation.order + 1):
        target = equivalence_defect(deformation, other, stages)
        solution = solve_coboundary(target, bounds, equivariant=equivariant, order=n, degree_bound=degree_bound)
        stages.append(solution.operator)
        logger.debug(f"Equivalence stage {n}: {solution.operator}")
    transform = EquivalenceTransform(deformation.model.total_layout, stages)
    report = check_bundle_equivalence(transform, deformation, other, degree_bound)
    # the general search only promises intertwining
    if report.verdict == Verdict.FAIL and (equivariant or report.axiom == "intertwining"):
        logger.error(f"Solved equivalence fails its {report.axiom} re-check at order {report.failing_order}")
        raise CohomologyError(f"solved equivalence fails the {report.axiom} axiom")
    return transform
