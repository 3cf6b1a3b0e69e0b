"""Equivalence and isometry checks between deformed module structures."""

from __future__ import annotations

import logging
from collections.abc import Sequence
from itertools import product

from starbundle.common.constants import EQ_ISOMETRY, EQ_MODULE_EQUIVALENCE
from starbundle.common.reports import Verdict, VerificationReport, merge_reports
from starbundle.formal_core.polynomial import Polynomial, monomials
from starbundle.formal_core.series import FormalSeries
from starbundle.module_deform.idempotent import SeriesMatrix
from starbundle.module_deform.metric import Metric
from starbundle.module_deform.module import ModuleAction, ModuleTransform, module_generators

logger = logging.getLogger(__name__)

__all__ = ["check_module_equivalence"]

PolySeries = FormalSeries[Polynomial]


def _vector_text(vector: Sequence[PolySeries]) -> str:
    return "[" + "; ".join(str(component) for component in vector) + "]"


def _first_difference(left: Sequence[PolySeries], right: Sequence[PolySeries]) -> int | None:
    orders = [(a - b).lowest_order() for a, b in zip(left, right, strict=True)]
    found = [order for order in orders if order is not None]
    return min(found) if found else None


def check_module_equivalence(
    transform: ModuleTransform,
    action: ModuleAction,
    other: ModuleAction,
    degree_bound: int,
    elements: Sequence[Sequence[PolySeries]] | None = None,
    metric: Metric | None = None,
    other_metric: Metric | None = None,
    target: SeriesMatrix | None = None,
) -> VerificationReport:
    """Check ``T(phi . f) = T(phi) .~ f`` on generators and monomials.

    Args:
        transform: The candidate equivalence ``T``
        action: The action ``.`` on the source module
        other: The action ``.~`` on the target module
        degree_bound: Degree bound for the functions ``f`` and for generated elements
        elements: Source elements to test; defaults to ``e*(m e_j)`` for the source projector
        metric: Source metric; with ``other_metric`` also checks ``h(phi, psi) = h~(T phi, T psi)``
        other_metric: Target metric
        target: Target projector; when given also checks that ``T`` lands in its range

    Returns:
        VerificationReport: The first failing identity, or a pass over everything checked
    """
    star = action.star
    if elements is None:
        if action.idempotent is None:
            raise ValueError("test elements are needed when the action carries no projector")
        elements = module_generators(action.idempotent, star, degree_bound)
    functions = monomials(star.layout, degree_bound)
    bounds = {"degree_bound": degree_bound, "order": star.order}
    images = [transform.apply(element) for element in elements]
    reports = []

    checked = 0
    for element, image in zip(elements, images, strict=True):
        for function in functions:
            checked += 1
            left = transform.apply(action.act(element, function))
            right = other.act(image, function)
            failing = _first_difference(left, right)
            if failing is not None:
                logger.info(f"Module equivalence fails at order {failing}")
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="module-equivalence",
                    equation=EQ_MODULE_EQUIVALENCE,
                    failing_order=failing,
                    witness=[_vector_text(element), str(function)],
                    bounds=bounds,
                    checked=checked,
                )
        if target is not None:
            checked += 1
            failing = _first_difference(target.apply_to(image, star), image)
            if failing is not None:
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="module-equivalence",
                    equation=EQ_MODULE_EQUIVALENCE,
                    axiom="range",
                    failing_order=failing,
                    witness=[_vector_text(element)],
                    bounds=bounds,
                    checked=checked,
                )
    reports.append(
        VerificationReport(
            verdict=Verdict.PASS,
            check="module-equivalence",
            equation=EQ_MODULE_EQUIVALENCE,
            bounds=bounds,
            checked=checked,
        )
    )

    if metric is not None and other_metric is not None:
        checked = 0
        for (phi, phi_image), (psi, psi_image) in product(zip(elements, images, strict=True), repeat=2):
            checked += 1
            difference = metric.evaluate(phi, psi) - other_metric.evaluate(phi_image, psi_image)
            if not difference.is_zero():
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="isometry",
                    equation=EQ_ISOMETRY,
                    failing_order=difference.lowest_order(),
                    witness=[_vector_text(phi), _vector_text(psi)],
                    bounds=bounds,
                    checked=checked,
                )
        reports.append(
            VerificationReport(
                verdict=Verdict.PASS, check="isometry", equation=EQ_ISOMETRY, bounds=bounds, checked=checked
            )
        )
    return merge_reports("module-equivalence", EQ_MODULE_EQUIVALENCE, reports)
