"""Deformed Hermitian fiber metrics and their positivity checks.

``h(phi, psi) = sum_i conj(phi_i) * psi_i`` on the range of a Hermitian
deformed projector. Positivity is only decidable here at order 0 and through
the leading coefficient of sampled diagonal values, which is what
``check_metric_positivity`` reports.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
import random
from collections.abc import Mapping, Sequence
from fractions import Fraction
from itertools import product
from typing import Protocol

from starbundle.common.constants import EQ_METRIC, EQ_ORDERED_RING
from starbundle.common.exceptions import NonHermitianProjector, NonHermitianStar
from starbundle.common.reports import Verdict, VerificationReport, series_result
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.scalars import ComplexScalar
from starbundle.formal_core.series import FormalSeries, Sign, series_sign
from starbundle.module_deform.idempotent import IdempotentMatrix, SeriesMatrix, deform_idempotent
from starbundle.module_deform.module import ModuleAction, ModuleTransform
from starbundle.star_products.checks import check_hermitian
from starbundle.star_products.star import StarProduct, star_multiply

logger = logging.getLogger(__name__)

__all__ = [
    "DeformedMetric",
    "Metric",
    "TransformedMetric",
    "check_metric_axioms",
    "check_metric_positivity",
    "deform_metric",
    "sample_points",
]

PolySeries = FormalSeries[Polynomial]
Point = Mapping[str, Fraction]


class Metric(Protocol):
    """A sesquilinear form on column vectors with series values."""

    def evaluate(self, left: Sequence[PolySeries], right: Sequence[PolySeries]) -> PolySeries: ...


class DeformedMetric:
    """``h(phi, psi) = sum_i conj(phi_i) * psi_i``.

    Attributes:
        idempotent: The Hermitian projector whose range carries the metric
        star: The Hermitian product
    """

    def __init__(self, idempotent: SeriesMatrix, star: StarProduct):
        self.idempotent = idempotent
        self.star = star

    def evaluate(self, left: Sequence[PolySeries], right: Sequence[PolySeries]) -> PolySeries:
        total = FormalSeries.constant(Polynomial.zero(self.star.layout), self.star.order)
        for phi, psi in zip(left, right, strict=True):
            total = total + star_multiply(self.star, phi.conjugate(), psi)
        return total

    def __call__(self, left: Sequence[PolySeries], right: Sequence[PolySeries]) -> PolySeries:
        return self.evaluate(left, right)


class TransformedMetric:
    """``h~(phi, psi) = h(T^{-1} phi, T^{-1} psi)``, the metric making ``T`` an isometry."""

    def __init__(self, metric: Metric, transform: ModuleTransform):
        self.metric = metric
        self.inverse_transform = transform.inverse()

    def evaluate(self, left: Sequence[PolySeries], right: Sequence[PolySeries]) -> PolySeries:
        return self.metric.evaluate(self.inverse_transform.apply(left), self.inverse_transform.apply(right))


def deform_metric(idempotent: IdempotentMatrix, star: StarProduct) -> DeformedMetric:
    """Build the deformed metric on the range of ``e``.

    A non-Hermitian ``e`` over a Hermitian ``e_0`` is replaced by the iteration
    started at ``e_0``, which is Hermitian.

    Args:
        idempotent: Deformed projector
        star: Hermitian product

    Returns:
        DeformedMetric: The metric on the (possibly replaced) projector's range

    Raises:
        NonHermitianStar: If ``star`` fails the Hermitian check
        NonHermitianProjector: If ``e_0`` is not Hermitian
    """
    if not star.hermitian_claimed:
        report = check_hermitian(star, star.completeness_degree())
        if not report.passed:
            raise NonHermitianStar(f"product fails the Hermitian check on {report.witness}")
    if not idempotent.classical.is_hermitian():
        raise NonHermitianProjector(f"classical projector {idempotent.classical} is not Hermitian")
    if idempotent.conjugate_transpose() != idempotent:
        logger.info("Replacing the deformed projector by the Hermitian one grown from e_0")
        idempotent = deform_idempotent(idempotent.classical, star)
    return DeformedMetric(idempotent, star)


def sample_points(layout: VariableLayout, count: int, seed: int = 0) -> list[dict[str, Fraction]]:
    """Deterministic rational sample points of the base variables."""
    generator = random.Random(seed)
    return [
        {name: Fraction(generator.randint(-12, 12), generator.randint(1, 6)) for name in layout.base}
        for _ in range(count)
    ]


def _evaluate_series(series: PolySeries, point: Point) -> FormalSeries[ComplexScalar]:
    return FormalSeries([coefficient.evaluate(point) for coefficient in series], series.order)


def check_metric_positivity(
    metric: Metric, elements: Sequence[Sequence[PolySeries]], points: Sequence[Point]
) -> VerificationReport:
    """Check the diagonal values ``h(phi, phi)`` at sample points.

    Order 0 must be real and nonnegative, and the whole evaluated series must
    be real with a sign that is not negative in the ordered ring of series.

    Args:
        metric: The metric to test
        elements: Module elements
        points: Rational points of the base

    Returns:
        VerificationReport: Pass, or the first element and point where a value is negative or not real
    """
    checked = 0
    signs: dict[str, int] = {sign.value: 0 for sign in Sign}
    for index, element in enumerate(elements):
        value = metric.evaluate(element, element)
        for point in points:
            checked += 1
            evaluated = _evaluate_series(value, point)
            failing: int | None = None
            if not all(coefficient.is_real() for coefficient in evaluated):
                failing = 0
            else:
                verdict = series_sign(evaluated)
                if verdict.sign is Sign.NEGATIVE:
                    failing = verdict.lowest_order
                else:
                    signs[verdict.sign.value] += 1
            if failing is not None:
                witness = [f"element {index}", ", ".join(f"{name}={value}" for name, value in point.items())]
                logger.info(f"Metric positivity fails at {witness}")
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="metric-positivity",
                    equation=EQ_ORDERED_RING,
                    failing_order=failing,
                    witness=witness,
                    checked=checked,
                    result=series_result(evaluated),
                )
    return VerificationReport(
        verdict=Verdict.PASS,
        check="metric-positivity",
        equation=EQ_ORDERED_RING,
        bounds={"points": len(points)},
        checked=checked,
        result={f"{name}_values": count for name, count in signs.items()},
    )


def check_metric_axioms(
    metric: Metric,
    action: ModuleAction,
    elements: Sequence[Sequence[PolySeries]],
    functions: Sequence[Polynomial],
) -> VerificationReport:
    """Check right-linearity ``h(phi, psi . f) = h(phi, psi) * f`` and symmetry ``h(phi, psi) = conj(h(psi, phi))``."""
    star = action.star
    checked = 0
    for phi, psi in product(elements, repeat=2):
        value = metric.evaluate(phi, psi)
        checked += 1
        symmetry = value - metric.evaluate(psi, phi).conjugate()
        if not symmetry.is_zero():
            return VerificationReport(
                verdict=Verdict.FAIL,
                check="metric",
                equation=EQ_METRIC,
                axiom="symmetry",
                failing_order=symmetry.lowest_order(),
                witness=[str(list(map(str, phi))), str(list(map(str, psi)))],
                checked=checked,
            )
        for function in functions:
            checked += 1
            linearity = metric.evaluate(phi, action.act(psi, function)) - star_multiply(star, value, function)
            if not linearity.is_zero():
                return VerificationReport(
                    verdict=Verdict.FAIL,
                    check="metric",
                    equation=EQ_METRIC,
                    axiom="right-linearity",
                    failing_order=linearity.lowest_order(),
                    witness=[str(list(map(str, phi))), str(list(map(str, psi))), str(function)],
                    checked=checked,
                )
    return VerificationReport(verdict=Verdict.PASS, check="metric", equation=EQ_METRIC, checked=checked)
