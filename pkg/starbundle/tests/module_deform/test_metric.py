"""Tests for deformed Hermitian metrics."""

from collections.abc import Sequence

import pytest

from starbundle.common.constants import EQ_METRIC, EQ_ORDERED_RING
from starbundle.common.exceptions import NonHermitianProjector, NonHermitianStar
from starbundle.common.reports import Verdict
from starbundle.formal_core.matrix import PolyMatrix
from starbundle.formal_core.polynomial import Polynomial, VariableLayout, monomials
from starbundle.formal_core.scalars import I
from starbundle.formal_core.series import FormalSeries
from starbundle.module_deform.idempotent import IdempotentMatrix, deform_idempotent
from starbundle.module_deform.metric import (
    DeformedMetric,
    check_metric_axioms,
    check_metric_positivity,
    deform_metric,
    sample_points,
)
from starbundle.module_deform.module import StarModuleAction, module_generators
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import StarProduct, moyal_star_product
from starbundle.tests.starbundle_test_constants import (
    ACCEPTANCE_METRIC_POINTS,
    ACCEPTANCE_ORDER,
    TEST_METRIC_POINTS,
    TEST_ORDER,
    TEST_SEED,
)


class NegatedMetric:
    """``-h``, which is negative definite."""

    def __init__(self, metric: DeformedMetric):
        self.metric = metric

    def evaluate(
        self, left: Sequence[FormalSeries[Polynomial]], right: Sequence[FormalSeries[Polynomial]]
    ) -> FormalSeries[Polynomial]:
        return -self.metric.evaluate(left, right)


def test_metric_axioms(deformed_hermitian: IdempotentMatrix, moyal_star: StarProduct) -> None:
    """Test symmetry and right-linearity on generated elements."""
    metric = deform_metric(deformed_hermitian, moyal_star)
    action = StarModuleAction(moyal_star, deformed_hermitian)
    elements = module_generators(deformed_hermitian, moyal_star, 1)
    report = check_metric_axioms(metric, action, elements, monomials(moyal_star.layout, 1))
    assert report.verdict == Verdict.PASS
    assert report.equation == EQ_METRIC
    assert report.checked == len(elements) ** 2 * 4


def test_metric_value(
    deformed_hermitian: IdempotentMatrix, moyal_star: StarProduct, plane_layout: VariableLayout
) -> None:
    """Test h(phi, phi) = x^2 / 2 for phi = (x/2, x/2)."""
    metric = deform_metric(deformed_hermitian, moyal_star)
    x = Polynomial.variable(plane_layout, "x")
    half_x = FormalSeries.constant(x / 2, TEST_ORDER)
    value = metric([half_x, half_x], [half_x, half_x])
    assert value[0] == (x * x) / 2
    assert value[1].is_zero()


def test_metric_positivity(deformed_hermitian: IdempotentMatrix, moyal_star: StarProduct) -> None:
    """Test that diagonal values are nonnegative at the sample points."""
    metric = deform_metric(deformed_hermitian, moyal_star)
    elements = module_generators(deformed_hermitian, moyal_star, 1)
    points = sample_points(moyal_star.layout, TEST_METRIC_POINTS, TEST_SEED)
    report = check_metric_positivity(metric, elements, points)
    assert report.verdict == Verdict.PASS
    assert report.equation == EQ_ORDERED_RING
    assert report.checked == len(elements) * TEST_METRIC_POINTS
    assert report.result is not None
    assert report.result["negative_values"] == 0
    assert report.result["positive_values"] > 0


def test_negative_metric_is_caught(deformed_hermitian: IdempotentMatrix, moyal_star: StarProduct) -> None:
    """Test that -h fails positivity on the first element at order 0."""
    metric = NegatedMetric(deform_metric(deformed_hermitian, moyal_star))
    elements = module_generators(deformed_hermitian, moyal_star, 1)
    report = check_metric_positivity(metric, elements, sample_points(moyal_star.layout, 1, TEST_SEED))
    assert report.verdict == Verdict.FAIL
    assert report.failing_order == 0
    assert report.witness[0] == "element 0"


def test_sample_points_are_deterministic(plane_layout: VariableLayout) -> None:
    """Test that equal seeds give equal rational points."""
    assert sample_points(plane_layout, 3, TEST_SEED) == sample_points(plane_layout, 3, TEST_SEED)
    assert set(sample_points(plane_layout, 1)[0]) == {"x", "y"}


def test_metric_needs_hermitian_projector(rank_one_projector: PolyMatrix, moyal_star: StarProduct) -> None:
    """Test that a non-Hermitian classical projector carries no metric."""
    e = deform_idempotent(rank_one_projector, moyal_star)
    with pytest.raises(NonHermitianProjector):
        deform_metric(e, moyal_star)


def test_metric_needs_hermitian_product(hermitian_projector: PolyMatrix, plane_layout: VariableLayout) -> None:
    """Test that an imaginary bivector is refused."""
    star = moyal_star_product(PoissonTensor.constant(plane_layout, {(0, 1): I}), TEST_ORDER)
    e = deform_idempotent(hermitian_projector, star)
    with pytest.raises(NonHermitianStar):
        deform_metric(e, star)


@pytest.mark.slow
def test_metric_at_sixth_order(hermitian_projector: PolyMatrix, plane_theta: PoissonTensor) -> None:
    """Test the metric axioms and positivity at lam^6 over the full sample."""
    star = moyal_star_product(plane_theta, ACCEPTANCE_ORDER)
    e = deform_idempotent(hermitian_projector, star)
    metric = deform_metric(e, star)
    elements = module_generators(e, star, 2)
    axioms = check_metric_axioms(metric, StarModuleAction(star, e), elements, monomials(star.layout, 1))
    assert axioms.verdict == Verdict.PASS
    points = sample_points(star.layout, ACCEPTANCE_METRIC_POINTS, TEST_SEED)
    positivity = check_metric_positivity(metric, elements, points)
    assert positivity.verdict == Verdict.PASS
    assert positivity.checked == len(elements) * ACCEPTANCE_METRIC_POINTS
    assert positivity.result["negative_values"] == 0
