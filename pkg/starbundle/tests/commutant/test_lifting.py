"""Tests for the commutant check and the lifting of vertical operators."""

from fractions import Fraction

import pytest

from starbundle.common.constants import EQ_COMMUTANT
from starbundle.common.exceptions import NotVertical
from starbundle.common.reports import Verdict
from starbundle.commutant.lifting import (
    CommutantLift,
    check_commutant,
    lift_vertical,
    right_multiplication_operator,
)
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.scalars import I
from starbundle.formal_core.series import FormalSeries
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.principal_deform.bundle import ModuleDeformation, product_bundle_module
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import moyal_star_product
from starbundle.tests.starbundle_test_constants import (
    NON_COMMUTANT_WITNESS,
    SLOW_DEGREE_BOUND,
    SLOW_ORDER,
    TEST_BOUNDS,
    TEST_DEGREE_BOUND,
    TEST_ORDER,
)


def test_left_multiplications_are_lifted(
    plane_lift: CommutantLift, multiply_x: DiffOp, multiply_y: DiffOp, bundle_model: SubmersionModel
) -> None:
    """Test lift(x) = x + (i/2) lam d_y and lift(y) = y - (i/2) lam d_x."""
    layout = bundle_model.total_layout
    zero = DiffOp.zero(layout)
    half_i = I * Fraction(1, 2)
    assert plane_lift.lift(multiply_x) == FormalSeries(
        [multiply_x, DiffOp.partial(layout, "y").scale(half_i), zero], TEST_ORDER
    )
    assert plane_lift.lift(multiply_y) == FormalSeries(
        [multiply_y, DiffOp.partial(layout, "x").scale(-half_i), zero], TEST_ORDER
    )


def test_lift_lands_in_the_commutant(plane_lift: CommutantLift, multiply_x: DiffOp) -> None:
    """Test that the lift commutes with every right multiplication."""
    report = check_commutant(plane_lift.lift(multiply_x), plane_lift.deformation, TEST_DEGREE_BOUND)
    assert report.verdict == Verdict.PASS
    assert report.equation == EQ_COMMUTANT
    assert report.checked == len(plane_lift.deformation.model.base_monomials(TEST_DEGREE_BOUND))


def test_base_derivative_is_not_in_the_commutant(
    product_module: ModuleDeformation, bundle_model: SubmersionModel
) -> None:
    """Test the witness of d_x against the product bundle."""
    report = check_commutant(DiffOp.partial(bundle_model.total_layout, "x"), product_module, TEST_DEGREE_BOUND)
    assert report.verdict == Verdict.FAIL
    assert report.check == "commutant"
    assert report.failing_order == 0
    assert report.witness == NON_COMMUTANT_WITNESS


def test_only_vertical_operators_lift(plane_lift: CommutantLift, bundle_model: SubmersionModel) -> None:
    """Test that base derivatives are refused."""
    with pytest.raises(NotVertical):
        plane_lift.lift(DiffOp.partial(bundle_model.total_layout, "x"))


def test_fiber_derivative_lifts_to_itself(plane_lift: CommutantLift, bundle_model: SubmersionModel) -> None:
    """Test that d_t already commutes with the product bundle action."""
    d_t = DiffOp.partial(bundle_model.total_layout, "t")
    assert plane_lift.lift(d_t) == FormalSeries.constant(d_t, TEST_ORDER)


def test_lifts_are_cached_with_provenance(plane_lift: CommutantLift, multiply_x: DiffOp) -> None:
    """Test that repeated lifts reuse the cache and remember their source."""
    first = plane_lift.lift(multiply_x)
    assert plane_lift.lift(multiply_x) is first
    assert plane_lift.provenance[first] == multiply_x


def test_inverse_recovers_vertical_series(
    plane_lift: CommutantLift, multiply_x: DiffOp, multiply_y: DiffOp, bundle_model: SubmersionModel
) -> None:
    """Test lift^{-1}(lift(V)) = V for a series of vertical operators."""
    layout = bundle_model.total_layout
    vertical = FormalSeries([multiply_x, multiply_y, DiffOp.partial(layout, "t")], TEST_ORDER)
    assert plane_lift.inverse(plane_lift.lift_all(vertical)) == vertical


def test_inverse_refuses_non_commutant_elements(plane_lift: CommutantLift, bundle_model: SubmersionModel) -> None:
    """Test that a lowest term with base derivatives is rejected."""
    with pytest.raises(NotVertical):
        plane_lift.inverse(FormalSeries.constant(DiffOp.partial(bundle_model.total_layout, "y"), TEST_ORDER))


def test_one_shot_lift_matches_the_cached_map(
    product_module: ModuleDeformation, plane_lift: CommutantLift, multiply_y: DiffOp, test_bounds: AnsatzBounds
) -> None:
    """Test the functional form of the lift."""
    assert lift_vertical(multiply_y, product_module, test_bounds, TEST_DEGREE_BOUND) == plane_lift.lift(multiply_y)


def test_right_multiplication_operator(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test that the right multiplication series is the module operator series."""
    x = Polynomial.variable(bundle_model.base_layout, "x")
    assert right_multiplication_operator(product_module, x) == product_module.operator(x)


@pytest.mark.parametrize("name", ["t", "1"])
def test_fiber_and_unit_multiplications_lift_to_themselves(
    plane_lift: CommutantLift, bundle_model: SubmersionModel, name: str
) -> None:
    """Test lift(t) = t and lift(id) = id."""
    layout = bundle_model.total_layout
    operator = DiffOp.identity(layout) if name == "1" else DiffOp.multiplication(Polynomial.variable(layout, name))
    assert plane_lift.lift(operator) == FormalSeries.constant(operator, TEST_ORDER)


@pytest.mark.slow
def test_lifts_at_fourth_order(bundle_model: SubmersionModel, plane_theta: PoissonTensor) -> None:
    """Test that vertical generators lift into the commutant through lam^4."""
    module = product_bundle_module(moyal_star_product(plane_theta, SLOW_ORDER), bundle_model)
    lift = CommutantLift(module, AnsatzBounds.parse(TEST_BOUNDS), SLOW_DEGREE_BOUND)
    layout = bundle_model.total_layout
    operators = [
        DiffOp.partial(layout, "t"),
        DiffOp.identity(layout),
        *(DiffOp.multiplication(Polynomial.variable(layout, name)) for name in layout.names),
    ]
    for operator in operators:
        lifted = lift.lift(operator)
        assert lifted.order == SLOW_ORDER
        assert lifted[0] == operator
        assert check_commutant(lifted, module, SLOW_DEGREE_BOUND).verdict == Verdict.PASS
