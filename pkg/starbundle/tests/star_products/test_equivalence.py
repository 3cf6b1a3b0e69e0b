"""Tests for equivalence transforms of star products."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starbundle.common.exceptions import OrderMismatch, UnitalityViolation
from starbundle.common.reports import Verdict
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.star_products.checks import check_associativity, check_hermitian
from starbundle.star_products.equivalence import EquivalenceTransform, apply_equivalence, exponential
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import StarProduct, check_commutation_relations, moyal_star_product, star_multiply
from starbundle.tests.starbundle_test_constants import PLANE_BASE, TEST_DEGREE_BOUND, TEST_ORDER

LAYOUT = VariableLayout(PLANE_BASE)

entries = st.fractions(min_value=-2, max_value=2, max_denominator=2)
derivative_indices = st.sampled_from([(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
generators = st.dictionaries(derivative_indices, entries, min_size=1, max_size=3).map(
    lambda terms: DiffOp(LAYOUT, {alpha: Polynomial.constant(LAYOUT, value) for alpha, value in terms.items()})
)


def second_x_derivative(order: int = TEST_ORDER) -> EquivalenceTransform:
    return exponential(DiffOp.partial(LAYOUT, "x", 2), order)


def test_exponential_stages() -> None:
    """Test exp(lam D) has stages D and D^2 / 2."""
    d_xx = DiffOp.partial(LAYOUT, "x", 2)
    transform = second_x_derivative()
    assert transform.stage(0) == DiffOp.identity(LAYOUT)
    assert transform.stage(1) == d_xx
    assert transform.stage(2) == DiffOp.partial(LAYOUT, "x", 4).scale(Fraction(1, 2))
    assert transform.stage(3).is_zero()


def test_inverse_and_composition() -> None:
    """Test T^{-1} o T = id and the action on x^2."""
    transform = second_x_derivative()
    assert transform.inverse().compose(transform) == EquivalenceTransform.identity(LAYOUT, TEST_ORDER)
    x = Polynomial.variable(LAYOUT, "x")
    assert transform(x * x)[1] == 2
    with pytest.raises(OrderMismatch):
        transform.compose(second_x_derivative(1))


def test_transported_product(moyal_star: StarProduct, plane_theta: PoissonTensor) -> None:
    """Test that x *' x = x^2 - 2 lam while the coordinate commutators are unchanged."""
    transported = apply_equivalence(second_x_derivative(), moyal_star)
    x = Polynomial.variable(LAYOUT, "x")
    product = star_multiply(transported, x, x)
    assert product[0] == x * x
    assert product[1] == -2
    assert check_commutation_relations(transported, plane_theta).verdict == Verdict.PASS
    assert check_associativity(transported, TEST_DEGREE_BOUND).verdict == Verdict.PASS


def test_real_transform_keeps_hermitian(moyal_star: StarProduct) -> None:
    """Test that a real transform of a Hermitian product is Hermitian."""
    transported = apply_equivalence(second_x_derivative(), moyal_star)
    assert transported.hermitian_claimed
    assert check_hermitian(transported, TEST_DEGREE_BOUND).verdict == Verdict.PASS


def test_transform_must_preserve_constants(moyal_star: StarProduct) -> None:
    """Test that T_1(1) != 0 is rejected."""
    transform = EquivalenceTransform(LAYOUT, [DiffOp.identity(LAYOUT), DiffOp.zero(LAYOUT)])
    assert transform.first_non_unital_stage() == 1
    with pytest.raises(UnitalityViolation) as excinfo:
        apply_equivalence(transform, moyal_star)
    assert excinfo.value.stage == 1


def test_transform_order_must_match(moyal_star: StarProduct) -> None:
    """Test that the truncation orders of product and transform agree."""
    with pytest.raises(OrderMismatch):
        apply_equivalence(second_x_derivative(1), moyal_star)


@settings(max_examples=5, deadline=None)
@given(generators)
def test_random_equivalences_preserve_associativity(generator: DiffOp) -> None:
    """Test that exp(lam D) transports the exponential product to an associative one."""
    moyal_star = moyal_star_product(PoissonTensor.constant(LAYOUT, {(0, 1): 1}), TEST_ORDER)
    transported = apply_equivalence(exponential(generator, TEST_ORDER), moyal_star)
    assert check_associativity(transported, TEST_DEGREE_BOUND).verdict == Verdict.PASS
