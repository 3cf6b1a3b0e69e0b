"""Tests for the induced product on vertical operators and its left action."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starbundle.common.constants import EQ_CHANGE_OF_STAR, EQ_COMMUTANT, EQ_VERTICAL_BRACKET
from starbundle.common.exceptions import OrderMismatch
from starbundle.common.reports import Verdict
from starbundle.commutant.lifting import CommutantLift
from starbundle.commutant.star_prime import (
    check_bicommutant,
    check_left_module,
    check_star_change,
    check_vertical_bracket,
    induced_star_prime,
    left_action,
    order_zero_bicommutant,
    right_multiplication_preimage,
    star_prime_commutator,
    vertical_generators,
)
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.scalars import I
from starbundle.formal_core.series import FormalSeries
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.principal_deform.bundle import ModuleDeformation, product_bundle_module
from starbundle.principal_deform.group import GroupActionModel
from starbundle.star_products.equivalence import EquivalenceTransform, exponential
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import moyal_star_product
from starbundle.tests.starbundle_test_constants import (
    BICOMMUTANT_BOUNDS,
    BICOMMUTANT_SIZE,
    FIBER,
    FIRST_ORDER_BICOMMUTANT_BOUNDS,
    FIRST_ORDER_BICOMMUTANT_SIZE,
    LEFT_MODULE_BOUNDS,
    LIFT_BOUNDS,
    LIFTED_BICOMMUTANT_BOUNDS,
    LIFTED_BICOMMUTANT_SIZE,
    PIVOT_BOUNDS,
    PLANE_BASE,
    TEST_DEGREE_BOUND,
    TEST_ORDER,
)

BASE_LAYOUT = VariableLayout(PLANE_BASE)

entries = st.fractions(min_value=-2, max_value=2, max_denominator=2)
derivative_indices = st.sampled_from([(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
base_generators = st.dictionaries(derivative_indices, entries, min_size=1, max_size=2).map(
    lambda terms: DiffOp(
        BASE_LAYOUT, {alpha: Polynomial.constant(BASE_LAYOUT, value) for alpha, value in terms.items()}
    )
)


def vertical_operator(layout: VariableLayout, name: str) -> DiffOp:
    """``d_t``, ``t d_t`` or multiplication by a variable on the total space."""
    if name == "d_t":
        return DiffOp.partial(layout, "t")
    if name == "t d_t":
        return DiffOp.derivative(layout, (0, 0, 1), Polynomial.variable(layout, "t"))
    return DiffOp.multiplication(Polynomial.variable(layout, name))


def test_induced_commutator_of_coordinates(
    plane_lift: CommutantLift, multiply_x: DiffOp, multiply_y: DiffOp, bundle_model: SubmersionModel
) -> None:
    """Test [x, y]_{*'} = i lam, the Moyal relation carried over to the commutant."""
    layout = bundle_model.total_layout
    expected = FormalSeries([DiffOp.zero(layout), DiffOp.scalar(layout, I), DiffOp.zero(layout)], TEST_ORDER)
    assert star_prime_commutator(plane_lift, multiply_x, multiply_y) == expected


def test_vertical_bracket_of_coordinates(plane_lift: CommutantLift, multiply_x: DiffOp, multiply_y: DiffOp) -> None:
    """Test that the order-0 part of the bracket is the operator commutator."""
    report = check_vertical_bracket(plane_lift, multiply_x, multiply_y)
    assert report.verdict == Verdict.PASS
    assert report.check == "vertical-bracket"
    assert report.equation == EQ_VERTICAL_BRACKET
    assert set(report.result) == {"order0", "order1", "order2"}
    assert report.result["order0"] == "0"


def test_vertical_bracket_of_fiber_fields(plane_lift: CommutantLift, bundle_model: SubmersionModel) -> None:
    """Test [d_t, t d_t]_{*'} = d_t exactly, since neither field is corrected."""
    layout = bundle_model.total_layout
    d_t = vertical_operator(layout, "d_t")
    report = check_vertical_bracket(plane_lift, d_t, vertical_operator(layout, "t d_t"))
    assert report.verdict == Verdict.PASS
    assert report.result == {"order0": str(d_t), "order1": "0", "order2": "0"}


def test_induced_product_functional_form(
    product_module: ModuleDeformation,
    plane_lift: CommutantLift,
    multiply_x: DiffOp,
    bundle_model: SubmersionModel,
    test_bounds: AnsatzBounds,
) -> None:
    """Test x *' d_t = x d_t, on a fresh lift and on the cached one."""
    d_t = DiffOp.partial(bundle_model.total_layout, "t")
    expected = FormalSeries.constant(multiply_x * d_t, TEST_ORDER)
    assert plane_lift.star_prime(multiply_x, d_t) == expected
    assert induced_star_prime(multiply_x, d_t, product_module, test_bounds) == expected


@pytest.mark.parametrize("name", ["x", "d_t", "t d_t"])
def test_identity_is_the_unit(plane_lift: CommutantLift, bundle_model: SubmersionModel, name: str) -> None:
    """Test D *' id = id *' D = D."""
    layout = bundle_model.total_layout
    operator = vertical_operator(layout, name)
    identity = DiffOp.identity(layout)
    expected = FormalSeries.constant(operator, TEST_ORDER)
    assert plane_lift.star_prime(operator, identity) == expected
    assert plane_lift.star_prime(identity, operator) == expected


@pytest.mark.parametrize(
    "names",
    [("x", "y", "d_t"), ("x", "d_t", "y"), ("d_t", "x", "y"), ("x", "t", "d_t"), ("t", "x", "d_t")],
)
def test_induced_product_is_associative(
    plane_lift: CommutantLift, bundle_model: SubmersionModel, names: tuple[str, str, str]
) -> None:
    """Test (D *' D~) *' D^ = D *' (D~ *' D^) on vertical triples."""
    first, second, third = (vertical_operator(bundle_model.total_layout, name) for name in names)
    left = plane_lift.star_prime(plane_lift.star_prime(first, second), third)
    right = plane_lift.star_prime(first, plane_lift.star_prime(second, third))
    assert left == right


def test_induced_product_ignores_the_ansatz_size(
    product_module: ModuleDeformation, plane_lift: CommutantLift, bundle_model: SubmersionModel
) -> None:
    """Test that wider solver bounds give the same *' table."""
    wider = CommutantLift(product_module, AnsatzBounds.parse(PIVOT_BOUNDS), TEST_DEGREE_BOUND)
    operators = [vertical_operator(bundle_model.total_layout, name) for name in ("x", "y", "d_t")]
    for first in operators:
        for second in operators:
            assert wider.star_prime(first, second) == plane_lift.star_prime(first, second)


def test_induced_product_is_translation_invariant(plane_lift: CommutantLift, bundle_model: SubmersionModel) -> None:
    """Test g^*(D *' D~) = g^*D *' g^*D~ and g^*(D .' F) = g^*D .' g^*F."""
    layout = bundle_model.total_layout
    group = GroupActionModel(bundle_model, [[Fraction(1, 2)]])
    (translation,) = group.generators()

    def moved(operator: DiffOp) -> DiffOp:
        return group.act_on_operator(operator, translation)

    t = Polynomial.variable(layout, "t")
    pairs = [("t", "t d_t"), ("x", "t d_t"), ("d_t", "t")]
    for first_name, second_name in pairs:
        first = vertical_operator(layout, first_name)
        second = vertical_operator(layout, second_name)
        product = plane_lift.star_prime(first, second)
        assert product.map(moved) == plane_lift.star_prime(moved(first), moved(second))
    elements = [t * Polynomial.variable(layout, "y"), t * t]
    for name in ("x", "t d_t"):
        operator = vertical_operator(layout, name)
        for element in elements:
            acted = plane_lift.left_action(operator, element)
            assert group.act(acted, translation) == plane_lift.left_action(
                moved(operator), group.act(element, translation)
            )


def test_left_action_on_functions(
    product_module: ModuleDeformation, multiply_x: DiffOp, bundle_model: SubmersionModel, test_bounds: AnsatzBounds
) -> None:
    """Test x .' y = xy + (i/2) lam on the total space."""
    layout = bundle_model.total_layout
    x = Polynomial.variable(layout, "x")
    y = Polynomial.variable(layout, "y")
    acted = left_action(multiply_x, y, product_module, test_bounds)
    assert acted[0] == x * y
    assert acted[1] == Polynomial.constant(layout, I * Fraction(1, 2))
    assert acted[2].is_zero()


def test_bimodule_witness(
    plane_lift: CommutantLift, product_module: ModuleDeformation, multiply_x: DiffOp, bundle_model: SubmersionModel
) -> None:
    """Test (x .' ty) . y = x .' (ty . y) = xty^2 + i lam ty."""
    layout = bundle_model.total_layout
    x = Polynomial.variable(layout, "x")
    y = Polynomial.variable(layout, "y")
    t = Polynomial.variable(layout, "t")
    base_y = Polynomial.variable(bundle_model.base_layout, "y")
    expected = FormalSeries([x * t * y * y, (t * y).scale(I), Polynomial.zero(layout)], TEST_ORDER)
    first = product_module.act(plane_lift.left_action(multiply_x, t * y), base_y)
    second = plane_lift.left_action(multiply_x, product_module.act(t * y, base_y))
    assert first == expected
    assert second == expected


def test_left_module_and_bimodule_laws(
    product_module: ModuleDeformation, multiply_x: DiffOp, multiply_y: DiffOp
) -> None:
    """Test the left module law and compatibility with the right action."""
    lift = CommutantLift(product_module, AnsatzBounds.parse(LEFT_MODULE_BOUNDS), 1)
    report = check_left_module(lift, [multiply_x, multiply_y], 1)
    assert report.verdict == Verdict.PASS
    assert report.check == "left-module"
    assert report.checked > 0


def test_star_change_with_second_derivative(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test that F . exp(lam d_x^2) f has the commutant and *' of F . f."""
    phi = exponential(DiffOp.partial(bundle_model.base_layout, "x", 2), TEST_ORDER)
    changed = product_module.reparametrize(phi)
    bounds = AnsatzBounds.parse(LIFT_BOUNDS)
    operators = [vertical_operator(bundle_model.total_layout, name) for name in ("x", "d_t")]
    report = check_star_change(
        CommutantLift(product_module, bounds, TEST_DEGREE_BOUND),
        CommutantLift(changed, bounds, TEST_DEGREE_BOUND),
        operators,
        TEST_DEGREE_BOUND,
    )
    assert report.verdict == Verdict.PASS
    assert report.check == "star-change"
    assert report.equation == EQ_CHANGE_OF_STAR
    assert report.checked > len(operators) ** 2


def test_star_change_needs_equal_orders(plane_lift: CommutantLift, product_module: ModuleDeformation) -> None:
    """Test that lifts truncated at different orders are refused."""
    truncated = CommutantLift(product_module.truncate(1), AnsatzBounds.parse(LIFT_BOUNDS), TEST_DEGREE_BOUND)
    with pytest.raises(OrderMismatch):
        check_star_change(plane_lift, truncated, [], TEST_DEGREE_BOUND)


@pytest.mark.slow
@settings(max_examples=3, deadline=None)
@given(base_generators)
def test_star_change_with_random_equivalence(generator: DiffOp) -> None:
    """Test commutant and *' stability under F . Phi(f) for a random Phi = exp(lam D)."""
    model = SubmersionModel(PLANE_BASE, FIBER)
    star = moyal_star_product(PoissonTensor.constant(BASE_LAYOUT, {(0, 1): 1}), TEST_ORDER)
    module = product_bundle_module(star, model)
    phi: EquivalenceTransform = exponential(generator, TEST_ORDER)
    bounds = AnsatzBounds.parse(LIFT_BOUNDS)
    operators = [vertical_operator(model.total_layout, name) for name in ("x", "y", "d_t")]
    report = check_star_change(
        CommutantLift(module, bounds, TEST_DEGREE_BOUND),
        CommutantLift(module.reparametrize(phi), bounds, TEST_DEGREE_BOUND),
        operators,
        TEST_DEGREE_BOUND,
    )
    assert report.verdict == Verdict.PASS


def test_vertical_generators(bundle_model: SubmersionModel) -> None:
    """Test one multiplication per variable and one derivative per fiber variable."""
    generators = vertical_generators(bundle_model)
    layout = bundle_model.total_layout
    assert len(generators) == len(layout.names) + len(bundle_model.fiber)
    assert generators[-1] == DiffOp.partial(layout, "t")
    assert all(generator.is_vertical() for generator in generators)


def test_order_zero_bicommutant_is_base_multiplication(bundle_model: SubmersionModel) -> None:
    """Test that operators commuting with the vertical generators are base multiplications."""
    basis = order_zero_bicommutant(bundle_model, bounds=AnsatzBounds.parse(BICOMMUTANT_BOUNDS))
    assert len(basis) == BICOMMUTANT_SIZE
    for operator in basis:
        assert operator.order() == 0
        assert operator.is_t_independent()


def test_right_multiplication_preimage(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test that F -> F . xy peels back to xy and d_t is refused at order 0."""
    layout = bundle_model.total_layout
    xy = Polynomial.variable(layout, "x") * Polynomial.variable(layout, "y")
    function, failing = right_multiplication_preimage(product_module.operator(xy), product_module)
    assert failing is None
    assert function == FormalSeries.constant(xy, TEST_ORDER)
    d_t = FormalSeries.constant(vertical_operator(layout, "d_t"), TEST_ORDER)
    assert right_multiplication_preimage(d_t, product_module) == (None, 0)


def test_first_order_bicommutant(product_module: ModuleDeformation) -> None:
    """Test that series commuting with the lifted generators are right multiplications at order 1."""
    lift = CommutantLift(product_module.truncate(1), AnsatzBounds.parse(LIFT_BOUNDS), TEST_DEGREE_BOUND)
    report = check_bicommutant(lift, bounds=AnsatzBounds.parse(FIRST_ORDER_BICOMMUTANT_BOUNDS))
    assert report.verdict == Verdict.PASS
    assert report.equation == EQ_COMMUTANT
    assert report.result == {"dimension": FIRST_ORDER_BICOMMUTANT_SIZE}


@pytest.mark.slow
def test_lifted_bicommutant(plane_lift: CommutantLift) -> None:
    """Test the bicommutant for operator order 2 and coefficient degree 3 at the test order."""
    report = check_bicommutant(plane_lift, bounds=AnsatzBounds.parse(LIFTED_BICOMMUTANT_BOUNDS))
    assert report.verdict == Verdict.PASS
    assert report.result == {"dimension": LIFTED_BICOMMUTANT_SIZE}
