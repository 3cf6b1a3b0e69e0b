"""Tests for the bounded coboundary solver."""

import pytest
from pydantic import ValidationError

from starbundle.common.exceptions import ArityUnsupported, NoSolutionInTruncation, NotACocycle
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.hochschild.cochain import Cochain, hochschild_delta
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds, ansatz_basis, solve_coboundary
from starbundle.tests.starbundle_test_constants import NARROW_BOUNDS, TEST_BOUNDS, TEST_DEGREE_BOUND


def second_fiber_derivative_target(model: SubmersionModel) -> Cochain:
    """``f -> d_t^2 o mult(d_x f)``, the coboundary of ``d_x d_t^2``."""
    return Cochain(model, 1, {((1, 0),): DiffOp.partial(model.total_layout, "t", 2)})


def test_bounds_parsing() -> None:
    """Test the o,d,b form and its rejections."""
    bounds = AnsatzBounds.parse(TEST_BOUNDS)
    assert (bounds.max_diffop_order, bounds.max_coeff_degree, bounds.max_base_derivatives) == (3, 0, 3)
    assert str(bounds) == TEST_BOUNDS
    with pytest.raises(ValueError):
        AnsatzBounds.parse("3,0")
    with pytest.raises(ValueError):
        AnsatzBounds.parse("a,b,c")
    with pytest.raises(ValidationError):
        AnsatzBounds.parse("-1,0,0")


def test_ansatz_is_ordered_simplest_first(bundle_model: SubmersionModel) -> None:
    """Test the size of the operator ansatz and its first element."""
    basis = ansatz_basis(bundle_model, 0, AnsatzBounds.parse("1,0,0"))
    assert len(basis) == 4
    assert basis[0] == Cochain.from_operator(bundle_model, DiffOp.identity(bundle_model.total_layout))
    with pytest.raises(ArityUnsupported):
        ansatz_basis(bundle_model, 2, AnsatzBounds.parse("1,0,0"))


def test_solution_within_bounds(bundle_model: SubmersionModel) -> None:
    """Test that d_x d_t^2 is recovered as the canonical solution."""
    target = second_fiber_derivative_target(bundle_model)
    solution = solve_coboundary(target, AnsatzBounds.parse("3,0,0"), degree_bound=TEST_DEGREE_BOUND)
    assert hochschild_delta(solution) == target
    assert solution == Cochain.from_operator(bundle_model, DiffOp.derivative(bundle_model.total_layout, (1, 0, 2)))


def test_no_solution_is_inconclusive(bundle_model: SubmersionModel) -> None:
    """Test that a too narrow ansatz is reported with its bounds and order."""
    target = second_fiber_derivative_target(bundle_model)
    with pytest.raises(NoSolutionInTruncation) as excinfo:
        solve_coboundary(target, AnsatzBounds.parse(NARROW_BOUNDS), order=2, degree_bound=TEST_DEGREE_BOUND)
    assert excinfo.value.bounds == AnsatzBounds.parse(NARROW_BOUNDS).model_dump()
    assert excinfo.value.order == 2


def test_equivariant_search_excludes_fiber_coefficients(bundle_model: SubmersionModel) -> None:
    """Test that d(t d_x) is only found when t-dependent coefficients are allowed."""
    t = Polynomial.variable(bundle_model.total_layout, "t")
    target = Cochain(bundle_model, 1, {((1, 0),): DiffOp.multiplication(t)})
    bounds = AnsatzBounds.parse("1,1,0")
    with pytest.raises(NoSolutionInTruncation):
        solve_coboundary(target, bounds, equivariant=True, degree_bound=TEST_DEGREE_BOUND)
    solution = solve_coboundary(target, bounds, equivariant=False, degree_bound=TEST_DEGREE_BOUND)
    assert hochschild_delta(solution) == target
    assert not solution.is_t_independent()


def test_right_hand_side_must_be_a_cocycle(bundle_model: SubmersionModel) -> None:
    """Test that mult(pr^* f) is refused with its witness."""
    with pytest.raises(NotACocycle) as excinfo:
        solve_coboundary(Cochain.pullback_multiplication(bundle_model), degree_bound=TEST_DEGREE_BOUND)
    assert excinfo.value.witness == ["1", "1"]


def test_zero_right_hand_side(bundle_model: SubmersionModel) -> None:
    """Test that d phi = 0 is solved by phi = 0."""
    assert solve_coboundary(Cochain.zero(bundle_model, 1)).is_zero()


def test_two_cochain_targets(bundle_model: SubmersionModel, test_bounds: AnsatzBounds) -> None:
    """Test solving d phi = R for the coboundary of a 1-cochain."""
    layout = bundle_model.total_layout
    phi = Cochain(bundle_model, 1, {((2, 0),): DiffOp.partial(layout, "t")})
    target = hochschild_delta(phi)
    assert target.arity == 2
    assert not target.is_zero()
    solution = solve_coboundary(target, test_bounds, degree_bound=1)
    assert hochschild_delta(solution) == target
    with pytest.raises(ArityUnsupported):
        solve_coboundary(Cochain(bundle_model, 3, {((0, 0),) * 3: DiffOp.identity(layout)}), test_bounds)
