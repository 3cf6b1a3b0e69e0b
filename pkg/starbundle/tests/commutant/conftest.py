"""Lifting fixtures for commutant tests."""

import pytest

from starbundle.commutant.lifting import CommutantLift
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.principal_deform.bundle import ModuleDeformation
from starbundle.tests.starbundle_test_constants import LIFT_BOUNDS, TEST_DEGREE_BOUND


@pytest.fixture
def plane_lift(product_module: ModuleDeformation) -> CommutantLift:
    """The lifting map of the product bundle over the Moyal plane.

    Args:
        product_module: The right action

    Returns:
        CommutantLift: A lift with an empty cache, wide enough for products of two coordinates
    """
    return CommutantLift(product_module, AnsatzBounds.parse(LIFT_BOUNDS), TEST_DEGREE_BOUND)


@pytest.fixture
def multiply_x(bundle_model: SubmersionModel) -> DiffOp:
    """Multiplication by the base variable x on the total space."""
    return DiffOp.multiplication(Polynomial.variable(bundle_model.total_layout, "x"))


@pytest.fixture
def multiply_y(bundle_model: SubmersionModel) -> DiffOp:
    """Multiplication by the base variable y on the total space."""
    return DiffOp.multiplication(Polynomial.variable(bundle_model.total_layout, "y"))
