"""Shared test fixtures for starbundle tests."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest
from click.testing import CliRunner

from starbundle.formal_core.polynomial import VariableLayout
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds
from starbundle.principal_deform.bundle import ModuleDeformation, product_bundle_module
from starbundle.star_products.poisson import PoissonTensor
from starbundle.star_products.star import StarProduct, moyal_star_product
from starbundle.tests.starbundle_test_constants import FIBER, PLANE_BASE, TEST_BOUNDS, TEST_ORDER

WorkspaceFactory = Callable[..., Path]


@pytest.fixture
def plane_layout() -> VariableLayout:
    """Base layout with the two variables x and y.

    Returns:
        VariableLayout: The layout ``(x, y)`` without fiber variables
    """
    return VariableLayout(PLANE_BASE)


@pytest.fixture
def plane_theta(plane_layout: VariableLayout) -> PoissonTensor:
    """The canonical bivector with ``theta^{xy} = 1``.

    Args:
        plane_layout: Base layout of the plane

    Returns:
        PoissonTensor: Constant symplectic bivector on the plane
    """
    return PoissonTensor.constant(plane_layout, {(0, 1): 1})


@pytest.fixture
def moyal_star(plane_theta: PoissonTensor) -> StarProduct:
    """The exponential product of the plane truncated at the test order.

    Args:
        plane_theta: The bivector to quantize

    Returns:
        StarProduct: Moyal product modulo ``lam^(TEST_ORDER + 1)``
    """
    return moyal_star_product(plane_theta, TEST_ORDER)


@pytest.fixture
def bundle_model() -> SubmersionModel:
    """Trivial bundle over the plane with a single fiber variable t."""
    return SubmersionModel(PLANE_BASE, FIBER)


@pytest.fixture
def product_module(moyal_star: StarProduct, bundle_model: SubmersionModel) -> ModuleDeformation:
    """The product bundle module over the Moyal plane.

    Args:
        moyal_star: Base star product
        bundle_model: The bundle model

    Returns:
        ModuleDeformation: ``F . f = F * pr^*f`` with the product acting along the base
    """
    return product_bundle_module(moyal_star, bundle_model)


@pytest.fixture
def test_bounds() -> AnsatzBounds:
    """Solver bounds wide enough for the order-two Moyal examples."""
    return AnsatzBounds.parse(TEST_BOUNDS)


@pytest.fixture
def cli_runner() -> CliRunner:
    """Create a click test runner.

    Returns:
        CliRunner: Runner that captures stdout and stderr separately
    """
    return CliRunner()


@pytest.fixture
def write_workspace(tmp_path: Path) -> WorkspaceFactory:
    """Factory writing workspace files into a temporary directory.

    The default workspace is the Moyal plane with a fiber variable t at the
    test order; keyword arguments override or extend its fields.

    Args:
        tmp_path: Pytest fixture providing a temporary directory

    Returns:
        Callable: ``write_workspace(name="workspace.json", **fields) -> Path``
    """

    def factory(name: str = "workspace.json", **fields: Any) -> Path:
        content: dict[str, Any] = {
            "base_variables": list(PLANE_BASE),
            "fiber_variables": list(FIBER),
            "theta": [[1, 2, "1"]],
            "order": TEST_ORDER,
            "degree_bound": 2,
            "bounds": AnsatzBounds.parse(TEST_BOUNDS).model_dump(),
        }
        content.update(fields)
        path = tmp_path / name
        path.write_text(json.dumps(content), encoding="utf-8")
        return path

    return factory
