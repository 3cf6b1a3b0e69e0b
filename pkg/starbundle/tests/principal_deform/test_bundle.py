"""Tests for module deformations of the trivial bundle and the translation group."""

from fractions import Fraction

import pytest

from starbundle.common.exceptions import LayoutMismatch, OrderMismatch
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial
from starbundle.formal_core.scalars import I
from starbundle.hochschild.cochain import Cochain
from starbundle.hochschild.model import SubmersionModel
from starbundle.principal_deform.bundle import ModuleDeformation, star_on_base
from starbundle.principal_deform.group import GroupActionModel
from starbundle.star_products.star import StarProduct
from starbundle.tests.starbundle_test_constants import TEST_ORDER


def test_product_bundle_first_order(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test rho_1(x) = -(i/2) d_y and rho_1(y) = (i/2) d_x."""
    layout = bundle_model.total_layout
    x = Polynomial.variable(bundle_model.base_layout, "x")
    y = Polynomial.variable(bundle_model.base_layout, "y")
    assert product_module.operator(x)[0] == DiffOp.multiplication(bundle_model.pullback(x))
    assert product_module.operator(x)[1] == DiffOp.partial(layout, "y").scale(I * Fraction(-1, 2))
    assert product_module.operator(y)[1] == DiffOp.partial(layout, "x").scale(I * Fraction(1, 2))
    assert product_module.order == TEST_ORDER
    assert product_module.is_t_independent()


def test_action_on_functions(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test y . x = xy - (i/2) lam on the total space."""
    layout = bundle_model.total_layout
    y_total = Polynomial.variable(layout, "y")
    x = Polynomial.variable(bundle_model.base_layout, "x")
    acted = product_module.act(y_total, x)
    assert acted[0] == Polynomial.variable(layout, "x") * y_total
    assert acted[1] == Polynomial.constant(layout, I * Fraction(-1, 2))
    assert acted[2].is_zero()


def test_stages_and_truncation(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test stage padding, truncation and extension."""
    assert product_module.stage(0) == Cochain.pullback_multiplication(bundle_model)
    assert product_module.stage(TEST_ORDER + 1).is_zero()
    truncated = product_module.truncate(1)
    assert truncated.order == 1
    assert truncated.extended(product_module.stage(2)) == product_module
    with pytest.raises(OrderMismatch):
        truncated.truncate(2)


def test_perturbation(product_module: ModuleDeformation, bundle_model: SubmersionModel) -> None:
    """Test that perturbations pad missing stages and rho_0 stays fixed."""
    derivation = Cochain(bundle_model, 1, {((1, 0),): DiffOp.identity(bundle_model.total_layout)})
    perturbed = product_module.perturb(3, derivation)
    assert perturbed.order == 3
    assert perturbed.stage(3) == derivation
    with pytest.raises(ValueError):
        product_module.perturb(0, derivation)


def test_stage_shape_is_checked(moyal_star: StarProduct, bundle_model: SubmersionModel) -> None:
    """Test that only 1-cochains over the same model are accepted."""
    with pytest.raises(LayoutMismatch):
        ModuleDeformation(moyal_star, bundle_model, [Cochain.zero(bundle_model, 2)])
    other = SubmersionModel(("x", "z"), ("t",))
    with pytest.raises(LayoutMismatch):
        star_on_base(moyal_star, other)


def test_translation_generators(bundle_model: SubmersionModel) -> None:
    """Test unit translations first, then the configured ones without repeats."""
    group = GroupActionModel(bundle_model, [[2], [1]])
    assert group.generators() == [(Fraction(1),), (Fraction(2),)]
    assert GroupActionModel.compose((Fraction(1),), (Fraction(2),)) == (Fraction(3),)
    with pytest.raises(LayoutMismatch):
        GroupActionModel(bundle_model, [[1, 2]])


def test_translation_action(bundle_model: SubmersionModel) -> None:
    """Test t -> t + 1 on functions and operators."""
    layout = bundle_model.total_layout
    t = Polynomial.variable(layout, "t")
    group = GroupActionModel(bundle_model)
    assert group.act(t * t, (Fraction(1),)) == (t + 1) * (t + 1)
    operator = DiffOp.derivative(layout, (1, 0, 0), t)
    assert group.act_on_operator(operator, (Fraction(1),)) == DiffOp.derivative(layout, (1, 0, 0), t + 1)
    d_t = DiffOp.partial(layout, "t")
    assert group.act_on_operator(d_t, (Fraction(1),)) == d_t
