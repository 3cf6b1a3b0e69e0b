"""Projector fixtures for module deformation tests."""

from fractions import Fraction

import pytest

from starbundle.formal_core.matrix import PolyMatrix
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.series import FormalSeries
from starbundle.module_deform.idempotent import IdempotentMatrix, SeriesMatrix, deform_idempotent
from starbundle.star_products.star import StarProduct
from starbundle.tests.starbundle_test_constants import TEST_ORDER


@pytest.fixture
def rank_one_projector(plane_layout: VariableLayout) -> PolyMatrix:
    """The projector ``v w^T`` with ``v = (1, y)`` and ``w = (1 - xy, x)``.

    ``w . v = 1`` pointwise, but ``w * v = 1 + (i/2) lam`` under the Moyal
    product, so the star-idempotent differs from it at order 1.

    Args:
        plane_layout: Base layout of the plane

    Returns:
        PolyMatrix: A non-Hermitian polynomial projector of rank one
    """
    x = Polynomial.variable(plane_layout, "x")
    y = Polynomial.variable(plane_layout, "y")
    w = (1 - x * y, x)
    v = (Polynomial.one(plane_layout), y)
    return PolyMatrix(plane_layout, [[v[i] * w[j] for j in range(2)] for i in range(2)])


@pytest.fixture
def hermitian_projector(plane_layout: VariableLayout) -> PolyMatrix:
    """The constant Hermitian projector onto the diagonal of C^2."""
    half = Polynomial.constant(plane_layout, Fraction(1, 2))
    return PolyMatrix(plane_layout, [[half, half], [half, half]])


@pytest.fixture
def deformed_hermitian(hermitian_projector: PolyMatrix, moyal_star: StarProduct) -> IdempotentMatrix:
    """The Hermitian projector deformed over the Moyal plane.

    Args:
        hermitian_projector: Classical projector
        moyal_star: Base product

    Returns:
        IdempotentMatrix: The star-idempotent grown from the projector
    """
    return deform_idempotent(hermitian_projector, moyal_star)


@pytest.fixture
def other_deformation(rank_one_projector: PolyMatrix, moyal_star: StarProduct) -> IdempotentMatrix:
    """A second deformation of the rank-one projector, grown from ``e_0 + lam E_12``.

    Args:
        rank_one_projector: Classical projector
        moyal_star: Base product

    Returns:
        IdempotentMatrix: A star-idempotent with the same order-0 part as the default one
    """
    layout = rank_one_projector.layout
    zero = Polynomial.zero(layout)
    one = Polynomial.one(layout)
    rows = [
        [FormalSeries([entry, one if (i, j) == (0, 1) else zero, zero], TEST_ORDER) for j, entry in enumerate(row)]
        for i, row in enumerate(rank_one_projector)
    ]
    start = SeriesMatrix(layout, TEST_ORDER, rows)
    return deform_idempotent(rank_one_projector, moyal_star, initial=start)
