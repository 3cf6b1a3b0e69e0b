"""Order-by-order construction of module deformations.

Expanding ``rho(f * g) = rho(g) o rho(f)`` at order ``lam^{k+1}`` and moving the
unknown ``rho_{k+1}`` to the left gives ``d rho_{k+1} = R_k`` with

    R_k(f, g) = sum_{r=0}^{k} rho_r(C_{k+1-r}(f, g)) - sum_{a=1}^{k} rho_{k+1-a}(g) o rho_a(f).

The ``r = 0`` term ``mult(pr^* C_{k+1}(f, g))`` is the whole obstruction at ``k = 0``.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging

from starbundle.common.exceptions import NotModuleToOrderK
from starbundle.hochschild.cochain import Cochain
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds, solve_coboundary
from starbundle.principal_deform.bundle import ModuleDeformation, star_on_base
from starbundle.principal_deform.checks import check_right_module
from starbundle.settings import get_app_settings
from starbundle.star_products.star import StarProduct

logger = logging.getLogger(__name__)

__all__ = [
    "build_module_deformation",
    "extend_module_order",
    "obstruction_cocycle",
]


def obstruction_cocycle(
    deformation: ModuleDeformation, star: StarProduct | None = None, verify_degree: int | None = None
) -> Cochain:
    """The 2-cochain ``R_k`` for a structure truncated at ``k``.

    Args:
        deformation: A module structure modulo ``lam^{k+1}``
        star: Base product supplying ``C_1..C_{k+1}`` (defaults to the deformation's own)
        verify_degree: When given, first re-check the module law at this degree

    Returns:
        Cochain: ``R_k``, which satisfies ``d R_k = 0``

    Raises:
        NotModuleToOrderK: If the verification is requested and fails
    """
    base_star = star_on_base(star or deformation.star, deformation.model)
    k = deformation.order
    if verify_degree is not None:
        report = check_right_module(deformation, verify_degree)
        if not report.passed:
            raise NotModuleToOrderK(k, report.failing_order)
    result = Cochain.zero(deformation.model, 2)
    for r in range(k + 1):
        cochain = base_star.cochain(k + 1 - r)
        stage = deformation.stage(r)
        if cochain.is_zero() or stage.is_zero():
            continue
        result = result + stage.substitute_slot(0, cochain)
    for a in range(1, k + 1):
        inner, outer = deformation.stage(a), deformation.stage(k + 1 - a)
        if inner.is_zero() or outer.is_zero():
            continue
        result = result - outer.after(inner)
    return result


def extend_module_order(
    deformation: ModuleDeformation,
    bounds: AnsatzBounds | None = None,
    equivariant: bool = False,
    degree_bound: int | None = None,
) -> ModuleDeformation:
    """Solve ``d rho_{k+1} = R_k`` and append the solution.

    Args:
        deformation: A module structure truncated at ``k``
        bounds: Solver ansatz bounds
        equivariant: Search only t-independent ``rho_{k+1}``
        degree_bound: Degree bound for the exhaustive re-check of the extended structure

    Returns:
        ModuleDeformation: The structure truncated at ``k + 1``

    Raises:
        NoSolutionInTruncation: If the ansatz holds no solution
        NotACocycle: If ``d R_k != 0``, which means an upstream inconsistency
        NotModuleToOrderK: If the extended structure fails the independent re-check
    """
    if degree_bound is None:
        degree_bound = get_app_settings().default_degree_bound
    k = deformation.order
    target = obstruction_cocycle(deformation)
    stage = solve_coboundary(target, bounds, equivariant=equivariant, order=k + 1, degree_bound=degree_bound)
    extended = deformation.extended(stage)
    report = check_right_module(extended, degree_bound)
    if not report.passed:
        logger.error(f"Extended structure fails the module law at order {report.failing_order}")
        raise NotModuleToOrderK(k + 1, report.failing_order)
    logger.debug(f"Extended module structure to order {k + 1} with {len(stage.terms)} primitive terms")
    return extended


def build_module_deformation(
    star: StarProduct,
    model: SubmersionModel,
    order: int | None = None,
    bounds: AnsatzBounds | None = None,
    equivariant: bool = False,
    degree_bound: int | None = None,
) -> ModuleDeformation:
    """Grow a module structure from ``rho_0`` alone up to ``order`` (the star's order by default)."""
    order = star.order if order is None else order
    deformation = ModuleDeformation(star, model, [], label="extended")
    while deformation.order < order:
        deformation = extend_module_order(deformation, bounds, equivariant=equivariant, degree_bound=degree_bound)
    return deformation
