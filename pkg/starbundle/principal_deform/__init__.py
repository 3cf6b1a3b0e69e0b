"""Deformation quantization of principal bundles on trivial-bundle models.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.principal_deform.bundle import ModuleDeformation, product_bundle_module, star_on_base
from starbundle.principal_deform.checks import (
    check_equivariance,
    check_module_structure,
    check_right_module,
    check_unit_projection,
    check_unitality,
    separating_monomial,
)
from starbundle.principal_deform.equivalence import (
    check_bundle_equivalence,
    equivalence_defect,
    solve_module_equivalence,
)
from starbundle.principal_deform.group import GroupActionModel, Translation
from starbundle.principal_deform.obstruction import (
    build_module_deformation,
    extend_module_order,
    obstruction_cocycle,
)

__all__ = [
    "GroupActionModel",
    "ModuleDeformation",
    "Translation",
    "build_module_deformation",
    "check_bundle_equivalence",
    "check_equivariance",
    "check_module_structure",
    "check_right_module",
    "check_unit_projection",
    "check_unitality",
    "equivalence_defect",
    "extend_module_order",
    "obstruction_cocycle",
    "product_bundle_module",
    "separating_monomial",
    "solve_module_equivalence",
    "star_on_base",
]
