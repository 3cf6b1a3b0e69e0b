"""Star products: construction, transport along equivalences and axiom checks.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.star_products.checks import check_associativity, check_hermitian, check_jacobi, check_poisson_limit
from starbundle.star_products.equivalence import EquivalenceTransform, apply_equivalence, exponential
from starbundle.star_products.poisson import PoissonTensor, jacobi_defect, schouten_square
from starbundle.star_products.star import (
    StarProduct,
    check_commutation_relations,
    extract_poisson,
    moyal_bidifferential,
    moyal_cochain,
    moyal_star_product,
    star_commutator,
    star_multiply,
)

__all__ = [
    "EquivalenceTransform",
    "PoissonTensor",
    "StarProduct",
    "apply_equivalence",
    "check_associativity",
    "check_commutation_relations",
    "check_hermitian",
    "check_jacobi",
    "check_poisson_limit",
    "exponential",
    "extract_poisson",
    "jacobi_defect",
    "moyal_bidifferential",
    "moyal_cochain",
    "moyal_star_product",
    "schouten_square",
    "star_commutator",
    "star_multiply",
]
