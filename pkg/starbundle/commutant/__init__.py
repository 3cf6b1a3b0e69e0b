"""Commutant lifts of vertical operators and the induced deformation ``*'``.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.commutant.lifting import CommutantLift, check_commutant, lift_vertical, right_multiplication_operator
from starbundle.commutant.star_prime import (
    bicommutant,
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

__all__ = [
    "CommutantLift",
    "bicommutant",
    "check_bicommutant",
    "check_commutant",
    "check_left_module",
    "check_star_change",
    "check_vertical_bracket",
    "induced_star_prime",
    "left_action",
    "lift_vertical",
    "order_zero_bicommutant",
    "right_multiplication_operator",
    "right_multiplication_preimage",
    "star_prime_commutator",
    "vertical_generators",
]
