"""The differential Hochschild complex of base functions with values in total-space operators.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.hochschild.cochain import Cochain, hochschild_delta, is_cocycle, move_multiplication_right
from starbundle.hochschild.model import SubmersionModel
from starbundle.hochschild.solver import AnsatzBounds, ansatz_basis, solve_coboundary

__all__ = [
    "AnsatzBounds",
    "Cochain",
    "SubmersionModel",
    "ansatz_basis",
    "hochschild_delta",
    "is_cocycle",
    "move_multiplication_right",
    "solve_coboundary",
]
