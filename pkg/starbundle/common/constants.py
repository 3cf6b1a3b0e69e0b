"""Common constants for the starbundle package.

This module contains the equation tags embedded in every verification report,
the command-line exit code contract and the axiom names used by module checks.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

# Equation tags carried verbatim by reports
EQ_COMMUTATION = "Eq. (1)"
EQ_MOYAL = "Eq. (2)"
EQ_STAR_PRODUCT = "Eq. (3)"
EQ_POISSON = "Eq. (4)"
EQ_ORDERED_RING = "Eq. (8)"
EQ_HERMITIAN = "Eq. (13)"
EQ_MODULE_ACTION = "Eq. (14)"
EQ_METRIC = "Eq. (15)"
EQ_MODULE_EQUIVALENCE = "Eq. (17)"
EQ_ISOMETRY = "Eq. (19)"
EQ_PRINCIPAL_MODULE = "Eq. (20)"
EQ_EQUIVARIANCE = "Eq. (21)"
EQ_UNITALITY = "Eq. (23)"
EQ_BUNDLE_EQUIVALENCE = "Eq. (25)"
EQ_OBSTRUCTION = "Eq. (27)"
EQ_COBOUNDARY = "Eq. (31)"
EQ_COCYCLE = "Eq. (32)"
EQ_COMMUTANT = "Eq. (39)"
EQ_LIFT = "Eq. (43)"
EQ_LEFT_ACTION = "Eq. (44)"
EQ_VERTICAL_BRACKET = "Eq. (48)"
EQ_CHANGE_OF_STAR = "Eq. (49)"

# Axiom names for principal module checks
AXIOM_RIGHT_MODULE = "right-module"
AXIOM_UNITALITY = "unitality"
AXIOM_EQUIVARIANCE = "equivariance"

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_INPUT_ERROR = 3

# Reserved identifiers of the expression language
IMAGINARY_UNIT = "i"
DEFORMATION_PARAMETER = "lam"
DERIVATIVE_PREFIX = "d_"
