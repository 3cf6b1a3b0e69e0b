"""Exact algebra substrate for the starbundle package.

This package provides the exact scalars, truncated formal series, polynomials
on split base/fiber variable sets, differential and multidifferential
operators, polynomial matrices and the sparse exact linear solver that every
deformation module is built on.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from starbundle.formal_core.diffop import DiffOp, MultiDiffOp, diffop_apply, diffop_compose
from starbundle.formal_core.linsolve import SparseEchelon, nullspace, solve_linear_system
from starbundle.formal_core.matrix import PolyMatrix
from starbundle.formal_core.polynomial import Polynomial, VariableLayout, monomials, sum_polynomials
from starbundle.formal_core.scalars import I, ONE, ZERO, ComplexScalar, Rational, as_scalar
from starbundle.formal_core.series import (
    FormalSeries,
    SeriesOp,
    Sign,
    SignVerdict,
    lift_series,
    series_arithmetic,
    series_sign,
)

__all__ = [
    "I",
    "ONE",
    "ZERO",
    "ComplexScalar",
    "DiffOp",
    "FormalSeries",
    "MultiDiffOp",
    "PolyMatrix",
    "Polynomial",
    "Rational",
    "SeriesOp",
    "Sign",
    "SignVerdict",
    "SparseEchelon",
    "VariableLayout",
    "as_scalar",
    "diffop_apply",
    "diffop_compose",
    "lift_series",
    "monomials",
    "nullspace",
    "series_arithmetic",
    "series_sign",
    "solve_linear_system",
    "sum_polynomials",
]
