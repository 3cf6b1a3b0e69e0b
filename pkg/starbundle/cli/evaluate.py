"""Lower parsed expressions to series, matrices and operator series.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

from collections.abc import Callable
from typing import Any

from starbundle.cli.parser import (
    Difference,
    Expression,
    ImaginaryUnit,
    Lambda,
    MatrixLiteral,
    Negation,
    Power,
    Product,
    Quotient,
    RationalLiteral,
    Sum,
    Variable,
    parse_expression,
    pretty,
)
from starbundle.common.constants import DERIVATIVE_PREFIX
from starbundle.common.exceptions import InputError, UnknownIdentifier
from starbundle.formal_core.diffop import DiffOp
from starbundle.formal_core.polynomial import Polynomial, VariableLayout
from starbundle.formal_core.scalars import I, ComplexScalar
from starbundle.formal_core.series import FormalSeries
from starbundle.module_deform.idempotent import SeriesMatrix

__all__ = [
    "evaluate_matrix",
    "evaluate_operator",
    "evaluate_series",
    "evaluate_vector",
    "parse_operator",
    "parse_series",
]

PolySeries = FormalSeries[Polynomial]
OperatorSeries = FormalSeries[DiffOp]


def _constant_divisor(series: FormalSeries[Any], text: str) -> ComplexScalar:
    head = series[0]
    if isinstance(head, Polynomial):
        constant = head.constant_term() if head.is_constant() else None
    else:
        constant = _operator_constant(head)
    if constant is None or not all(value.is_zero() for value in series.coeffs[1:]):
        raise InputError(f"Division by the non-constant expression {text}")
    if constant.is_zero():
        raise InputError(f"Division by zero in {text}")
    return constant


def _operator_constant(operator: DiffOp) -> ComplexScalar | None:
    if operator.is_zero():
        return ComplexScalar.coerce(0)
    zero_index = (0,) * operator.layout.size
    if set(operator.terms) != {zero_index} or not operator.terms[zero_index].is_constant():
        return None
    return operator.terms[zero_index].constant_term()


class _Lowering:
    """Structural recursion shared by the polynomial and operator evaluators."""

    def __init__(self, order: int, scalar: Callable[[ComplexScalar], Any], leaf: Callable[[str], Any]):
        self.order = order
        self.scalar = scalar
        self.leaf = leaf

    def constant(self, value: ComplexScalar) -> FormalSeries[Any]:
        return FormalSeries.constant(self.scalar(value), self.order)

    def __call__(self, node: Expression) -> FormalSeries[Any]:
        match node:
            case RationalLiteral(value=value):
                return self.constant(ComplexScalar.coerce(value))
            case ImaginaryUnit():
                return self.constant(I)
            case Lambda():
                return FormalSeries.monomial(self.scalar(ComplexScalar.coerce(1)), 1, self.order)
            case Variable(name=name):
                return FormalSeries.constant(self.leaf(name), self.order)
            case Sum(left=left, right=right):
                return self(left) + self(right)
            case Difference(left=left, right=right):
                return self(left) - self(right)
            case Product(left=left, right=right):
                return self(left) * self(right)
            case Quotient(left=left, right=right):
                divisor = _constant_divisor(self(right), pretty(right))
                return self(left) * self.scalar(divisor.inverse())
            case Power(base=base, exponent=exponent):
                if exponent == 0:
                    return self.constant(ComplexScalar.coerce(1))
                return self(base) ** exponent
            case Negation(operand=operand):
                return -self(operand)
            case MatrixLiteral():
                raise InputError(f"Matrix {pretty(node)} where a single entry is expected")
        raise TypeError(f"Not an expression node: {node!r}")


def evaluate_series(node: Expression, layout: VariableLayout, order: int) -> PolySeries:
    """Evaluate to a series of polynomials; products are pointwise.

    Raises:
        UnknownIdentifier: For names outside the layout
        InputError: For matrices or division by a non-constant
    """

    def leaf(name: str) -> Polynomial:
        if name not in layout.names:
            raise UnknownIdentifier(name)
        return Polynomial.variable(layout, name)

    return _Lowering(order, lambda value: Polynomial.constant(layout, value), leaf)(node)


def evaluate_operator(node: Expression, layout: VariableLayout, order: int) -> OperatorSeries:
    """Evaluate to a series of differential operators; products compose.

    A variable name is multiplication by that variable and ``d_<var>`` the
    partial derivative, so ``x d_y`` is ``x * d/dy``.
    """

    def leaf(name: str) -> DiffOp:
        if name in layout.names:
            return DiffOp.multiplication(Polynomial.variable(layout, name))
        variable = name.removeprefix(DERIVATIVE_PREFIX)
        if name.startswith(DERIVATIVE_PREFIX) and variable in layout.names:
            return DiffOp.partial(layout, variable)
        raise UnknownIdentifier(name)

    return _Lowering(order, lambda value: DiffOp.scalar(layout, value), leaf)(node)


def evaluate_matrix(node: Expression, layout: VariableLayout, order: int) -> SeriesMatrix:
    """Evaluate a matrix literal entrywise.

    Raises:
        InputError: If the expression is not a rectangular matrix literal
    """
    if not isinstance(node, MatrixLiteral):
        raise InputError("A matrix literal [a, b; c, d] is required")
    widths = {len(row) for row in node.rows}
    if len(widths) != 1:
        raise InputError("Matrix rows have different lengths")
    rows = [[evaluate_series(entry, layout, order) for entry in row] for row in node.rows]
    return SeriesMatrix(layout, order, rows)


def evaluate_vector(node: Expression, layout: VariableLayout, order: int) -> list[PolySeries]:
    """Evaluate a single-row or single-column matrix literal as a vector."""
    matrix = evaluate_matrix(node, layout, order)
    nrows, ncols = matrix.shape
    if nrows == 1:
        return [matrix[0, column] for column in range(ncols)]
    if ncols == 1:
        return [matrix[row, 0] for row in range(nrows)]
    raise InputError(f"A vector is required, got a {nrows}x{ncols} matrix")


def parse_series(text: str, layout: VariableLayout, order: int) -> PolySeries:
    return evaluate_series(parse_expression(text), layout, order)


def parse_operator(text: str, layout: VariableLayout, order: int) -> OperatorSeries:
    return evaluate_operator(parse_expression(text), layout, order)
