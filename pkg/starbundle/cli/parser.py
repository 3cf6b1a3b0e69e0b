"""Expression parsing for workspace files and command arguments.

Expressions denote formal series of polynomials, matrices of them, or
formal series of differential operators. Juxtaposition multiplies, so ``2x``
and ``x y`` are products, ``/`` divides, ``^`` raises to a natural power,
``i`` is the imaginary unit, ``lam`` the deformation parameter and ``d_x``
the partial derivative along ``x``. Unary minus may start any sum, so ``-x + y``
parses while ``x*-y`` must be written ``x*(-y)``. Matrices are ``[a, b; c, d]``.

References:
    - [Lark Documentation](https://lark-parser.readthedocs.io/)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedEOF, UnexpectedInput, UnexpectedToken

from starbundle.common.constants import DEFORMATION_PARAMETER, IMAGINARY_UNIT
from starbundle.common.exceptions import ExpressionSyntaxError

logger = logging.getLogger(__name__)

__all__ = [
    "Difference",
    "Expression",
    "ImaginaryUnit",
    "Lambda",
    "MatrixLiteral",
    "Negation",
    "Power",
    "Product",
    "Quotient",
    "RationalLiteral",
    "Sum",
    "Variable",
    "parse_expression",
    "pretty",
]

EXPRESSION_GRAMMAR = r"""
    ?start: sum

    ?sum: product
        | "-" product           -> neg
        | sum "+" product       -> add
        | sum "-" product       -> sub

    ?product: power
        | product power         -> mul
        | product "*" power     -> mul
        | product "/" power     -> div

    ?power: atom
        | atom "^" NATURAL      -> pow

    ?atom: NUMBER               -> number
         | NAME                 -> name
         | "(" sum ")"
         | "[" rows "]"         -> matrix

    rows: row (";" row)*
    row: sum ("," sum)*

    NATURAL: /\d+/
    NUMBER: /\d+(\.\d+)?/
    NAME: /[A-Za-z_][A-Za-z0-9_]*/

    %import common.WS
    %ignore WS
"""


@dataclass(frozen=True)
class RationalLiteral:
    value: Fraction


@dataclass(frozen=True)
class ImaginaryUnit:
    pass


@dataclass(frozen=True)
class Lambda:
    pass


@dataclass(frozen=True)
class Variable:
    """A variable or, in operator expressions, a ``d_<var>`` derivative."""

    name: str


@dataclass(frozen=True)
class Sum:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Difference:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Product:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Quotient:
    left: Expression
    right: Expression


@dataclass(frozen=True)
class Power:
    base: Expression
    exponent: int


@dataclass(frozen=True)
class Negation:
    operand: Expression


@dataclass(frozen=True)
class MatrixLiteral:
    rows: tuple[tuple[Expression, ...], ...]


Expression = (
    RationalLiteral
    | ImaginaryUnit
    | Lambda
    | Variable
    | Sum
    | Difference
    | Product
    | Quotient
    | Power
    | Negation
    | MatrixLiteral
)


@v_args(inline=True)
class ExpressionBuilder(Transformer):
    """Turn the lark parse tree into frozen expression nodes."""

    def number(self, token: Token) -> RationalLiteral:
        return RationalLiteral(Fraction(str(token)))

    def name(self, token: Token) -> Expression:
        text = str(token)
        if text == IMAGINARY_UNIT:
            return ImaginaryUnit()
        if text == DEFORMATION_PARAMETER:
            return Lambda()
        return Variable(text)

    def neg(self, operand: Expression) -> Negation:
        return Negation(operand)

    def add(self, left: Expression, right: Expression) -> Sum:
        return Sum(left, right)

    def sub(self, left: Expression, right: Expression) -> Difference:
        return Difference(left, right)

    def mul(self, left: Expression, right: Expression) -> Product:
        return Product(left, right)

    def div(self, left: Expression, right: Expression) -> Quotient:
        return Quotient(left, right)

    def pow(self, base: Expression, exponent: Token) -> Power:
        return Power(base, int(str(exponent)))

    def matrix(self, rows: tuple[tuple[Expression, ...], ...]) -> MatrixLiteral:
        return MatrixLiteral(rows)

    def rows(self, *rows: tuple[Expression, ...]) -> tuple[tuple[Expression, ...], ...]:
        return tuple(rows)

    def row(self, *entries: Expression) -> tuple[Expression, ...]:
        return tuple(entries)


expression_parser = Lark(EXPRESSION_GRAMMAR, parser="lalr", transformer=ExpressionBuilder())


def _end_position(text: str) -> tuple[int, int]:
    lines = text.split("\n")
    return len(lines), len(lines[-1]) + 1


def parse_expression(text: str) -> Expression:
    """Parse one expression.

    Args:
        text: Expression source

    Returns:
        Expression: The expression tree

    Raises:
        ExpressionSyntaxError: With the 1-based line and column of the first offending character
    """
    try:
        result: Expression = expression_parser.parse(text)
    except UnexpectedEOF as e:
        line, column = _end_position(text)
        raise ExpressionSyntaxError(text, line, column) from e
    except UnexpectedInput as e:
        if e.line < 1 or (isinstance(e, UnexpectedToken) and e.token.type == "$END"):
            line, column = _end_position(text)
        else:
            line, column = e.line, e.column
        logger.debug(f"Rejected expression {text!r} at {line}:{column}")
        raise ExpressionSyntaxError(text, line, column) from e
    return result


# Binding strength: sums, products, powers, atoms
SUM_LEVEL, PRODUCT_LEVEL, POWER_LEVEL, ATOM_LEVEL = range(1, 5)


def _level(node: Expression) -> int:
    match node:
        case Sum() | Difference() | Negation():
            return SUM_LEVEL
        case Product() | Quotient():
            return PRODUCT_LEVEL
        case Power():
            return POWER_LEVEL
        case RationalLiteral(value=value) if value.denominator != 1 or value < 0:
            return PRODUCT_LEVEL
        case _:
            return ATOM_LEVEL


def _wrapped(node: Expression, level: int) -> str:
    text = pretty(node)
    return f"({text})" if _level(node) < level else text


def pretty(node: Expression) -> str:
    """Canonical text of an expression; parsing it gives back the same text."""
    match node:
        case RationalLiteral(value=value):
            return str(value)
        case ImaginaryUnit():
            return IMAGINARY_UNIT
        case Lambda():
            return DEFORMATION_PARAMETER
        case Variable(name=name):
            return name
        case Sum(left=left, right=right):
            return f"{_wrapped(left, SUM_LEVEL)} + {_wrapped(right, PRODUCT_LEVEL)}"
        case Difference(left=left, right=right):
            return f"{_wrapped(left, SUM_LEVEL)} - {_wrapped(right, PRODUCT_LEVEL)}"
        case Negation(operand=operand):
            return f"-{_wrapped(operand, PRODUCT_LEVEL)}"
        case Product(left=left, right=right):
            return f"{_wrapped(left, PRODUCT_LEVEL)}*{_wrapped(right, POWER_LEVEL)}"
        case Quotient(left=left, right=right):
            return f"{_wrapped(left, PRODUCT_LEVEL)}/{_wrapped(right, POWER_LEVEL)}"
        case Power(base=base, exponent=exponent):
            return f"{_wrapped(base, ATOM_LEVEL)}^{exponent}"
        case MatrixLiteral(rows=rows):
            return "[" + "; ".join(", ".join(pretty(entry) for entry in row) for row in rows) + "]"
    raise TypeError(f"Not an expression node: {node!r}")
