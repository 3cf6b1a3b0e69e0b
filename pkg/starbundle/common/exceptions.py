"""Custom exceptions for the starbundle package.

This module provides the hierarchy of exceptions raised throughout the
starbundle package. Verification failures are never raised: they are
returned as reports. Exceptions signal violated preconditions, unsupported
inputs and the inconclusive outcome of the bounded coboundary solver.

The hierarchy runs from a package root, through a service-level base, to one
branch per functional area, so callers can catch at whatever granularity
they need.

References:
    - [Python Exception Handling](https://docs.python.org/3/tutorial/errors.html)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from collections.abc import Mapping


class StarbundleException(Exception):
    """Base exception for all starbundle related exceptions.

    This is the root exception class for the starbundle package. All other
    exceptions inherit from this class to maintain a consistent hierarchy.
    """


class StarbundleError(StarbundleException):
    """Base exception for engine errors.

    This exception serves as the base for all errors raised by the algebra,
    deformation and command-line layers.
    """


# Algebra substrate


class AlgebraError(StarbundleError):
    """Base exception for errors in the exact algebra substrate."""


class InvertError(AlgebraError):
    """Exception raised when a formal series or scalar is not invertible.

    Args:
        reason: Why the inversion is impossible
    """

    def __init__(self, reason: str):
        """Initialize the exception with the reason.

        Args:
            reason: Why the inversion is impossible
        """
        self.reason = reason
        super().__init__(f"Not invertible: {reason}")


class OrderMismatch(AlgebraError):
    """Exception raised when formal series of different truncation orders meet.

    Args:
        left: Truncation order of the left operand
        right: Truncation order of the right operand
    """

    def __init__(self, left: int, right: int):
        """Initialize the exception with both truncation orders.

        Args:
            left: Truncation order of the left operand
            right: Truncation order of the right operand
        """
        self.left = left
        self.right = right
        super().__init__(f"Truncation orders differ: {left} != {right}")


class LayoutMismatch(AlgebraError):
    """Exception raised when operands live on incompatible variable layouts."""


# Star products


class StarProductError(StarbundleError):
    """Base exception for star product construction errors."""


class NonConstantTheta(StarProductError):
    """Exception raised when the exponential product formula gets a non-constant tensor."""


class UnitalityViolation(StarProductError):
    """Exception raised when a cochain or transform fails to annihilate constants.

    Args:
        stage: The order at which the violation occurs
    """

    def __init__(self, stage: int):
        """Initialize the exception with the offending order.

        Args:
            stage: The order at which the violation occurs
        """
        self.stage = stage
        super().__init__(f"Stage {stage} does not annihilate the constant function 1")


class NonHermitianStar(StarProductError):
    """Exception raised when a Hermitian star product is required but not supplied."""


# Module deformations


class ModuleError(StarbundleError):
    """Base exception for projective module deformation errors."""


class NotIdempotent(ModuleError):
    """Exception raised when a classical matrix fails e0 * e0 = e0."""


class NotInModule(ModuleError):
    """Exception raised when a vector is not fixed by the deformed projector."""


class NonHermitianProjector(ModuleError):
    """Exception raised when a Hermitian projector is required but e0 is not Hermitian."""


# Hochschild calculus


class CohomologyError(StarbundleError):
    """Base exception for Hochschild complex and obstruction errors."""


class ArityUnsupported(CohomologyError):
    """Exception raised for cochain arities outside the supported range.

    Args:
        arity: The rejected arity
    """

    def __init__(self, arity: int):
        """Initialize the exception with the rejected arity.

        Args:
            arity: The rejected arity
        """
        self.arity = arity
        super().__init__(f"Cochain arity {arity} is not supported here")


class NotACocycle(CohomologyError):
    """Exception raised when a right-hand side fails the necessary condition delta R = 0.

    Args:
        witness: Pretty-printed arguments on which delta R does not vanish
    """

    def __init__(self, witness: list[str]):
        """Initialize the exception with the witness tuple.

        Args:
            witness: Pretty-printed arguments on which delta R does not vanish
        """
        self.witness = witness
        super().__init__(f"Right-hand side is not a cocycle; witness {witness}")


class NoSolutionInTruncation(CohomologyError):
    """Exception raised when the bounded ansatz holds no solution.

    This is an inconclusive outcome: it never asserts a nontrivial class.

    Args:
        bounds: The ansatz bounds that were searched
        order: The deformation order being solved, when known
    """

    def __init__(self, bounds: Mapping[str, int], order: int | None = None):
        """Initialize the exception with the searched bounds.

        Args:
            bounds: The ansatz bounds that were searched
            order: The deformation order being solved, when known
        """
        self.bounds = dict(bounds)
        self.order = order
        where = f" at order {order}" if order is not None else ""
        super().__init__(f"No solution within ansatz bounds {self.bounds}{where}")


class NotModuleToOrderK(CohomologyError):
    """Exception raised when a module deformation fails its axioms below the requested order.

    Args:
        order: The order the structure was expected to hold to
        failing_order: The first order at which it fails
    """

    def __init__(self, order: int, failing_order: int | None):
        """Initialize the exception with both orders.

        Args:
            order: The order the structure was expected to hold to
            failing_order: The first order at which it fails
        """
        self.order = order
        self.failing_order = failing_order
        super().__init__(f"Not a module structure modulo lam^{order + 1}; first failure at order {failing_order}")


# Commutant


class CommutantError(StarbundleError):
    """Base exception for commutant lifting errors."""


class NotVertical(CommutantError):
    """Exception raised when an operator differentiates along base variables."""


# Input layer


class InputError(StarbundleError):
    """Base exception for malformed user input."""


class ExpressionSyntaxError(InputError):
    """Exception raised when an expression does not match the grammar.

    Args:
        text: The rejected expression
        line: 1-based line of the offending character
        column: 1-based column of the offending character
    """

    def __init__(self, text: str, line: int, column: int):
        """Initialize the exception with the error position.

        Args:
            text: The rejected expression
            line: 1-based line of the offending character
            column: 1-based column of the offending character
        """
        self.text = text
        self.line = line
        self.column = column
        super().__init__(f"Syntax error at line {line}, column {column}: {text!r}")


class UnknownIdentifier(InputError):
    """Exception raised when an expression names a variable outside the workspace.

    Args:
        name: The unknown identifier
    """

    def __init__(self, name: str):
        """Initialize the exception with the unknown name.

        Args:
            name: The unknown identifier
        """
        self.name = name
        super().__init__(f"Unknown identifier '{name}'")


class WorkspaceError(InputError):
    """Exception raised when a workspace file cannot be loaded or is inconsistent."""
