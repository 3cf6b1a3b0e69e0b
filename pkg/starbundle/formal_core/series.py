"""Truncated formal power series in the deformation parameter lam.

``FormalSeries`` stores coefficients ``a_0..a_N`` and computes modulo
``lam^(N+1)``. Coefficients may be scalars, polynomials, operators or anything
else with ring operations and ``conjugate()``; products keep the left/right
order of the coefficients so operator-valued series compose correctly.

Mixed truncation orders raise ``OrderMismatch`` instead of silently
re-truncating. ``series_sign`` decides positivity in the ordered ring of real
series by the lowest nonvanishing coefficient.

References:
    - [Formal power series](https://en.wikipedia.org/wiki/Formal_power_series)

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Generic, TypeVar

from starbundle.common.exceptions import InvertError, OrderMismatch
from starbundle.formal_core.scalars import ComplexScalar

__all__ = [
    "FormalSeries",
    "SeriesOp",
    "Sign",
    "SignVerdict",
    "lift_series",
    "series_arithmetic",
    "series_sign",
]

C = TypeVar("C")
D = TypeVar("D")


def _is_zero(value: Any) -> bool:
    checker = getattr(value, "is_zero", None)
    if callable(checker):
        return bool(checker())
    return bool(value == 0)


def _conjugate(value: Any) -> Any:
    return value.conjugate()


def _invert_coefficient(value: Any) -> Any:
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        if value == 0:
            raise InvertError("order-0 coefficient is zero")
        return Fraction(1) / Fraction(value)
    inverse = getattr(value, "inverse", None)
    if not callable(inverse):
        raise InvertError(f"order-0 coefficient of type {type(value).__name__} has no inverse")
    return inverse()


class FormalSeries(Generic[C]):
    """A truncated formal power series ``a_0 + a_1 lam + ... + a_N lam^N``.

    Attributes:
        coeffs: Coefficients ``a_0..a_N``
        order: Truncation order N
    """

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs: Sequence[C], order: int | None = None, zero: C | None = None):
        """Build a series, padding with zeros up to ``order``.

        Coefficients beyond ``order`` are dropped, which is the meaning of
        working modulo ``lam^(order+1)``.

        Args:
            coeffs: Leading coefficients, lowest order first
            order: Truncation order (defaults to ``len(coeffs) - 1``)
            zero: The zero coefficient, required only when ``coeffs`` is empty

        Raises:
            ValueError: If neither coefficients nor a zero are given, or the order is negative
        """
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("truncation order must be nonnegative")
        if zero is None:
            if not coeffs:
                raise ValueError("an empty series needs an explicit zero coefficient")
            zero = coeffs[0] - coeffs[0]  # type: ignore[operator]
        values = list(coeffs[: order + 1])
        values.extend([zero] * (order + 1 - len(values)))
        self.coeffs: tuple[C, ...] = tuple(values)
        self.order = order

    @classmethod
    def constant(cls, value: C, order: int) -> FormalSeries[C]:
        return cls([value], order)

    @classmethod
    def monomial(cls, value: C, power: int, order: int) -> FormalSeries[C]:
        """The series ``value * lam^power``."""
        zero = value - value  # type: ignore[operator]
        coeffs = [zero] * (order + 1)
        if power <= order:
            coeffs[power] = value
        return cls(coeffs, order)

    @property
    def zero_coefficient(self) -> C:
        return self.coeffs[0] - self.coeffs[0]  # type: ignore[operator, no-any-return]

    def __getitem__(self, index: int) -> C:
        return self.coeffs[index]

    def __iter__(self) -> Iterator[C]:
        return iter(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def _check(self, other: FormalSeries[Any]) -> None:
        if other.order != self.order:
            raise OrderMismatch(self.order, other.order)

    def _lift(self, other: object) -> FormalSeries[Any]:
        if isinstance(other, FormalSeries):
            self._check(other)
            return other
        return FormalSeries.constant(other, self.order)

    def __add__(self, other: object) -> FormalSeries[C]:
        rhs = self._lift(other)
        total = [a + b for a, b in zip(self.coeffs, rhs.coeffs, strict=True)]  # type: ignore[operator]
        return FormalSeries(total, self.order)

    def __radd__(self, other: object) -> FormalSeries[C]:
        lhs = self._lift(other)
        return lhs + self

    def __sub__(self, other: object) -> FormalSeries[C]:
        rhs = self._lift(other)
        difference = [a - b for a, b in zip(self.coeffs, rhs.coeffs, strict=True)]  # type: ignore[operator]
        return FormalSeries(difference, self.order)

    def __rsub__(self, other: object) -> FormalSeries[C]:
        lhs = self._lift(other)
        return lhs - self

    def __neg__(self) -> FormalSeries[C]:
        return FormalSeries([-a for a in self.coeffs], self.order)  # type: ignore[operator]

    def __mul__(self, other: object) -> FormalSeries[C]:
        if not isinstance(other, FormalSeries):
            return FormalSeries([a * other for a in self.coeffs], self.order)  # type: ignore[operator]
        self._check(other)
        result = []
        for n in range(self.order + 1):
            total = self.coeffs[0] * other.coeffs[n]  # type: ignore[operator]
            for k in range(1, n + 1):
                total = total + self.coeffs[k] * other.coeffs[n - k]  # type: ignore[operator]
            result.append(total)
        return FormalSeries(result, self.order)

    def __rmul__(self, other: object) -> FormalSeries[C]:
        return FormalSeries([other * a for a in self.coeffs], self.order)  # type: ignore[operator]

    def __pow__(self, exponent: int) -> FormalSeries[C]:
        if exponent < 0:
            return self.invert() ** (-exponent)
        if exponent == 0:
            raise ValueError("the zeroth power needs a unit; build it with FormalSeries.constant")
        result = self
        for _ in range(exponent - 1):
            result = result * self
        return result

    def invert(self) -> FormalSeries[C]:
        """Two-sided inverse in the truncated ring.

        Solves ``a * b = 1`` order by order with ``b_n = -a_0^{-1} sum_{k>=1} a_k b_{n-k}``.

        Raises:
            InvertError: If the order-0 coefficient is not invertible
        """
        head = _invert_coefficient(self.coeffs[0])
        result = [head]
        for n in range(1, self.order + 1):
            total = self.coeffs[1] * result[n - 1]  # type: ignore[operator]
            for k in range(2, n + 1):
                total = total + self.coeffs[k] * result[n - k]  # type: ignore[operator]
            result.append(-(head * total))
        return FormalSeries(result, self.order)

    def conjugate(self) -> FormalSeries[C]:
        """Conjugate every coefficient; lam is real."""
        return FormalSeries([_conjugate(a) for a in self.coeffs], self.order)

    def shift(self, power: int) -> FormalSeries[C]:
        """Multiply by ``lam^power``."""
        zero = self.zero_coefficient
        return FormalSeries([zero] * power + list(self.coeffs[: self.order + 1 - power]), self.order)

    def map(self, function: Callable[[C], D]) -> FormalSeries[D]:
        return FormalSeries([function(a) for a in self.coeffs], self.order)

    def truncate(self, order: int) -> FormalSeries[C]:
        """Explicitly re-truncate to a lower order."""
        if order > self.order:
            raise OrderMismatch(self.order, order)
        return FormalSeries(self.coeffs[: order + 1], order)

    def lowest_order(self) -> int | None:
        """Index of the first nonzero coefficient, or None for the zero series."""
        for index, value in enumerate(self.coeffs):
            if not _is_zero(value):
                return index
        return None

    def is_zero(self) -> bool:
        return self.lowest_order() is None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FormalSeries):
            return NotImplemented
        return self.order == other.order and all(a == b for a, b in zip(self.coeffs, other.coeffs, strict=True))

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    def __str__(self) -> str:
        pieces = []
        for index, value in enumerate(self.coeffs):
            if _is_zero(value):
                continue
            suffix = "" if index == 0 else ("*lam" if index == 1 else f"*lam^{index}")
            pieces.append(f"({value}){suffix}")
        return " + ".join(pieces) if pieces else "0"

    def __repr__(self) -> str:
        return f"FormalSeries({self!s}, order={self.order})"


class SeriesOp(str, Enum):
    """Operations accepted by ``series_arithmetic``."""

    ADD = "add"
    MUL = "mul"
    INVERT = "invert"
    CONJUGATE = "conjugate"


def series_arithmetic(a: FormalSeries[Any], b: FormalSeries[Any] | None, op: SeriesOp | str) -> FormalSeries[Any]:
    """Apply a truncated ring operation.

    Args:
        a: First operand
        b: Second operand (ignored by the unary operations)
        op: One of add, mul, invert, conjugate

    Returns:
        FormalSeries: The exact result modulo ``lam^(N+1)``

    Raises:
        OrderMismatch: If the truncation orders differ
        InvertError: If inverting a series with non-invertible order-0 coefficient
    """
    operation = SeriesOp(op)
    if operation is SeriesOp.INVERT:
        return a.invert()
    if operation is SeriesOp.CONJUGATE:
        return a.conjugate()
    if b is None:
        raise ValueError(f"{operation.value} needs two operands")
    if operation is SeriesOp.ADD:
        return a + b
    return a * b


class Sign(str, Enum):
    """Sign in the ordered ring of real formal series."""

    POSITIVE = "positive"
    NEGATIVE = "negative"
    ZERO = "zero"

    def as_int(self) -> int:
        return {Sign.POSITIVE: 1, Sign.NEGATIVE: -1, Sign.ZERO: 0}[self]


@dataclass(frozen=True)
class SignVerdict:
    """A sign decided modulo ``lam^modulo``.

    Attributes:
        sign: The decided sign
        lowest_order: Order of the deciding coefficient (None when all stored orders vanish)
        modulo: The verdict holds modulo ``lam^modulo``
    """

    sign: Sign
    lowest_order: int | None
    modulo: int


def _real_value(value: Any) -> Fraction:
    if isinstance(value, ComplexScalar):
        if not value.is_real():
            raise ValueError(f"coefficient {value} is not real")
        return value.re
    if isinstance(value, (int, Fraction)) and not isinstance(value, bool):
        return Fraction(value)
    raise ValueError(f"coefficient of type {type(value).__name__} has no sign")


def series_sign(a: FormalSeries[Any]) -> SignVerdict:
    """Decide the sign of a real series by its lowest nonvanishing coefficient.

    Args:
        a: A series with rational (or real Gaussian-rational) coefficients

    Returns:
        SignVerdict: The sign, the deciding order, and the modulus of validity

    Raises:
        ValueError: If a coefficient is not real
    """
    values = [_real_value(value) for value in a.coeffs]
    for index, value in enumerate(values):
        if value > 0:
            return SignVerdict(Sign.POSITIVE, index, a.order + 1)
        if value < 0:
            return SignVerdict(Sign.NEGATIVE, index, a.order + 1)
    return SignVerdict(Sign.ZERO, None, a.order + 1)


def lift_series(value: Any, order: int) -> FormalSeries[Any]:
    """Treat a bare coefficient as a constant series; check the order of a series.

    Raises:
        OrderMismatch: If ``value`` is a series of another truncation order
    """
    if isinstance(value, FormalSeries):
        if value.order != order:
            raise OrderMismatch(order, value.order)
        return value
    return FormalSeries.constant(value, order)
