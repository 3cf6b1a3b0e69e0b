"""Exact scalars: rationals and Gaussian rationals.

``Rational`` is ``fractions.Fraction``. ``ComplexScalar`` pairs two rationals
as ``re + i*im`` with ``i*i = -1``, which is the coefficient field of every
polynomial, operator and series in the engine. Nothing here ever rounds.

### Legal
SPDX-FileCopyright © Robert Ferguson <rmferguson@pm.me>

SPDX-License-Identifier: [MIT](https://spdx.org/licenses/MIT.html)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from starbundle.common.exceptions import InvertError

__all__ = [
    "ComplexScalar",
    "I",
    "ONE",
    "Rational",
    "ScalarLike",
    "ZERO",
    "as_scalar",
    "format_rational",
]

Rational = Fraction
ScalarLike = Union[int, Fraction, "ComplexScalar"]


def format_rational(value: Fraction) -> str:
    """Render a rational as ``p`` or ``p/q``."""
    return str(value)


@dataclass(frozen=True, slots=True)
class ComplexScalar:
    """A Gaussian rational ``re + i*im``.

    Attributes:
        re: Real part
        im: Imaginary part
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: ScalarLike) -> ComplexScalar:
        """Lift an int, Fraction or ComplexScalar to a ComplexScalar.

        Raises:
            TypeError: For any other type (floats are rejected on purpose)
        """
        if isinstance(value, ComplexScalar):
            return value
        if isinstance(value, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"cannot interpret {type(value).__name__} as an exact scalar")

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def conjugate(self) -> ComplexScalar:
        return ComplexScalar(self.re, -self.im)

    def norm_squared(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> ComplexScalar:
        """Multiplicative inverse.

        Raises:
            InvertError: If the scalar is zero
        """
        norm = self.norm_squared()
        if norm == 0:
            raise InvertError("zero scalar")
        return ComplexScalar(self.re / norm, -self.im / norm)

    def __add__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (ComplexScalar, int, Fraction)):
            return NotImplemented
        rhs = ComplexScalar.coerce(other)
        return ComplexScalar(self.re + rhs.re, self.im + rhs.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (ComplexScalar, int, Fraction)):
            return NotImplemented
        rhs = ComplexScalar.coerce(other)
        return ComplexScalar(self.re - rhs.re, self.im - rhs.im)

    def __rsub__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return ComplexScalar.coerce(other) - self

    def __neg__(self) -> ComplexScalar:
        return ComplexScalar(-self.re, -self.im)

    def __mul__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (ComplexScalar, int, Fraction)):
            return NotImplemented
        rhs = ComplexScalar.coerce(other)
        if rhs.im == 0:
            return ComplexScalar(self.re * rhs.re, self.im * rhs.re)
        return ComplexScalar(self.re * rhs.re - self.im * rhs.im, self.re * rhs.im + self.im * rhs.re)

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (ComplexScalar, int, Fraction)):
            return NotImplemented
        return self * ComplexScalar.coerce(other).inverse()

    def __rtruediv__(self, other: object) -> ComplexScalar:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return ComplexScalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int) -> ComplexScalar:
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, ComplexScalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.im == 1:
            imaginary = "i"
        elif self.im == -1:
            imaginary = "-i"
        else:
            imaginary = f"{format_rational(self.im)}*i"
        if self.re == 0:
            return imaginary
        sign = "-" if self.im < 0 else "+"
        magnitude = imaginary.lstrip("-")
        return f"({format_rational(self.re)} {sign} {magnitude})"

    def __repr__(self) -> str:
        return f"ComplexScalar({self!s})"


ZERO = ComplexScalar(Fraction(0), Fraction(0))
ONE = ComplexScalar(Fraction(1), Fraction(0))
I = ComplexScalar(Fraction(0), Fraction(1))  # noqa: E741


def as_scalar(value: ScalarLike) -> ComplexScalar:
    """Functional alias of ``ComplexScalar.coerce``."""
    return ComplexScalar.coerce(value)
