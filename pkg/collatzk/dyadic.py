"""Exact rationals whose denominator is a power of two.

Copyright (c) 2024 collatzk maintainers

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""
import sys
from fractions import Fraction
from functools import total_ordering
from typing import Any, Optional, Tuple

from collatzk.exceptions import DivisionByZero, InexactDivision, NonIntegerResult, NotPowerOfTwo

if sys.version_info >= (3, 11):
    from typing import Self
else:
    from typing_extensions import Self


def _trailing_zeros(value: int) -> int:
    return (value & -value).bit_length() - 1


@total_ordering
class DyadicRational:
    """The value `numerator / 2**den_exp`, kept in canonical form.

    Canonical means the numerator is odd, or the numerator is zero, or den_exp is zero. Normalizing only strips
    common factors of two, so no gcd is ever computed.
    """

    __slots__ = ("_numerator", "_den_exp")

    def __init__(self, numerator: int = 0, den_exp: int = 0):
        """Build numerator / 2**den_exp and normalize it."""
        if den_exp < 0:
            raise ValueError(f"den_exp must be non-negative, got {den_exp}")
        numerator = int(numerator)
        if numerator == 0:
            den_exp = 0
        elif den_exp:
            shift = min(_trailing_zeros(numerator), den_exp)
            numerator >>= shift
            den_exp -= shift
        self._numerator = numerator
        self._den_exp = den_exp

    @classmethod
    def from_int(cls, value: int) -> Self:
        """Wrap an integer."""
        return cls(value, 0)

    @property
    def numerator(self) -> int:
        """Numerator in canonical form."""
        return self._numerator

    @property
    def den_exp(self) -> int:
        """Exponent of the power-of-two denominator in canonical form."""
        return self._den_exp

    @property
    def denominator(self) -> int:
        """The denominator itself, 2**den_exp."""
        return 1 << self._den_exp

    def is_integer(self) -> bool:
        """True if the value is integral."""
        return self._den_exp == 0

    def to_int(self) -> int:
        """Return the value as an int, refusing to round.

        Raises:
            NonIntegerResult: if the value has a fractional part.
        """
        if self._den_exp:
            raise NonIntegerResult(f"{self} is not an integer", self)
        return self._numerator

    def __int__(self) -> int:
        return self.to_int()

    def as_fraction(self) -> Fraction:
        """Return the same value as a `fractions.Fraction`."""
        return Fraction(self._numerator, 1 << self._den_exp)

    def mul_pow2(self, exponent: int) -> Self:
        """Multiply by 2**exponent; negative exponents divide."""
        if exponent < 0:
            return self.div_pow2(-exponent)
        if exponent <= self._den_exp:
            return type(self)(self._numerator, self._den_exp - exponent)
        return type(self)(self._numerator << (exponent - self._den_exp), 0)

    def div_pow2(self, exponent: int) -> Self:
        """Divide by 2**exponent; negative exponents multiply."""
        if exponent < 0:
            return self.mul_pow2(-exponent)
        return type(self)(self._numerator, self._den_exp + exponent)

    def log2_exact(self) -> int:
        """Return e such that the value equals 2**e exactly.

        Raises:
            NotPowerOfTwo: if the value is not a positive power of two.
        """
        numerator = self._numerator
        if numerator <= 0 or numerator & (numerator - 1):
            raise NotPowerOfTwo(f"{self} is not a power of two", self)
        return numerator.bit_length() - 1 - self._den_exp

    @classmethod
    def _coerce(cls, other: Any) -> Optional["DyadicRational"]:
        if isinstance(other, DyadicRational):
            return other
        if isinstance(other, int):
            return cls(other, 0)
        return None

    def _aligned(self, other: "DyadicRational") -> Tuple[int, int, int]:
        """Numerators of both operands over their common denominator, and its exponent."""
        exp = max(self._den_exp, other._den_exp)
        return (
            self._numerator << (exp - self._den_exp),
            other._numerator << (exp - other._den_exp),
            exp,
        )

    def __add__(self, other: Any) -> "DyadicRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        left, right, exp = self._aligned(rhs)
        return DyadicRational(left + right, exp)

    __radd__ = __add__

    def __sub__(self, other: Any) -> "DyadicRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        left, right, exp = self._aligned(rhs)
        return DyadicRational(left - right, exp)

    def __rsub__(self, other: Any) -> "DyadicRational":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: Any) -> "DyadicRational":
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        return DyadicRational(self._numerator * rhs._numerator, self._den_exp + rhs._den_exp)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "DyadicRational":
        """Exact quotient, defined only when it is again dyadic.

        Raises:
            DivisionByZero: if `other` is zero.
            InexactDivision: if the odd part of the divisor does not divide the numerator.
        """
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        if rhs._numerator == 0:
            raise DivisionByZero(f"division of {self} by zero")
        twos = _trailing_zeros(rhs._numerator)
        odd_part = rhs._numerator >> twos
        quotient, remainder = divmod(self._numerator, odd_part)
        if remainder:
            raise InexactDivision(f"{self} / {rhs} has a denominator that is not a power of two")
        # (p / 2^e) / (q * 2^s / 2^f) = (p / q) * 2^(f - e - s)
        return DyadicRational(quotient).mul_pow2(rhs._den_exp - self._den_exp - twos)

    def __rtruediv__(self, other: Any) -> "DyadicRational":
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        return lhs / self

    def __neg__(self) -> "DyadicRational":
        return DyadicRational(-self._numerator, self._den_exp)

    def __abs__(self) -> "DyadicRational":
        return DyadicRational(abs(self._numerator), self._den_exp)

    def __bool__(self) -> bool:
        return self._numerator != 0

    def __eq__(self, other: Any) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            if isinstance(other, Fraction):
                return self.as_fraction() == other
            return NotImplemented
        return self._numerator == rhs._numerator and self._den_exp == rhs._den_exp

    def __lt__(self, other: Any) -> bool:
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        left, right, _ = self._aligned(rhs)
        return left < right

    def __hash__(self) -> int:
        # Equal to hash(int) and hash(Fraction) for equal values.
        if self._den_exp == 0:
            return hash(self._numerator)
        return hash(self.as_fraction())

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self._numerator}, {self._den_exp})"

    def __str__(self) -> str:
        if self._den_exp == 0:
            return str(self._numerator)
        return f"{self._numerator}/{1 << self._den_exp}"
