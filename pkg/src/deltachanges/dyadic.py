"""Exact nonnegative dyadic rationals ``numerator / 2**exponent``.

Every measure handled by the package (``2**-|p|``, Omega stages, cost values)
is dyadic, so this small type replaces floating point everywhere.  Values are
kept canonical: the numerator is odd, or the value is ``0/2^0``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

__all__ = ["Dyadic", "ZERO", "ONE", "power_of_two"]

_TEXT = re.compile(r"^\s*(\d+)\s*/\s*2\s*\^\s*(\d+)\s*$")


class Dyadic:
    __slots__ = ("numerator", "exponent")

    def __init__(self, numerator: int = 0, exponent: int = 0):
        if numerator < 0 or exponent < 0:
            raise ValueError(f"dyadic needs nonnegative parts, got {numerator}/2^{exponent}")
        if numerator == 0:
            exponent = 0
        else:
            # strip common factors of two
            tz = (numerator & -numerator).bit_length() - 1
            shift = min(tz, exponent)
            numerator >>= shift
            exponent -= shift
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "exponent", exponent)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def coerce(cls, value) -> "Dyadic":
        if isinstance(value, Dyadic):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            return cls(value, 0)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1):
                raise ValueError(f"{value} is not dyadic")
            return cls(value.numerator, den.bit_length() - 1)
        raise TypeError(f"cannot treat {value!r} as a dyadic rational")

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Read ``p/2^q`` or a plain nonnegative integer."""
        m = _TEXT.match(text)
        if m:
            return cls(int(m.group(1)), int(m.group(2)))
        stripped = text.strip()
        if stripped.isdigit():
            return cls(int(stripped), 0)
        raise ParseError(f"not a dyadic rational: {text!r}")

    def _aligned(self, other: "Dyadic") -> tuple[int, int, int]:
        e = max(self.exponent, other.exponent)
        return self.numerator << (e - self.exponent), other.numerator << (e - other.exponent), e

    def __add__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = self._aligned(other)
        return Dyadic(a + b, e)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, e = self._aligned(other)
        if b > a:
            raise ValueError(f"{self} - {other} is negative")
        return Dyadic(a - b, e)

    def __mul__(self, other):
        try:
            other = Dyadic.coerce(other)
        except TypeError:
            return NotImplemented
        return Dyadic(self.numerator * other.numerator, self.exponent + other.exponent)

    __rmul__ = __mul__

    def _cmp(self, other) -> int:
        other = Dyadic.coerce(other)
        a, b, _ = self._aligned(other)
        return (a > b) - (a < b)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except TypeError:
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.numerator, self.exponent))

    def __bool__(self):
        return self.numerator != 0

    def __str__(self):
        return f"{self.numerator}/2^{self.exponent}"

    def __repr__(self):
        return f"Dyadic({self.numerator}, {self.exponent})"

    def __reduce__(self):
        return (Dyadic, (self.numerator, self.exponent))

    def to_fraction(self) -> Fraction:
        return Fraction(self.numerator, 1 << self.exponent)

    def floor_scaled(self, bits: int) -> int:
        """``floor(self * 2**bits)``."""
        if bits >= self.exponent:
            return self.numerator << (bits - self.exponent)
        return self.numerator >> (self.exponent - bits)

    def binary_digits(self, width: int) -> str:
        """First ``width`` digits after the binary point of a value in [0, 1].

        The value 1 is written as the all-ones string (its expansion 0.111...),
        which keeps truncation monotone.
        """
        if self > ONE:
            raise ValueError(f"{self} is not in [0, 1]")
        scaled = min(self.floor_scaled(width), (1 << width) - 1)
        return format(scaled, f"0{width}b") if width else ""


def power_of_two(k: int) -> Dyadic:
    """``2**-k`` for ``k >= 0``."""
    return Dyadic(1, k)


ZERO = Dyadic(0, 0)
ONE = Dyadic(1, 0)
