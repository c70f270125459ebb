"""Exact carriers for angular-momentum algebra.

``HalfInt`` stores twice the quantum number so half-integers stay exact;
``SqrtRational`` stores a signed square so coupling coefficients (which are
square roots of rationals) stay exact through products and squares.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from .errors import InputError


@total_ordering
class HalfInt:
    """An integer or half-integer quantum number, stored as ``twice = 2j``.

    Accepts ints, Fractions with denominator 1 or 2, floats that are exact
    multiples of 1/2, and other HalfInt instances.
    """

    __slots__ = ("twice",)

    def __init__(self, value):
        if isinstance(value, HalfInt):
            twice = value.twice
        elif isinstance(value, int):
            twice = 2 * value
        elif isinstance(value, Fraction):
            if value.denominator not in (1, 2):
                raise InputError(f"not a half-integer: {value}")
            twice = int(2 * value)
        elif isinstance(value, float):
            twice = round(2 * value)
            if abs(2 * value - twice) > 1e-9:
                raise InputError(f"not a half-integer: {value!r}")
        else:
            raise InputError(f"cannot interpret {value!r} as a half-integer")
        object.__setattr__(self, "twice", twice)

    @classmethod
    def from_twice(cls, twice: int) -> "HalfInt":
        h = object.__new__(cls)
        object.__setattr__(h, "twice", int(twice))
        return h

    def __setattr__(self, name, value):
        raise AttributeError("HalfInt is immutable")

    @property
    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice, 2)

    def __float__(self):
        return self.twice / 2

    def __neg__(self):
        return HalfInt.from_twice(-self.twice)

    def __abs__(self):
        return HalfInt.from_twice(abs(self.twice))

    def __add__(self, other):
        return HalfInt.from_twice(self.twice + HalfInt(other).twice)

    __radd__ = __add__

    def __sub__(self, other):
        return HalfInt.from_twice(self.twice - HalfInt(other).twice)

    def __rsub__(self, other):
        return HalfInt(other) - self

    def __eq__(self, other):
        try:
            return self.twice == HalfInt(other).twice
        except InputError:
            return NotImplemented

    def __lt__(self, other):
        return self.twice < HalfInt(other).twice

    def __hash__(self):
        return hash(self.twice)

    def __repr__(self):
        if self.is_integer:
            return f"HalfInt({self.twice // 2})"
        return f"HalfInt({self.twice}/2)"


def as_half_int(value) -> HalfInt:
    """Coerce ``value`` (number or HalfInt) to a HalfInt."""
    return value if isinstance(value, HalfInt) else HalfInt(value)


class SqrtRational:
    """Exact number of the form ``sign * sqrt(|q|)`` for rational ``q``.

    The signed square ``q`` is stored as a Fraction; its sign is the sign of
    the represented value. Closed under multiplication, which is all the
    coupling-coefficient algebra needs.
    """

    __slots__ = ("signed_square",)

    def __init__(self, signed_square):
        object.__setattr__(self, "signed_square", Fraction(signed_square))

    def __setattr__(self, name, value):
        raise AttributeError("SqrtRational is immutable")

    @classmethod
    def from_sign_square(cls, sign: int, square) -> "SqrtRational":
        square = Fraction(square)
        if square < 0:
            raise InputError("square must be nonnegative")
        if sign not in (-1, 0, 1):
            raise InputError("sign must be -1, 0 or +1")
        return cls(sign * square)

    @property
    def sign(self) -> int:
        q = self.signed_square
        return 0 if q == 0 else (1 if q > 0 else -1)

    @property
    def square(self) -> Fraction:
        """The (nonnegative) square of the represented value."""
        return abs(self.signed_square)

    def __bool__(self):
        return self.signed_square != 0

    def __float__(self):
        q = self.signed_square
        return math.copysign(math.sqrt(abs(q)), q) if q else 0.0

    def __neg__(self):
        return SqrtRational(-self.signed_square)

    def __mul__(self, other):
        if isinstance(other, SqrtRational):
            return SqrtRational(self.signed_square * other.signed_square)
        if isinstance(other, (int, Fraction)):
            # scaling by a rational c multiplies the signed square by c*|c|
            c = Fraction(other)
            return SqrtRational(self.signed_square * c * abs(c))
        return NotImplemented

    __rmul__ = __mul__

    def scaled_by_sqrt(self, radicand) -> "SqrtRational":
        """Multiply the value by sqrt(radicand) for a nonnegative rational."""
        r = Fraction(radicand)
        if r < 0:
            raise InputError("radicand must be nonnegative")
        return SqrtRational(self.signed_square * r)

    def __eq__(self, other):
        if isinstance(other, SqrtRational):
            return self.signed_square == other.signed_square
        return NotImplemented

    def __hash__(self):
        return hash(self.signed_square)

    def __repr__(self):
        q = self.signed_square
        if q == 0:
            return "SqrtRational(0)"
        s = "-" if q < 0 else ""
        return f"SqrtRational({s}sqrt({abs(q)}))"


SqrtRational.ZERO = SqrtRational(0)
SqrtRational.ONE = SqrtRational(1)
