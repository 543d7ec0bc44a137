"""Exact dyadic rationals ``num / 2**exp`` in canonical form."""

from __future__ import annotations

import re
from fractions import Fraction
from functools import total_ordering

LT, EQ, GT = -1, 0, 1

_TEXT = re.compile(r"^\s*(-?\d+)(?:\s*/\s*2\^(\d+))?\s*$")


def _canon(num: int, exp: int) -> tuple[int, int]:
    if num == 0:
        return 0, 0
    # strip common factors of two in one shot
    tz = (num & -num).bit_length() - 1
    k = min(tz, exp)
    return num >> k, exp - k


@total_ordering
class Dyadic:
    """The number ``num / 2**exp`` with ``exp >= 0``.

    Canonical form: ``num`` is odd whenever ``exp > 0``, and zero is ``0/2^0``.

    Instances are immutable and hashable, so they can key dictionaries and
    multisets directly.
    """

    __slots__ = ("num", "exp")

    num: int
    exp: int

    def __init__(self, num: int = 0, exp: int = 0):
        if exp < 0:
            num, exp = num << -exp, 0
        n, e = _canon(int(num), int(exp))
        object.__setattr__(self, "num", n)
        object.__setattr__(self, "exp", e)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def _raw(cls, num: int, exp: int) -> Dyadic:
        # caller guarantees canonical form
        d = object.__new__(cls)
        object.__setattr__(d, "num", num)
        object.__setattr__(d, "exp", exp)
        return d

    @classmethod
    def coerce(cls, x) -> Dyadic:
        if isinstance(x, Dyadic):
            return x
        if isinstance(x, int):
            return cls(x, 0)
        if isinstance(x, str):
            return parse(x)
        if isinstance(x, Fraction):
            d = x.denominator
            if d & (d - 1):
                raise ValueError(f"{x} is not dyadic")
            return cls(x.numerator, d.bit_length() - 1)
        raise TypeError(f"cannot convert {type(x).__name__} to Dyadic")

    # arithmetic

    def __add__(self, other) -> Dyadic:
        if not isinstance(other, Dyadic):
            if not isinstance(other, int):
                return NotImplemented
            other = Dyadic(other)
        a, ea = self.num, self.exp
        b, eb = other.num, other.exp
        if ea >= eb:
            s, e = a + (b << (ea - eb)), ea
        else:
            s, e = (a << (eb - ea)) + b, eb
        if e == 0 or s & 1:
            return Dyadic._raw(s, e)
        return Dyadic._raw(*_canon(s, e))

    __radd__ = __add__

    def __neg__(self) -> Dyadic:
        return Dyadic._raw(-self.num, self.exp)

    def __sub__(self, other) -> Dyadic:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Dyadic:
        return (-self) + other

    def __mul__(self, other) -> Dyadic:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return Dyadic._raw(*_canon(self.num * other.num, self.exp + other.exp))

    __rmul__ = __mul__

    def mul_pow2(self, e: int) -> Dyadic:
        """Return ``self * 2**e``."""
        if self.num == 0:
            return self
        k = self.exp - e
        if k >= 0:
            return Dyadic._raw(*_canon(self.num, k))
        return Dyadic._raw(self.num << -k, 0)

    def __abs__(self) -> Dyadic:
        return self if self.num >= 0 else -self

    # comparison

    def compare(self, other: Dyadic) -> int:
        a = self.num << max(other.exp - self.exp, 0)
        b = other.num << max(self.exp - other.exp, 0)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, int):
            return self.exp == 0 and self.num == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, int):
            other = Dyadic(other)
        if not isinstance(other, Dyadic):
            return NotImplemented
        return self.compare(other) < 0

    def __hash__(self) -> int:
        # agree with int hashing so Dyadic(3) and 3 collide as keys
        return hash(self.num) if self.exp == 0 else hash((self.num, self.exp))

    # conversions

    def is_integer(self) -> bool:
        return self.exp == 0

    def sign(self) -> int:
        return (self.num > 0) - (self.num < 0)

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __int__(self) -> int:
        if self.exp:
            raise ValueError(f"{self} is not an integer")
        return self.num

    def __float__(self) -> float:
        return float(self.to_fraction())

    def __str__(self) -> str:
        return str(self.num) if self.exp == 0 else f"{self.num}/2^{self.exp}"

    def __repr__(self) -> str:
        return f"Dyadic({self})"

    def __reduce__(self):
        return (Dyadic, (self.num, self.exp))


ZERO = Dyadic._raw(0, 0)
ONE = Dyadic._raw(1, 0)


def normalize(num: int, exp: int) -> Dyadic:
    return Dyadic(num, exp)


def add(a: Dyadic, b: Dyadic) -> Dyadic:
    return a + b


def sub(a: Dyadic, b: Dyadic) -> Dyadic:
    return a - b


def mul_pow2(a: Dyadic, e: int) -> Dyadic:
    return a.mul_pow2(e)


def compare(a: Dyadic, b: Dyadic) -> int:
    """Three-way comparison returning ``LT``, ``EQ`` or ``GT``."""
    return a.compare(b)


def log2_ratio(a: Dyadic, b: Dyadic) -> int | None:
    """Return ``e`` with ``a / b == 2**e``, or None if no such integer exists.

    Both operands must be positive; the ratio is a power of two exactly when
    their odd parts agree.
    """
    if a.num <= 0 or b.num <= 0:
        return None
    ta = (a.num & -a.num).bit_length() - 1
    tb = (b.num & -b.num).bit_length() - 1
    if a.num >> ta != b.num >> tb:
        return None
    return (ta - a.exp) - (tb - b.exp)


def parse(text: str) -> Dyadic:
    """Parse ``"num/2^exp"``, a bare integer, or ``"p/q"`` with ``q`` a power of 2."""
    m = _TEXT.match(text)
    if not m:
        try:
            return Dyadic.coerce(Fraction(text.strip()))
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"not a dyadic literal: {text!r}") from None
    num, exp = m.groups()
    return Dyadic(int(num), int(exp or 0))


def dyadic(x) -> Dyadic:
    """Coerce an int, str, Fraction or Dyadic."""
    return Dyadic.coerce(x)
