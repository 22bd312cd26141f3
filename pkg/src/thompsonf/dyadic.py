"""Exact dyadic rationals ``num / 2**exp``.

Values are kept canonical at construction time (``exp == 0`` or ``num`` odd),
so structural equality is value equality and hashing is cheap.  Arithmetic
with :class:`fractions.Fraction` is supported and falls back to ``Fraction``
results; this is only needed for the rare non-dyadic fixed points of maps.
"""

from __future__ import annotations

import re
from fractions import Fraction

__all__ = ["Dyadic", "NotAPowerOfTwo", "NotDyadic", "ZERO", "ONE", "HALF", "log2_exact", "to_dyadic"]


class NotAPowerOfTwo(ValueError):
    pass


class NotDyadic(ValueError):
    pass


def _trailing_zeros(n: int) -> int:
    return (n & -n).bit_length() - 1


class Dyadic:
    __slots__ = ("num", "exp")

    def __init__(self, num: int = 0, exp: int = 0):
        num = int(num)
        exp = int(exp)
        if num == 0:
            exp = 0
        elif exp > 0:
            tz = _trailing_zeros(num)
            if tz:
                k = min(tz, exp)
                num >>= k
                exp -= k
        if exp < 0:
            num <<= -exp
            exp = 0
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def _raw(cls, num: int, exp: int) -> "Dyadic":
        # caller guarantees canonical form
        obj = object.__new__(cls)
        object.__setattr__(obj, "num", num)
        object.__setattr__(obj, "exp", exp)
        return obj

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Dyadic":
        q = Fraction(q)
        d = q.denominator
        if d & (d - 1):
            raise NotDyadic(f"{q} is not a dyadic rational")
        return cls(q.numerator, d.bit_length() - 1)

    @classmethod
    def parse(cls, text: str) -> "Dyadic":
        """Accepts ``n``, ``n/2^e`` and ``n/d`` with ``d`` a power of two."""
        s = text.strip()
        m = re.fullmatch(r"([+-]?\d+)(?:/(?:2\^(\d+)|(\d+)))?", s)
        if not m:
            raise ValueError(f"cannot parse dyadic {text!r}")
        num = int(m.group(1))
        if m.group(2) is not None:
            return cls(num, int(m.group(2)))
        if m.group(3) is not None:
            d = int(m.group(3))
            if d <= 0 or d & (d - 1):
                raise NotDyadic(f"denominator {d} is not a power of two")
            return cls(num, d.bit_length() - 1)
        return cls(num)

    # conversions

    def to_fraction(self) -> Fraction:
        return Fraction(self.num, 1 << self.exp)

    def __float__(self):
        return self.num / (1 << self.exp)

    def __int__(self):
        if self.exp:
            raise ValueError(f"{self} is not an integer")
        return self.num

    def floor(self) -> int:
        return self.num >> self.exp

    @property
    def is_integer(self) -> bool:
        return self.exp == 0

    def __str__(self):
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/2^{self.exp}"

    def frac_str(self) -> str:
        """Render as ``n/d`` with ``d`` written out, e.g. ``7/8``."""
        if self.exp == 0:
            return str(self.num)
        return f"{self.num}/{1 << self.exp}"

    def __repr__(self):
        return f"Dyadic({self.num}, {self.exp})"

    # arithmetic

    def __add__(self, other):
        if isinstance(other, Dyadic):
            a, e, b, f = self.num, self.exp, other.num, other.exp
            if e >= f:
                return Dyadic(a + (b << (e - f)), e)
            return Dyadic((a << (f - e)) + b, f)
        if isinstance(other, int):
            return Dyadic(self.num + (other << self.exp), self.exp)
        if isinstance(other, Fraction):
            return self.to_fraction() + other
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Dyadic._raw(-self.num, self.exp)

    def __pos__(self):
        return self

    def __abs__(self):
        return Dyadic._raw(abs(self.num), self.exp)

    def __sub__(self, other):
        if isinstance(other, Dyadic):
            a, e, b, f = self.num, self.exp, other.num, other.exp
            if e >= f:
                return Dyadic(a - (b << (e - f)), e)
            return Dyadic((a << (f - e)) - b, f)
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Dyadic):
            return Dyadic(self.num * other.num, self.exp + other.exp)
        if isinstance(other, int):
            return Dyadic(self.num * other, self.exp)
        if isinstance(other, Fraction):
            return self.to_fraction() * other
        return NotImplemented

    __rmul__ = __mul__

    def scale2(self, s: int) -> "Dyadic":
        """Multiply by ``2**s`` (``s`` may be negative)."""
        if self.num == 0:
            return self
        if s >= 0:
            if self.exp >= s:
                return Dyadic._raw(self.num, self.exp - s)
            return Dyadic._raw(self.num << (s - self.exp), 0)
        return Dyadic._raw(self.num, self.exp - s)

    # comparison

    def _cmp_key(self, other):
        # returns (lhs numerator, rhs numerator) over a common denominator
        if isinstance(other, Dyadic):
            e, f = self.exp, other.exp
            if e >= f:
                return self.num, other.num << (e - f)
            return self.num << (f - e), other.num
        if isinstance(other, int):
            return self.num, other << self.exp
        return None

    def __eq__(self, other):
        if isinstance(other, Dyadic):
            return self.num == other.num and self.exp == other.exp
        if isinstance(other, int):
            return self.exp == 0 and self.num == other
        if isinstance(other, Fraction):
            return self.to_fraction() == other
        return NotImplemented

    def __lt__(self, other):
        key = self._cmp_key(other)
        if key is not None:
            return key[0] < key[1]
        if isinstance(other, Fraction):
            return self.to_fraction() < other
        return NotImplemented

    def __le__(self, other):
        key = self._cmp_key(other)
        if key is not None:
            return key[0] <= key[1]
        if isinstance(other, Fraction):
            return self.to_fraction() <= other
        return NotImplemented

    def __gt__(self, other):
        key = self._cmp_key(other)
        if key is not None:
            return key[0] > key[1]
        if isinstance(other, Fraction):
            return self.to_fraction() > other
        return NotImplemented

    def __ge__(self, other):
        key = self._cmp_key(other)
        if key is not None:
            return key[0] >= key[1]
        if isinstance(other, Fraction):
            return self.to_fraction() >= other
        return NotImplemented

    def __hash__(self):
        if self.exp == 0:
            return hash(self.num)
        return hash(self.to_fraction())

    def compare(self, other) -> int:
        """-1, 0 or 1 according to the rational order."""
        return (self > other) - (self < other)


ZERO = Dyadic(0)
ONE = Dyadic(1)
HALF = Dyadic(1, 1)


def to_dyadic(x) -> Dyadic:
    if isinstance(x, Dyadic):
        return x
    if isinstance(x, int):
        return Dyadic(x)
    if isinstance(x, Fraction):
        return Dyadic.from_fraction(x)
    if isinstance(x, str):
        return Dyadic.parse(x)
    raise TypeError(f"cannot convert {type(x).__name__} to Dyadic")


def log2_exact(x: Dyadic) -> int:
    """Return ``m`` with ``x == 2**m``; raise NotAPowerOfTwo otherwise."""
    x = to_dyadic(x)
    n = x.num
    if n <= 0 or n & (n - 1):
        raise NotAPowerOfTwo(f"{x} is not a power of two")
    return n.bit_length() - 1 - x.exp
