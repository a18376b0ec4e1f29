"""Exact scalars: rationals and the quadratic field Q(sqrt 3).

Rationals are plain :class:`fractions.Fraction` (or ``int``).  Elements
``a + b*sqrt(3)`` with ``b != 0`` are :class:`QSqrt3`; every operation that
produces ``b == 0`` collapses back to a ``Fraction`` so equality stays
structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational as _RationalABC

__all__ = [
    "QSqrt3",
    "SQRT3",
    "as_exact",
    "is_zero",
    "sign",
    "to_float",
    "scalar_to_str",
]


def _frac(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, _RationalABC)):
        return Fraction(v)
    raise TypeError(f"not an exact rational: {v!r}")


def _make(a: Fraction, b: Fraction):
    if b == 0:
        return a
    return QSqrt3(a, b)


class QSqrt3:
    """``a + b*sqrt(3)`` with rational ``a``, ``b`` and ``b != 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b):
        self.a = _frac(a)
        self.b = _frac(b)

    @staticmethod
    def make(a, b=0):
        return _make(_frac(a), _frac(b))

    @staticmethod
    def _parts(v):
        if isinstance(v, QSqrt3):
            return v.a, v.b
        if isinstance(v, (int, Fraction)):
            return Fraction(v), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(self.a + p[0], self.b + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(self.a - p[0], self.b - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(p[0] - self.a, p[1] - self.b)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        return _make(self.a * c + 3 * self.b * d, self.a * d + self.b * c)

    __rmul__ = __mul__

    def _inverse(self):
        norm = self.a * self.a - 3 * self.b * self.b
        return _make(self.a / norm, -self.b / norm)

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        if p[1] == 0:
            if p[0] == 0:
                raise ZeroDivisionError("division by zero in Q(sqrt3)")
            return _make(self.a / p[0], self.b / p[0])
        return self * QSqrt3(*p)._inverse()

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return _make(*p) * self._inverse()

    def __neg__(self):
        return QSqrt3(-self.a, -self.b)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, QSqrt3):
            return self.a == other.a and self.b == other.b
        if isinstance(other, (int, Fraction)):
            return False  # b != 0 by construction
        return NotImplemented

    def __hash__(self):
        return hash(("QSqrt3", self.a, self.b))

    def __bool__(self):
        return True

    def __float__(self):
        return float(self.a) + float(self.b) * math.sqrt(3.0)

    def __lt__(self, other):
        return sign(self - other) < 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __repr__(self):
        return f"QSqrt3({self.a}, {self.b})"

    def __str__(self):
        return scalar_to_str(self)


SQRT3 = QSqrt3(0, 1)


def as_exact(v):
    """Coerce ints / Fractions / QSqrt3 to an exact scalar; reject floats."""
    if isinstance(v, QSqrt3):
        return v
    if isinstance(v, bool):
        raise TypeError("bool is not a scalar")
    if isinstance(v, (int, Fraction)):
        return v
    if isinstance(v, str):
        from .polynomial import parse_scalar

        return parse_scalar(v)
    raise TypeError(f"expected an exact scalar, got {type(v).__name__}")


def is_zero(v) -> bool:
    return not isinstance(v, QSqrt3) and v == 0


def sign(v) -> int:
    """Exact sign of a rational or of ``a + b*sqrt(3)``."""
    if not isinstance(v, QSqrt3):
        return (v > 0) - (v < 0)
    a, b = v.a, v.b
    sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
    if sa >= 0 and sb >= 0:
        return 1 if (sa or sb) else 0
    if sa <= 0 and sb <= 0:
        return -1
    # opposite signs: compare a^2 with 3 b^2
    d = a * a - 3 * b * b
    sd = (d > 0) - (d < 0)
    return sd if sa > 0 else -sd


def to_float(v) -> float:
    return float(v)


def _rat_str(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def scalar_to_str(v) -> str:
    """Text form in the polynomial grammar, e.g. ``-1/2 + 3*sqrt3``."""
    if not isinstance(v, QSqrt3):
        return _rat_str(v)
    parts = []
    if v.a != 0:
        parts.append(_rat_str(v.a))
    b = v.b
    if b == 1:
        tail = "sqrt3"
    elif b == -1:
        tail = "-sqrt3"
    else:
        tail = f"{_rat_str(b)}*sqrt3"
    if parts:
        parts.append(("- " + tail[1:]) if tail.startswith("-") else "+ " + tail)
        return " ".join(parts)
    return tail
