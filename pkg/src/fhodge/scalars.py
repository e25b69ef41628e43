"""Exact arithmetic over the Gaussian rationals Q(i).

A scalar is a pair of exact rationals (real and imaginary part).  All
arithmetic is exact; nothing in this package ever touches floats.  gmpy2
supplies fast rationals when present, otherwise ``fractions.Fraction`` is
used with identical semantics.
"""

from __future__ import annotations

import re

from .errors import MalformedInput

try:
    from gmpy2 import mpq as _mpq

    def rat(num=0, den=1):
        return _mpq(num, den)

except ImportError:  # pragma: no cover - exercised only without gmpy2
    from fractions import Fraction as _Fraction

    def rat(num=0, den=1):
        return _Fraction(num, den)


_RAT_ZERO = rat(0)
_RAT_ONE = rat(1)


class Scalar:
    """An element a + b*i of Q(i), with a and b exact rationals."""

    __slots__ = ("re", "im")

    def __init__(self, re=_RAT_ZERO, im=_RAT_ZERO):
        # Callers inside the package pass rationals already; the public
        # constructor also accepts ints.
        self.re = re if type(re) is type(_RAT_ZERO) else rat(re)
        self.im = im if type(im) is type(_RAT_ZERO) else rat(im)

    # -- field operations -------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        return Scalar(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return Scalar(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return _coerce(other).__sub__(self)

    def __mul__(self, other):
        other = _coerce(other)
        return Scalar(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        n = other.re * other.re + other.im * other.im
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return Scalar(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        return _coerce(other).__truediv__(self)

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def __pos__(self):
        return self

    # -- structure ---------------------------------------------------------

    def conj(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_rational(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.re == other.re and self.im == other.im
        if isinstance(other, int):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _coerce(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int):
        return Scalar(rat(x))
    raise TypeError(f"cannot coerce {type(x).__name__} into Q(i)")


ZERO = Scalar()
ONE = Scalar(_RAT_ONE)
I = Scalar(_RAT_ZERO, _RAT_ONE)
MINUS_ONE = Scalar(rat(-1))


def _rat_str(q) -> str:
    # mpq and Fraction both expose numerator/denominator, always normalized
    # with positive denominator.
    return f"{q.numerator}/{q.denominator}"


def format_scalar(s: Scalar) -> str:
    """Render a scalar in the wire format ``a/b`` or ``a/b+c/d*i``.

    Both parts appear in lowest terms with explicit denominators; the
    imaginary part is printed only when nonzero, with its sign as the
    separator.
    """
    if s.im == 0:
        return _rat_str(s.re)
    sep = "-" if s.im < 0 else "+"
    return f"{_rat_str(s.re)}{sep}{_rat_str(abs(s.im))}*i"


_SCALAR_RE = re.compile(
    r"^\s*(-?\d+(?:/\d+)?)(?:\s*([+-])\s*(\d+(?:/\d+)?)\*i)?\s*$"
)


def _parse_rat(text: str):
    if "/" in text:
        num, den = text.split("/")
        if int(den) == 0:
            raise MalformedInput(f"zero denominator in {text!r}")
        return rat(int(num), int(den))
    return rat(int(text))


def parse_scalar(text: str) -> Scalar:
    """Parse the wire format produced by :func:`format_scalar`.

    Integer shorthand without a denominator is accepted on input.
    """
    if not isinstance(text, str):
        raise MalformedInput(f"scalar must be a string, got {type(text).__name__}")
    m = _SCALAR_RE.match(text)
    if not m:
        raise MalformedInput(f"cannot parse scalar {text!r}")
    re_part = _parse_rat(m.group(1))
    if m.group(3) is None:
        return Scalar(re_part)
    im_part = _parse_rat(m.group(3))
    if m.group(2) == "-":
        im_part = -im_part
    return Scalar(re_part, im_part)
