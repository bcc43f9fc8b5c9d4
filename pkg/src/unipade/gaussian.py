"""Exact Gaussian rationals: elements of Q + iQ.

A value is stored as ``(re + i*im) / den`` with integer ``re``, ``im`` and a
positive ``den`` sharing no common factor.  Every float is a dyadic rational,
so :func:`from_float` converts floating inputs without rounding.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Complex, Rational

__all__ = ["GaussianRational", "exact", "from_float", "ZERO", "ONE"]


class GaussianRational:
    __slots__ = ("re", "im", "den")

    def __init__(self, re: int = 0, im: int = 0, den: int = 1, *, _reduced: bool = False):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if den < 0:
                re, im, den = -re, -im, -den
            g = math.gcd(re, im, den)
            if g > 1:
                re //= g
                im //= g
                den //= g
        self.re = re
        self.im = im
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def from_parts(cls, re, im=0) -> "GaussianRational":
        fr = Fraction(re)
        fi = Fraction(im)
        d = fr.denominator * fi.denominator // math.gcd(fr.denominator, fi.denominator)
        return cls(fr.numerator * (d // fr.denominator), fi.numerator * (d // fi.denominator), d)

    @property
    def real(self) -> Fraction:
        return Fraction(self.re, self.den)

    @property
    def imag(self) -> Fraction:
        return Fraction(self.im, self.den)

    # arithmetic ---------------------------------------------------------

    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return GaussianRational(self.re + o.re, self.im + o.im, self.den)
        return GaussianRational(
            self.re * o.den + o.re * self.den,
            self.im * o.den + o.im * self.den,
            self.den * o.den,
        )

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im, self.den, _reduced=True)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
            self.den * o.den,
        )

    __rmul__ = __mul__

    def reciprocal(self) -> "GaussianRational":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("division by exact zero")
        # 1/((a+ib)/d) = d(a-ib)/(a^2+b^2)
        return GaussianRational(self.den * self.re, -self.den * self.im, n)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.reciprocal()

    def __rtruediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o * self.reciprocal()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.reciprocal() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im, self.den, _reduced=True)

    def abs2(self) -> Fraction:
        """Exact squared modulus."""
        return Fraction(self.re * self.re + self.im * self.im, self.den * self.den)

    def __abs__(self) -> float:
        return abs(complex(self))

    # comparisons / conversion ------------------------------------------

    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.re == o.re and self.im == o.im and self.den == o.den

    def __hash__(self):
        if self.im == 0:
            return hash(Fraction(self.re, self.den))
        return hash((self.re, self.im, self.den))

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __complex__(self):
        return complex(_fdiv(self.re, self.den), _fdiv(self.im, self.den))

    def __repr__(self):
        return f"GaussianRational({self.real}, {self.imag})"

    def __str__(self):
        if self.im == 0:
            return str(self.real)
        return f"({self.real}{'+' if self.im > 0 else '-'}{abs(self.imag)}i)"


def _fdiv(a: int, b: int) -> float:
    # int/int true division is correctly rounded even for huge operands
    try:
        return a / b
    except OverflowError:
        return math.copysign(math.inf, a) if b > 0 else math.copysign(math.inf, -a)


def _coerce(x):
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, int):
        return GaussianRational(x, 0, 1, _reduced=True)
    if isinstance(x, Rational):
        return GaussianRational(x.numerator, 0, x.denominator, _reduced=True)
    return NotImplemented


def from_float(z) -> GaussianRational:
    """Exact conversion of a finite float or complex to a Gaussian rational."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"cannot convert non-finite value {z!r} to an exact scalar")
    return GaussianRational.from_parts(Fraction(z.real), Fraction(z.imag))


def exact(x) -> GaussianRational:
    """Coerce ints, Fractions, floats, complex numbers and strings to exact form.

    Strings use the ``"num/den"`` encoding of a single real component.
    """
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, (int, Fraction)):
        return _coerce(x)
    if isinstance(x, str):
        return GaussianRational.from_parts(Fraction(x))
    if isinstance(x, (tuple, list)) and len(x) == 2:
        return GaussianRational.from_parts(_component(x[0]), _component(x[1]))
    if isinstance(x, Complex):
        return from_float(x)
    raise TypeError(f"cannot make exact scalar from {type(x).__name__}")


def _component(v) -> Fraction:
    if isinstance(v, float):
        return Fraction(v)
    return Fraction(v)


ZERO = GaussianRational(0, 0, 1, _reduced=True)
ONE = GaussianRational(1, 0, 1, _reduced=True)
