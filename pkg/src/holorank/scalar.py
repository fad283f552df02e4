"""Exact Gaussian rationals.

A :class:`Scalar` is stored as ``(p + q*i) / d`` with integers ``p, q`` and
``d > 0`` and ``gcd(p, q, d) == 1``.  That triple is canonical, so equality
and hashing are structural.  The real and imaginary parts are exposed as
:class:`fractions.Fraction`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

_RAT = r"\d+(?:/\d+)?"
_GRAMMAR = re.compile(
    rf"^(?:(?P<re>[+-]?{_RAT})(?:(?P<im>[+-]{_RAT})\*i)?|(?P<im_only>[+-]?{_RAT})\*i)$"
)


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


class Scalar:
    __slots__ = ("_p", "_q", "_d")

    def __init__(self, re=0, im=0):
        if isinstance(re, Scalar):
            if im:
                raise TypeError("Scalar plus separate imaginary part is ambiguous")
            self._p, self._q, self._d = re._p, re._q, re._d
            return
        if isinstance(re, str):
            if im:
                raise TypeError("string input carries its own imaginary part")
            s = parse_scalar(re)
            self._p, self._q, self._d = s._p, s._q, s._d
            return
        a, b = _as_fraction(re), _as_fraction(im)
        d = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        self._set(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator), d)

    def _set(self, p, q, d):
        g = gcd(p, q, d)
        if g != 1:
            p //= g
            q //= g
            d //= g
        self._p, self._q, self._d = p, q, d

    @classmethod
    def _raw(cls, p, q, d):
        # d > 0 must already hold
        s = object.__new__(cls)
        s._set(p, q, d)
        return s

    @property
    def re(self) -> Fraction:
        return Fraction(self._p, self._d)

    @property
    def im(self) -> Fraction:
        return Fraction(self._q, self._d)

    def is_real(self) -> bool:
        return self._q == 0

    def conjugate(self) -> Scalar:
        return Scalar._raw(self._p, -self._q, self._d)

    def __bool__(self):
        return self._p != 0 or self._q != 0

    def __neg__(self):
        return Scalar._raw(-self._p, -self._q, self._d)

    def __pos__(self):
        return self

    def __add__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        if self._d == o._d:
            return Scalar._raw(self._p + o._p, self._q + o._q, self._d)
        return Scalar._raw(
            self._p * o._d + o._p * self._d, self._q * o._d + o._q * self._d, self._d * o._d
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        return o + (-self)

    def __mul__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        if q1 == 0 and q2 == 0:
            return Scalar._raw(p1 * p2, 0, self._d * o._d)
        return Scalar._raw(p1 * p2 - q1 * q2, p1 * q2 + q1 * p2, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        if not o:
            raise ZeroDivisionError("division by zero Scalar")
        p1, q1, p2, q2 = self._p, self._q, o._p, o._q
        norm = p2 * p2 + q2 * q2
        return Scalar._raw((p1 * p2 + q1 * q2) * o._d, (q1 * p2 - p1 * q2) * o._d, self._d * norm)

    def __rtruediv__(self, other):
        o = coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (ONE / self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self._p == other._p and self._q == other._q and self._d == other._d
        o = coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self == o

    def __hash__(self):
        if self._q == 0:
            return hash(Fraction(self._p, self._d))
        return hash((self._p, self._q, self._d))

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return f"Scalar('{format_scalar(self)}')"


def coerce(x):
    """Return ``x`` as a Scalar, or NotImplemented for foreign types."""
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Scalar._raw(x, 0, 1)
    if isinstance(x, Rational):
        return Scalar(x)
    return NotImplemented


def as_scalar(x) -> Scalar:
    if isinstance(x, Scalar):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    s = coerce(x)
    if s is NotImplemented:
        raise TypeError(f"cannot convert {type(x).__name__} to Scalar (floats are not exact)")
    return s


ZERO = Scalar._raw(0, 0, 1)
ONE = Scalar._raw(1, 0, 1)
I = Scalar._raw(0, 1, 1)


def _fmt_rat(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def format_scalar(s: Scalar) -> str:
    """Canonical whitespace-free text: ``re``, ``im*i`` or ``re+im*i``."""
    re_, im_ = s.re, s.im
    if im_ == 0:
        return _fmt_rat(re_)
    if re_ == 0:
        return f"{_fmt_rat(im_)}*i"
    sign = "+" if im_ > 0 else ""
    return f"{_fmt_rat(re_)}{sign}{_fmt_rat(im_)}*i"


def _parse_rat(text: str) -> Fraction:
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def parse_scalar(text: str) -> Scalar:
    """Parse the scalar grammar, e.g. ``-3/2+1/2*i``.  Surrounding whitespace is ignored."""
    m = _GRAMMAR.match(text.strip())
    if m is None:
        raise ValueError(f"malformed scalar {text!r}")
    if m.group("im_only") is not None:
        return Scalar(0, _parse_rat(m.group("im_only")))
    re_ = _parse_rat(m.group("re"))
    im_ = _parse_rat(m.group("im")) if m.group("im") is not None else Fraction(0)
    return Scalar(re_, im_)
