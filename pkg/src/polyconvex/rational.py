"""Exact rational scalars, extended reals and tuple-based vectors."""

from __future__ import annotations

import functools
from fractions import Fraction
from typing import Iterable, Sequence, Union

Vector = tuple  # tuple[Fraction, ...]
RationalLike = Union[int, str, Fraction]


def q(x: RationalLike) -> Fraction:
    """Coerce an int, a ``"p/q"`` string or a Fraction to a Fraction.

    Floats are rejected: a binary float is never an exact input here.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, float):
        raise TypeError(f"refusing float {x!r}; pass a string like '1/3'")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x.strip() if isinstance(x, str) else x)
    # gmpy2.mpq and other numbers.Rational implementations
    return Fraction(x.numerator, x.denominator)


def vec(*xs: RationalLike) -> Vector:
    if len(xs) == 1 and isinstance(xs[0], (list, tuple)):
        xs = tuple(xs[0])
    return tuple(q(x) for x in xs)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return sum((x * y for x, y in zip(a, b) if x and y), Fraction(0))


def vadd(a: Vector, b: Vector) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def vsub(a: Vector, b: Vector) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vscale(c: Fraction, a: Vector) -> Vector:
    return tuple(c * x for x in a)


def fmt(x) -> str:
    """Exact string form: integers as ``"3"``, others as ``"p/q"``."""
    if isinstance(x, ExtRational):
        return str(x)
    x = q(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def fmt_vec(v: Iterable) -> list[str]:
    return [fmt(x) for x in v]


def integer_scaled(coeffs: Sequence[Fraction]) -> tuple[int, ...]:
    """Positive rescaling of ``coeffs`` to a primitive integer vector."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // _gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    g = 0
    for v in ints:
        g = _gcd(g, abs(v))
    if g > 1:
        ints = [v // g for v in ints]
    return tuple(ints)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@functools.total_ordering
class ExtRational:
    """A rational number or one of the two signed infinities.

    Ordering is total: ``-inf < q < +inf`` for every finite ``q``.
    Adding opposite infinities raises ``ArithmeticError``.
    """

    __slots__ = ("tag", "value")

    FINITE, PLUS_INF, MINUS_INF = "finite", "+inf", "-inf"

    def __init__(self, tag: str, value: Fraction | None = None):
        if tag == self.FINITE:
            if value is None:
                raise ValueError("finite ExtRational needs a value")
            value = q(value)
        elif tag in (self.PLUS_INF, self.MINUS_INF):
            value = None
        else:
            raise ValueError(f"unknown tag {tag!r}")
        object.__setattr__(self, "tag", tag)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("ExtRational is immutable")

    @classmethod
    def of(cls, x) -> "ExtRational":
        if isinstance(x, ExtRational):
            return x
        return cls(cls.FINITE, q(x))

    @property
    def is_finite(self) -> bool:
        return self.tag == self.FINITE

    @property
    def is_plus_inf(self) -> bool:
        return self.tag == self.PLUS_INF

    @property
    def is_minus_inf(self) -> bool:
        return self.tag == self.MINUS_INF

    def _key(self):
        if self.tag == self.MINUS_INF:
            return (-1, Fraction(0))
        if self.tag == self.PLUS_INF:
            return (1, Fraction(0))
        return (0, self.value)

    def __eq__(self, other):
        try:
            other = ExtRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._key() == other._key()

    def __lt__(self, other):
        try:
            other = ExtRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self._key() < other._key()

    def __hash__(self):
        return hash(self._key())

    def __neg__(self):
        if self.tag == self.PLUS_INF:
            return MINUS_INF
        if self.tag == self.MINUS_INF:
            return PLUS_INF
        return ExtRational.of(-self.value)

    def __add__(self, other):
        other = ExtRational.of(other)
        if self.is_finite and other.is_finite:
            return ExtRational.of(self.value + other.value)
        tags = {self.tag, other.tag} - {self.FINITE}
        if len(tags) == 2:
            raise ArithmeticError("+inf + -inf is undefined")
        return PLUS_INF if tags == {self.PLUS_INF} else MINUS_INF

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-ExtRational.of(other))

    def __rsub__(self, other):
        return ExtRational.of(other) + (-self)

    def __repr__(self):
        return f"ExtRational({self})"

    def __str__(self):
        return self.tag if not self.is_finite else fmt(self.value)

    @classmethod
    def parse(cls, s: str) -> "ExtRational":
        s = s.strip()
        if s in ("+inf", "inf"):
            return PLUS_INF
        if s == "-inf":
            return MINUS_INF
        return cls.of(s)


PLUS_INF = ExtRational(ExtRational.PLUS_INF)
MINUS_INF = ExtRational(ExtRational.MINUS_INF)
