"""Exact rationals with a formal infinitesimal tilt.

An ellipsoid parameter written ``p/q+`` means ``p/q + eps`` for every
sufficiently small ``eps > 0``.  Floors and ceilings of such values are
independent of ``eps``, and this module decides them exactly.

Plain rationals are :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Union

from .errors import DomainError

Rat = Fraction
RatLike = Union[int, Fraction]

_TILT_SUFFIX = {1: "+", 0: "", -1: "-"}
_PARSE_RE = re.compile(r"^\s*(?P<num>[+-]?\d+)(?:/(?P<den>\d+))?\s*(?P<tilt>[+\-−]?)\s*$")


def format_rat(r: RatLike) -> str:
    """Canonical text for a rational: ``"7"`` or ``"13/2"``."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def parse_rat(text: str) -> Fraction:
    value = PerturbedRat.parse(text)
    if value.tilt:
        raise DomainError(f"expected an exact rational, got {text!r}")
    return value.base


@dataclass(frozen=True, order=True)
class PerturbedRat:
    """``base + tilt * eps`` with ``tilt`` in ``{-1, 0, 1}``.

    Ordering is lexicographic on ``(base, tilt)``, which is the true order
    of the perturbed reals for any small enough ``eps``.
    """

    base: Fraction
    tilt: int = 0

    def __post_init__(self):
        if not isinstance(self.base, Fraction):
            if not isinstance(self.base, Rational):
                raise TypeError(f"base must be rational, got {type(self.base).__name__}")
            object.__setattr__(self, "base", Fraction(self.base))
        if self.tilt not in (-1, 0, 1):
            raise DomainError(f"tilt must be -1, 0 or 1, got {self.tilt!r}")

    @classmethod
    def parse(cls, text: str) -> "PerturbedRat":
        """Parse ``"p/q"``, ``"p/q+"`` or ``"p/q-"`` (integers may drop ``/q``)."""
        match = _PARSE_RE.match(text)
        if match is None:
            raise DomainError(f"cannot parse {text!r} as p/q, p/q+ or p/q-")
        den = int(match["den"] or 1)
        if den == 0:
            raise DomainError(f"zero denominator in {text!r}")
        sign = match["tilt"]
        tilt = 1 if sign == "+" else (-1 if sign else 0)
        return cls(Fraction(int(match["num"]), den), tilt)

    @classmethod
    def of(cls, value: Union["PerturbedRat", RatLike, str]) -> "PerturbedRat":
        if isinstance(value, PerturbedRat):
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls(Fraction(value))

    def __str__(self) -> str:
        return format_rat(self.base) + _TILT_SUFFIX[self.tilt]

    def __repr__(self) -> str:
        return f"PerturbedRat({self})"

    def __floor__(self) -> int:
        return floor_p(self)

    def __ceil__(self) -> int:
        return ceil_p(self)

    def __float__(self) -> float:
        return float(self.base)

    def __neg__(self) -> "PerturbedRat":
        return PerturbedRat(-self.base, -self.tilt)

    def __add__(self, other: RatLike) -> "PerturbedRat":
        if isinstance(other, PerturbedRat):
            return NotImplemented
        return PerturbedRat(self.base + Fraction(other), self.tilt)

    __radd__ = __add__

    def __sub__(self, other: RatLike) -> "PerturbedRat":
        if isinstance(other, PerturbedRat):
            return NotImplemented
        return PerturbedRat(self.base - Fraction(other), self.tilt)

    def __rsub__(self, other: RatLike) -> "PerturbedRat":
        return (-self) + other

    def scale(self, factor: RatLike) -> "PerturbedRat":
        """Multiply by an exact rational."""
        factor = Fraction(factor)
        sign = (factor > 0) - (factor < 0)
        return PerturbedRat(self.base * factor, self.tilt * sign)

    def reciprocal(self) -> "PerturbedRat":
        return div_int(1, self)

    def is_integer(self) -> bool:
        return self.tilt == 0 and self.base.denominator == 1


def as_perturbed(value) -> PerturbedRat:
    return PerturbedRat.of(value)


def floor_p(v: PerturbedRat) -> int:
    base = v.base
    fl = math.floor(base)
    if v.tilt < 0 and base.denominator == 1:
        return fl - 1
    return fl


def ceil_p(v: PerturbedRat) -> int:
    base = v.base
    if v.tilt == 0:
        return math.ceil(base)
    return floor_p(v) + 1


def div_int(t: int, x: PerturbedRat) -> PerturbedRat:
    """``t / x`` for an integer ``t``; the tilt flips because ``1/x`` is decreasing."""
    x = as_perturbed(x)
    if x.base <= 0:
        raise DomainError(f"division needs a positive parameter, got {x}")
    sign = (t > 0) - (t < 0)
    return PerturbedRat(Fraction(t) / x.base, -x.tilt * sign)


def mul_int(r: int, x: PerturbedRat) -> PerturbedRat:
    return as_perturbed(x).scale(r)


def fib(n: int) -> int:
    """Fibonacci numbers with ``f(-1) = 1, f(0) = 0, f(1) = f(2) = 1``."""
    if n < -1:
        raise DomainError(f"fib is defined here for n >= -1, got {n}")
    if n == -1:
        return 1
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def cmp_tau4(r: RatLike) -> int:
    """Sign of ``r - tau**4`` where ``tau`` is the golden ratio.

    ``tau**4 = (7 + 3*sqrt(5)) / 2`` is irrational, so the result is never 0.
    """
    r = Fraction(r)
    if r <= 0:
        raise DomainError(f"cmp_tau4 expects a positive rational, got {r}")
    lhs = 2 * r - 7
    if lhs <= 0:
        return -1
    return 1 if lhs * lhs > 45 else -1
