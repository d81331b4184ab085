"""The unstabilized Fibonacci staircase and known stabilized capacities.

``c0(x)`` is the smallest ball capacity into which ``E(1, x)`` embeds;
``ck(x)`` is the same after taking a product with ``R^(2k)``, ``k >= 1``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Union

from .errors import DomainError, UnsupportedRegion
from .exactnum import RatLike, cmp_tau4, fib, format_rat

VOLUME_REGION_START = Fraction(289, 36)
DEFAULT_SEARCH_CAP = 64

SRC_STAIRCASE = "stabilization below tau^4 (c_k = c_0 on [1, tau^4])"
SRC_THEOREM = "c_k(3m-1) = (3m-1)/m for all m >= 1, k >= 1"
SRC_FIB_EVEN = "c_k = 3x/(x+1) at x = f(4i+6)/f(4i+2)"
SRC_FIB_ODD = "c_k = 3x/(x+1) at x = 3f(m)-1, m not 2 mod 4"
SRC_FOLDING = "folding upper bound c_k(x) <= 3x/(x+1) for x > tau^4"
SRC_MONOTONE = "c_k nondecreasing: value at a known point <= x"


@dataclass(frozen=True)
class StaircasePiece:
    kind: str  # "linear" or "constant"
    parameter: Fraction  # slope for linear pieces, value for constant ones
    lo: Fraction
    hi: Fraction

    def __call__(self, x: RatLike) -> Fraction:
        if self.kind == "linear":
            return self.parameter * Fraction(x)
        return self.parameter

    def contains(self, x: RatLike) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class CapValue:
    """Either an exact rational or ``sqrt(radicand)``."""

    kind: str  # "rational" or "sqrt"
    value: Fraction

    @classmethod
    def rational(cls, value: RatLike) -> "CapValue":
        return cls("rational", Fraction(value))

    @classmethod
    def sqrt_of(cls, radicand: RatLike) -> "CapValue":
        return cls("sqrt", Fraction(radicand))

    def square(self) -> Fraction:
        return self.value if self.kind == "sqrt" else self.value ** 2

    def as_fraction(self) -> Optional[Fraction]:
        """The exact rational value, or None when it is an irrational square root."""
        if self.kind == "rational":
            return self.value
        num = math.isqrt(self.value.numerator)
        den = math.isqrt(self.value.denominator)
        if num * num == self.value.numerator and den * den == self.value.denominator:
            return Fraction(num, den)
        return None

    def __float__(self) -> float:
        return math.sqrt(self.value) if self.kind == "sqrt" else float(self.value)

    def __eq__(self, other):
        if isinstance(other, CapValue):
            return self.square() == other.square()
        if isinstance(other, (int, Fraction)):
            return other >= 0 and self.square() == Fraction(other) ** 2
        return NotImplemented

    def __hash__(self):
        return hash(self.square())

    def __str__(self) -> str:
        exact = self.as_fraction()
        if exact is not None:
            return format_rat(exact)
        return f"sqrt({format_rat(self.value)})"


@dataclass(frozen=True)
class Exact:
    value: CapValue
    sources: tuple[str, ...]


@dataclass(frozen=True)
class Bounds:
    lower: Fraction
    upper: Fraction
    sources: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.lower > self.upper:
            raise DomainError(f"lower bound {self.lower} exceeds upper bound {self.upper}")


KnownResult = Union[Exact, Bounds]


def _step(i: int) -> tuple[Fraction, Fraction]:
    """Left endpoint and value of constant step ``i`` (``i >= -1``)."""
    left = Fraction(fib(2 * i + 3), fib(2 * i - 1)) if i >= 0 else Fraction(1, 2)
    value = Fraction(fib(2 * i + 3), fib(2 * i + 1))
    return left, value


def iter_staircase() -> Iterator[StaircasePiece]:
    """Pieces of c0 on [1, tau^4), in order, without end.

    Starts with the identity on [1, 2]; afterwards each constant step is
    followed by a linear piece through the origin up to the next step.
    """
    i = -1
    while True:
        left, value = _step(i)
        if i >= 0:
            yield StaircasePiece("constant", value, left, value * value)
        next_left, _ = _step(i + 1)
        slope = Fraction(fib(2 * i + 1), fib(2 * i + 3))
        yield StaircasePiece("linear", slope, value * value, next_left)
        i += 1


def c0_staircase(max_steps: int) -> list[StaircasePiece]:
    """The first ``max_steps`` constant steps with the linear pieces between them.

    The list starts with the linear piece on [1, 2] and ends with the linear
    piece leading up to step ``max_steps``.
    """
    if max_steps < 1:
        raise DomainError(f"max_steps must be positive, got {max_steps}")
    pieces = []
    for piece in iter_staircase():
        pieces.append(piece)
        if len(pieces) == 2 * max_steps + 1:
            return pieces
    raise AssertionError("unreachable")


def staircase_csv(pieces: list[StaircasePiece]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["lo", "hi", "kind", "parameter"])
    for p in pieces:
        writer.writerow([format_rat(p.lo), format_rat(p.hi), p.kind, format_rat(p.parameter)])
    return buf.getvalue()


def c0(x: RatLike) -> CapValue:
    x = Fraction(x)
    if x < 1:
        raise DomainError(f"c0 is defined for x >= 1, got {x}")
    if cmp_tau4(x) < 0:
        for piece in iter_staircase():
            if piece.contains(x):
                return CapValue.rational(piece(x))
    if x >= VOLUME_REGION_START:
        return CapValue.sqrt_of(x)
    raise UnsupportedRegion(
        f"x = {format_rat(x)} lies in the transitional region (tau^4, 289/36); no exact data"
    )


def folding_bound(x: RatLike) -> Fraction:
    x = Fraction(x)
    return 3 * x / (x + 1)


def _is_even_fib_ratio(x: Fraction, cap: int) -> bool:
    return any(Fraction(fib(4 * i + 6), fib(4 * i + 2)) == x for i in range(cap))


def _is_odd_fib_point(x: Fraction, cap: int) -> bool:
    return any(m % 4 != 2 and 3 * fib(m) - 1 == x for m in range(1, cap + 1))


def ck_known(x: RatLike, k: int = 1, cap: int = DEFAULT_SEARCH_CAP) -> KnownResult:
    """Everything the literature pins down about ``c_k(x)``.

    No known formula depends on ``k``; it is only validated.
    """
    x = Fraction(x)
    if x < 1:
        raise DomainError(f"c_k is defined for x >= 1, got {x}")
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")

    sources = []
    below_tau4 = cmp_tau4(x) < 0
    if below_tau4:
        sources.append(SRC_STAIRCASE)
    if x.denominator == 1 and x.numerator % 3 == 2:
        sources.append(SRC_THEOREM)
    if _is_even_fib_ratio(x, cap):
        sources.append(SRC_FIB_EVEN)
    if _is_odd_fib_point(x, cap):
        sources.append(SRC_FIB_ODD)
    if sources:
        value = c0(x) if below_tau4 else CapValue.rational(folding_bound(x))
        return Exact(value, tuple(sources))

    # x > tau^4 and not a known point
    candidates = [Fraction(fib(2 * cap + 3), fib(2 * cap + 1))]  # a late staircase value
    m = (x.numerator // x.denominator + 1) // 3
    if m >= 1:
        candidates.append(Fraction(3 * m - 1, m))
    points = [Fraction(fib(4 * i + 6), fib(4 * i + 2)) for i in range(cap)]
    below = [p for p in points if p <= x]
    if below:
        candidates.append(folding_bound(max(below)))
    return Bounds(max(candidates), folding_bound(x), (SRC_MONOTONE, SRC_FOLDING))
