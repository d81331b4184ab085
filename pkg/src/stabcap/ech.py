"""ECH gradings, partitions and gluing coefficients on ellipsoid boundaries.

All of it reduces to lattice geometry relative to a line of slope ``theta``,
where ``theta = 1/y`` is the monodromy angle of the short orbit on
``E(1, y)``.  Perturbed parameters make every comparison against the line
exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

from .errors import DomainError, UnsupportedPartition
from .exactnum import PerturbedRat, as_perturbed, ceil_p, div_int, floor_p, mul_int

ONE = PerturbedRat(1)
ZERO = PerturbedRat(0)


@dataclass(frozen=True)
class LatticePath:
    """Polygonal path through every lattice point it meets, left to right."""

    break_points: tuple[tuple[int, int], ...]

    def displacements(self) -> tuple[int, ...]:
        pts = self.break_points
        return tuple(b[0] - a[0] for a, b in zip(pts, pts[1:]))


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)

    def __len__(self):
        return len(self.parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.parts)) + ")"


@dataclass(frozen=True)
class ImpossibleNegIndex:
    ech_half_index: int


@dataclass(frozen=True)
class ImpossiblePartition:
    end: str  # "top" or "bottom"
    expected: Partition


@dataclass(frozen=True)
class NotRuledOut:
    ech_half_index: int


CylVerdict = Union[ImpossibleNegIndex, ImpossiblePartition, NotRuledOut]


def _check_param(z: PerturbedRat) -> PerturbedRat:
    z = as_perturbed(z)
    if z <= ONE:
        raise DomainError(f"ellipsoid parameter must exceed 1, got {z}")
    return z


def _check_theta(theta) -> PerturbedRat:
    theta = as_perturbed(theta)
    if not ZERO < theta < ONE:
        raise DomainError(f"theta must lie in (0, 1), got {theta}")
    return theta


def half_grading(p: int, z) -> int:
    """Lattice points (a, b) >= 0 with ``a + z*b <= p``, minus one.

    Counted column by column: above ``a`` there are ``floor((p - a)/z) + 1``
    admissible heights.
    """
    z = _check_param(z)
    if p < 1:
        raise DomainError(f"multiplicity must be positive, got {p}")
    count = 1  # column a = p holds only b = 0
    for a in range(p):
        count += floor_p(div_int(p - a, z)) + 1
    return count - 1


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chain(points: Sequence[tuple[int, int]], lower: bool) -> list[tuple[int, int]]:
    hull: list[tuple[int, int]] = []
    for p in points:
        while len(hull) >= 2:
            turn = _cross(hull[-2], hull[-1], p)
            if (turn <= 0) if lower else (turn >= 0):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def _refine(vertices: list[tuple[int, int]]) -> LatticePath:
    pts = [vertices[0]]
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:]):
        g = math.gcd(x1 - x0, y1 - y0)
        dx, dy = (x1 - x0) // g, (y1 - y0) // g
        pts.extend((x0 + i * dx, y0 + i * dy) for i in range(1, g + 1))
    return LatticePath(tuple(pts))


def negative_path(k: int, theta) -> LatticePath:
    """Lowest convex lattice path from the origin that stays above ``x2 = theta*x1``."""
    theta = _check_theta(theta)
    pts = [(0, 0)] + [(j, ceil_p(mul_int(j, theta))) for j in range(1, k + 1)]
    return _refine(_chain(pts, lower=True))


def positive_path(k: int, theta) -> LatticePath:
    """Highest concave lattice path from the origin that stays below the line."""
    theta = _check_theta(theta)
    pts = [(0, 0)] + [(j, floor_p(mul_int(j, theta))) for j in range(1, k + 1)]
    return _refine(_chain(pts, lower=False))


def ech_partition_neg(k: int, theta) -> Partition:
    if k < 1:
        raise DomainError(f"total multiplicity must be positive, got {k}")
    return Partition(negative_path(k, theta).displacements())


def ech_partition_pos(k: int, theta) -> Partition:
    if k < 1:
        raise DomainError(f"total multiplicity must be positive, got {k}")
    return Partition(positive_path(k, theta).displacements())


def trivial_glue_admissible(s: int, y) -> bool:
    """Whether curves may glue onto a trivial cylinder over the s-fold short orbit."""
    y = _check_param(y)
    return ech_partition_neg(s, div_int(1, y)).parts == (s,)


def delta(theta, a: int, b: int) -> int:
    theta = _check_theta(theta)
    return b * ceil_p(mul_int(a, theta)) - a * floor_p(mul_int(b, theta))


def neck_condition(parts, y) -> bool:
    """``sum(ceil(p_i/y)) == ceil(s/y)``, which makes the branched neck cover index 0."""
    y = _check_param(y)
    parts = parts.parts if isinstance(parts, Partition) else tuple(parts)
    s = sum(parts)
    return sum(ceil_p(div_int(p, y)) for p in parts) == ceil_p(div_int(s, y))


def gluing_coeff_two_parts(p1: int, p2: int, theta) -> int:
    """Obstruction-bundle gluing count for two curves meeting a neck of total ``p1 + p2``.

    Evaluates ``delta(p2, p2) * delta(p1, p1 + p2)``.  The neck condition is
    not enforced here; certificate verification checks it separately.
    """
    if not (isinstance(p1, int) and isinstance(p2, int) and p1 > p2 >= 1):
        raise UnsupportedPartition(f"need two parts p1 > p2 >= 1, got ({p1}, {p2})")
    return delta(theta, p2, p2) * delta(theta, p1, p1 + p2)


def gluing_coeff(parts: Sequence[int], theta) -> int:
    parts = tuple(parts)
    if len(parts) == 1:
        return 1
    if len(parts) == 2:
        return gluing_coeff_two_parts(parts[0], parts[1], theta)
    raise UnsupportedPartition(
        f"gluing coefficients are modelled for at most two parts, got {len(parts)}"
    )


def cylinder_ech_verdict(s: int, y, t: int, x, check_top: bool = False) -> CylVerdict:
    """Rule out an index-zero cylinder from the s-fold short orbit at ``y`` to the t-fold at ``x``.

    A somewhere injective cylinder needs nonnegative ECH index, and at index
    zero its ends must carry ECH partitions.  The top-end test is opt-in.
    """
    y, x = _check_param(y), _check_param(x)
    if not y < x:
        raise DomainError(f"need y < x, got y = {y}, x = {x}")
    if s > t:
        raise DomainError(f"need s <= t, got s = {s}, t = {t}")
    ech = half_grading(s, y) - half_grading(t, x)
    if ech < 0:
        return ImpossibleNegIndex(ech)
    if ech == 0:
        bottom = ech_partition_neg(t, div_int(1, x))
        if bottom.parts != (t,):
            return ImpossiblePartition("bottom", bottom)
        if check_top:
            top = ech_partition_pos(s, div_int(1, y))
            if top.parts != (s,):
                return ImpossiblePartition("top", top)
    return NotRuledOut(ech)
