"""Fredholm indices of punctured genus-zero curves and orbit cylinders.

Curves live in the completed complement of ``E(1, x)`` in the projective
plane; their negative ends wrap the short orbit (area 1) or the long orbit
(area ``x``) of the ellipsoid boundary.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, RationalParam
from .exactnum import PerturbedRat, as_perturbed, ceil_p, div_int, floor_p, mul_int

SHORT = "short"
LONG = "long"
ORBITS = (SHORT, LONG)


def _check_mults(mults, what):
    for k in mults:
        if not isinstance(k, int) or k < 1:
            raise DomainError(f"{what} multiplicities must be positive integers, got {k!r}")


@dataclass(frozen=True)
class CurveSpec:
    degree: int
    param: PerturbedRat
    short_ends: tuple[int, ...] = field(default=())
    long_ends: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "param", as_perturbed(self.param))
        object.__setattr__(self, "short_ends", tuple(self.short_ends))
        object.__setattr__(self, "long_ends", tuple(self.long_ends))
        if self.degree < 0:
            raise DomainError(f"degree must be nonnegative, got {self.degree}")
        _check_mults(self.short_ends, "short-orbit")
        _check_mults(self.long_ends, "long-orbit")


@dataclass(frozen=True)
class OrbitSpec:
    orbit: str
    mult: int
    param: PerturbedRat

    def __post_init__(self):
        object.__setattr__(self, "param", as_perturbed(self.param))
        if self.orbit not in ORBITS:
            raise DomainError(f"orbit must be 'short' or 'long', got {self.orbit!r}")
        _check_mults((self.mult,), self.orbit)
        if self.param <= PerturbedRat(1):
            raise DomainError(f"ellipsoid parameter must exceed 1, got {self.param}")


def half_index_orbit_cyl(o: OrbitSpec) -> int:
    """Half the index contribution of ``o``.

    Short orbit: ``s + floor(s/y)``.  Long orbit: ``r + floor(r*y)``; the
    long case is read off from worked instances rather than a general formula.
    """
    return end_half_index(o.orbit, o.mult, o.param)


def end_half_index(orbit: str, mult: int, param: PerturbedRat) -> int:
    if orbit == SHORT:
        return mult + floor_p(div_int(mult, param))
    if orbit == LONG:
        return mult + floor_p(mul_int(mult, param))
    raise DomainError(f"unknown orbit {orbit!r}")


def half_index_curve(c: CurveSpec) -> int:
    total = -1 + 3 * c.degree
    total -= sum(end_half_index(SHORT, t, c.param) for t in c.short_ends)
    total -= sum(end_half_index(LONG, r, c.param) for r in c.long_ends)
    return total


def index_condition(m: int, x, t: int) -> bool:
    """Whether ``3m = t + ceil(t/x)``: curves in M(m, x, t) then have index 0."""
    x = as_perturbed(x)
    if x.tilt == 0:
        raise RationalParam(f"index condition needs an irrational parameter, got {x}")
    return 3 * m == t + ceil_p(div_int(t, x))


def action_obstruction(c: CurveSpec) -> PerturbedRat:
    """Smallest ball capacity for which the curve has positive action.

    The action ``m*mu - sum(t) - x*sum(r)`` must be positive, so
    ``mu >= (sum(t) + x*sum(r)) / m``.
    """
    if c.degree < 1:
        raise DomainError("action obstruction needs degree >= 1")
    total = mul_int(sum(c.long_ends), c.param) + sum(c.short_ends)
    return total.scale(Fraction(1, c.degree))
