"""Stabilization criterion: index condition plus an exhaustive decomposition search.

A curve in M(m, x, t) survives stabilization when no splitting of ``(m, t)``
into two or more pairs ``(m_i, t_i)`` has every pair satisfying the index
condition on its own.  If it survives, ``c_k(x) >= t/m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, RationalParam
from .exactnum import PerturbedRat, as_perturbed, ceil_p, div_int
from .index import index_condition

CAVEAT = "conditional on M(m, x, t) being nonempty"


@dataclass(frozen=True)
class Decomposition:
    pairs: tuple[tuple[int, int], ...]  # (m_i, t_i), sorted by t_i

    @property
    def m(self) -> int:
        return sum(p[0] for p in self.pairs)

    @property
    def t(self) -> int:
        return sum(p[1] for p in self.pairs)


@dataclass(frozen=True)
class StabVerdict:
    m: int
    x: PerturbedRat
    t: int
    index_ok: bool
    decomposition: Optional[Decomposition]
    lower_bound: Optional[Fraction]
    caveat: str = CAVEAT


def candidate_pairs(m: int, x: PerturbedRat, t: int) -> list[tuple[int, int]]:
    """Pairs ``(m', t')`` with ``t' < t``, ``m' < m`` that satisfy the index condition at ``x``."""
    pairs = []
    for tp in range(1, t):
        lhs = tp + ceil_p(div_int(tp, x))
        if lhs % 3 == 0 and 1 <= lhs // 3 <= m - 1:
            pairs.append((lhs // 3, tp))
    return pairs


def _validate(m: int, x, t: int) -> PerturbedRat:
    x = as_perturbed(x)
    if x.tilt == 0:
        raise RationalParam(f"decomposition search needs an irrational parameter, got {x}")
    if m < 1 or t < 1:
        raise DomainError(f"m and t must be positive, got m = {m}, t = {t}")
    return x


def find_decomposition(m: int, x, t: int) -> Optional[Decomposition]:
    """A witness splitting of ``(m, t)``, or None if none exists.

    Among all witnesses the one whose ascending ``t_i`` sequence is
    lexicographically smallest is returned.
    """
    x = _validate(m, x, t)
    pairs = candidate_pairs(m, x, t)
    if not pairs:
        return None
    width = t + 1
    size = (m + 1) * width

    # reach[i]: targets (a, b) expressible with pairs[i:], repetition allowed
    reach = [bytearray(size) for _ in range(len(pairs) + 1)]
    reach[len(pairs)][0] = 1
    for i in range(len(pairs) - 1, -1, -1):
        mi, ti = pairs[i]
        cur = reach[i]
        cur[:] = reach[i + 1]
        for a in range(mi, m + 1):
            row, src = a * width, (a - mi) * width
            for b in range(ti, t + 1):
                if not cur[row + b] and cur[src + b - ti]:
                    cur[row + b] = 1
    if not reach[0][m * width + t]:
        return None

    # every pair has t_i < t, so any witness has at least two summands
    chosen = []
    a, b, i = m, t, 0
    while (a, b) != (0, 0):
        while True:
            mi, ti = pairs[i]
            if mi <= a and ti <= b and reach[i][(a - mi) * width + b - ti]:
                break
            i += 1
        chosen.append((mi, ti))
        a, b = a - mi, b - ti
    return Decomposition(tuple(chosen))


def stab_check(m: int, x, t: int) -> StabVerdict:
    x = _validate(m, x, t)
    index_ok = index_condition(m, x, t)
    decomposition = find_decomposition(m, x, t)
    bound = Fraction(t, m) if index_ok and decomposition is None else None
    return StabVerdict(m, x, t, index_ok, decomposition, bound)
