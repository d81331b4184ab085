"""Holomorphic-building certificates for curves in M(m, x, 3m-1).

A certificate is a stack of levels, top to bottom.  The top level holds
curves in the completed complement of ``E(1, y)``; below it come neck
curves (branched covers in the symplectization of ``E(1, y)``), trivial
covers, and cobordism cylinders from ``E(1, y)`` down to ``E(1, x)``.  Each
component records the rule that makes it gluable, so :func:`verify_certificate`
only has to check, never search.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import ClassVar, Optional, Union

from . import ech
from .errors import DomainError, MalformedCertificate, RationalParam, StabcapError
from .exactnum import PerturbedRat, as_perturbed, div_int, fib, floor_p
from .index import (
    LONG,
    ORBITS,
    SHORT,
    CurveSpec,
    action_obstruction,
    end_half_index,
    half_index_curve,
    index_condition,
)

RULE_AXIOM = "axiom"
RULE_CERTIFICATE = "certificate"
RULE_DISTINCT_PARTS = "distinct-parts"
RULE_TRIVIAL_COVER = "trivial-cover-partition"
RULE_COPRIME_CYLINDER = "regular-cylinder-coprime"

AXIOM_PROVENANCE = "Fibonacci-pair curve constructed as an ECH trajectory (Cristofaro-Gardiner-Hind)"


@dataclass(frozen=True)
class End:
    orbit: str
    mult: int
    level_param: PerturbedRat

    def __post_init__(self):
        object.__setattr__(self, "level_param", as_perturbed(self.level_param))
        if self.orbit not in ORBITS:
            raise DomainError(f"orbit must be 'short' or 'long', got {self.orbit!r}")
        if not isinstance(self.mult, int) or self.mult < 1:
            raise DomainError(f"end multiplicity must be a positive integer, got {self.mult!r}")

    def half_index(self) -> int:
        return end_half_index(self.orbit, self.mult, self.level_param)

    def __str__(self):
        beta = "b1" if self.orbit == SHORT else "b2"
        return f"{beta}^{self.mult}({self.level_param})"


def short_end(mult: int, param) -> End:
    return End(SHORT, mult, as_perturbed(param))


@dataclass(frozen=True)
class TopCurve:
    """A genus-zero curve of some degree in the completed complement of ``E(1, param)``."""

    kind: ClassVar[str] = "top_curve"
    degree: int
    param: PerturbedRat
    neg_ends: tuple[End, ...]
    admissibility_rule: str = RULE_AXIOM
    provenance: str = ""
    certificate: Optional["BuildingCertificate"] = None

    @property
    def pos_ends(self) -> tuple[End, ...]:
        return ()

    def half_index(self) -> int:
        spec = CurveSpec(
            self.degree,
            self.param,
            tuple(e.mult for e in self.neg_ends if e.orbit == SHORT),
            tuple(e.mult for e in self.neg_ends if e.orbit == LONG),
        )
        return half_index_curve(spec)


@dataclass(frozen=True)
class NeckCurve:
    kind: ClassVar[str] = "neck_curve"
    param: PerturbedRat
    pos_ends: tuple[End, ...]
    neg_ends: tuple[End, ...]
    admissibility_rule: str = RULE_DISTINCT_PARTS

    def half_index(self) -> int:
        return (
            len(self.pos_ends)
            - 1
            + sum(e.half_index() for e in self.pos_ends)
            - sum(e.half_index() for e in self.neg_ends)
        )


@dataclass(frozen=True)
class CobordismCylinder:
    kind: ClassVar[str] = "cobordism_cylinder"
    top: End
    bottom: End
    admissibility_rule: str = RULE_COPRIME_CYLINDER

    @property
    def pos_ends(self) -> tuple[End, ...]:
        return (self.top,)

    @property
    def neg_ends(self) -> tuple[End, ...]:
        return (self.bottom,)

    def half_index(self) -> int:
        return self.top.half_index() - self.bottom.half_index()


@dataclass(frozen=True)
class TrivialCover:
    kind: ClassVar[str] = "trivial_cover"
    orbit: str
    mult: int
    param: PerturbedRat
    admissibility_rule: str = RULE_TRIVIAL_COVER

    @property
    def end(self) -> End:
        return End(self.orbit, self.mult, self.param)

    @property
    def pos_ends(self) -> tuple[End, ...]:
        return (self.end,)

    @property
    def neg_ends(self) -> tuple[End, ...]:
        return (self.end,)

    def half_index(self) -> int:
        return 0


Component = Union[TopCurve, NeckCurve, CobordismCylinder, TrivialCover]
COMPONENT_TYPES = (TopCurve, NeckCurve, CobordismCylinder, TrivialCover)
EXPECTED_RULES = {
    NeckCurve: (RULE_DISTINCT_PARTS,),
    CobordismCylinder: (RULE_COPRIME_CYLINDER,),
    TrivialCover: (RULE_TRIVIAL_COVER,),
    TopCurve: (RULE_AXIOM, RULE_CERTIFICATE),
}


@dataclass(frozen=True)
class Conclusion:
    degree: int
    param: PerturbedRat
    t: int
    claimed_count: int

    @property
    def end(self) -> End:
        return short_end(self.t, self.param)


@dataclass(frozen=True)
class BuildingCertificate:
    levels: tuple[tuple[Component, ...], ...]
    conclusion: Conclusion

    def components(self):
        for i, level in enumerate(self.levels):
            for j, comp in enumerate(level):
                yield i, j, comp


@dataclass(frozen=True)
class BlowupClass:
    """``d*L - sum(a_i * E_i)`` in a blowup of the projective plane."""

    d: int
    multipliers: tuple[int, ...] = field(default=())


def intersection_pairing(a: BlowupClass, b: BlowupClass) -> int:
    n = max(len(a.multipliers), len(b.multipliers))
    am = tuple(a.multipliers) + (0,) * (n - len(a.multipliers))
    bm = tuple(b.multipliers) + (0,) * (n - len(b.multipliers))
    return a.d * b.d - sum(x * y for x, y in zip(am, bm))


# --- verification ------------------------------------------------------------

CHECKS = (
    ("a", "ends_match", True),
    ("b", "zero_index", True),
    ("c", "neck_partition", True),
    ("d", "trivial_cover", True),
    ("e", "cylinder", True),
    ("f", "index_condition", True),
    ("g", "action_threshold", False),
    ("", "level_structure", True),
    ("", "param_consistency", True),
    ("", "leaf_axiom", True),
    ("", "nested", True),
    ("", "degree_total", True),
    ("", "claimed_count", True),
)


@dataclass
class Check:
    code: str
    name: str
    mandatory: bool
    ok: bool = True
    details: list[str] = field(default_factory=list)

    @property
    def label(self) -> str:
        return f"({self.code}) {self.name}" if self.code else self.name


@dataclass
class Report:
    conclusion: Conclusion
    checks: list[Check]
    threshold: Optional[PerturbedRat] = None
    computed_count: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks if c.mandatory)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[Check]:
        return [c for c in self.checks if c.mandatory and not c.ok]

    def failed_names(self) -> list[str]:
        return [c.name for c in self.failures()]


class _Ledger:
    def __init__(self):
        self.checks = {name: Check(code, name, mandatory) for code, name, mandatory in CHECKS}

    def fail(self, name: str, msg: str):
        chk = self.checks[name]
        chk.ok = False
        chk.details.append(msg)

    def note(self, name: str, msg: str):
        self.checks[name].details.append(msg)

    def report(self, conclusion, threshold, count) -> Report:
        return Report(conclusion, list(self.checks.values()), threshold, count)


def fibonacci_pair_index(degree: int, t: int, limit: int = 64) -> Optional[int]:
    """``i`` with ``(degree, t) == (f(2i+1), f(2i+3))``, if any."""
    for i in range(limit):
        d = fib(2 * i + 1)
        if d > degree:
            return None
        if d == degree and fib(2 * i + 3) == t:
            return i
    return None


def _where(i: int, j: int, comp) -> str:
    return f"level {i} {comp.kind} #{j}"


def _check_structure(cert: BuildingCertificate, led: _Ledger):
    if not cert.levels or any(len(level) == 0 for level in cert.levels):
        raise MalformedCertificate("certificate needs at least one level and no empty levels")
    for i, j, comp in cert.components():
        if not isinstance(comp, COMPONENT_TYPES):
            raise MalformedCertificate(f"unknown component type {type(comp).__name__}")
        is_top = isinstance(comp, TopCurve)
        if is_top != (i == 0):
            led.fail("level_structure", f"{_where(i, j, comp)}: top curves must form exactly the top level")
        if comp.admissibility_rule not in EXPECTED_RULES[type(comp)]:
            led.fail(
                "level_structure",
                f"{_where(i, j, comp)}: admissibility rule {comp.admissibility_rule!r} does not apply",
            )


def _check_params(cert: BuildingCertificate, led: _Ledger):
    for i, j, comp in cert.components():
        if isinstance(comp, CobordismCylinder):
            continue
        for e in comp.pos_ends + comp.neg_ends:
            if e.level_param != comp.param:
                led.fail(
                    "param_consistency",
                    f"{_where(i, j, comp)}: end {e} does not live on E(1, {comp.param})",
                )


def _check_ends(cert: BuildingCertificate, led: _Ledger):
    levels = cert.levels
    for i in range(len(levels) - 1):
        below = Counter(e for comp in levels[i] for e in comp.neg_ends)
        above = Counter(e for comp in levels[i + 1] for e in comp.pos_ends)
        if below != above:
            led.fail(
                "ends_match",
                f"levels {i}/{i + 1}: negative ends {sorted(map(str, below.elements()))} "
                f"vs positive ends {sorted(map(str, above.elements()))}",
            )
    bottom = Counter(e for comp in levels[-1] for e in comp.neg_ends)
    if bottom != Counter([cert.conclusion.end]):
        led.fail(
            "ends_match",
            f"bottom ends {sorted(map(str, bottom.elements()))} vs conclusion {cert.conclusion.end}",
        )


def _check_indices(cert: BuildingCertificate, led: _Ledger):
    for i, j, comp in cert.components():
        try:
            value = comp.half_index()
        except StabcapError as exc:
            led.fail("zero_index", f"{_where(i, j, comp)}: {exc}")
            continue
        if value != 0:
            led.fail("zero_index", f"{_where(i, j, comp)}: half index {value}, expected 0")


def _check_neck(i, j, comp: NeckCurve, led: _Ledger):
    where = _where(i, j, comp)
    ends = comp.pos_ends + comp.neg_ends
    if any(e.orbit != SHORT for e in ends):
        led.fail("neck_partition", f"{where}: neck curves cover the short orbit only")
        return
    if len(comp.neg_ends) != 1:
        led.fail("neck_partition", f"{where}: expected one negative end, got {len(comp.neg_ends)}")
        return
    parts = [e.mult for e in comp.pos_ends]
    s = comp.neg_ends[0].mult
    if sum(parts) != s:
        led.fail("neck_partition", f"{where}: positive ends {parts} do not sum to {s}")
    if any(a <= b for a, b in zip(parts, parts[1:])):
        led.fail("neck_partition", f"{where}: positive multiplicities {parts} not strictly decreasing")
    try:
        ok = ech.neck_condition(parts, comp.param)
    except StabcapError as exc:
        led.fail("neck_partition", f"{where}: {exc}")
        return
    if not ok:
        led.fail("neck_partition", f"{where}: sum of ceil(p_i/y) != ceil(s/y) for {parts} at y = {comp.param}")


def _check_trivial(i, j, comp: TrivialCover, led: _Ledger):
    where = _where(i, j, comp)
    if comp.orbit != SHORT:
        led.fail("trivial_cover", f"{where}: no gluing rule for trivial covers of the long orbit")
        return
    try:
        part = ech.ech_partition_neg(comp.mult, div_int(1, comp.param))
    except StabcapError as exc:
        led.fail("trivial_cover", f"{where}: {exc}")
        return
    if part.parts != (comp.mult,):
        led.fail(
            "trivial_cover",
            f"{where}: negative ECH partition of {comp.mult} at {comp.param} is {part}, not ({comp.mult})",
        )


def cylinder_existence_known(top: End, bottom: End) -> bool:
    """Hypotheses under which an index-zero cylinder from ``top`` to ``bottom`` is known to exist.

    Needs multiplicities ``t-1`` and ``t``, equal half indices,
    ``y < t < x``, and ``floor((t-1)/y) == 1``.
    """
    y, x, t = top.level_param, bottom.level_param, bottom.mult
    return (
        top.orbit == SHORT == bottom.orbit
        and top.mult == t - 1
        and top.half_index() == bottom.half_index()
        and y < PerturbedRat(t) < x
        and floor_p(div_int(t - 1, y)) == 1
    )


def _check_cylinder(i, j, comp: CobordismCylinder, led: _Ledger):
    where = _where(i, j, comp)
    top, bottom = comp.top, comp.bottom
    if top.orbit != SHORT or bottom.orbit != SHORT:
        led.fail("cylinder", f"{where}: only short-orbit cylinders are modelled")
        return
    if not top.level_param < bottom.level_param:
        led.fail("cylinder", f"{where}: top parameter {top.level_param} must be below {bottom.level_param}")
        return
    if math.gcd(top.mult, bottom.mult) != 1:
        led.fail("cylinder", f"{where}: multiplicities {top.mult}, {bottom.mult} not coprime")
    try:
        verdict = ech.cylinder_ech_verdict(top.mult, top.level_param, bottom.mult, bottom.level_param)
    except StabcapError as exc:
        led.fail("cylinder", f"{where}: {exc}")
        return
    if not isinstance(verdict, ech.NotRuledOut):
        led.fail("cylinder", f"{where}: ruled out by ECH ({_describe_verdict(verdict)})")
    elif cylinder_existence_known(top, bottom):
        led.note("cylinder", f"{where}: hypotheses of the existence result hold")


def _describe_verdict(v) -> str:
    if isinstance(v, ech.ImpossibleNegIndex):
        return f"ECH half index {v.ech_half_index} < 0"
    if isinstance(v, ech.ImpossiblePartition):
        return f"{v.end} end needs the one-part partition ({v.expected.total}) but the ECH partition is {v.expected}"
    return "not ruled out"


def _check_top_curve(i, j, comp: TopCurve, led: _Ledger) -> int:
    """Validate how the curve is justified; return the number of curves it stands for."""
    where = _where(i, j, comp)
    if comp.admissibility_rule == RULE_AXIOM:
        ends = comp.neg_ends
        if len(ends) != 1 or ends[0].orbit != SHORT:
            led.fail("leaf_axiom", f"{where}: axiom curves have one short-orbit end")
            return 1
        t = ends[0].mult
        if fibonacci_pair_index(comp.degree, t) is None:
            led.fail("leaf_axiom", f"{where}: ({comp.degree}, {t}) is not a Fibonacci pair")
        try:
            ok = index_condition(comp.degree, comp.param, t)
        except RationalParam as exc:
            led.fail("leaf_axiom", f"{where}: {exc}")
        else:
            if not ok:
                led.fail("leaf_axiom", f"{where}: index condition fails for M({comp.degree}, {comp.param}, {t})")
        return 1
    sub = comp.certificate
    if sub is None:
        led.fail("nested", f"{where}: rule 'certificate' without a nested certificate")
        return 1
    expected = Conclusion(comp.degree, comp.param, sub.conclusion.t, sub.conclusion.claimed_count)
    if sub.conclusion != expected or comp.neg_ends != (sub.conclusion.end,):
        led.fail("nested", f"{where}: curve data does not match the nested conclusion")
    report = verify_certificate(sub)
    if not report.passed:
        names = ", ".join(report.failed_names())
        led.fail("nested", f"{where}: nested certificate fails [{names}]")
    return report.computed_count if report.computed_count is not None else sub.conclusion.claimed_count


def verify_certificate(cert: BuildingCertificate) -> Report:
    led = _Ledger()
    concl = cert.conclusion
    _check_structure(cert, led)
    _check_params(cert, led)
    _check_ends(cert, led)
    _check_indices(cert, led)

    count: Optional[int] = 1
    for i, j, comp in cert.components():
        if isinstance(comp, TopCurve):
            count *= _check_top_curve(i, j, comp, led)
        elif isinstance(comp, NeckCurve):
            _check_neck(i, j, comp, led)
            if count is not None:
                try:
                    coeff = ech.gluing_coeff([e.mult for e in comp.pos_ends], div_int(1, comp.param))
                except StabcapError as exc:
                    led.note("claimed_count", f"{_where(i, j, comp)}: {exc}")
                    count = None
                else:
                    if coeff <= 0:
                        led.fail("neck_partition", f"{_where(i, j, comp)}: gluing coefficient {coeff} not positive")
                    count *= coeff
        elif isinstance(comp, TrivialCover):
            _check_trivial(i, j, comp, led)
        elif isinstance(comp, CobordismCylinder):
            _check_cylinder(i, j, comp, led)

    degrees = sum(c.degree for _, _, c in cert.components() if isinstance(c, TopCurve))
    if degrees != concl.degree:
        led.fail("degree_total", f"top curves have total degree {degrees}, conclusion says {concl.degree}")

    try:
        if not index_condition(concl.degree, concl.param, concl.t):
            led.fail("index_condition", f"3*{concl.degree} != {concl.t} + ceil({concl.t}/{concl.param})")
    except (RationalParam, DomainError) as exc:
        led.fail("index_condition", str(exc))

    threshold = None
    if concl.degree >= 1:
        threshold = action_obstruction(CurveSpec(concl.degree, concl.param, (concl.t,)))
        led.note("action_threshold", f"mu >= {threshold}")

    if count is None:
        led.checks["claimed_count"].mandatory = False
        led.fail("claimed_count", "count not computable for this certificate")
    elif count != concl.claimed_count:
        led.fail("claimed_count", f"claimed {concl.claimed_count}, gluing coefficients give {count}")
    return led.report(concl, threshold, count)


# --- construction ------------------------------------------------------------


def theorem_param(m: int) -> PerturbedRat:
    """``(3m - 1) + eps``, the parameter at which stage ``m`` is built."""
    return PerturbedRat(3 * m - 1, 1)


def axiom_curve(degree: int, param) -> TopCurve:
    """Curve of degree ``f(2i+1)`` with one end of multiplicity ``f(2i+3)``, taken as given."""
    param = as_perturbed(param)
    for i in range(64):
        if fib(2 * i + 1) == degree:
            t = fib(2 * i + 3)
            return TopCurve(degree, param, (short_end(t, param),), RULE_AXIOM, AXIOM_PROVENANCE)
        if fib(2 * i + 1) > degree:
            break
    raise DomainError(f"no axiom curve of degree {degree}")


def construct_theorem_curve(m: int, x=None) -> BuildingCertificate:
    """Certificate for a curve in M(m, x, 3m - 1), built by induction on ``m``.

    Stage ``m`` glues ``C_{m-1}(y)`` and ``C_1(y)`` to a neck with
    partition ``(3m-4, 2)`` and then to a cylinder from ``3m-2`` at ``y``
    to ``3m-1`` at ``x``, with ``y = (3m-4) + eps``.
    """
    if m < 1:
        raise DomainError(f"degree must be positive, got {m}")
    x = theorem_param(m) if x is None else as_perturbed(x)
    if m <= 2:
        curve = axiom_curve(m, x)
        return BuildingCertificate(((curve,),), Conclusion(m, x, 3 * m - 1, 1))

    y = theorem_param(m - 1)
    c1 = axiom_curve(1, y)
    if m - 1 <= 2:
        prev = axiom_curve(m - 1, y)
    else:
        inner = construct_theorem_curve(m - 1, y)
        prev = TopCurve(
            m - 1, y, (inner.conclusion.end,), RULE_CERTIFICATE, certificate=inner
        )
    s = 3 * m - 2
    neck = NeckCurve(y, (short_end(3 * m - 4, y), short_end(2, y)), (short_end(s, y),))
    cyl = CobordismCylinder(short_end(s, y), short_end(3 * m - 1, x))
    conclusion = Conclusion(m, x, 3 * m - 1, expected_count(m))
    return BuildingCertificate(((prev, c1), (neck,), (cyl,)), conclusion)


def expected_count(m: int) -> int:
    """Product of the stage gluing coefficients; a heuristic count of curves, not a proven one."""
    if m < 1:
        raise DomainError(f"degree must be positive, got {m}")
    count = 1
    for stage in range(2, m):
        theta = div_int(1, theorem_param(stage))
        count *= ech.gluing_coeff_two_parts(3 * stage - 1, 2, theta)
    return count
