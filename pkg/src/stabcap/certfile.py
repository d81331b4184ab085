"""JSON serialization of building certificates.

Output is canonical (fixed key order, two-space indent, trailing newline),
so ``dumps(loads(text)) == text`` for anything this module wrote.
"""

from __future__ import annotations

import json
from typing import Any

from .building import (
    BuildingCertificate,
    CobordismCylinder,
    Conclusion,
    End,
    NeckCurve,
    TopCurve,
    TrivialCover,
)
from .errors import MalformedCertificate, StabcapError
from .exactnum import PerturbedRat

FORMAT = "stabcap-building/1"


def _end(e: End) -> dict:
    return {"orbit": e.orbit, "mult": e.mult, "param": str(e.level_param)}


def _component(c) -> dict:
    if isinstance(c, TopCurve):
        return {
            "kind": c.kind,
            "degree": c.degree,
            "param": str(c.param),
            "pos_ends": [],
            "neg_ends": [_end(e) for e in c.neg_ends],
            "admissibility_rule": c.admissibility_rule,
            "provenance": c.provenance,
            "certificate": None if c.certificate is None else to_dict(c.certificate),
        }
    if isinstance(c, NeckCurve):
        return {
            "kind": c.kind,
            "param": str(c.param),
            "pos_ends": [_end(e) for e in c.pos_ends],
            "neg_ends": [_end(e) for e in c.neg_ends],
            "admissibility_rule": c.admissibility_rule,
        }
    if isinstance(c, CobordismCylinder):
        return {
            "kind": c.kind,
            "pos_ends": [_end(c.top)],
            "neg_ends": [_end(c.bottom)],
            "admissibility_rule": c.admissibility_rule,
        }
    if isinstance(c, TrivialCover):
        return {
            "kind": c.kind,
            "orbit": c.orbit,
            "mult": c.mult,
            "param": str(c.param),
            "admissibility_rule": c.admissibility_rule,
        }
    raise MalformedCertificate(f"cannot serialize {type(c).__name__}")


def to_dict(cert: BuildingCertificate) -> dict:
    concl = cert.conclusion
    return {
        "format": FORMAT,
        "conclusion": {
            "degree": concl.degree,
            "param": str(concl.param),
            "t": concl.t,
            "claimed_count": concl.claimed_count,
        },
        "levels": [[_component(c) for c in level] for level in cert.levels],
    }


def dumps(cert: BuildingCertificate) -> str:
    return json.dumps(to_dict(cert), indent=2, ensure_ascii=False) + "\n"


def _int(obj: dict, key: str) -> int:
    value = obj[key]
    if not isinstance(value, int) or isinstance(value, bool):
        raise MalformedCertificate(f"field {key!r} must be an integer, got {value!r}")
    return value


def _param(obj: dict, key: str = "param") -> PerturbedRat:
    value = obj[key]
    if not isinstance(value, str):
        raise MalformedCertificate(f"field {key!r} must be a rational string, got {value!r}")
    return PerturbedRat.parse(value)


def _parse_end(obj: dict) -> End:
    return End(obj["orbit"], _int(obj, "mult"), _param(obj))


def _ends(obj: dict, key: str) -> tuple[End, ...]:
    value = obj[key]
    if not isinstance(value, list):
        raise MalformedCertificate(f"field {key!r} must be a list")
    return tuple(_parse_end(e) for e in value)


def _single(ends: tuple[End, ...], what: str) -> End:
    if len(ends) != 1:
        raise MalformedCertificate(f"cylinder needs exactly one {what} end, got {len(ends)}")
    return ends[0]


def _parse_component(obj: dict):
    kind = obj["kind"]
    rule = obj["admissibility_rule"]
    if kind == TopCurve.kind:
        if obj["pos_ends"]:
            raise MalformedCertificate("top curves have no positive ends")
        sub = obj.get("certificate")
        return TopCurve(
            _int(obj, "degree"),
            _param(obj),
            _ends(obj, "neg_ends"),
            rule,
            obj.get("provenance", ""),
            None if sub is None else from_dict(sub),
        )
    if kind == NeckCurve.kind:
        return NeckCurve(_param(obj), _ends(obj, "pos_ends"), _ends(obj, "neg_ends"), rule)
    if kind == CobordismCylinder.kind:
        top = _single(_ends(obj, "pos_ends"), "positive")
        bottom = _single(_ends(obj, "neg_ends"), "negative")
        return CobordismCylinder(top, bottom, rule)
    if kind == TrivialCover.kind:
        return TrivialCover(obj["orbit"], _int(obj, "mult"), _param(obj), rule)
    raise MalformedCertificate(f"unknown component kind {kind!r}")


def from_dict(obj: Any) -> BuildingCertificate:
    try:
        if obj.get("format") != FORMAT:
            raise MalformedCertificate(f"expected format {FORMAT!r}, got {obj.get('format')!r}")
        c = obj["conclusion"]
        conclusion = Conclusion(_int(c, "degree"), _param(c), _int(c, "t"), _int(c, "claimed_count"))
        levels = tuple(tuple(_parse_component(comp) for comp in level) for level in obj["levels"])
    except MalformedCertificate:
        raise
    except (KeyError, TypeError, AttributeError, ValueError, StabcapError) as exc:
        raise MalformedCertificate(f"bad certificate: {exc!r}") from exc
    if not levels or any(not level for level in levels):
        raise MalformedCertificate("certificate needs at least one level and no empty levels")
    return BuildingCertificate(levels, conclusion)


def loads(text: str) -> BuildingCertificate:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedCertificate(f"not JSON: {exc}") from exc
    return from_dict(obj)
