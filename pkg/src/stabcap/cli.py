"""Command-line front end.

Exit codes: 0 success, 1 an impossibility verdict or failed verification,
2 usage or domain errors.  ``--json`` switches to machine output with exact
rational strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import building, capacity, certfile, ech, index, stabilize
from .errors import DomainError, StabcapError, UnsupportedPartition
from .exactnum import PerturbedRat, format_rat

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class _UsageError(Exception):
    pass


def _perturbed(text: str) -> PerturbedRat:
    try:
        return PerturbedRat.parse(text)
    except DomainError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _rational(text: str) -> Fraction:
    value = _perturbed(text)
    if value.tilt:
        raise argparse.ArgumentTypeError(f"expected an exact rational, got {text!r}")
    return value.base


def _int_list(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"multiplicities must be positive, got {text!r}")
    return values


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _orbit_at(text: str) -> tuple[int, PerturbedRat]:
    mult, sep, param = text.partition("@")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected MULT@PARAM, got {text!r}")
    return _positive(mult), _perturbed(param)


def _approx(value) -> str:
    return f"≈ {float(value):.6g}"


def _emit(args, payload: dict, human: str):
    if args.json:
        print(json.dumps(payload, ensure_ascii=False))
    else:
        print(human)


# --- handlers -------------------------------------------------------------


def cmd_c0(args) -> int:
    if args.target == "staircase":
        steps = args.steps if args.steps is not None else 5
        pieces = capacity.c0_staircase(steps)
        text = capacity.staircase_csv(pieces)
        if args.csv:
            Path(args.csv).write_text(text)
        if args.json:
            rows = [
                {"lo": format_rat(p.lo), "hi": format_rat(p.hi), "kind": p.kind, "parameter": format_rat(p.parameter)}
                for p in pieces
            ]
            print(json.dumps({"pieces": rows}))
        elif args.csv:
            print(f"wrote {len(pieces)} pieces to {args.csv}")
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if args.steps is not None or args.csv:
        raise _UsageError("--steps and --csv only apply to 'c0 staircase'")
    try:
        x = _rational(args.target)
    except argparse.ArgumentTypeError as exc:
        raise _UsageError(str(exc))
    value = capacity.c0(x)
    payload = {"x": format_rat(x), "c0": str(value), "c0_squared": format_rat(value.square())}
    _emit(args, payload, f"c0({format_rat(x)}) = {value} ({_approx(value)})")
    return EXIT_OK


def cmd_ck(args) -> int:
    result = capacity.ck_known(args.x, args.k)
    x = format_rat(args.x)
    if isinstance(result, capacity.Exact):
        payload = {"x": x, "k": args.k, "exact": str(result.value), "sources": list(result.sources)}
        human = f"c_k({x}) = {result.value} ({_approx(result.value)})\n  " + "\n  ".join(result.sources)
    else:
        payload = {
            "x": x,
            "k": args.k,
            "lower": format_rat(result.lower),
            "upper": format_rat(result.upper),
            "sources": list(result.sources),
        }
        human = (
            f"{format_rat(result.lower)} <= c_k({x}) <= {format_rat(result.upper)} "
            f"({_approx(result.lower)} .. {_approx(result.upper)})\n  " + "\n  ".join(result.sources)
        )
    _emit(args, payload, human)
    return EXIT_OK


def cmd_index_curve(args) -> int:
    spec = index.CurveSpec(args.m, args.x, args.short, args.long)
    half = index.half_index_curve(spec)
    payload = {
        "m": args.m,
        "x": str(args.x),
        "short": list(args.short),
        "long": list(args.long),
        "half_index": half,
    }
    human = f"half index = {half}"
    if args.m >= 1:
        threshold = index.action_obstruction(spec)
        payload["action_threshold"] = str(threshold)
        human += f"\naction threshold: mu >= {threshold} ({_approx(threshold)})"
    _emit(args, payload, human)
    return EXIT_OK


def cmd_index_orbit(args) -> int:
    half = index.half_index_orbit_cyl(index.OrbitSpec(args.orbit, args.mult, args.param))
    payload = {"orbit": args.orbit, "mult": args.mult, "param": str(args.param), "half_index": half}
    _emit(args, payload, f"half index = {half}")
    return EXIT_OK


def cmd_ech_grading(args) -> int:
    value = ech.half_grading(args.mult, args.param)
    payload = {"mult": args.mult, "param": str(args.param), "half_grading": value}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_ech_partition(args) -> int:
    fn = ech.ech_partition_neg if args.sign == "neg" else ech.ech_partition_pos
    part = fn(args.k, args.theta)
    payload = {"k": args.k, "theta": str(args.theta), "sign": args.sign, "partition": list(part.parts)}
    _emit(args, payload, str(part))
    return EXIT_OK


def cmd_ech_cylinder(args) -> int:
    (s, y), (t, x) = args.top, args.bottom
    verdict = ech.cylinder_ech_verdict(s, y, t, x, check_top=args.check_top)
    payload = {"top": f"{s}@{y}", "bottom": f"{t}@{x}"}
    if isinstance(verdict, ech.ImpossibleNegIndex):
        payload.update(verdict="ImpossibleNegIndex", ech_half_index=verdict.ech_half_index)
        human = f"ImpossibleNegIndex: ECH half index {verdict.ech_half_index} < 0"
        code = EXIT_NEGATIVE
    elif isinstance(verdict, ech.ImpossiblePartition):
        payload.update(verdict="ImpossiblePartition", end=verdict.end, partition=list(verdict.expected.parts))
        human = f"ImpossiblePartition: {verdict.end} end has ECH partition {verdict.expected}"
        code = EXIT_NEGATIVE
    else:
        payload.update(verdict="NotRuledOut", ech_half_index=verdict.ech_half_index)
        human = f"NotRuledOut (ECH half index {verdict.ech_half_index})"
        code = EXIT_OK
    _emit(args, payload, human)
    return code


def cmd_glue_delta(args) -> int:
    value = ech.delta(args.theta, args.a, args.b)
    payload = {"theta": str(args.theta), "a": args.a, "b": args.b, "delta": value}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_glue_coeff(args) -> int:
    if len(args.parts) != 2:
        raise UnsupportedPartition(f"need exactly two parts, got {len(args.parts)}")
    p1, p2 = args.parts
    value = ech.gluing_coeff_two_parts(p1, p2, args.theta)
    payload = {"parts": [p1, p2], "theta": str(args.theta), "coefficient": value}
    _emit(args, payload, str(value))
    return EXIT_OK


def cmd_stab_check(args) -> int:
    v = stabilize.stab_check(args.m, args.x, args.t)
    decomposition = None if v.decomposition is None else [list(p) for p in v.decomposition.pairs]
    payload = {
        "m": v.m,
        "x": str(v.x),
        "t": v.t,
        "index_ok": v.index_ok,
        "decomposition": decomposition,
        "lower_bound": None if v.lower_bound is None else format_rat(v.lower_bound),
        "caveat": v.caveat,
    }
    lines = [f"index condition: {'holds' if v.index_ok else 'fails'}"]
    if decomposition:
        lines.append("decomposition: " + " + ".join(f"({a},{b})" for a, b in decomposition))
    else:
        lines.append("decomposition: none")
    if v.lower_bound is not None:
        lines.append(f"bound: c_k({v.x}) >= {format_rat(v.lower_bound)} ({_approx(v.lower_bound)}), {v.caveat}")
    else:
        lines.append("no bound")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if v.lower_bound is not None else EXIT_NEGATIVE


def _report_payload(path: str, report: building.Report) -> dict:
    c = report.conclusion
    return {
        "path": path,
        "passed": report.passed,
        "conclusion": {"degree": c.degree, "param": str(c.param), "t": c.t, "claimed_count": c.claimed_count},
        "threshold": None if report.threshold is None else str(report.threshold),
        "computed_count": report.computed_count,
        "checks": [
            {"code": k.code, "name": k.name, "mandatory": k.mandatory, "ok": k.ok, "details": k.details}
            for k in report.checks
        ],
    }


def cmd_cert_build(args) -> int:
    text = certfile.dumps(building.construct_theorem_curve(args.m))
    if args.out:
        Path(args.out).write_text(text)
        if args.json:
            print(json.dumps({"path": args.out, "m": args.m}))
        else:
            print(f"wrote certificate for M({args.m}, {3 * args.m - 1}+, {3 * args.m - 1}) to {args.out}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_cert_verify(args) -> int:
    try:
        text = Path(args.path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {args.path}: {exc.strerror}")
    report = building.verify_certificate(certfile.loads(text))
    if args.json:
        print(json.dumps(_report_payload(args.path, report), ensure_ascii=False))
    else:
        c = report.conclusion
        print(f"certificate for M({c.degree}, {c.param}, {c.t}): {'PASS' if report.passed else 'FAIL'}")
        for k in report.checks:
            mark = "ok" if k.ok else ("FAIL" if k.mandatory else "skip")
            print(f"  [{mark}] {k.label}")
            if not k.ok:
                for d in k.details:
                    print(f"      {d}")
        if report.threshold is not None:
            print(f"action threshold: mu >= {report.threshold} ({_approx(report.threshold)})")
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_cert_count(args) -> int:
    value = building.expected_count(args.m)
    _emit(args, {"m": args.m, "expected_count": value}, str(value))
    return EXIT_OK


# --- parser ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")

    parser = argparse.ArgumentParser(prog="stabcap", description=__doc__.splitlines()[0], parents=[common])
    parser.set_defaults(json=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("c0", parents=[common], help="unstabilized capacity or its staircase")
    p.add_argument("target", help="rational x, or the word 'staircase'")
    p.add_argument("--steps", type=_positive)
    p.add_argument("--csv", metavar="PATH")
    p.set_defaults(func=cmd_c0)

    p = sub.add_parser("ck", parents=[common], help="known values and bounds of c_k")
    p.add_argument("x", type=_rational)
    p.add_argument("--k", type=_positive, default=1)
    p.set_defaults(func=cmd_ck)

    grp = sub.add_parser("index", help="Fredholm indices").add_subparsers(dest="what", required=True)
    p = grp.add_parser("curve", parents=[common])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=_perturbed, required=True)
    p.add_argument("--short", type=_int_list, default=())
    p.add_argument("--long", type=_int_list, default=())
    p.set_defaults(func=cmd_index_curve)
    p = grp.add_parser("orbit", parents=[common])
    p.add_argument("--orbit", choices=index.ORBITS, required=True)
    p.add_argument("--mult", type=_positive, required=True)
    p.add_argument("--param", type=_perturbed, required=True)
    p.set_defaults(func=cmd_index_orbit)

    grp = sub.add_parser("ech", help="ECH gradings, partitions, cylinder rule-outs").add_subparsers(
        dest="what", required=True
    )
    p = grp.add_parser("grading", parents=[common])
    p.add_argument("--mult", type=_positive, required=True)
    p.add_argument("--param", type=_perturbed, required=True)
    p.set_defaults(func=cmd_ech_grading)
    p = grp.add_parser("partition", parents=[common])
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--theta", type=_perturbed, required=True)
    p.add_argument("--sign", choices=("neg", "pos"), required=True)
    p.set_defaults(func=cmd_ech_partition)
    p = grp.add_parser("cylinder", parents=[common])
    p.add_argument("--top", type=_orbit_at, required=True, metavar="S@Y")
    p.add_argument("--bottom", type=_orbit_at, required=True, metavar="T@X")
    p.add_argument("--check-top", action="store_true")
    p.set_defaults(func=cmd_ech_cylinder)

    grp = sub.add_parser("glue", help="gluing coefficients").add_subparsers(dest="what", required=True)
    p = grp.add_parser("delta", parents=[common])
    p.add_argument("--theta", type=_perturbed, required=True)
    p.add_argument("a", type=_positive)
    p.add_argument("b", type=_positive)
    p.set_defaults(func=cmd_glue_delta)
    p = grp.add_parser("coeff", parents=[common])
    p.add_argument("--parts", type=_int_list, required=True)
    p.add_argument("--theta", type=_perturbed, required=True)
    p.set_defaults(func=cmd_glue_coeff)

    grp = sub.add_parser("stab", help="stabilization criterion").add_subparsers(dest="what", required=True)
    p = grp.add_parser("check", parents=[common])
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--x", type=_perturbed, required=True)
    p.add_argument("--t", type=_positive, required=True)
    p.set_defaults(func=cmd_stab_check)

    grp = sub.add_parser("cert", help="building certificates").add_subparsers(dest="what", required=True)
    p = grp.add_parser("build", parents=[common])
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_cert_build)
    p = grp.add_parser("verify", parents=[common])
    p.add_argument("path")
    p.set_defaults(func=cmd_cert_verify)
    p = grp.add_parser("count", parents=[common])
    p.add_argument("--m", type=_positive, required=True)
    p.set_defaults(func=cmd_cert_count)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"stabcap: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except StabcapError as exc:
        print(f"stabcap: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
