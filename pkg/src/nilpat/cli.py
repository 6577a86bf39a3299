"""``nilpat`` command line.

Exit codes for ``analyze``: 0 potentially nilpotent, 1 not, 2 unknown;
64 usage error, 65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional

from . import __version__
from .analysis import NOT_PN, PN, Verdict, analyze_rationals, decide_pn
from .charideal import pattern_ideal
from .classify import MAX_PRIME, SUPPORTED_ORDERS, classify
from .coefficients import NonPrimeModulus, QQ, PrimeField
from .groebner import ResourceLimit, colon_principal, contains_one, saturate
from .pattern import PatternError, parse_pattern
from .polyring import LEX
from .search import DEFAULT_SEARCH_BUDGET

EXIT_PN, EXIT_NOT_PN, EXIT_UNKNOWN = 0, 1, 2
EXIT_USAGE, EXIT_DATAERR = 64, 65

REPORT_KEYS = ("pattern", "order", "field", "status", "certificate", "realization", "stages", "version")

REPORT_SCHEMA: Dict[str, Any] = {
    "type": "object",
    "additionalProperties": False,
    "required": list(REPORT_KEYS),
    "properties": {
        "pattern": {"type": "string"},
        "order": {"type": "integer", "minimum": 1},
        "field": {"type": "string"},
        "status": {"enum": ["potentially_nilpotent", "not_potentially_nilpotent", "unknown"]},
        "certificate": {
            "type": "object",
            "additionalProperties": False,
            "required": ["kind", "data"],
            "properties": {"kind": {"type": "string"}, "data": {"type": "object"}},
        },
        "realization": {
            "oneOf": [
                {"type": "null"},
                {"type": "array", "items": {"type": "array", "items": {"type": "integer"}}},
            ]
        },
        "stages": {
            "type": "array",
            "items": {
                "type": "object",
                "additionalProperties": False,
                "required": ["name", "micros"],
                "properties": {"name": {"type": "string"}, "micros": {"type": "integer", "minimum": 0}},
            },
        },
        "version": {"type": "string"},
    },
}


@dataclass
class AnalysisReport:
    pattern: str
    order: int
    field: str
    status: str
    certificate: Dict[str, Any]
    realization: Optional[List[List[int]]]
    stages: List[Dict[str, Any]] = dc_field(default_factory=list)
    version: str = __version__

    @classmethod
    def from_verdict(cls, text: str, order: int, field: str, v: Verdict, timings: bool = True) -> "AnalysisReport":
        cert = v.certificate.to_dict() if v.certificate else {"kind": "inconclusive", "data": {}}
        stages = [{"name": s["name"], "micros": s["micros"] if timings else 0} for s in v.stages]
        return cls(text, order, field, v.status, cert, v.realization, stages)

    def to_dict(self) -> Dict[str, Any]:
        return {k: getattr(self, k) for k in REPORT_KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "AnalysisReport":
        d = json.loads(text)
        return cls(**{k: d[k] for k in REPORT_KEYS})

    def render_text(self) -> str:
        lines = [f"pattern ({self.order}x{self.order}) over {self.field}:"]
        lines += ["  " + row for row in self.pattern.splitlines()]
        lines.append(f"status: {self.status}")
        lines.append(f"certificate: {self.certificate['kind']}")
        for k, v in self.certificate["data"].items():
            if k != "matrix":
                lines.append(f"  {k}: {v}")
        if self.realization is not None:
            lines.append("realization:")
            lines += ["  " + " ".join(f"{x:>3}" for x in row) for row in self.realization]
        for s in self.stages:
            lines.append(f"stage {s['name']}: {s['micros']} us")
        return "\n".join(lines) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


class _BadInput(Exception):
    pass


def _prime(text: str) -> int:
    try:
        return PrimeField(int(text)).p
    except (ValueError, NonPrimeModulus):
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime")


def _prime_list(text: str) -> List[int]:
    return [_prime(t) for t in text.split(",") if t.strip()]


def _field_args(sp):
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--prime", type=_prime, metavar="P")
    g.add_argument("--rationals", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="nilpat", description="Potential nilpotence of zero-nonzero and sign patterns.")
    ap.add_argument("--version", action="version", version=f"nilpat {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="decide one pattern")
    a.add_argument("file")
    _field_args(a)
    a.add_argument("--format", choices=("json", "text"), default="text")
    a.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)
    a.add_argument("--no-timings", action="store_true", help="report every stage time as 0")

    c = sub.add_parser("classify", help="classify all irreducible patterns of an order")
    c.add_argument("--order", type=int, required=True)
    c.add_argument("--primes", type=_prime_list, required=True)
    c.add_argument("--format", choices=("json", "text"), default="text")
    c.add_argument("--out")
    c.add_argument("--budget", type=int, default=DEFAULT_SEARCH_BUDGET)

    for name, text in (("groebner", "reduced lex Groebner basis of the pattern ideal"),
                       ("saturate", "colon and saturation of the pattern ideal by the variable product")):
        g = sub.add_parser(name, help=text)
        g.add_argument("file")
        _field_args(g)
    return ap


def _read_pattern(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise _BadInput(f"cannot read {path}: {exc.strerror}")
    try:
        return parse_pattern(text)
    except PatternError as exc:
        raise _BadInput(f"{path}: {exc}")


def cmd_analyze(args, out) -> int:
    A = _read_pattern(args.file)
    if args.rationals:
        v, field = analyze_rationals(A), "Q"
    else:
        v, field = decide_pn(A, args.prime, budget=args.budget), f"Z_{args.prime}"
    report = AnalysisReport.from_verdict(A.render(), A.n, field, v, timings=not args.no_timings)
    out.write(report.to_json() if args.format == "json" else report.render_text())
    return {PN: EXIT_PN, NOT_PN: EXIT_NOT_PN}.get(v.status, EXIT_UNKNOWN)


def cmd_classify(args, out) -> int:
    if args.order not in SUPPORTED_ORDERS:
        raise _Usage(f"--order must be one of {SUPPORTED_ORDERS}")
    if any(p > MAX_PRIME for p in args.primes):
        raise _Usage(f"primes are capped at {MAX_PRIME}")
    table = classify(args.order, args.primes, budget=args.budget)
    text = table.to_json() if args.format == "json" else table.render_text()
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    out.write(text)
    return 0


def _field(args):
    return QQ if args.rationals else PrimeField(args.prime)


def cmd_groebner(args, out) -> int:
    A = _read_pattern(args.file)
    PI = pattern_ideal(A, _field(args))
    if PI.ideal.is_zero():
        out.write("0\n")
        return 0
    for g in PI.ideal.groebner(LEX):
        out.write(g.render() + "\n")
    return 0


def cmd_saturate(args, out) -> int:
    A = _read_pattern(args.file)
    PI = pattern_ideal(A, _field(args))
    I, m = PI.ideal, PI.variable_product
    for title, J in (("colon", colon_principal(I, m)), ("saturation", saturate(I, m))):
        out.write(f"{title}:\n")
        basis = J.groebner(LEX).basis if not J.is_zero() else ()
        for g in basis or ():
            out.write("  " + g.render() + "\n")
        if not basis:
            out.write("  0\n")
        out.write(f"  contains 1: {str(contains_one(J)).lower()}\n")
    return 0


class _Usage(Exception):
    pass


COMMANDS = {"analyze": cmd_analyze, "classify": cmd_classify, "groebner": cmd_groebner, "saturate": cmd_saturate}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except _BadInput as exc:
        print(f"nilpat: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    except _Usage as exc:
        print(f"nilpat: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimit as exc:
        print(f"nilpat: {exc}", file=sys.stderr)
        return EXIT_UNKNOWN


if __name__ == "__main__":
    sys.exit(main())
