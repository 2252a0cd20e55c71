"""Command-line driver.

Every command writes line-delimited records (JSON by default, CSV with
``--format csv``).  Exit codes: 0 success or consistent, 1 checked and
absent, 2 usage or constraint error, 3 a theorem check found a counterexample.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from typing import Iterable, TextIO

from .errors import ConstraintError
from .families import Family, FamilyParams, corollary_base, enumerate_family, generate_family
from .repdigit import RepdigitSpec, render_base
from .search import (
    CONSISTENT,
    DEFAULT_B_MAX,
    DEFAULT_K_MAX,
    THEOREMS,
    SearchRange,
    TheoremReport,
    search,
    verify_theorem,
)
from .triples import TriangleType, TriangleWitness, check

EXIT_OK = 0
EXIT_ABSENT = 1
EXIT_USAGE = 2
EXIT_VIOLATION = 3

THREADS_ENV = "REPDIGIT_THREADS"

FIELDS = (
    "record", "type", "k", "b", "d",
    "leg_a", "leg_b", "hypotenuse",
    "leg_a_base", "leg_b_base", "hypotenuse_base",
    "delta", "m", "n",
    "source", "family", "family_params", "theorem", "statement", "verdict",
    "bases", "digits", "k_max", "b_max", "types", "prefilters", "threads",
    "specs_tested", "prefilter_rejections", "full_checks", "hits",
    "elapsed_s", "message",
)


class RecordWriter:
    def __init__(self, stream: TextIO, fmt: str = "jsonl"):
        self.stream = stream
        self.fmt = fmt
        self._csv = None

    def emit(self, record: dict) -> None:
        unknown = set(record) - set(FIELDS)
        if unknown:
            raise KeyError(f"unknown record fields {sorted(unknown)}")
        ordered = {k: record[k] for k in FIELDS if record.get(k) is not None}
        if self.fmt == "csv":
            if self._csv is None:
                self._csv = csv.DictWriter(self.stream, fieldnames=FIELDS, lineterminator="\n")
                self._csv.writeheader()
            self._csv.writerow(ordered)
        else:
            self.stream.write(json.dumps(ordered, ensure_ascii=False) + "\n")


def witness_record(w: TriangleWitness, record: str = "hit", **extra) -> dict:
    b = w.spec.b
    rec = {
        "record": record,
        "type": w.type_tag.value,
        "k": w.spec.k,
        "b": b,
        "d": w.spec.d,
        "leg_a": str(w.leg_a),
        "leg_b": str(w.leg_b),
        "hypotenuse": str(w.hypotenuse),
        "leg_a_base": render_base(w.leg_a, b),
        "leg_b_base": render_base(w.leg_b, b),
        "hypotenuse_base": render_base(w.hypotenuse, b),
    }
    if w.params is not None:
        rec.update(delta=str(w.params.delta), m=str(w.params.m), n=str(w.params.n))
    rec.update(extra)
    return rec


def family_record(params: FamilyParams, w: TriangleWitness, source: str = "family") -> dict:
    return witness_record(w, "family_instance", source=source, family=params.family.value,
                          family_params=params.describe())


def _range_fields(rng: SearchRange) -> dict:
    return rng.describe()


def parse_bases(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise ConstraintError(f"malformed base range {text!r} (expected A..B)") from None


def parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ConstraintError(f"malformed {what} list {text!r}") from None


def parse_types(text: str) -> tuple[TriangleType, ...]:
    return tuple(TriangleType.parse(x) for x in text.split(",") if x.strip())


def default_threads() -> int:
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise ConstraintError(f"{THREADS_ENV} must be an integer (got {env!r})") from None
        if value < 1:
            raise ConstraintError(f"{THREADS_ENV} must be >= 1 (got {value})")
        return value
    return os.cpu_count() or 1


# ---------------------------------------------------------------------------
# commands

def cmd_check(args: argparse.Namespace, out: RecordWriter) -> int:
    spec = RepdigitSpec(args.k, args.b, args.d)
    kind = TriangleType.parse(args.type)
    witness = check(spec, kind)
    if witness is None:
        out.emit({"record": "verdict", "type": kind.value, "k": spec.k, "b": spec.b,
                  "d": spec.d, "source": "check", "verdict": "NO_WITNESS"})
        return EXIT_ABSENT
    out.emit(witness_record(witness, source="check"))
    return EXIT_OK


def _emit_theorem(result: TheoremReport, out: RecordWriter, threads: int) -> None:
    rng = result.report.range
    for w in result.report.hits:
        out.emit(witness_record(w, source=f"theorem {result.theorem.id}",
                                theorem=result.theorem.id, **_range_fields(rng)))
    report = result.report
    out.emit({
        "record": "verdict",
        "source": "verify-theorem",
        "theorem": result.theorem.id,
        "statement": result.theorem.statement,
        "verdict": result.verdict,
        "k_max": result.k_max,
        "b_max": result.b_max,
        **_range_fields(rng),
        "prefilters": report.prefilters,
        "threads": threads,
        "specs_tested": report.specs_tested,
        "prefilter_rejections": report.prefilter_rejections,
        "full_checks": report.full_checks,
        "hits": len(report.hits),
        "elapsed_s": round(report.elapsed, 6),
    })


def cmd_verify_theorem(args: argparse.Namespace, out: RecordWriter) -> int:
    if args.id not in THEOREMS:
        raise ConstraintError(f"theorem id must be one of 1..5 (got {args.id})")
    threads = args.threads or default_threads()
    result = verify_theorem(args.id, k_max=args.k_max, b_max=args.b_max,
                            use_prefilters=not args.no_prefilters, workers=threads)
    _emit_theorem(result, out, threads)
    return EXIT_OK if result.verdict == CONSISTENT else EXIT_VIOLATION


def cmd_search(args: argparse.Namespace, out: RecordWriter) -> int:
    digits = parse_int_list(args.digits, "digit") if args.digits else None
    rng = SearchRange(parse_bases(args.bases), args.k_max, digits, parse_types(args.types))
    threads = args.threads or default_threads()
    report = search(rng, use_prefilters=not args.no_prefilters, workers=threads)
    for w in report.hits:
        out.emit(witness_record(w, source="search", **_range_fields(rng)))
    out.emit({
        "record": "summary",
        "source": "search",
        **_range_fields(rng),
        "prefilters": report.prefilters,
        "threads": threads,
        "specs_tested": report.specs_tested,
        "prefilter_rejections": report.prefilter_rejections,
        "full_checks": report.full_checks,
        "hits": len(report.hits),
        "elapsed_s": round(report.elapsed, 6),
    })
    return EXIT_OK


def cmd_family(args: argparse.Namespace, out: RecordWriter) -> int:
    family = Family.parse(args.name)
    given = {name: getattr(args, name) for name in ("l", "q", "r", "t")
             if getattr(args, name) is not None}
    if args.grid is not None:
        if given:
            raise ConstraintError("--grid cannot be combined with explicit family parameters")
        if args.grid < 1:
            raise ConstraintError(f"--grid must be >= 1 (got {args.grid})")
        for params, _spec, witness in enumerate_family(family, args.grid):
            out.emit(family_record(params, witness))
        return EXIT_OK
    params = FamilyParams.of(family, **given)
    _spec, witness = generate_family(params)
    out.emit(family_record(params, witness))
    return EXIT_OK


def cmd_corollary(args: argparse.Namespace, out: RecordWriter) -> int:
    _b, params = corollary_base(args.d, TriangleType.parse(args.type))
    _spec, witness = generate_family(params)
    out.emit(family_record(params, witness, source="corollary"))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reptri",
        description="Pythagorean triangles with a digit-power side and a base-b repdigit side.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("jsonl", "csv"), default="jsonl")
    threaded = argparse.ArgumentParser(add_help=False)
    threaded.add_argument("--threads", type=int, default=None,
                          help=f"worker processes (default: ${THREADS_ENV} or CPU count)")
    threaded.add_argument("--no-prefilters", action="store_true",
                          help="skip the congruence prefilters (results are identical)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="test a single (k, b, d)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", required=True, help="t1 or t2")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("verify-theorem", parents=[common, threaded],
                       help="run one of the five bounded non-existence checks")
    p.add_argument("--id", type=int, required=True)
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--b-max", type=int, default=DEFAULT_B_MAX)
    p.set_defaults(func=cmd_verify_theorem)

    p = sub.add_parser("search", parents=[common, threaded], help="exhaustive bounded search")
    p.add_argument("--bases", required=True, help="inclusive range A..B")
    p.add_argument("--digits", default=None, help="comma-separated digits (default: all)")
    p.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    p.add_argument("--types", default="t1,t2")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", parents=[common], help="generate family instances")
    p.add_argument("--name", required=True, type=str.upper, choices=[f.value for f in Family])
    for name in ("l", "q", "r", "t"):
        p.add_argument(f"--{name}", type=int, default=None)
    p.add_argument("--grid", type=int, default=None,
                   help="enumerate every instance with parameters <= N")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("corollary", parents=[common], help="base b for a given digit")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--type", required=True, help="t1 or t2")
    p.set_defaults(func=cmd_corollary)
    return parser


def main(argv: Iterable[str] | None = None, stdout: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(None if argv is None else list(argv))
    out = RecordWriter(stdout, args.format)
    try:
        return args.func(args, out)
    except ConstraintError as exc:
        out.emit({"record": "error", "source": args.command, "message": str(exc)})
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())
