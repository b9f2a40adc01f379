"""``frevival`` command line: analyze, scan, chartable, spectrum, verify."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path

from . import SCHEMA
from .catalog import EXHAUSTIVE_BLOCKS, FAMILIES, RANDOM_SAMPLES, CatalogEntry, build_catalog, scan
from .characters import CharacterTableError, ConfigurationError
from .groups import GroupSpec, GroupSpecError, SizeCapError
from .oracle import ACCEPT_TOL
from .report import (
    InputError,
    analyze,
    chartable_document,
    dumps,
    scan_document,
    spectrum_document,
    verify_document,
)
from .revival import PreconditionError

MAX_SCAN_ORDER = 512


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from exc


def _connection_arg(value: str | None):
    """--connection takes inline JSON or a path to a JSON file."""
    if value is None:
        return None
    stripped = value.lstrip()
    if stripped.startswith(("{", "[")):
        try:
            return json.loads(value)
        except json.JSONDecodeError as exc:
            raise InputError(f"--connection: malformed JSON ({exc.msg})") from exc
    return _read_json(value)


def _parse_time(text: str) -> float:
    """Accept plain floats and expressions such as 2pi/3 or pi/2."""
    s = text.replace(" ", "").lower()
    if "pi" not in s:
        return float(s)
    num, _, den = s.partition("/")
    coef = num.replace("*", "").replace("pi", "")
    coef = 1.0 if coef in ("", "+") else -1.0 if coef == "-" else float(coef)
    return coef * math.pi / (float(den) if den else 1.0)


def _emit(doc: dict, args) -> None:
    text = dumps(doc)
    if args.json_out:
        Path(args.json_out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    times = [_parse_time(t) for t in args.times]
    doc, code = analyze(_read_json(args.problem), _connection_arg(args.connection), times, args.tolerance, args.timings)
    _emit(doc, args)
    if args.json_out:
        n = len(doc["witnesses"])
        print(f"{n} witness{'es' if n != 1 else ''} ({doc['reason']}); report written to {args.json_out}", file=sys.stderr)
    return code


def cmd_scan(args) -> int:
    if args.max_order > MAX_SCAN_ORDER:
        raise InputError(f"--max-order must be at most {MAX_SCAN_ORDER}")
    families = tuple(args.families.split(",")) if args.families else FAMILIES
    unknown = set(families) - set(FAMILIES)
    if unknown:
        raise InputError(f"unknown families: {', '.join(sorted(unknown))}")
    extra = []
    for path in args.extra:
        spec = _read_json(path)
        extra.append(CatalogEntry(Path(path).stem, "user", spec.get("group", spec)))
    entries = build_catalog(args.max_order, families, extra=extra)
    start = time.perf_counter()
    results = scan(entries, args.seed, args.exhaustive_blocks, args.samples, args.jobs, args.tolerance)
    params = {
        "max_order": args.max_order,
        "families": list(families),
        "seed": args.seed,
        "exhaustive_blocks": args.exhaustive_blocks,
        "samples": args.samples,
        "tolerance": args.tolerance,
    }
    doc = scan_document(results, params)
    if args.timings:
        doc["timings"] = {"total": round(time.perf_counter() - start, 3)}
    _emit(doc, args)
    if args.summary or args.json_out:
        _print_summary(doc, sys.stderr if not args.json_out else sys.stdout)
    return 0 if doc["passed"] else 1


def _print_summary(doc: dict, stream) -> None:
    print(f"{'group':<22}{'|G|':>5}{'cls':>5}{'sets':>7}{'FR':>6}{'PST':>6}{'none':>7}  mode", file=stream)
    for g in doc["groups"]:
        c = g["counts"]
        mode = "all" if g["exhaustive"] else "sampled"
        print(f"{g['name']:<22}{g['order']:>5}{g['classes']:>5}{c['graphs']:>7}{c['fr']:>6}{c['pst']:>6}{c['none']:>7}  {mode}", file=stream)
    t = doc["totals"]
    status = "clean" if doc["passed"] else f"{len(doc['violations'])} violations"
    print(f"total: {t['graphs']} graphs, {t['fr']} FR, {t['pst']} PST, {t['none']} none; {status}", file=stream)


def cmd_chartable(args) -> int:
    _emit(chartable_document(_read_json(args.group), args.method), args)
    return 0


def cmd_spectrum(args) -> int:
    _emit(spectrum_document(_read_json(args.problem), _connection_arg(args.connection)), args)
    return 0


def cmd_verify(args) -> int:
    doc, code = verify_document(_read_json(args.witness), args.tolerance)
    _emit(doc, args)
    return code


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="frevival", description="Fractional revival on quasi-abelian Cayley graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s ({SCHEMA})")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tolerance=True):
        sp.add_argument("--json-out", metavar="PATH", help="write the JSON report here instead of stdout")
        if tolerance:
            sp.add_argument("--tolerance", type=float, default=ACCEPT_TOL, help="oracle accept tolerance (default 1e-8)")

    a = sub.add_parser("analyze", help="decide revival for one Cayley graph")
    a.add_argument("problem", help="problem JSON (group + connection_set) or a bare group spec")
    a.add_argument("--connection", help="connection set as inline JSON or a file path")
    a.add_argument("--times", nargs="*", default=[], metavar="T", help="extra times to probe, e.g. 1.3 or 2pi/3")
    a.add_argument("--timings", action="store_true", help="include wall-clock timings (breaks byte-identity)")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="sweep the group catalog and check every invariant")
    s.add_argument("--max-order", type=int, default=16)
    s.add_argument("--families", help=f"comma list from {','.join(FAMILIES)}")
    s.add_argument("--seed", type=int, default=7)
    s.add_argument("--samples", type=int, default=RANDOM_SAMPLES, help="random sets per group when not exhaustive")
    s.add_argument("--exhaustive-blocks", type=int, default=EXHAUSTIVE_BLOCKS,
                   help="enumerate all sets when a group has at most this many inverse-closed class blocks")
    s.add_argument("--extra", nargs="*", default=[], metavar="PATH", help="additional group spec files")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--summary", action="store_true", help="print a table to stderr as well")
    s.add_argument("--timings", action="store_true")
    common(s)
    s.set_defaults(func=cmd_scan)

    c = sub.add_parser("chartable", help="character table of a group")
    c.add_argument("group", help="group spec JSON (or a problem file)")
    c.add_argument("--method", choices=("auto", "generic", "closed"), default="auto")
    common(c, tolerance=False)
    c.set_defaults(func=cmd_chartable)

    sp = sub.add_parser("spectrum", help="eigenvalues of a Cayley graph by character")
    sp.add_argument("problem")
    sp.add_argument("--connection")
    common(sp, tolerance=False)
    sp.set_defaults(func=cmd_spectrum)

    v = sub.add_parser("verify", help="re-check stored witnesses against the transition-matrix oracle")
    v.add_argument("witness", help="an analyze report or a witness file")
    common(v)
    v.set_defaults(func=cmd_verify)
    return p


INPUT_ERRORS = (InputError, GroupSpecError, SizeCapError, PreconditionError, ConfigurationError, CharacterTableError)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"frevival {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
