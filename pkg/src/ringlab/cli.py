"""``ringlab`` command line.

Exit codes: 0 when nothing failed, 1 when a check failed, 2 for usage,
parse and engine errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .decompose import additive_rank, matrix_split, poly_additive_decision, sum_search, weak_split
from .descriptors import Matrix, Triangular
from .dsl import format_ring, parse_element, parse_ring
from .errors import NotPeriodic, RinglabError
from .harness.corpus import CorpusConfig, corpus
from .harness.report import exit_code, render_report
from .harness.suites import parse_suites, run_suite
from .orbit import PERIODIC, ElementClass, classify, orbit_witness
from .properties import profile, profile_rows
from .rings import PolyRing, construct
from .structure import CENSUS_KEYS, census

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _ring(spec: str):
    return construct(parse_ring(spec))


def _yes(v: bool) -> str:
    return "yes" if v else "no"


def cmd_parse(args) -> int:
    print(format_ring(parse_ring(args.spec)))
    return EXIT_OK


def cmd_analyze(args) -> int:
    ring = _ring(args.spec)
    prof = profile(ring)
    rows = profile_rows(prof)
    counts = None
    if ring.finite:
        c = census(ring)
        counts = {"size": c.size, **{k: c.counts[k] for k in CENSUS_KEYS}}
    if args.format == "json":
        doc = {
            "ring": ring.spec,
            "characteristic": ring.characteristic,
            "census": counts,
            "profile": [{"flag": n, "value": v, "evidence": e} for n, v, e in rows],
        }
        print(json.dumps(doc, indent=2))
        return EXIT_OK
    print(f"ring            {ring.spec}")
    print(f"characteristic  {ring.characteristic}")
    if counts:
        print("census          " + ", ".join(f"{k}={v}" for k, v in counts.items()))
    else:
        print("census          infinite ring")
    width = max(len(n) for n, _, _ in rows)
    for name, value, evidence in rows:
        line = f"  {name.ljust(width)}  {_yes(value):<3}"
        print(f"{line}  {evidence}".rstrip())
    return EXIT_OK


def _orbit_line(x) -> str:
    try:
        w = orbit_witness(x)
    except NotPeriodic as exc:
        return f"not periodic: {exc}"
    return f"index {w.index}, period {w.period}  (x^{w.index + w.period} = x^{w.index})"


def cmd_element(args) -> int:
    ring = _ring(args.spec)
    x = parse_element(ring, args.literal)
    wanted = [f for f in ("orbit", "split", "classify") if getattr(args, f)] or ["orbit", "split", "classify"]
    print(f"element   {x}  in {ring.spec}")
    if "orbit" in wanted:
        print(f"orbit     {_orbit_line(x)}")
    if "classify" in wanted:
        try:
            labels = classify(x).labels()
            print(f"classes   {', '.join(labels)}")
        except NotPeriodic:
            print("classes   none (not periodic)")
    if "split" in wanted:
        try:
            print(f"weak      {weak_split(x)}")
        except NotPeriodic:
            print("weak      none (not periodic)")
        if isinstance(ring.descriptor, (Matrix, Triangular)):
            print(f"matrix    {matrix_split(x)}")
    return EXIT_OK


def _classes(text: str) -> list[ElementClass]:
    try:
        return [ElementClass.parse(c.strip()) for c in text.split(",") if c.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def cmd_decompose(args) -> int:
    ring = _ring(args.spec)
    x = parse_element(ring, args.literal)
    if args.classes:
        if isinstance(ring, PolyRing) and all(c == PERIODIC for c in args.classes):
            # periodic elements of Z_n[t] are closed under addition
            dec = poly_additive_decision(x)
            print(dec.certificate if dec.decomposable else f"NONE: {dec.reason}")
        else:
            cert = sum_search(x, args.classes, args.commuting)
            print(cert if cert is not None else "NONE")
    if args.rank:
        if isinstance(ring, PolyRing) and args.rank == PERIODIC:
            dec = poly_additive_decision(x)
            print(f"rank[{args.rank}] = {dec.rank if dec.decomposable else 'NONE'}")
        else:
            r = additive_rank(x, args.rank, args.cap)
            shown = r if r is not None else f"EXCEEDS({args.cap})"
            print(f"rank[{args.rank}] = {shown}")
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = parse_suites(args.suite)
    rings = corpus(CorpusConfig(max_size=args.max_size, path=args.corpus))
    reports = run_suite(rings, suites)
    text = render_report(reports, args.format, durations=not args.no_durations)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_FAIL if exit_code(reports) else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ringlab", description="Periodic elements and additive decompositions in finite rings.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("parse", help="echo a ring spec in canonical form")
    sp.add_argument("spec")
    sp.set_defaults(func=cmd_parse)

    sp = sub.add_parser("analyze", help="census and property profile of a ring")
    sp.add_argument("spec")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser("element", help="orbit, weak split and classes of an element")
    sp.add_argument("spec")
    sp.add_argument("literal")
    sp.add_argument("--orbit", action="store_true")
    sp.add_argument("--split", action="store_true")
    sp.add_argument("--classify", action="store_true")
    sp.set_defaults(func=cmd_element)

    sp = sub.add_parser("decompose", help="class-constrained sums and additive rank")
    sp.add_argument("spec")
    sp.add_argument("literal")
    sp.add_argument("--classes", type=_classes, help="comma-separated classes, e.g. periodic,potent(3)")
    sp.add_argument("--commuting", action="store_true")
    sp.add_argument("--rank", type=ElementClass.parse, metavar="CLASS")
    sp.add_argument("--cap", type=int, default=8, help="largest rank tried (default 8)")
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("verify", help="run theorem suites over a corpus")
    sp.add_argument("--corpus", help="file with one ring spec per line")
    sp.add_argument("--suite", help="comma-separated suite ids (default: all)")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--max-size", type=int)
    sp.add_argument("--no-durations", action="store_true", help="report 0 ms for every check")
    sp.add_argument("--output", help="write the report here instead of stdout")
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "decompose" and not (args.classes or args.rank):
        parser.error("decompose needs --classes or --rank")
    try:
        return args.func(args)
    except (RinglabError, ValueError, OSError) as exc:
        print(f"ringlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
