"""Command-line entry point: ``bettiwitness analyze | verify | inspect | macaulay``.

Exit codes: 0 success, 1 unparseable input, 2 inadmissible h-vector,
3 construction retries exhausted, 4 a constraint check failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .algebra import DEFAULT_PRIME, MAX_PRIME, is_prime
from .construction import (
    AdmissibilityError,
    ConstraintCheckFailed,
    ConstructionError,
    WitnessConfig,
    analyze,
    build_witness_pair,
)
from .lifting import PointSet
from .monomial_ideal import NotOSequence as IdealNotOSequence
from .oseq import OSequence, binomial_expansion, macaulay_bound
from .scheme_engine import point_betti, point_hilbert_function, wlp_check

EXIT_OK, EXIT_PARSE, EXIT_ADMISSIBILITY, EXIT_RETRY, EXIT_CONSTRAINT = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for admissibility here
    def error(self, message):
        raise UsageError(message)


def parse_int_list(text: str) -> list[int]:
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise UsageError(f"not a comma-separated integer list: {text!r}") from exc
    if not values or any(v < 0 for v in values):
        raise UsageError(f"h-vector entries must be non-negative integers: {text!r}")
    return values


def parse_hvector(text: str) -> OSequence:
    """A trailing 0 marks a finite h-vector; otherwise the last entry repeats."""
    return OSequence.constant_tail(parse_int_list(text))


def parse_ci(text: str) -> tuple[int, int]:
    values = parse_int_list(text)
    if len(values) != 2:
        raise UsageError("--ci expects two integers A,B")
    return values[0], values[1]


def _prime(value: str) -> int:
    try:
        p = int(value)
    except ValueError as exc:
        raise UsageError(f"--prime must be an integer, got {value!r}") from exc
    if not (2 < p < MAX_PRIME and is_prime(p)):
        raise UsageError(f"--prime must be an odd prime below {MAX_PRIME}")
    return p


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def _hvector_arg(args, finite: bool = False) -> OSequence:
    text = args.hvector or args.hvector_pos
    if not text:
        raise UsageError("an h-vector is required (--hvector 1,3,6,...)")
    if finite:
        # a set of points: the trailing 0 is optional
        return OSequence(tuple(parse_int_list(text)))
    return parse_hvector(text)


# --- subcommands -----------------------------------------------------------


def cmd_analyze(args, out) -> int:
    delta = _hvector_arg(args)
    ci = parse_ci(args.ci) if args.ci else None
    inv, table = analyze(delta, ci)
    print(f"d = {inv.d}, t = {inv.t}, s = {inv.s}, complete intersection type {inv.ci_type}", file=out)
    if inv.tail:
        print(f"tail after the plateau: {inv.tail}", file=out)
    print(table.render(), file=out)
    print(f"e-row {table.e_row} is an O-sequence; truncated row e' = {table.e_prime}", file=out)
    return EXIT_OK


def _write_points(directory: str, pair) -> None:
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    (target / "z.json").write_text(json.dumps(pair.z.to_json()) + "\n")
    (target / "zprime.json").write_text(json.dumps(pair.zprime.to_json()) + "\n")


def _verify_summary(pair, out) -> None:
    inv = pair.invariants
    s = inv.s
    print(f"target Hilbert function {pair.target}; |Z| = {len(pair.z)}, |Z'| = {len(pair.zprime)}", file=out)
    print(f"d = {inv.d}, t = {inv.t}, s = {inv.s}, tail {inv.tail or '()'}", file=out)
    print("Betti diagram of Z (ACM line union side):", file=out)
    print(pair.betti_z.render(), file=out)
    print("Betti diagram of Z' (liaison side):", file=out)
    print(pair.betti_zprime.render(), file=out)
    print(
        f"degree {s + 2}: generators {pair.betti_z[(1, s + 2)]} vs {pair.betti_zprime[(1, s + 2)]}, "
        f"last syzygies {pair.betti_z[(3, s + 2)]} vs {pair.betti_zprime[(3, s + 2)]}",
        file=out,
    )
    print(f"WLP: Z {'holds' if pair.wlp_z.holds else 'fails at ' + str(pair.wlp_z.failures)}; "
          f"Z' {'holds' if pair.wlp_zprime.holds else 'fails at ' + str(pair.wlp_zprime.failures)}", file=out)
    print(f"verdict: {pair.incomparability.verdict}", file=out)
    failed = pair.failed_checks()
    print(f"checks: {len(pair.checks) - len(failed)}/{len(pair.checks)} passed" + (f"; failed: {', '.join(failed)}" if failed else ""), file=out)


def cmd_verify(args, out) -> int:
    delta = _hvector_arg(args, finite=True)
    config = WitnessConfig(prime=_prime(args.prime), seed=args.seed, strict=False)
    start = time.perf_counter()
    pair = build_witness_pair(delta, config)
    elapsed = time.perf_counter() - start
    cert = pair.to_json()
    if args.timings:
        cert["timings"] = {"total_seconds": round(elapsed, 3)}
    if args.json:
        Path(args.json).write_text(dump_json(cert))
    if args.points_out:
        _write_points(args.points_out, pair)
    _verify_summary(pair, out)
    print(f"elapsed {elapsed:.2f}s", file=sys.stderr)
    ok = not pair.failed_checks() and pair.incomparability.strongly_incomparable
    return EXIT_OK if ok else EXIT_CONSTRAINT


def cmd_inspect(args, out) -> int:
    p = _prime(args.prime)
    try:
        data = json.loads(Path(args.points).read_text())
        points = PointSet.from_json(data, p)
    except (OSError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read points from {args.points}: {exc}") from exc
    h = point_hilbert_function(points, p)
    betti = point_betti(points, p=p)
    wlp = wlp_check(points, args.seed, p=p)
    report = {
        "schema": "bettiwitness.inspect/1",
        "prime": p,
        "npoints": len(points),
        "hilbert_function": h.to_json(),
        "betti": betti.to_json(),
        "betti_text": betti.render(),
        "betti_identity": betti.satisfies_hilbert_identity(h, 4),
        "wlp": wlp.to_json(),
    }
    if args.json:
        Path(args.json).write_text(dump_json(report))
    print(f"{len(points)} points, Hilbert function {h}", file=out)
    print(betti.render(), file=out)
    print(f"WLP {'holds' if wlp.holds else 'fails at ' + str(wlp.failures)}", file=out)
    return EXIT_OK


def cmd_macaulay(args, out) -> int:
    if args.value < 0 or args.degree < 1:
        raise UsageError("--value must be >= 0 and --degree >= 1")
    if args.action == "expand":
        text = str(binomial_expansion(args.value, args.degree)) if args.value else "0"
    else:
        text = str(macaulay_bound(args.value, args.degree))
    print(text, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bettiwitness", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_hvector(p):
        p.add_argument("hvector_pos", nargs="?", metavar="HVECTOR", help="same as --hvector")
        p.add_argument("--hvector", help="comma-separated first difference of the Hilbert function")

    a = sub.add_parser("analyze", help="invariants and difference table of an h-vector")
    add_hvector(a)
    a.add_argument("--ci", help="complete intersection type A,B instead of (2, s)")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="build and certify a witness pair")
    add_hvector(v)
    v.add_argument("--prime", default=str(DEFAULT_PRIME))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH", help="write the certificate here")
    v.add_argument("--points-out", metavar="DIR", help="write z.json and zprime.json here")
    v.add_argument("--timings", action="store_true", help="record wall-clock time in the certificate (breaks byte-identical replay)")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("inspect", help="Hilbert function, Betti diagram and WLP of a point file")
    i.add_argument("--points", required=True, metavar="FILE", help="JSON array of integer 4-tuples")
    i.add_argument("--prime", default=str(DEFAULT_PRIME))
    i.add_argument("--seed", type=int, default=0)
    i.add_argument("--json", metavar="PATH")
    i.set_defaults(func=cmd_inspect)

    m = sub.add_parser("macaulay", help="binomial expansions and Macaulay bounds")
    m.add_argument("action", choices=["expand", "bound"])
    m.add_argument("--value", type=int, required=True)
    m.add_argument("--degree", type=int, required=True)
    m.set_defaults(func=cmd_macaulay)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (AdmissibilityError, IdealNotOSequence) as exc:
        print(f"inadmissible: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ADMISSIBILITY
    except ConstructionError as exc:
        print(f"construction failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RETRY
    except ConstraintCheckFailed as exc:
        print(f"constraint failure: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT


if __name__ == "__main__":
    sys.exit(main())
