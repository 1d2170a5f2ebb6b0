"""``superforms`` command: run the theorem suites or replay a counterexample."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .errors import ConfigurationError
from .suites import GRIDS, SUITES, SuiteConfig, parse_dims, parse_suites, replay, run_suites, selected

SEED_ENV = "SUPERFORMS_SEED"


def _seed(value: Optional[str]) -> int:
    if value is None:
        value = os.environ.get(SEED_ENV, "0")
    try:
        seed = int(value, 0)
    except ValueError:
        raise ConfigurationError(f"seed must be an integer, got {value!r}") from None
    if not 0 <= seed < 2**64:
        raise ConfigurationError("seed must fit in 64 unsigned bits")
    return seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="superforms", description="Exact checks of identities for forms on supermanifolds.")
    sub = parser.add_subparsers(dest="command")

    run = sub.add_parser("run", help="run theorem suites (default command)")
    run.add_argument("--dims", default="1|1,2|1,2|2", help='comma-separated "n|m" list')
    run.add_argument("--max-deg", type=int, default=2, help="largest p, q, r, s in the signature grid")
    run.add_argument("--trials", type=int, default=10, help="random trials per (property, signature)")
    run.add_argument("--seed", default=None, help=f"64-bit seed (fallback: ${SEED_ENV}, then 0)")
    run.add_argument("--suite", default="all", help=f"comma-separated subset of {', '.join(SUITES)}")
    run.add_argument("--format", choices=("text", "json"), default="text")
    run.add_argument("--out", default=None, help="write the report here instead of stdout")
    run.add_argument("--grid", choices=GRIDS, default="desk", help="mixed signature grid")
    run.add_argument("--pool", type=int, default=4, help="odd generators available to random data")
    run.add_argument("--pde-equations", type=int, default=8, help="symmetry equations per check (0 = all)")
    run.add_argument("--flip-e-cov-sign", action="store_true", help="debug: flip the sign of e(alpha)")
    run.add_argument("--drop-e-vec-third-term", action="store_true", help="debug: drop the third term of e(u)")
    run.add_argument("--progress", action="store_true", help="print one line per finished property to stderr")

    rep = sub.add_parser("replay", help="re-run the first counterexample of a JSON report")
    rep.add_argument("report", help="JSON report file, or - for stdin")
    rep.add_argument("--property", default=None, help="suite/property to replay (default: first failure)")
    return parser


def _config(args: argparse.Namespace) -> SuiteConfig:
    return SuiteConfig(
        dims=parse_dims(args.dims),
        max_deg=args.max_deg,
        trials=args.trials,
        seed=_seed(args.seed),
        suites=selected(_check_suites(parse_suites(args.suite))),
        pde_equations=args.pde_equations,
        grid=args.grid,
        pool=args.pool,
        flip_e_cov_sign=args.flip_e_cov_sign,
        drop_e_vec_third_term=args.drop_e_vec_third_term,
    )


def _check_suites(names: tuple[str, ...]) -> tuple[str, ...]:
    unknown = [n for n in names if n not in SUITES]
    if unknown or not names:
        raise ConfigurationError(f"unknown suite(s): {', '.join(unknown) or '(none given)'}")
    return names


def _print_progress(r) -> None:
    print(f"{r.status} {r.suite}/{r.property} ({r.trials} trials, {r.wall_time:.1f}s)", file=sys.stderr, flush=True)


def _run(args: argparse.Namespace) -> int:
    config = _config(args)
    report = run_suites(config, _print_progress if args.progress else None)
    if args.format == "json":
        text = json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n"
    else:
        text = report.to_text() + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if report.passed else 1


def _replay(args: argparse.Namespace) -> int:
    if args.report == "-":
        doc = json.load(sys.stdin)
    else:
        with open(args.report, encoding="utf-8") as fh:
            doc = json.load(fh)
    failures = [r for r in doc.get("results", []) if r.get("counterexample")]
    if args.property:
        failures = [r for r in failures if f"{r['suite']}/{r['property']}" == args.property]
    if not failures:
        print("no counterexample to replay")
        return 2
    ce = failures[0]["counterexample"]
    still_fails, same = replay(ce)
    name = f"{ce['suite']}/{ce['property']}"
    print(f"{name} {ce['dims']} {ce['signature_str']} trial {ce['trial']}: "
          f"{'fails again' if still_fails else 'passes now'}, instance {'identical' if same else 'differs'}")
    return 1 if still_fails else 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in ("run", "replay", "-h", "--help"):
        argv.insert(0, "run")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "replay":
            return _replay(args)
        return _run(args)
    except ConfigurationError as exc:
        parser.exit(2, f"superforms: error: {exc}\n")
    return 2


if __name__ == "__main__":
    sys.exit(main())
