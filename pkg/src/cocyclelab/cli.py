"""Command-line driver: ``verify <suite> [--config PATH] [--out PATH]
[--json]``.

``verify list`` prints the available suites, ``verify all`` runs every
suite (optionally concurrently with ``--parallel``).  The process exits 0
exactly when every executed check passed.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import ConfigParse, UnknownSuite
from .suites import list_suites, parse_config, run_suite


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Run quantitative verification suites and emit "
                    "machine-readable reports.")
    parser.add_argument("suite",
                        help="suite name, or 'list' / 'all'")
    parser.add_argument("--config", type=Path, default=None,
                        help="flat KEY=VALUE configuration file")
    parser.add_argument("--set", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override a single configuration key")
    parser.add_argument("--out", type=Path, default=None,
                        help="write the JSON report to this path")
    parser.add_argument("--json", action="store_true",
                        help="print the JSON report to stdout")
    parser.add_argument("--parallel", action="store_true",
                        help="run suites concurrently (only with 'all')")
    return parser


def _load_config(args) -> dict:
    cfg = {}
    if args.config is not None:
        cfg.update(parse_config(args.config.read_text()))
    if args.set:
        cfg.update(parse_config("\n".join(args.set)))
    return cfg


def _print_human(report):
    print(f"suite {report.suite}: "
          f"{'PASS' if report.passed else 'FAIL'}")
    for c in report.checks:
        status = "ok  " if c.passed else "FAIL"
        print(f"  [{status}] {c.id}: expected {c.expected:.9g}, "
              f"computed {c.computed:.9g}, tol {c.tol:.3g} "
              f"({c.ms:.0f} ms)")


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = _load_config(args)
    except ConfigParse as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if args.suite == "list":
        for name, describes in list_suites():
            print(f"{name:22s} {describes}")
        return 0

    names = [name for name, _ in list_suites()] if args.suite == "all" \
        else [args.suite]

    try:
        if args.suite == "all" and args.parallel:
            with ThreadPoolExecutor(max_workers=4) as pool:
                reports = list(pool.map(
                    lambda n: run_suite(n, cfg), names))
        else:
            reports = [run_suite(n, cfg) for n in names]
    except UnknownSuite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    for report in reports:
        _print_human(report)

    payload = reports[0].as_dict() if len(reports) == 1 else {
        "suites": [r.as_dict() for r in reports],
        "pass": all(r.passed for r in reports),
    }
    text = json.dumps(payload, indent=2)
    if args.out is not None:
        args.out.write_text(text + "\n")
    if args.json:
        print(text)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    raise SystemExit(main())
