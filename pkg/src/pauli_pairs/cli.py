"""Command-line driver:  pauli-pairs <subcommand> --config <path> [--out DIR] [--seed N] [--threads N].

Exit codes: 0 all verdicts hold or the scan completed, 1 usage or config
error, 2 a theorem-backed verdict failed.
"""
from __future__ import annotations

import argparse
import logging
import sys
import time
from pathlib import Path

from .config import COMMAND_CONFIGS, ConfigError, load_config
from .experiments import RUNNERS
from .report import write_csv, write_report

EXIT_OK, EXIT_USAGE, EXIT_VIOLATION = 0, 1, 2
log = logging.getLogger("pauli_pairs")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pauli-pairs", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMAND_CONFIGS:
        p = sub.add_parser(name)
        p.add_argument("--config", type=Path, default=None, help="key = value config file")
        p.add_argument("--out", type=Path, default=Path("out") / name, help="output directory")
        p.add_argument("--seed", type=int, default=None, help="overrides the config seed")
        p.add_argument("--threads", type=int, default=1, help="worker threads for scans")
        p.add_argument("--timings", action="store_true", help="add runtime_ms columns to CSV tables")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.threads < 1:
            raise ConfigError("--threads must be >= 1")
        cfg = load_config(args.command, args.config, {"seed": args.seed})
        args.out.mkdir(parents=True, exist_ok=True)
    except (ConfigError, OSError) as exc:
        print(f"pauli-pairs: {exc}", file=sys.stderr)
        return EXIT_USAGE
    t0 = time.perf_counter()
    result = RUNNERS[args.command](cfg, threads=args.threads, timings=args.timings)
    tables = []
    for name, rows in result.tables.items():
        write_csv(rows, args.out / f"{name}.csv")
        tables.append(f"{name}.csv")
    code = EXIT_VIOLATION if result.failed else EXIT_OK
    write_report(args.out / "report.json", args.command, cfg, result.summary, tables, code,
                 time.perf_counter() - t0)
    log.info("wrote %s", ", ".join(tables + ["report.json"]))
    if result.failed:
        print(f"pauli-pairs {args.command}: a theorem-backed verdict failed; see {args.out / 'report.json'}",
              file=sys.stderr)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
