"""Command-line entry point.

Exit codes: 0 success, 2 configuration error, 3 numerical failure, 4 I/O error.
"""
from __future__ import annotations

import argparse
import logging
import sys

from .config import _floats, _grid, parse_config
from .errors import NumericalError, ParseError, ValidationError
from .experiments import STAGES, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _typed(conv):
    def parse(text):
        try:
            return conv(text)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None

    return parse


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="fermitangle",
        description="Entanglement dynamics of two fermions at lowest order: figure data as CSV.",
    )
    ap.add_argument("command", choices=STAGES + ("all",))
    ap.add_argument("--config", help="key = value configuration file")
    ap.add_argument("--pa0-over-m", type=float, dest="pa0_over_m")
    ap.add_argument("--sigma-over-pa0", type=float, dest="sigma_over_pa0")
    ap.add_argument("--times", type=_typed(_floats), help="comma-separated t~ values")
    ap.add_argument("--basis-size", type=int, dest="basis_size")
    ap.add_argument("--quad-order", type=int, dest="quad_order")
    ap.add_argument("--channel", choices=("t", "u", "parallel"))
    ap.add_argument("--grid", type=_typed(_grid), help="min,max,count; write --grid=-4,4,101 when min is negative")
    ap.add_argument("--out", dest="output_dir", help="output directory")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    overrides = {
        key: getattr(args, key)
        for key in (
            "pa0_over_m",
            "sigma_over_pa0",
            "times",
            "basis_size",
            "quad_order",
            "channel",
            "grid",
            "output_dir",
        )
    }
    try:
        cfg = parse_config(args.config, overrides)
    except (ParseError, ValidationError) as exc:
        print(f"fermitangle: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fermitangle: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    try:
        session = run(cfg, args.command)
    except NumericalError as exc:
        print(f"fermitangle: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"fermitangle: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    print(f"wrote {len(session.files)} files to {session.out}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
