# Command-line entry point (surface-text)
# cli/main.py
#
# Exit codes: 0 success, 2 invalid input, 3 degenerate geometry,
# 4 I/O failure. Diagnostics go to stderr, JSON results to stdout.

import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from surface_text_engine.cli.commands import align, augment, mae, rate_stats, synth
from surface_text_engine.core.errors import DEGENERATE_GEOMETRY, INVALID_INPUT, IO_FAILURE, SurfaceTextError
from surface_text_engine.core.settings import load_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CODES = {
    INVALID_INPUT: 2,
    DEGENERATE_GEOMETRY: 3,
    IO_FAILURE: 4,
}

COMMANDS = (synth, align, mae, augment, rate_stats)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=argparse.SUPPRESS,
                        help="Log progress to stderr (-vv for debug detail)")
    common.add_argument("--config", default=argparse.SUPPRESS,
                        help="Settings YAML (default: $SURFACE_TEXT_CONFIG or packaged defaults)")

    parser = argparse.ArgumentParser(
        prog="surface-text",
        description="Align character masks with surface normals, export conditioning files, "
                    "measure normal consistency and augment image/normal pairs.",
        parents=[common],
    )
    parser.set_defaults(verbose=0, config=None)
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        command.register(subparsers, [common])
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)

    try:
        settings = load_settings(args.config)
        return args.handler(args, settings)
    except SurfaceTextError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_CODES.get(e.category, EXIT_CODES[INVALID_INPUT])
    except ValidationError as e:
        print(f"error: invalid value: {e.errors()[0].get('msg', e)}", file=sys.stderr)
        return EXIT_CODES[INVALID_INPUT]


if __name__ == "__main__":
    sys.exit(main())
