"""
Transvection orbit toolkit

Command-line entry point.
"""

import argparse
import logging
import sys

from transvect import __version__
from transvect.commands import blocks, classify, cosets, fixtures, orbits, verify
from transvect.config import settings
from transvect.services.errors import TransvectError

logger = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transvect",
        description="Orbits of groups generated by transvections over GF(2).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    orbits.register(subparsers)
    classify.register(subparsers)
    cosets.register(subparsers)
    blocks.register(subparsers)
    verify.register(subparsers)
    fixtures.register(subparsers)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    logger.debug("running %s", args.command)

    try:
        outcome = args.handler(args)
    except TransvectError as exc:
        logger.debug("%s failed: %r", args.command, exc)
        print(f"error: {exc.detail}", file=sys.stderr)
        return exc.status

    if isinstance(outcome, str):
        print(outcome, end="" if outcome.endswith("\n") else "\n")
        return 0
    print(outcome.to_json() if args.json else outcome.to_text())
    return 0 if outcome.ok else 1
