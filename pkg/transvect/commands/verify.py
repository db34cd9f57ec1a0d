import argparse

from transvect.commands import common_options
from transvect.config import settings
from transvect.dependencies.inputs import get_loaded
from transvect.schemas.reports import Report
from transvect.services.constants import VerifyLevel
from transvect.services.verification import VerifySuite


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "verify",
        parents=[common_options()],
        help="run every applicable property suite",
    )
    parser.add_argument("--level", choices=[level.value for level in VerifyLevel], default=VerifyLevel.QUICK.value)
    parser.add_argument("--seed", type=int, default=None, help=f"random seed (default {settings.seed})")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    seed = settings.seed if args.seed is None else args.seed
    checks = VerifySuite(loaded, VerifyLevel(args.level), seed)()
    return Report(
        command="verify",
        input=args.input,
        result={
            "level": args.level,
            "seed": seed,
            "checks": len(checks),
            "failed": sum(1 for check in checks if not check.passed),
        },
        checks=checks,
    )
