import argparse

from transvect.commands import common_options
from transvect.schemas.reports import Report
from transvect.services import fixtures
from transvect.services.documents import render


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "fixtures",
        parents=[common_options(needs_input=False)],
        help="list or print built-in documents",
    )
    parser.add_argument("name", nargs="?", help="e.g. e6, dmk:3,2, janssen-c:3,1, cycle:5, fig-ex")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Report | str:
    if args.name is None:
        return Report(command="fixtures", result={"names": fixtures.names()})
    text = render(fixtures.resolve(args.name))
    if not args.json:
        return text
    return Report(command="fixtures", input=args.name, result={"document": text})
