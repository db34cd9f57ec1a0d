import argparse

from transvect.commands import common_options
from transvect.dependencies.inputs import get_loaded, get_vector
from transvect.schemas.reports import Report
from transvect.services.errors import UsageError
from transvect.services.orbits import Domain, orbit_partition


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "orbits",
        parents=[common_options()],
        help="brute-force orbit partition",
        description="Partition a domain into Γ_B-orbits by breadth-first closure.",
    )
    parser.add_argument(
        "--domain",
        default="span",
        help="span (span of the generators), all (the ambient space) or coset:VEC",
    )
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    B = loaded.generators
    if args.domain == "span":
        domain = Domain.subspace(B.span)
    elif args.domain == "all":
        domain = Domain.whole(B.n)
    elif args.domain.startswith("coset:"):
        domain = Domain.coset(get_vector(loaded, args.domain.removeprefix("coset:")), B.span)
    else:
        raise UsageError(f"unknown domain {args.domain!r}")
    partition = orbit_partition(B, domain)
    return Report(
        command="orbits",
        input=args.input,
        result={
            "domain": args.domain,
            "size": domain.size,
            "classes": len(partition.classes),
            "fixed": partition.fixed_count,
            "orbits": [
                {"representative": loaded.render_vector(cls.representative), "size": cls.size}
                for cls in partition.classes
            ],
        },
    )
