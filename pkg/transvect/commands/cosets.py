import argparse

from transvect.commands import common_options
from transvect.config import settings
from transvect.dependencies.inputs import get_loaded, get_vector
from transvect.schemas.reports import Check, Report
from transvect.services.cosets import CosetProblem, brute_coset_partition, classify_coset


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "coset",
        parents=[common_options()],
        help="orbits on the coset v + span(B)",
    )
    parser.add_argument("--vector", required=True, help="the translate v (must lie outside span(B))")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    problem = CosetProblem(loaded.generators, get_vector(loaded, args.vector))
    report = classify_coset(problem)
    render = loaded.render_vector
    result = {
        "vector": render(problem.v),
        "branch": report.branch.value,
        "classes": len(report.partition.classes),
        "orbits": [{"representative": render(rep), "size": size} for rep, size in report.descriptions],
        "fixed_points": [render(p) for p in sorted(report.fixed_points)],
        "witness": render(report.witness) if report.witness is not None else None,
        "levels": [{"representative": render(rep), "q": q} for rep, q in report.levels],
    }
    checks = []
    if problem.domain.size <= settings.visited_budget:
        brute = brute_coset_partition(problem.basis, problem.v)
        checks.append(
            Check(
                name="matches brute force",
                passed=brute.blocks() == report.partition.blocks(),
                detail=f"{len(brute.classes)} orbits by breadth-first closure",
            )
        )
    return Report(command="coset", input=args.input, result=result, checks=checks)
