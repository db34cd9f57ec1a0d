import argparse

from transvect.commands import common_options
from transvect.dependencies.inputs import get_loaded, get_vector
from transvect.schemas.reports import Check, Report
from transvect.services.blockforms import first_active_block, predicted_orbit, validate_blocks
from transvect.services.errors import PreconditionFailed
from transvect.services.orbits import orbit


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "blocks",
        parents=[common_options()],
        help="predicted orbit for a chained block form",
    )
    parser.add_argument("--vector", required=True)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    decomposition = loaded.blocks
    if decomposition is None:
        if len(loaded.generators) == 0:
            raise PreconditionFailed("the document declares no generators")
        # without declared blocks the whole generating set is the single block
        decomposition = validate_blocks(loaded.generators, [tuple(range(len(loaded.generators)))])
    x = get_vector(loaded, args.vector)
    position = first_active_block(decomposition, x)
    predicted = predicted_orbit(decomposition, x, check=False)
    actual = orbit(loaded.generators, x)
    block = [loaded.generators.labels[i] for i in decomposition.blocks[position - 1]]
    return Report(
        command="blocks",
        input=args.input,
        result={
            "vector": loaded.render_vector(x),
            "first_active_block": position,
            "block": block,
            "predicted_size": len(predicted),
            "later_span_dim": decomposition.later_span(position).dim,
        },
        checks=[
            Check(
                name="prediction matches brute force",
                passed=predicted == actual,
                detail=f"brute-force orbit has {len(actual)} vectors",
            )
        ],
    )
