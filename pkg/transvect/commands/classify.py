import argparse
import dataclasses

from transvect.commands import common_options
from transvect.dependencies.inputs import get_loaded, get_vector
from transvect.schemas.reports import Check, Report
from transvect.services.classify import BasisClassifier
from transvect.services.constants import OrbitKind, V000Method
from transvect.services.moves import recognize
from transvect.services.orbits import d_oracle, v000


def register(subparsers) -> None:
    parser = subparsers.add_parser(
        "classify",
        parents=[common_options()],
        help="closed-form orbit label of a vector",
    )
    parser.add_argument("--vector", required=True, help="L1+L2+..., a bitstring in label order or a vector name")
    parser.set_defaults(handler=run_classify)

    parser = subparsers.add_parser("recognize", parents=[common_options()], help="equivalence class of Gr(B)")
    parser.set_defaults(handler=run_recognize)

    parser = subparsers.add_parser("d", parents=[common_options()], help="the d value of a vector")
    parser.add_argument("--vector", required=True)
    parser.add_argument("--oracle", action="store_true", help="also run the exhaustive Δ-decomposition search")
    parser.set_defaults(handler=run_d)

    parser = subparsers.add_parser("v000", parents=[common_options()], help="basis of V000")
    parser.add_argument("--method", choices=[method.value for method in V000Method], default=V000Method.BRUTE.value)
    parser.set_defaults(handler=run_v000)


def run_classify(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    x = get_vector(loaded, args.vector)
    classifier = BasisClassifier(loaded.generators)
    label = classifier.orbit_label(x)
    return Report(
        command="classify",
        input=args.input,
        result={
            "vector": loaded.render_vector(x),
            "class": str(classifier.label),
            "orbit": str(label),
            "fixed": label.kind == OrbitKind.FIXED,
            "d": label.d if label.kind == OrbitKind.MOVING else None,
            "q": classifier.quadratic(x),
        },
    )


def run_recognize(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    label = recognize(loaded.generators)
    return Report(
        command="recognize",
        input=args.input,
        result={
            "class": str(label),
            "family": label.family.value,
            "parameters": [label.first, label.second],
            "witnesses": dataclasses.asdict(label.witnesses),
        },
    )


def run_d(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    x = get_vector(loaded, args.vector)
    value = BasisClassifier(loaded.generators).d_formula(x)
    result = {"vector": loaded.render_vector(x), "d": value}
    checks = []
    if args.oracle:
        decomposition = d_oracle(loaded.generators, x)
        result["oracle"] = decomposition.d
        result["decomposition"] = [loaded.render_vector(part) for part in decomposition.parts]
        checks.append(
            Check(
                name="formula matches oracle",
                passed=decomposition.d == value,
                detail=f"formula {value}, oracle {decomposition.d}",
            )
        )
    return Report(command="d", input=args.input, result=result, checks=checks)


def run_v000(args: argparse.Namespace) -> Report:
    loaded = get_loaded(args.input)
    B = loaded.generators
    if args.method == V000Method.SUBGRAPHS.value:
        space = BasisClassifier(B).v000_from_subgraphs()
    else:
        space = v000(B)
    return Report(
        command="v000",
        input=args.input,
        result={
            "method": args.method,
            "dim": space.dim,
            "basis": [loaded.render_vector(row) for row in sorted(space.rows)],
        },
    )
