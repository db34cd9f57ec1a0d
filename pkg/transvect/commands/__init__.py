import argparse


def common_options(needs_input: bool = True) -> argparse.ArgumentParser:
    """Options shared by every command: output format, verbosity and usually --input."""
    parser = argparse.ArgumentParser(add_help=False)
    if needs_input:
        parser.add_argument("--input", required=True, help="document path or fixture name (see `fixtures`)")
    parser.add_argument("--json", action="store_true", help="emit the structured report")
    parser.add_argument("--verbose", action="store_true", help="log at DEBUG level")
    return parser
