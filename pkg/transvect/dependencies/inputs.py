"""
Resolvers for command arguments: ``--input`` (file path or fixture name)
and VEC arguments.
"""

from pathlib import Path

from transvect.services import fixtures
from transvect.services.documents import LoadedForm, build, load
from transvect.services.errors import DocumentError, VectorSyntaxError


def get_loaded(source: str) -> LoadedForm:
    """A readable file is parsed as a document; anything else names a fixture."""
    path = Path(source)
    if path.is_file():
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise DocumentError(f"cannot read {source}: {exc}") from exc
        return load(text)
    return build(fixtures.resolve(source))


def get_vector(loaded: LoadedForm, text: str | None) -> int:
    if not text:
        raise VectorSyntaxError("a vector argument is required")
    return loaded.vector(text)
