"""
Text grammar for form documents.

Line oriented, ``#`` starts a comment:

    dim N
    labels L1 L2 ...
    gens L1 ...
    edge A B            Ω(A, B) = Ω(B, A) = 1
    arc A B             Ω(A, B) = 1 only
    blocks (L ..)(L ..)
    vector NAME L1+L2+...
    title free text

``build`` turns a validated document into the form, the generating set on
the declared generators and, when blocks are declared, a validated block
decomposition.
"""

import logging
import re
from dataclasses import dataclass

from pydantic import ValidationError

from transvect.schemas.documents import FormDocument
from transvect.services.blockforms import BlockDecomposition, validate_blocks
from transvect.services.errors import DocumentError, VectorSyntaxError
from transvect.services.f2core import BilinearForm, bits, from_bitstring
from transvect.services.formsgraphs import GeneratingSet

logger = logging.getLogger(__name__)

BLOCK_PATTERN = re.compile(r"\(([^()]*)\)")


# =========================================================================
# Parsing and rendering
# =========================================================================


def parse(text: str) -> FormDocument:
    fields: dict = {"edges": [], "arcs": [], "vectors": {}}
    lines: dict[str, int] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        words = rest.split()
        if keyword in ("dim", "labels", "gens", "blocks", "title") and keyword in lines:
            raise DocumentError(f"{keyword} declared again (first on line {lines[keyword]})", number)
        lines.setdefault(keyword, number)

        if keyword == "dim":
            if len(words) != 1 or not words[0].isdigit():
                raise DocumentError("dim takes one non-negative integer", number)
            fields["dim"] = int(words[0])
        elif keyword in ("labels", "gens"):
            fields[keyword] = words
        elif keyword in ("edge", "arc"):
            if len(words) != 2:
                raise DocumentError(f"{keyword} takes exactly two labels", number)
            if words[0] == words[1]:
                raise DocumentError(f"{keyword} {words[0]} {words[1]} pairs a label with itself", number)
            fields[keyword + "s"].append((words[0], words[1]))
        elif keyword == "blocks":
            blocks = [group.split() for group in BLOCK_PATTERN.findall(rest)]
            if BLOCK_PATTERN.sub("", rest).strip() or not blocks:
                raise DocumentError("blocks expects groups like (b1 b2)(b3)", number)
            fields["blocks"] = blocks
        elif keyword == "vector":
            if len(words) != 2:
                raise DocumentError("vector takes a name and a label sum", number)
            name, terms = words
            if name in fields["vectors"]:
                raise DocumentError(f"vector {name} declared twice", number)
            fields["vectors"][name] = [] if terms == "0" else terms.split("+")
        elif keyword == "title":
            fields["title"] = rest.strip()
        else:
            raise DocumentError(f"unknown directive {keyword!r}", number)

    for required in ("dim", "labels", "gens"):
        if required not in fields:
            raise DocumentError(f"missing {required} declaration")
    _check_labels(fields, text)
    try:
        return FormDocument(**fields)
    except ValidationError as exc:
        message = exc.errors()[0]["msg"].removeprefix("Value error, ")
        raise DocumentError(message) from exc


def _check_labels(fields: dict, text: str) -> None:
    """Report unknown labels in entries with the line they appear on."""
    known = set(fields["labels"])
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        keyword, _, rest = line.partition(" ")
        if keyword in ("gens", "edge", "arc"):
            names = rest.split()
        elif keyword == "blocks":
            names = [label for group in BLOCK_PATTERN.findall(rest) for label in group.split()]
        elif keyword == "vector" and len(rest.split()) == 2:
            terms = rest.split()[1]
            names = [] if terms == "0" else terms.split("+")
        else:
            continue
        if unknown := [name for name in names if name not in known]:
            raise DocumentError(f"unknown label {unknown[0]!r}", number)


def render(document: FormDocument) -> str:
    lines = []
    if document.title:
        lines.append(f"title {document.title}")
    lines.append(f"dim {document.dim}")
    lines.append("labels " + " ".join(document.labels))
    lines.append("gens " + " ".join(document.gens))
    lines.extend(f"edge {a} {b}" for a, b in document.edges)
    lines.extend(f"arc {a} {b}" for a, b in document.arcs)
    if document.blocks is not None:
        lines.append("blocks " + "".join("(" + " ".join(block) + ")" for block in document.blocks))
    for name, terms in document.vectors.items():
        lines.append(f"vector {name} {'+'.join(terms) or '0'}")
    return "\n".join(lines) + "\n"


# =========================================================================
# Building
# =========================================================================


@dataclass(frozen=True)
class LoadedForm:
    document: FormDocument
    form: BilinearForm
    generators: GeneratingSet
    blocks: BlockDecomposition | None
    vectors: dict[str, int]

    @property
    def labels(self) -> list[str]:
        return self.document.labels

    def vector(self, text: str) -> int:
        return parse_vector(self.labels, self.vectors, text)

    def render_vector(self, x: int) -> str:
        return render_vector(self.labels, x)


def build(document: FormDocument) -> LoadedForm:
    index = {label: i for i, label in enumerate(document.labels)}
    form = BilinearForm.from_pairs(
        document.dim,
        edges=[(index[a], index[b]) for a, b in document.edges],
        arcs=[(index[a], index[b]) for a, b in document.arcs],
    )
    generators = GeneratingSet(form, tuple(1 << index[g] for g in document.gens), tuple(document.gens))
    blocks = None
    if document.blocks is not None:
        position = {g: i for i, g in enumerate(document.gens)}
        blocks = validate_blocks(generators, [[position[g] for g in block] for block in document.blocks])
    vectors = {}
    for name, terms in document.vectors.items():
        vectors[name] = 0
        for term in terms:
            vectors[name] ^= 1 << index[term]
    logger.debug("built %s: dim %d, %d generators", document.title or "document", document.dim, len(generators))
    return LoadedForm(document, form, generators, blocks, vectors)


def load(text: str) -> LoadedForm:
    return build(parse(text))


# =========================================================================
# Vectors
# =========================================================================


def parse_vector(labels: list[str], named: dict[str, int], text: str) -> int:
    """``0``, a declared vector name, a bitstring in label order, or ``L1+L2+...``."""
    text = text.strip()
    if text == "0":
        return 0
    if text in named:
        return named[text]
    index = {label: i for i, label in enumerate(labels)}
    if len(text) == len(labels) and set(text) <= {"0", "1"} and text not in index:
        return from_bitstring(text)
    x = 0
    for term in text.split("+"):
        if term not in index:
            raise VectorSyntaxError(f"{term!r} is neither a label nor a declared vector in {text!r}")
        x ^= 1 << index[term]
    return x


def render_vector(labels: list[str], x: int) -> str:
    return "+".join(labels[i] for i in bits(x)) or "0"
