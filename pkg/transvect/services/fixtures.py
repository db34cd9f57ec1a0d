"""
Built-in form documents.

Normal-form families are generated from their parameters; the two worked
examples are stored as literal documents.
"""

from transvect.schemas.documents import FormDocument
from transvect.services.documents import parse
from transvect.services.errors import FixtureError
from transvect.services.formsgraphs import broom_edges

FIG_EX = """\
title fig-ex
dim 10
labels b1 b2 b3 b4 b5 b6 v1 v2 v3 v4
gens b1 b2 b3 b4 b5 b6
edge v1 b1
edge b1 b5
edge v3 b3
edge v2 b2
edge b2 b6
edge v4 b4
edge b1 b3
edge b1 v3
edge b2 b4
edge b2 b3
edge b2 v4
edge b2 v3
edge b3 b5
edge b3 b6
edge b4 b6
"""

FIG_EXX = """\
title fig-exx
dim 9
labels b1 b2 b3 b4 b5 b6 v1 v2 v3
gens b1 b2 b3 b4 b5 b6
edge v1 b1
edge b1 b4
edge v2 b2
edge b2 b5
edge v3 b3
edge b3 b6
edge b1 v2
edge b1 b2
edge b2 b4
edge b4 b5
# the second block only receives arcs from the first
arc v3 b2
arc b3 b2
arc b3 b5
arc b6 b5
blocks (b3 b6)(b1 b2 b4 b5)
"""

CATALOGUE = (
    "e6",
    "dmk:M,K",
    "janssen-a:N,P",
    "janssen-b:N,P",
    "janssen-c:N,P",
    "cycle:R",
    "fig-ex",
    "fig-exx",
)


def _document(title: str, labels: list[str], edges: list[tuple[int, int]]) -> FormDocument:
    return FormDocument(
        title=title,
        dim=len(labels),
        labels=labels,
        gens=labels,
        edges=[(labels[u], labels[v]) for u, v in edges],
    )


def _names(prefix: str, count: int) -> list[str]:
    return [f"{prefix}{i}" for i in range(1, count + 1)]


def e6() -> FormDocument:
    return _document("e6", _names("x", 6), [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])


def broom(m: int, k: int) -> FormDocument:
    """D_{m,k}: chain a1..am with c1..ck hanging off am."""
    if m < 2 or k < 1:
        raise FixtureError("dmk needs M >= 2 and K >= 1")
    return _document(f"dmk:{m},{k}", _names("a", m) + _names("c", k), broom_edges(m, k))


def janssen_a(n: int, p: int) -> FormDocument:
    """Chain a2..a_{2n-1}, c1 with a1 on a4 and every c_j on a_{2n-1}."""
    if n < 3 or p < 0:
        raise FixtureError("janssen-a needs N >= 3 and P >= 0")
    count = 2 * n - 1
    labels = _names("a", count) + _names("c", p + 1)
    end = count - 1
    edges = [(i, i + 1) for i in range(1, end)] + [(0, 3)]
    edges += [(end, count + j) for j in range(p + 1)]
    return _document(f"janssen-a:{n},{p}", labels, edges)


def janssen_b(n: int, p: int) -> FormDocument:
    """Chain a3..a_{2n-1}, c1 with the branch a6 - a2 - a1 and every c_j on a_{2n-1}."""
    if n < 4 or p < 0:
        raise FixtureError("janssen-b needs N >= 4 and P >= 0")
    count = 2 * n - 1
    labels = _names("a", count) + _names("c", p + 1)
    end = count - 1
    edges = [(i, i + 1) for i in range(2, end)] + [(5, 1), (1, 0)]
    edges += [(end, count + j) for j in range(p + 1)]
    return _document(f"janssen-b:{n},{p}", labels, edges)


def janssen_c(n: int, p: int) -> FormDocument:
    """Chain a2..a_{2n}, c1 with a1 on a5 and c1..cp on a_{2n}."""
    if n < 3 or p < 1:
        raise FixtureError("janssen-c needs N >= 3 and P >= 1")
    count = 2 * n
    labels = _names("a", count) + _names("c", p)
    end = count - 1
    edges = [(i, i + 1) for i in range(1, end)] + [(0, 4)]
    edges += [(end, count + j) for j in range(p)]
    return _document(f"janssen-c:{n},{p}", labels, edges)


def cycle(r: int) -> FormDocument:
    if r < 3:
        raise FixtureError("cycle needs R >= 3")
    return _document(f"cycle:{r}", _names("x", r), [(i, (i + 1) % r) for i in range(r)])


def _parameters(name: str, text: str, count: int) -> list[int]:
    parts = text.split(",")
    if len(parts) != count or not all(part.strip().isdigit() for part in parts):
        raise FixtureError(f"{name} expects {count} comma separated non-negative integers, got {text!r}")
    return [int(part) for part in parts]


def resolve(name: str) -> FormDocument:
    family, _, parameters = name.partition(":")
    if family == "e6" and not parameters:
        return e6()
    if family == "fig-ex" and not parameters:
        return parse(FIG_EX)
    if family == "fig-exx" and not parameters:
        return parse(FIG_EXX)
    if family == "dmk":
        return broom(*_parameters(family, parameters, 2))
    if family == "janssen-a":
        return janssen_a(*_parameters(family, parameters, 2))
    if family == "janssen-b":
        return janssen_b(*_parameters(family, parameters, 2))
    if family == "janssen-c":
        return janssen_c(*_parameters(family, parameters, 2))
    if family == "cycle":
        return cycle(*_parameters(family, parameters, 1))
    raise FixtureError(f"unknown fixture {name!r}; known: {', '.join(CATALOGUE)}")


def names() -> list[str]:
    return list(CATALOGUE)
