import random

import pytest
from hypothesis import strategies as st

from transvect.services import fixtures
from transvect.services.documents import LoadedForm, build
from transvect.services.f2core import bits
from transvect.services.formsgraphs import Graph
from transvect.services.moves import basis_for_graph
from transvect.storage import storage


@pytest.fixture(autouse=True, scope="module")
def reset_storage():
    storage.reset()
    yield
    storage.reset()


@pytest.fixture
def load():
    def _load(name: str) -> LoadedForm:
        return build(fixtures.resolve(name))

    return _load


@pytest.fixture
def rng():
    return random.Random(1234)


def graph_basis(n: int, edges):
    return basis_for_graph(Graph.from_edges(n, edges))


@st.composite
def graphs(draw, min_vertices: int = 1, max_vertices: int = 7) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, keep in zip(pairs, chosen) if keep])


@st.composite
def connected_graphs(draw, min_vertices: int = 2, max_vertices: int = 7) -> Graph:
    """A random spanning tree plus random extra edges."""
    n = draw(st.integers(min_vertices, max_vertices))
    edges = {(draw(st.integers(0, v - 1)), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=n)) if pairs else []
    return Graph.from_edges(n, sorted(edges | set(extra)))


@st.composite
def trees(draw, min_vertices: int = 2, max_vertices: int = 10) -> Graph:
    n = draw(st.integers(min_vertices, max_vertices))
    return Graph.from_edges(n, [(draw(st.integers(0, v - 1)), v) for v in range(1, n)])


# =========================================================================
# Seeded random instances for the acceptance sweeps
# =========================================================================


def random_connected_edges(rng: random.Random, n: int, extra: int = 0) -> list[tuple[int, int]]:
    edges = {(rng.randrange(v), v) for v in range(1, n)}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges |= {rng.choice(pairs) for _ in range(extra)} if pairs else set()
    return sorted(edges)


def random_block_document(rng: random.Random, max_vertices: int = 10) -> str:
    """
    Chained alternating blocks, every arc from block i into block i + 1,
    plus up to two ambient vectors outside the generators.
    """
    sizes = []
    while sum(sizes) < 3 or (rng.random() < 0.6 and sum(sizes) + 3 <= max_vertices - 2):
        sizes.append(rng.randint(1, 3))
    labels, blocks, lines = [], [], []
    for position, size in enumerate(sizes, start=1):
        block = [f"b{position}_{i}" for i in range(1, size + 1)]
        for u, v in random_connected_edges(rng, size, rng.randint(0, 2)):
            lines.append(f"edge {block[u]} {block[v]}")
        if blocks:
            lines.extend(f"arc {a} {b}" for a in blocks[-1] for b in block)
        labels += block
        blocks.append(block)
    extras = [f"v{i}" for i in range(1, rng.randint(0, 2) + 1)]
    for extra in extras:
        for label in labels:
            if rng.random() < 0.4:
                lines.append(f"arc {extra} {label}")
    header = [
        f"dim {len(labels) + len(extras)}",
        "labels " + " ".join(labels + extras),
        "gens " + " ".join(labels),
        "blocks " + "".join("(" + " ".join(block) + ")" for block in blocks),
    ]
    return "\n".join(header + lines) + "\n"


def random_coset_basis(rng: random.Random, max_vertices: int = 8):
    """Generators on a connected proper subset of a random connected graph."""
    n = rng.randint(3, max_vertices)
    G = Graph.from_edges(n, random_connected_edges(rng, n, rng.randint(0, n)))
    chosen = [rng.randrange(n)]
    target = rng.randint(2, n - 1)
    while len(chosen) < target:
        frontier = sorted({u for v in chosen for u in bits(G.adjacency[v])} - set(chosen))
        chosen.append(rng.choice(frontier))
    return basis_for_graph(G).subset(sorted(chosen))


E6_EDGES = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]


def random_e6_coset_basis(rng: random.Random, max_extra: int = 3):
    """The E6 tree as generators, with one to ``max_extra`` ambient vectors hung off it."""
    n = 6 + rng.randint(1, max_extra)
    edges = list(E6_EDGES)
    for v in range(6, n):
        neighbours = [u for u in range(v) if rng.random() < 0.35] or [rng.randrange(v)]
        edges += [(u, v) for u in neighbours]
    return basis_for_graph(Graph.from_edges(n, edges)).subset(range(6))
