"""
Generating sets, the graphs they induce and the subgraph machinery used by
the classification: components, maximal cliques, induced forbidden patterns
and canonical isomorphism keys.
"""

import itertools
import logging
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from functools import cached_property, lru_cache

import networkx as nx

from transvect.config import settings
from transvect.services.constants import ForbiddenKind
from transvect.services.errors import DimensionMismatch, GraphTooLarge, InvalidTransvector
from transvect.services.f2core import BilinearForm, Coordinates, Subspace, bits, parity, span

logger = logging.getLogger(__name__)


# =========================================================================
# Generating sets
# =========================================================================


@dataclass(frozen=True, eq=False)
class GeneratingSet:
    """An ordered, linearly independent set B of transvectors for ``form``."""

    form: BilinearForm
    vectors: tuple[int, ...]
    labels: tuple[str, ...] = ()
    _coordinates: Coordinates = field(init=False, repr=False)

    def __post_init__(self):
        vectors = tuple(self.vectors)
        labels = tuple(self.labels) or tuple(f"b{i + 1}" for i in range(len(vectors)))
        if len(labels) != len(vectors):
            raise DimensionMismatch(f"{len(labels)} labels for {len(vectors)} generators")
        self.form.check(*vectors)
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "_coordinates", Coordinates(vectors))
        for label, b in zip(labels, vectors):
            if parity(self.form.left(b) & b):
                raise InvalidTransvector(f"generator {label} pairs non-trivially with itself")

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vectors)

    def __getitem__(self, index: int) -> int:
        return self.vectors[index]

    @property
    def n(self) -> int:
        return self.form.n

    @cached_property
    def span(self) -> Subspace:
        return span(self.n, self.vectors)

    @cached_property
    def graph(self) -> "Graph":
        return graph_of(self)

    @cached_property
    def right_masks(self) -> tuple[int, ...]:
        """Per generator b, the mask m with Ω(x, b) = parity(x & m)."""
        return tuple(self.form.right(b) for b in self.vectors)

    def coordinates(self, x: int) -> int:
        """Expansion of ``x`` in B as a mask over generator indices."""
        return self._coordinates(x)

    def replace(self, index: int, vector: int) -> "GeneratingSet":
        vectors = list(self.vectors)
        vectors[index] = vector
        return GeneratingSet(self.form, tuple(vectors), self.labels)

    def without(self, index: int) -> "GeneratingSet":
        keep = [i for i in range(len(self)) if i != index]
        return self.subset(keep)

    def subset(self, indices: Iterable[int]) -> "GeneratingSet":
        indices = list(indices)
        return GeneratingSet(
            self.form,
            tuple(self.vectors[i] for i in indices),
            tuple(self.labels[i] for i in indices),
        )

    def extended(self, vector: int, label: str = "w") -> "GeneratingSet":
        return GeneratingSet(self.form, self.vectors + (vector,), self.labels + (label,))


# =========================================================================
# Graphs
# =========================================================================


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1, adjacency held as bitmasks."""

    adjacency: tuple[int, ...]
    tags: tuple[int, ...] = ()

    def __post_init__(self):
        adjacency = tuple(self.adjacency)
        n = len(adjacency)
        for v, row in enumerate(adjacency):
            if row >> v & 1 or row >> n:
                raise ValueError(f"vertex {v} has an invalid adjacency row")
            for u in bits(row):
                if not adjacency[u] >> v & 1:
                    raise ValueError(f"adjacency is not symmetric at ({v}, {u})")
        object.__setattr__(self, "adjacency", adjacency)
        object.__setattr__(self, "tags", tuple(self.tags) or tuple(range(n)))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adjacency = [0] * n
        for u, v in edges:
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        return cls(tuple(adjacency))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "Graph":
        index = {node: i for i, node in enumerate(sorted(graph.nodes))}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in graph.edges))

    @property
    def n(self) -> int:
        return len(self.adjacency)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adjacency[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in bits(self.adjacency[u]) if u < v]

    def induced(self, vertices: Iterable[int]) -> "Graph":
        vertices = sorted(set(vertices))
        position = {v: i for i, v in enumerate(vertices)}
        adjacency = tuple(
            sum(1 << position[u] for u in bits(self.adjacency[v]) if u in position) for v in vertices
        )
        return Graph(adjacency, tuple(self.tags[v] for v in vertices))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.edges())
        return graph


def broom_edges(m: int, k: int) -> list[tuple[int, int]]:
    """D_{m,k} on indices a1..am = 0..m-1 and c1..ck = m..m+k-1."""
    chain = [(i, i + 1) for i in range(m - 1)]
    return chain + [(m - 1, m + j) for j in range(k)]


def graph_of(B: GeneratingSet) -> Graph:
    """Gr(B): i ~ j iff Ω(b_i, b_j) = 1 or Ω(b_j, b_i) = 1."""
    lefts = [B.form.left(b) for b in B]
    adjacency = [0] * len(B)
    for i, left in enumerate(lefts):
        for j, b in enumerate(B):
            if i != j and parity(left & b):
                adjacency[i] |= 1 << j
                adjacency[j] |= 1 << i
    return Graph(tuple(adjacency))


def support_subgraph(B: GeneratingSet, x: int) -> Graph:
    """Gr(B, x): the subgraph of Gr(B) induced on the support of x; tags index into B."""
    return B.graph.induced(bits(B.coordinates(x)))


def connected_components(G: Graph) -> list[tuple[int, ...]]:
    components = (tuple(sorted(c)) for c in nx.connected_components(G.to_networkx()))
    return sorted(components)


def is_connected(G: Graph) -> bool:
    return len(connected_components(G)) == 1


def maximal_cliques(G: Graph) -> list[tuple[int, ...]]:
    if G.n > settings.clique_bound:
        raise GraphTooLarge(f"{G.n} vertices exceed the clique bound {settings.clique_bound}")
    return sorted(tuple(sorted(clique)) for clique in nx.find_cliques(G.to_networkx()))


# =========================================================================
# Forbidden patterns
# =========================================================================


def _extend_cycle(
    adjacency: tuple[int, ...],
    path: list[int],
    forbidden: int,
    found: list[tuple[int, ...]],
) -> None:
    start, last = path[0], path[-1]
    for w in bits(adjacency[last] & ~forbidden):
        if adjacency[w] >> start & 1:
            # w closes the cycle; each cycle is kept in one orientation only
            if len(path) >= 3 and path[1] < w:
                found.append(tuple(sorted(path + [w])))
            continue
        _extend_cycle(adjacency, path + [w], forbidden | adjacency[last] | 1 << w, found)


def induced_cycles(G: Graph, min_length: int = 4) -> list[tuple[int, ...]]:
    """Chordless cycles of length >= min_length, rooted at their least vertex."""
    found: list[tuple[int, ...]] = []
    for start in range(G.n):
        lower = (1 << (start + 1)) - 1
        for first in bits(G.adjacency[start] & ~lower):
            _extend_cycle(G.adjacency, [start, first], lower | 1 << first, found)
    return sorted(cycle for cycle in found if len(cycle) >= min_length)


def _four_vertex_kind(G: Graph, quad: tuple[int, ...]) -> ForbiddenKind | None:
    sub = G.induced(quad)
    degrees = sorted(sub.degree(v) for v in range(4))
    if degrees == [1, 1, 1, 3]:
        return ForbiddenKind.D22
    if degrees == [2, 2, 3, 3]:
        return ForbiddenKind.DIAMOND
    return None


def find_forbidden(G: Graph) -> list[tuple[ForbiddenKind, tuple[int, ...]]]:
    """Induced D_{2,2} stars, induced diamonds and induced cycles of length >= 4."""
    found = [(ForbiddenKind.CYCLE, cycle) for cycle in induced_cycles(G)]
    for quad in itertools.combinations(range(G.n), 4):
        if kind := _four_vertex_kind(G, quad):
            found.append((kind, quad))
    return sorted(found, key=lambda item: (item[1], item[0].value))


# =========================================================================
# Canonical forms
# =========================================================================


@dataclass(frozen=True, order=True)
class CanonicalGraph:
    """Isomorphism-class key: the least upper-triangle code over all relabelings."""

    n: int
    code: int

    @property
    def key(self) -> str:
        return f"{self.n}:{self.code:x}"

    @classmethod
    def from_key(cls, key: str) -> "CanonicalGraph":
        n, code = key.split(":")
        return cls(int(n), int(code, 16))

    def to_graph(self) -> Graph:
        pairs = [(i, j) for i in range(self.n) for j in range(i + 1, self.n)]
        total = len(pairs)
        edges = [pair_ for t, pair_ in enumerate(pairs) if self.code >> (total - 1 - t) & 1]
        return Graph.from_edges(self.n, edges)


def _refine(adjacency: tuple[int, ...]) -> list[int]:
    """Colour refinement; colours are ranks of isomorphism-invariant signatures."""
    colours = [0] * len(adjacency)
    while True:
        signatures = [
            (colours[v], tuple(sorted(colours[u] for u in bits(row)))) for v, row in enumerate(adjacency)
        ]
        ranking = {signature: rank for rank, signature in enumerate(sorted(set(signatures)))}
        refined = [ranking[signature] for signature in signatures]
        if len(ranking) == len(set(colours)):
            return refined
        colours = refined


def _encode(adjacency: tuple[int, ...], order: tuple[int, ...]) -> int:
    code = 0
    for i, u in enumerate(order):
        row = adjacency[u]
        for v in order[i + 1:]:
            code = code << 1 | (row >> v & 1)
    return code


@lru_cache(maxsize=1 << 16)
def _canonical_code(adjacency: tuple[int, ...]) -> int:
    colours = _refine(adjacency)
    cells = [[v for v in range(len(adjacency)) if colours[v] == c] for c in sorted(set(colours))]
    best = None
    for parts in itertools.product(*(itertools.permutations(cell) for cell in cells)):
        code = _encode(adjacency, tuple(itertools.chain.from_iterable(parts)))
        if best is None or code < best:
            best = code
    return best if best is not None else 0


def canonical(G: Graph) -> CanonicalGraph:
    return CanonicalGraph(G.n, _canonical_code(G.adjacency))
