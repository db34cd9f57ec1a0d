"""
Basic moves φ_{c,a}, move-equivalence classes of small graphs, E₆ detection
and recognition of the equivalence class of a connected generating set.
"""

import heapq
import itertools
import logging
import random
from collections import deque
from dataclasses import dataclass, field

from transvect.config import settings
from transvect.services.constants import ClassFamily
from transvect.services.errors import (
    ArfUndefined,
    BudgetExceeded,
    DimensionTooSmall,
    GraphTooLarge,
    NotAdjacent,
    NotAlternating,
    NotConnected,
    Unclassifiable,
)
from transvect.services.f2core import BilinearForm, QuadraticForm, arf, bits, parity
from transvect.services.formsgraphs import (
    CanonicalGraph,
    GeneratingSet,
    Graph,
    canonical,
    find_forbidden,
    is_connected,
)
from transvect.services.orbits import v0, v000
from transvect.storage import storage

logger = logging.getLogger(__name__)

E6_EDGES = ((0, 1), (1, 2), (2, 3), (3, 4), (2, 5))


# =========================================================================
# Class labels
# =========================================================================


@dataclass(frozen=True)
class Witnesses:
    dim: int
    dim_v0: int
    dim_v000: int
    q_nontrivial_on_v0: bool
    arf: int | None


@dataclass(frozen=True)
class ClassLabel:
    """Normal-form family with its two parameters: (m, k) for brooms, (n, p) for the trees."""

    family: ClassFamily
    first: int
    second: int
    witnesses: Witnesses = field(compare=False)

    def __str__(self) -> str:
        if self.family == ClassFamily.A1:
            return "A1"
        name = {
            ClassFamily.D_TYPE: "D",
            ClassFamily.TREE_A: "TreeA",
            ClassFamily.TREE_B: "TreeB",
            ClassFamily.TREE_C: "TreeC",
        }[self.family]
        return f"{name}({self.first},{self.second})"

    @property
    def is_dtype(self) -> bool:
        """Brooms, and the single edge which the d formula treats as the broom (1,1)."""
        return self.family in (ClassFamily.A1, ClassFamily.D_TYPE)


# =========================================================================
# Moves
# =========================================================================


def basic_move(B: GeneratingSet, c: int, a: int) -> GeneratingSet:
    """φ_{c,a}: replace generator ``c`` by τ_a(c) = c + a."""
    if c == a or not parity(B.form.left(B[c]) & B[a]):
        raise NotAdjacent(f"{B.labels[c]} is not moved by the transvection of {B.labels[a]}")
    return B.replace(c, B[c] ^ B[a])


def graph_move(G: Graph, c: int, a: int) -> Graph:
    """The basic move seen on Gr(B) alone, for alternating forms."""
    if not G.has_edge(c, a):
        raise NotAdjacent(f"vertices {c} and {a} are not adjacent")
    adjacency = list(G.adjacency)
    row = (adjacency[c] ^ adjacency[a]) & ~(1 << c)
    adjacency[c] = row
    for v in range(G.n):
        if v != c:
            adjacency[v] = adjacency[v] & ~(1 << c) | (row >> v & 1) << c
    return Graph(tuple(adjacency), G.tags)


def scramble(B: GeneratingSet, count: int, rng: random.Random) -> GeneratingSet:
    """Apply ``count`` basic moves, each uniform among the currently available ones."""
    for _ in range(count):
        choices = [
            (c, a)
            for c in range(len(B))
            for a in range(len(B))
            if c != a and parity(B.form.left(B[c]) & B[a])
        ]
        if not choices:
            break
        B = basic_move(B, *rng.choice(choices))
    return B


def basis_for_graph(G: Graph, labels: tuple[str, ...] = ()) -> GeneratingSet:
    """The standard basis of F2^n carrying the alternating form whose graph is G."""
    form = BilinearForm.from_pairs(G.n, edges=G.edges())
    return GeneratingSet(form, tuple(1 << i for i in range(G.n)), labels)


# =========================================================================
# Equivalence classes
# =========================================================================


def equivalence_class(G: Graph, budget: int | None = None) -> frozenset[CanonicalGraph]:
    """Every graph reachable from G by basic moves, up to isomorphism."""
    if G.n > settings.equivalence_vertex_bound:
        raise GraphTooLarge(
            f"{G.n} vertices exceed the exhaustive exploration bound {settings.equivalence_vertex_bound}"
        )
    budget = settings.equivalence_budget if budget is None else budget
    start = canonical(G)
    name = storage.find_class(start.key)
    if name is None:
        keys = storage.add_class(start.key, _explore(start, budget))
    else:
        keys = storage.get_class(name)
    return frozenset(CanonicalGraph.from_key(key) for key in keys)


def _explore(start: CanonicalGraph, budget: int) -> set[str]:
    seen = {start.key}
    queue = deque([start.to_graph()])
    while queue:
        graph = queue.popleft()
        for c, a in itertools.permutations(range(graph.n), 2):
            if not graph.has_edge(c, a):
                continue
            key = canonical(graph_move(graph, c, a))
            if key.key in seen:
                continue
            if len(seen) >= budget:
                raise BudgetExceeded(f"equivalence class of {start.key} exceeds {budget} graphs")
            seen.add(key.key)
            queue.append(key.to_graph())
    logger.debug("explored the class of %s: %d graphs", start.key, len(seen))
    return seen


def e6_graph() -> Graph:
    return Graph.from_edges(6, E6_EDGES)


def e6_class() -> frozenset[str]:
    """Canonical keys of all graphs move-equivalent to E₆, computed once per store."""

    def compute() -> set[str]:
        logger.debug("initialising the E6 class")
        return {graph.key for graph in equivalence_class(e6_graph())}

    return storage.get_or_compute("e6", compute)


def contains_e6(G: Graph) -> tuple[int, ...] | None:
    """Least 6-subset (in combination order) whose induced subgraph is equivalent to E₆."""
    if G.n < 6:
        return None
    keys = e6_class()
    for subset in itertools.combinations(range(G.n), 6):
        sub = G.induced(subset)
        if is_connected(sub) and canonical(sub).key in keys:
            return subset
    return None


def is_dm1(G: Graph) -> bool:
    if not is_connected(G):
        raise NotConnected("the graph is not connected")
    return not find_forbidden(G)


# =========================================================================
# Recognition
# =========================================================================


def _dtype_parameters(dim: int, dim_v0: int, dim_v000: int) -> tuple[int, int]:
    if dim_v000 == dim_v0 - 1:
        k = dim_v000 + 1
        m = dim - k
        if m > 2 and m % 2 == 0:
            return m, k
    elif dim_v000 == dim_v0:
        if dim == dim_v0 + 2 and dim_v0 >= 1:
            return 2, dim_v0
        k = dim_v0 + 1
        m = dim - k
        if m % 2 == 1 and m >= 3:
            return m, k
    raise Unclassifiable(f"no broom has dim={dim}, dim V0={dim_v0}, dim V000={dim_v000}")


def recognize(B: GeneratingSet) -> ClassLabel:
    if len(B) < 2:
        raise DimensionTooSmall("recognition needs at least two generators")
    if not B.form.is_alternating_on(B.vectors):
        raise NotAlternating("recognition needs an alternating form on span(B)")
    if not is_connected(B.graph):
        raise NotConnected("Gr(B) is not connected")

    kernel = v0(B)
    quadratic = QuadraticForm.for_generators(B.form, B.vectors)
    nontrivial = any(quadratic(row) for row in kernel.rows)
    try:
        arf_value = arf(quadratic)
    except ArfUndefined:
        arf_value = None
    dim, dim_v0 = len(B), kernel.dim

    if contains_e6(B.graph) is not None:
        witnesses = Witnesses(dim, dim_v0, v000(B).dim, nontrivial, arf_value)
        if (dim - dim_v0) % 2 or (dim - dim_v0) // 2 < 3:
            raise Unclassifiable(f"E6-containing class with dim={dim}, dim V0={dim_v0}")
        n, p = (dim - dim_v0) // 2, dim_v0
        if nontrivial:
            family = ClassFamily.TREE_C
        elif (arf_value == 1) == (n % 4 in (2, 3)):
            family = ClassFamily.TREE_A
        else:
            family = ClassFamily.TREE_B
        return ClassLabel(family, n, p, witnesses)

    dim_v000 = v000(B).dim
    if dim == 2:
        return ClassLabel(ClassFamily.A1, 1, 1, Witnesses(dim, dim_v0, dim_v000, nontrivial, arf_value))
    m, k = _dtype_parameters(dim, dim_v0, dim_v000)
    return ClassLabel(ClassFamily.D_TYPE, m, k, Witnesses(dim, dim_v0, dim_v000, nontrivial, arf_value))


# =========================================================================
# Tree normalisation
# =========================================================================


def _edge_count(B: GeneratingSet) -> int:
    return sum(row.bit_count() for row in B.graph.adjacency) // 2


def normalize_to_tree(B: GeneratingSet, budget: int | None = None) -> GeneratingSet:
    """Best-first search over basic moves for an equivalent basis whose graph is a tree."""
    if not B.form.is_alternating_on(B.vectors):
        raise NotAlternating("tree normalisation needs an alternating form on span(B)")
    if not is_connected(B.graph):
        raise NotConnected("Gr(B) is not connected")
    budget = settings.normalize_budget if budget is None else budget
    counter = itertools.count()
    heap = [(_edge_count(B), next(counter), B)]
    seen = {canonical(B.graph).key}
    expanded = 0
    while heap:
        edges, _, current = heapq.heappop(heap)
        if edges == len(current) - 1:
            return current
        expanded += 1
        if expanded > budget:
            raise BudgetExceeded(f"no tree found within {budget} expansions")
        for c in range(len(current)):
            for a in bits(current.graph.adjacency[c]):
                moved = basic_move(current, c, a)
                key = canonical(moved.graph).key
                if key not in seen:
                    seen.add(key)
                    heapq.heappush(heap, (_edge_count(moved), next(counter), moved))
    raise BudgetExceeded("the equivalence class holds no tree")
