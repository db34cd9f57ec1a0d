"""
Closed-form orbit classification for a connected basis.

For bases equivalent to a broom D_{m,k} the orbits off V0 are the level sets
of d, computed from a minimal representative of x + V000 as the number of
components of its support graph plus a correction per maximal clique. For
bases whose class contains E6 the orbits off V0 are the two level sets of
Q_B. Every closed-form answer here is backed by an assertion that raises an
``InvariantViolation`` subclass when the underlying theorem fails.
"""

import logging
import random
from dataclasses import dataclass
from functools import cached_property

from transvect.services.constants import ForbiddenKind, OrbitKind
from transvect.services.errors import (
    ArfUndefined,
    CorollaryViolated,
    DimensionTooSmall,
    EmptyIntersection,
    InRadical,
    NoMinimalRepresentative,
    NotAlternating,
    NotDType,
    NotNormalForm,
    PreconditionFailed,
    SpanMismatch,
)
from transvect.services.f2core import QuadraticForm, Subspace, bits, coset_members, intersect, join, parity, span
from transvect.services.formsgraphs import (
    GeneratingSet,
    Graph,
    broom_edges,
    connected_components,
    find_forbidden,
    is_connected,
    maximal_cliques,
    support_subgraph,
)
from transvect.services.moves import ClassLabel, recognize
from transvect.services.orbits import Domain, OrbitPartition, partition_from_blocks, transvect, v0, v000

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class OrbitLabel:
    kind: OrbitKind
    d: int = 0

    @classmethod
    def fixed(cls) -> "OrbitLabel":
        return cls(OrbitKind.FIXED)

    @classmethod
    def moving(cls, d: int) -> "OrbitLabel":
        return cls(OrbitKind.MOVING, d)

    def __str__(self) -> str:
        return "Fixed" if self.kind == OrbitKind.FIXED else f"Moving(d={self.d})"


def quadratic_form(B: GeneratingSet) -> QuadraticForm:
    """Q_B on span(B): value 1 on every generator, polarization Ω."""
    return QuadraticForm.for_generators(B.form, B.vectors)


def gamma_invariance_check(B: GeneratingSet, Q: QuadraticForm, trials: int, rng: random.Random) -> bool:
    """Randomized check of Q(τ_b(x)) = Q(x) on the domain of Q."""
    rows = Q.domain.rows
    for _ in range(trials):
        x = 0
        for row in rows:
            if rng.getrandbits(1):
                x ^= row
        b = rng.choice(B.vectors)
        if Q(transvect(B.form, b, x)) != Q(x):
            return False
    return True


# =========================================================================
# Per-basis classifier
# =========================================================================


@dataclass
class BasisClassifier:
    """
    Orbit labels for one connected basis.

    Everything expensive (recognition, V0, V000) is computed once and shared
    by all queries on the same basis.
    """

    basis: GeneratingSet

    @cached_property
    def label(self) -> ClassLabel:
        return recognize(self.basis)

    @cached_property
    def kernel(self) -> Subspace:
        return v0(self.basis)

    @cached_property
    def kernel_000(self) -> Subspace:
        return v000(self.basis)

    @cached_property
    def quadratic(self) -> QuadraticForm:
        return quadratic_form(self.basis)

    @cached_property
    def _v000_coordinates(self) -> tuple[int, ...]:
        return tuple(self.basis.coordinates(row) for row in self.kernel_000.rows)

    def _require_moving_dtype(self, x: int) -> None:
        if not self.label.is_dtype:
            raise NotDType(f"the basis is of type {self.label}, not a broom")
        if x in self.kernel:
            raise InRadical("vector lies in V0")

    def is_minimal(self, y: int) -> bool:
        """No nonzero vector of V000 is supported inside the support of y."""
        outside = ~self.basis.coordinates(y)
        residues = [row & outside for row in self._v000_coordinates]
        return span(len(self.basis), residues).dim == len(residues)

    def minimal_representatives(self, x: int) -> list[int]:
        self._require_moving_dtype(x)
        return sorted(y for y in coset_members(x, self.kernel_000) if self.is_minimal(y))

    def minimal_representative(self, x: int) -> int:
        self._require_moving_dtype(x)
        for y in sorted(coset_members(x, self.kernel_000)):
            if self.is_minimal(y):
                return y
        raise NoMinimalRepresentative(f"no minimal representative in the V000 coset of {x:#x}")

    def d_of_representative(self, y: int) -> int:
        graph = support_subgraph(self.basis, y)
        cliques = [clique for clique in maximal_cliques(graph) if len(clique) >= 3]
        return len(connected_components(graph)) + sum((len(clique) + 1) // 2 - 1 for clique in cliques)

    def d_formula(self, x: int) -> int:
        return self.d_of_representative(self.minimal_representative(x))

    def orbit_label(self, x: int) -> OrbitLabel:
        self.basis.coordinates(x)
        if x in self.kernel:
            return OrbitLabel.fixed()
        if self.label.is_dtype:
            return OrbitLabel.moving(self.d_formula(x))
        return OrbitLabel.moving(2 - self.quadratic(x))

    def __call__(self, x: int) -> OrbitLabel:
        return self.orbit_label(x)

    # =========================================================================
    # V000 structure
    # =========================================================================

    def _require_dtype(self) -> None:
        if not self.label.is_dtype:
            raise NotDType(f"the basis is of type {self.label}, not a broom")

    def v000_local(self, X: tuple[int, ...], kind: ForbiddenKind | None = None) -> Subspace:
        """F2^X ∩ V000 for a forbidden pattern X (indices into the basis)."""
        self._require_dtype()
        local = span(self.basis.n, [self.basis[i] for i in X])
        result = intersect(local, self.kernel_000)
        if result.dim == 0:
            raise EmptyIntersection(f"F2^X ∩ V000 is zero for X = {[self.basis.labels[i] for i in X]}")
        if kind == ForbiddenKind.CYCLE and len(X) >= 5:
            everything = 0
            for i in X:
                everything ^= self.basis[i]
            if result != span(self.basis.n, [everything]):
                raise EmptyIntersection(
                    f"F2^X ∩ V000 is not spanned by the cycle sum for X = {[self.basis.labels[i] for i in X]}"
                )
        return result

    def v000_from_subgraphs(self) -> Subspace:
        self._require_dtype()
        if len(self.basis) < 3:
            raise DimensionTooSmall("the spanning theorem needs dim >= 3")
        total = span(self.basis.n, [])
        for kind, X in find_forbidden(self.basis.graph):
            total = join(total, self.v000_local(X, kind))
        if total != self.kernel_000:
            raise SpanMismatch(f"local pieces span dim {total.dim}, V000 has dim {self.kernel_000.dim}")
        return total


def minimal_representative(B: GeneratingSet, x: int) -> int:
    return BasisClassifier(B).minimal_representative(x)


def d_formula(B: GeneratingSet, x: int) -> int:
    return BasisClassifier(B).d_formula(x)


def orbit_label(B: GeneratingSet, x: int) -> OrbitLabel:
    return BasisClassifier(B).orbit_label(x)


def v000_local(B: GeneratingSet, X: tuple[int, ...], kind: ForbiddenKind | None = None) -> Subspace:
    return BasisClassifier(B).v000_local(X, kind)


def v000_from_subgraphs(B: GeneratingSet) -> Subspace:
    return BasisClassifier(B).v000_from_subgraphs()


def label_partition(classifier: BasisClassifier) -> OrbitPartition:
    """Partition of span(B) into orbits read off the orbit labels; radical vectors are singletons."""
    domain = Domain.subspace(classifier.basis.span)
    groups: dict[OrbitLabel, list[int]] = {}
    blocks = []
    for x in domain.members():
        label = classifier.orbit_label(x)
        if label.kind == OrbitKind.FIXED:
            blocks.append([x])
        else:
            groups.setdefault(label, []).append(x)
    return partition_from_blocks(domain, blocks + list(groups.values()))


# =========================================================================
# Brooms in normal form
# =========================================================================


def broom_shape(B: GeneratingSet) -> tuple[int, int]:
    """(m, k) when Gr(B) is literally D_{m,k} in the a1..am, c1..ck order."""
    n = len(B)
    for k in range(1, n):
        m = n - k
        if m < 2 and n != 2:
            break
        if B.graph == Graph.from_edges(n, broom_edges(m, k)):
            return m, k
    raise NotNormalForm("Gr(B) is not a broom in normal-form order")


def broom_invariant(B: GeneratingSet, x: int) -> int:
    """Components of Gr(B, p(x)) where p folds every c_j onto c_1."""
    m, k = broom_shape(B)
    coordinates = B.coordinates(x)
    tail = coordinates >> m
    folded = coordinates & ((1 << m) - 1) | parity(tail) << m
    return len(connected_components(B.graph.induced(bits(folded))))


# =========================================================================
# Corollaries and cross-checks
# =========================================================================


def deletion_check(B: GeneratingSet, u: int, b: int) -> ClassLabel:
    """Deleting a vertex of Gr(B, u), u ∈ V000, leaves a connected D_{m,k-1}."""
    classifier = BasisClassifier(B)
    label = classifier.label
    if not label.is_dtype or label.second < 2:
        raise PreconditionFailed(f"deletion needs a broom with k >= 2, got {label}")
    if u == 0 or u not in classifier.kernel_000:
        raise PreconditionFailed("u must be a nonzero vector of V000")
    if not B.coordinates(u) >> b & 1:
        raise PreconditionFailed(f"{B.labels[b]} is not in the support of u")
    reduced = B.without(b)
    if not is_connected(reduced.graph):
        raise CorollaryViolated(f"Gr(B - {B.labels[b]}) is disconnected")
    result = recognize(reduced)
    if not result.is_dtype or (result.first, result.second) != (label.first, label.second - 1):
        raise CorollaryViolated(f"deleting {B.labels[b]} from {label} gave {result}")
    return result


def tree_arf(B: GeneratingSet) -> int:
    """Arf(Q_B) for a tree by peeling hyperbolic pairs (leaf, neighbour)."""
    if not B.form.is_alternating_on(B.vectors):
        raise NotAlternating("the Arf invariant needs an alternating form")
    graph = B.graph
    if not is_connected(graph) or len(graph.edges()) != len(B) - 1:
        raise PreconditionFailed("Gr(B) is not a tree")
    adjacency = list(graph.adjacency)
    q = [1] * len(B)
    alive = (1 << len(B)) - 1
    total = 0
    while alive:
        v = next(v for v in bits(alive) if (adjacency[v] & alive).bit_count() <= 1)
        neighbours = adjacency[v] & alive
        if not neighbours:
            if q[v]:
                raise ArfUndefined("Q_B is non-zero on the radical")
            alive &= ~(1 << v)
            continue
        u = neighbours.bit_length() - 1
        total ^= q[v] & q[u]
        for w in bits(adjacency[u] & alive & ~(1 << v)):
            q[w] ^= q[v]
        alive &= ~(1 << v | 1 << u)
    return total
