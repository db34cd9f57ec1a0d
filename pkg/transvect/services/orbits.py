"""
The Γ_B action itself: transvections, orbit closure, orbit partitions of
finite domains, fixed points, Δ, the radical chain V0 ⊇ V00 ⊇ V000 and the
brute-force d oracle.
"""

import logging
from collections import deque
from collections.abc import Iterable, Iterator
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from transvect.config import settings
from transvect.services.constants import DomainKind
from transvect.services.errors import (
    DimensionMismatch,
    DomainNotInvariant,
    DomainTooLarge,
    InvalidTransvector,
    InvariantViolation,
    NoDecomposition,
    NotAlternating,
    NotConnected,
)
from transvect.services.f2core import (
    BilinearForm,
    QuadraticForm,
    Subspace,
    _Echelon,
    bits,
    coset_members,
    parity,
    radical,
    span,
)
from transvect.services.formsgraphs import GeneratingSet, is_connected

logger = logging.getLogger(__name__)


# =========================================================================
# Domains
# =========================================================================


@dataclass(frozen=True)
class Domain:
    kind: DomainKind
    n: int
    offset: int = 0
    space: Subspace | None = None

    @classmethod
    def whole(cls, n: int) -> "Domain":
        return cls(DomainKind.WHOLE, n)

    @classmethod
    def subspace(cls, space: Subspace) -> "Domain":
        return cls(DomainKind.SUBSPACE, space.n, 0, space)

    @classmethod
    def coset(cls, v: int, space: Subspace) -> "Domain":
        if v < 0 or v >> space.n:
            raise DimensionMismatch(f"vector {v:#x} does not live in dimension {space.n}")
        return cls(DomainKind.COSET, space.n, v, space)

    @property
    def size(self) -> int:
        return 1 << self.n if self.space is None else self.space.size

    def members(self) -> Iterator[int]:
        if self.space is None:
            return iter(range(1 << self.n))
        return coset_members(self.offset, self.space)

    def __contains__(self, x: int) -> bool:
        if self.space is None:
            return 0 <= x < 1 << self.n
        return self.space.reduce(x ^ self.offset) == 0


def check_budget(domain: Domain) -> None:
    if domain.size > settings.visited_budget:
        raise DomainTooLarge(f"domain of size {domain.size} exceeds the budget {settings.visited_budget}")


def check_invariant(B: GeneratingSet, domain: Domain) -> None:
    """Each τ_b must map the domain into itself."""
    if domain.space is None:
        return
    probes = (domain.offset,) + domain.space.rows
    for label, b, mask in zip(B.labels, B.vectors, B.right_masks):
        if domain.space.reduce(b) and any(parity(y & mask) for y in probes):
            raise DomainNotInvariant(f"the transvection of {label} leaves the domain")


# =========================================================================
# Transvections and orbits
# =========================================================================


def transvect(form: BilinearForm, a: int, x: int) -> int:
    form.check(a, x)
    if a == 0 or parity(form.left(a) & a):
        raise InvalidTransvector(f"{a:#x} is not a valid transvector")
    return x ^ a if parity(form.left(x) & a) else x


def orbit(B: GeneratingSet, x: int) -> frozenset[int]:
    """Breadth-first closure of {x} under τ_b, b ∈ B."""
    B.form.check(x)
    moves = list(zip(B.vectors, B.right_masks))
    seen = {x}
    queue = deque([x])
    while queue:
        y = queue.popleft()
        for b, mask in moves:
            if parity(y & mask):
                z = y ^ b
                if z not in seen:
                    seen.add(z)
                    queue.append(z)
    return frozenset(seen)


@dataclass(frozen=True)
class OrbitClass:
    representative: int
    size: int
    members: frozenset[int]


@dataclass(frozen=True)
class OrbitPartition:
    domain: Domain
    classes: tuple[OrbitClass, ...]

    @cached_property
    def _index(self) -> dict[int, int]:
        return {x: i for i, cls in enumerate(self.classes) for x in cls.members}

    def class_of(self, x: int) -> OrbitClass:
        return self.classes[self._index[x]]

    @property
    def sizes(self) -> list[int]:
        return [cls.size for cls in self.classes]

    @property
    def fixed_count(self) -> int:
        return sum(1 for cls in self.classes if cls.size == 1)

    def blocks(self) -> frozenset[frozenset[int]]:
        return frozenset(cls.members for cls in self.classes)

    def without(self, excluded: Iterable[int]) -> frozenset[frozenset[int]]:
        """The partition blocks after removing ``excluded`` members; empty blocks dropped."""
        excluded = frozenset(excluded)
        blocks = (cls.members - excluded for cls in self.classes)
        return frozenset(block for block in blocks if block)


def partition_from_blocks(domain: Domain, blocks: Iterable[Iterable[int]]) -> OrbitPartition:
    classes = [frozenset(block) for block in blocks]
    classes.sort(key=min)
    return OrbitPartition(domain, tuple(OrbitClass(min(c), len(c), c) for c in classes))


def orbit_partition(B: GeneratingSet, domain: Domain) -> OrbitPartition:
    if domain.n != B.n:
        raise DimensionMismatch(f"domain of dimension {domain.n} for generators in dimension {B.n}")
    check_budget(domain)
    check_invariant(B, domain)
    visited = np.zeros(1 << domain.n, dtype=bool) if domain.space is None else None
    seen: set[int] = set()
    classes = []
    for x in domain.members():
        if (visited[x] if visited is not None else x in seen):
            continue
        members = orbit(B, x)
        if visited is not None:
            visited[list(members)] = True
        else:
            seen.update(members)
        classes.append(members)
    partition = partition_from_blocks(domain, classes)
    logger.debug("partition of %s domain (size %d): %d classes", domain.kind.value, domain.size, len(classes))
    return partition


def fixed_points(B: GeneratingSet, domain: Domain) -> frozenset[int]:
    """Members fixed by every generator, hence by Γ_B."""
    check_budget(domain)
    masks = B.right_masks
    return frozenset(x for x in domain.members() if not any(parity(x & mask) for mask in masks))


# =========================================================================
# Δ and the radical chain
# =========================================================================


def delta_orbit(B: GeneratingSet) -> frozenset[int]:
    if not is_connected(B.graph):
        raise NotConnected("Gr(B) is not connected")
    delta = orbit(B, B[0])
    missing = [label for label, b in zip(B.labels, B) if b not in delta]
    if missing:
        raise InvariantViolation(f"generators {missing} are not in the orbit of {B.labels[0]}")
    return delta


def v0(B: GeneratingSet) -> Subspace:
    """The kernel of Ω restricted to span(B)."""
    return radical(B.form, B.span)


def v000(B: GeneratingSet) -> Subspace:
    """Radical vectors that are a sum of two elements of Δ."""
    delta = delta_orbit(B)
    kernel = v0(B)
    sums = {y for y in kernel if any(x ^ y in delta for x in delta)}
    result = span(B.n, sums)
    stray = [y for y in result if y not in sums]
    if stray:
        raise InvariantViolation(f"V000 is not closed under addition ({len(stray)} missing sums)")
    return result


def v00(B: GeneratingSet) -> Subspace:
    """{y ∈ V0 : Q_B(y) = 0}; Q_B is additive on V0, so this is a kernel of a functional."""
    quadratic = QuadraticForm.for_generators(B.form, B.vectors)
    rows = v0(B).rows
    odd = [row for row in rows if quadratic(row)]
    even = [row for row in rows if not quadratic(row)]
    if odd:
        even += [row ^ odd[0] for row in odd[1:]]
    return span(B.n, even)


# =========================================================================
# The d oracle
# =========================================================================


@dataclass(frozen=True)
class DeltaDecomposition:
    parts: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.parts)


class DeltaSearch:
    """
    Exhaustive search for minimal Δ-decompositions.

    Parts are taken in increasing order from Δ, pairwise orthogonal and
    independent; a minimal decomposition always has independent parts, so
    depth never exceeds dim span(B).
    """

    def __init__(self, B: GeneratingSet):
        if not B.form.is_alternating_on(B.vectors):
            raise NotAlternating("Δ-decompositions need an alternating form on span(B)")
        self.B = B
        self.kernel = v0(B)
        self.elements = tuple(sorted(delta_orbit(B)))
        self.index = {x: i for i, x in enumerate(self.elements)}
        lefts = [B.form.left(e) for e in self.elements]
        self.orthogonal = tuple(
            sum(1 << j for j, f in enumerate(self.elements) if not parity(left & f)) for left in lefts
        )
        self.max_depth = B.span.dim

    def _later(self, i: int) -> int:
        """Admissible successors of element i: later in order and orthogonal to it."""
        return self.orthogonal[i] & ~((2 << i) - 1)

    def _in_span(self, x: int, admissible: int) -> bool:
        echelon = _Echelon()
        for i in bits(admissible):
            echelon.push(self.elements[i])
        return not echelon.reduce(x)[0]

    def _search(self, remaining: int, admissible: int, depth: int, chosen: list[int]) -> list[int] | None:
        if depth == 1:
            i = self.index.get(remaining)
            if i is None or not admissible >> i & 1:
                return None
            return chosen + [remaining] if span(self.B.n, chosen + [remaining]).dim == depth + len(chosen) else None
        if depth >= 3 and not self._in_span(remaining, admissible):
            return None
        for i in bits(admissible):
            e = self.elements[i]
            successors = admissible & self._later(i)
            if not successors or span(self.B.n, chosen + [e]).dim != len(chosen) + 1:
                continue
            found = self._search(remaining ^ e, successors, depth - 1, chosen + [e])
            if found is not None:
                return found
        return None

    def decompose(self, x: int) -> DeltaDecomposition:
        self.B.form.check(x)
        if x in self.kernel:
            raise NoDecomposition("radical vectors have no Δ-decomposition")
        everything = (1 << len(self.elements)) - 1
        for depth in range(1, self.max_depth + 1):
            found = self._search(x, everything, depth, [])
            if found is not None:
                return DeltaDecomposition(tuple(found))
        raise NoDecomposition(f"no Δ-decomposition of {x:#x} within depth {self.max_depth}")

    def minimal_decompositions(self, targets: Iterable[int]) -> dict[int, DeltaDecomposition]:
        """
        Level-by-level enumeration of orthogonal families, stopping as soon as
        every target has been reached; the first family reaching a target is minimal.
        """
        pending = set(targets)
        if any(x in self.kernel for x in pending):
            raise NoDecomposition("radical vectors have no Δ-decomposition")
        found: dict[int, DeltaDecomposition] = {}
        level = {(e, self._later(i)): (e,) for i, e in enumerate(self.elements)}
        depth = 1
        while True:
            for (total, _), parts in level.items():
                if total in pending:
                    found[total] = DeltaDecomposition(parts)
                    pending.discard(total)
            if not pending:
                return found
            if depth == self.max_depth:
                raise NoDecomposition(f"{len(pending)} vectors have no Δ-decomposition")
            successors: dict[tuple[int, int], tuple[int, ...]] = {}
            for (total, admissible), parts in level.items():
                for j in bits(admissible):
                    key = (total ^ self.elements[j], admissible & self._later(j))
                    if key not in successors:
                        successors[key] = parts + (self.elements[j],)
            level = successors
            depth += 1
            logger.debug("Δ-search depth %d: %d families, %d targets pending", depth, len(level), len(pending))


def d_oracle(B: GeneratingSet, x: int) -> DeltaDecomposition:
    return DeltaSearch(B).decompose(x)
