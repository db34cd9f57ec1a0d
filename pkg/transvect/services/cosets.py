"""
Orbits of Γ_B on the cosets v + U of U = span(B) when B does not span the
ambient space.

Three closed-form routes are tried in order: the two level sets of Q_{B∪{v}}
(E6 present, or v pairs non-trivially with U000), translation of the orbits
of U by a fixed point, and reduction to an extended broom B ∪ {w}.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property

from transvect.services.classify import BasisClassifier, label_partition
from transvect.services.constants import CosetBranch, OrbitKind
from transvect.services.errors import (
    Dependent,
    DimensionTooSmall,
    InvariantViolation,
    NoExtensionFound,
    NotAlternating,
    NotConnected,
)
from transvect.services.f2core import QuadraticForm, _Echelon, _relations, bits, combine, parity
from transvect.services.formsgraphs import GeneratingSet, is_connected
from transvect.services.moves import contains_e6, recognize
from transvect.services.orbits import (
    Domain,
    OrbitPartition,
    orbit_partition,
    partition_from_blocks,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CosetProblem:
    basis: GeneratingSet
    v: int

    def __post_init__(self):
        self.basis.form.check(self.v)
        if self.v in self.basis.span:
            raise Dependent("v lies in span(B); the coset is U itself")
        if not is_connected(self.basis.graph):
            raise NotConnected("Gr(B) is not connected")

    @property
    def ambient_dim(self) -> int:
        return self.basis.n

    @property
    def domain(self) -> Domain:
        return Domain.coset(self.v, self.basis.span)


@dataclass(frozen=True)
class CosetReport:
    problem: CosetProblem
    branch: CosetBranch
    partition: OrbitPartition
    fixed_points: frozenset[int] = frozenset()
    # the fixed point used for translation, or the extension vector w
    witness: int | None = None
    # (representative, value of Q_{B∪{v}}) per class on the two-orbit branch
    levels: tuple[tuple[int, int], ...] = field(default=())

    @property
    def descriptions(self) -> list[tuple[int, int]]:
        return [(cls.representative, cls.size) for cls in self.partition.classes]


def extended_quadratic(B: GeneratingSet, v: int) -> QuadraticForm:
    """Q_{B∪{v}}: value 1 on every generator and on v."""
    vectors = B.vectors + (v,)
    if v in B.span:
        raise Dependent("B ∪ {v} is linearly dependent")
    if not B.form.is_alternating_on(vectors):
        raise NotAlternating("Q_{B∪{v}} needs an alternating form on span(B ∪ {v})")
    return QuadraticForm.for_generators(B.form, vectors)


def coset_fixed_points(B: GeneratingSet, v: int) -> frozenset[int]:
    """Members v + u of v + U with Ω(v + u, b) = 0 for every b ∈ B."""
    rows = [sum(1 << j for j, b in enumerate(B) if parity(B.form.left(u) & b)) for u in B]
    target = sum(1 << j for j, b in enumerate(B) if parity(B.form.left(v) & b))
    echelon = _Echelon()
    for i, row in enumerate(rows):
        echelon.push(row, 1 << i)
    residue, particular = echelon.reduce(target)
    if residue:
        fixed: frozenset[int] = frozenset()
    else:
        start = v ^ combine(B.vectors, particular)
        kernel = [combine(B.vectors, relation) for relation in _relations(rows)]
        fixed = frozenset(_translates(start, kernel))
    if fixed and is_connected(B.graph):
        classifier = BasisClassifier(B)
        if any(parity(B.form.left(v) & y) for y in classifier.kernel_000.rows):
            raise InvariantViolation("v pairs non-trivially with U000 but v + U has fixed points")
    return fixed


def _translates(start: int, generators: list[int]) -> set[int]:
    points = {start}
    for g in generators:
        points |= {p ^ g for p in points}
    return points


def brute_coset_partition(B: GeneratingSet, v: int) -> OrbitPartition:
    return orbit_partition(B, Domain.coset(v, B.span))


# =========================================================================
# Classification
# =========================================================================


def _level_sets(problem: CosetProblem, excluded: frozenset[int]) -> tuple[list[list[int]], list[tuple[int, int]]]:
    quadratic = extended_quadratic(problem.basis, problem.v)
    levels: dict[int, list[int]] = {0: [], 1: []}
    for x in problem.domain.members():
        if x not in excluded:
            levels[quadratic(x)].append(x)
    blocks = [block for block in levels.values() if block]
    return blocks, sorted((min(block), quadratic(min(block))) for block in blocks)


def find_extension(problem: CosetProblem, classifier: BasisClassifier) -> GeneratingSet:
    """Least w ∈ v + U such that B ∪ {w} is a connected broom D_{m+1,k}."""
    m, k = classifier.label.first, classifier.label.second
    for w in sorted(problem.domain.members()):
        extended = problem.basis.extended(w)
        if not is_connected(extended.graph) or contains_e6(extended.graph) is not None:
            continue
        label = recognize(extended)
        if label.is_dtype and (label.first, label.second) == (m + 1, k):
            logger.debug("extension vector %#x accepted for coset of %#x", w, problem.v)
            return extended
    raise NoExtensionFound(f"no extension vector in the coset of {problem.v:#x}")


def classify_coset(problem: CosetProblem) -> CosetReport:
    B = problem.basis
    if len(B) < 2:
        raise DimensionTooSmall("coset classification needs dim U >= 2")
    if not B.form.is_alternating_on(B.vectors + (problem.v,)):
        raise NotAlternating("coset classification needs an alternating form on span(B ∪ {v})")
    classifier = BasisClassifier(B)
    domain = problem.domain

    if contains_e6(B.graph) is not None:
        fixed = coset_fixed_points(B, problem.v)
        blocks, levels = _level_sets(problem, fixed)
        partition = partition_from_blocks(domain, blocks + [[x] for x in fixed])
        return CosetReport(problem, CosetBranch.TWO_ORBITS, partition, fixed, None, tuple(levels))

    if any(parity(B.form.left(problem.v) & y) for y in classifier.kernel_000.rows):
        blocks, levels = _level_sets(problem, frozenset())
        partition = partition_from_blocks(domain, blocks)
        return CosetReport(problem, CosetBranch.TWO_ORBITS, partition, frozenset(), None, tuple(levels))

    fixed = coset_fixed_points(B, problem.v)
    if fixed:
        p = min(fixed)
        inner = label_partition(classifier)
        partition = partition_from_blocks(domain, ([p ^ u for u in cls.members] for cls in inner.classes))
        return CosetReport(problem, CosetBranch.FIXED_POINT_TRANSLATION, partition, fixed, p)

    extended = find_extension(problem, classifier)
    wider = BasisClassifier(extended)
    groups: dict = {}
    for x in domain.members():
        label = wider.orbit_label(x)
        key = (label, x) if label.kind == OrbitKind.FIXED else label
        groups.setdefault(key, []).append(x)
    partition = partition_from_blocks(domain, groups.values())
    return CosetReport(problem, CosetBranch.EXTENDED_REDUCTION, partition, frozenset(), extended[-1])


# =========================================================================
# Whole ambient space
# =========================================================================


def coset_representatives(B: GeneratingSet) -> list[int]:
    """Least member of every coset of span(B) in the ambient space, ascending; 0 stands for U."""
    pivots = 0
    for row in B.span.rows:
        pivots |= 1 << (row.bit_length() - 1)
    free = [i for i in range(B.n) if not pivots >> i & 1]
    return sorted(sum(1 << free[i] for i in bits(mask)) for mask in range(1 << len(free)))


@dataclass
class AmbientClassification:
    basis: GeneratingSet

    @cached_property
    def reports(self) -> list[CosetReport]:
        return [classify_coset(CosetProblem(self.basis, v)) for v in coset_representatives(self.basis)[1:]]

    @cached_property
    def partition(self) -> OrbitPartition:
        inner = label_partition(BasisClassifier(self.basis))
        blocks = [cls.members for cls in inner.classes]
        for report in self.reports:
            blocks.extend(cls.members for cls in report.partition.classes)
        return partition_from_blocks(Domain.whole(self.basis.n), blocks)


def classify_ambient(B: GeneratingSet) -> OrbitPartition:
    """Orbits on the whole ambient space, assembled coset by coset."""
    return AmbientClassification(B).partition
