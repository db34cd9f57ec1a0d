"""
Dense linear algebra over the two-element field.

Vectors are plain ints used as bitsets: bit ``i`` is the coordinate on the
``i``-th ambient basis vector, i.e. the ``i``-th declared label. Forms keep
their matrix in numpy together with precomputed row and column masks, so a
pairing costs one AND and a popcount.

Ordering convention: "least" vectors are least by integer encoding, which is
the lexicographic order of bitstrings read from the last label to the first.
"""

import logging
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from transvect.config import settings
from transvect.services.errors import (
    ArfUndefined,
    DimensionMismatch,
    DimensionTooLarge,
    NotAlternating,
    NotBasis,
    NotInSpan,
    NotSubspace,
)

logger = logging.getLogger(__name__)

F2Vector = int


# =========================================================================
# Bit helpers
# =========================================================================


def parity(x: int) -> int:
    return x.bit_count() & 1


def bits(x: int) -> Iterator[int]:
    """Indices of the set coordinates of ``x``, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def combine(vectors: Sequence[int], mask: int) -> int:
    """Sum of ``vectors[i]`` over the indices ``i`` set in ``mask``."""
    total = 0
    for i in bits(mask):
        total ^= vectors[i]
    return total


def to_bitstring(x: int, n: int) -> str:
    return "".join("1" if x >> i & 1 else "0" for i in range(n))


def from_bitstring(text: str) -> int:
    if not text or set(text) - {"0", "1"}:
        raise ValueError(f"not a bitstring: {text!r}")
    return sum(1 << i for i, char in enumerate(text) if char == "1")


def _mask(entries: np.ndarray) -> int:
    return sum(1 << int(j) for j in np.flatnonzero(entries))


# =========================================================================
# Echelon state
# =========================================================================


class _Echelon:
    """
    Reduced row echelon state; the pivot of a row is its highest set bit.

    Every row carries a tag recording which pushed vectors it combines, so
    reductions double as coordinate solves and dependency detection.
    """

    def __init__(self):
        self.rows: list[int] = []
        self.tags: list[int] = []
        self._pivots: list[int] = []

    def reduce(self, x: int, tag: int = 0) -> tuple[int, int]:
        for row, row_tag, pivot in zip(self.rows, self.tags, self._pivots):
            if x >> pivot & 1:
                x ^= row
                tag ^= row_tag
        return x, tag

    def push(self, x: int, tag: int = 0) -> tuple[int, int]:
        """Insert ``x``; returns the residue (0 when dependent) and its tag."""
        x, tag = self.reduce(x, tag)
        if not x:
            return 0, tag
        pivot = x.bit_length() - 1
        for i, row in enumerate(self.rows):
            if row >> pivot & 1:
                self.rows[i] = row ^ x
                self.tags[i] ^= tag
        self.rows.append(x)
        self.tags.append(tag)
        self._pivots.append(pivot)
        return x, tag


def _relations(vectors: Sequence[int]) -> list[int]:
    """Basis of the index masks ``m`` with ``combine(vectors, m) == 0``."""
    echelon = _Echelon()
    relations = []
    for i, vector in enumerate(vectors):
        residue, tag = echelon.push(vector, 1 << i)
        if not residue:
            relations.append(tag)
    return relations


class Coordinates:
    """Coordinate solver for an ordered list of independent vectors."""

    def __init__(self, vectors: Sequence[int]):
        self._echelon = _Echelon()
        for i, vector in enumerate(vectors):
            residue, _ = self._echelon.push(vector, 1 << i)
            if not residue:
                raise NotBasis(f"vector #{i} is a combination of the previous ones")

    def __call__(self, x: int) -> int:
        residue, tag = self._echelon.reduce(x)
        if residue:
            raise NotInSpan(f"vector {x:#x} is outside the span")
        return tag

    def contains(self, x: int) -> bool:
        return not self._echelon.reduce(x)[0]


# =========================================================================
# Bilinear forms
# =========================================================================


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """An n x n form over F2; ``entries[i, j]`` pairs basis vectors i and j."""

    entries: np.ndarray
    _rows: tuple[int, ...] = field(init=False, repr=False)
    _cols: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        matrix = np.asarray(self.entries, dtype=np.uint8)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatch(f"form matrix must be square, got shape {matrix.shape}")
        if matrix.shape[0] > settings.max_dim:
            raise DimensionTooLarge(
                f"ambient dimension {matrix.shape[0]} exceeds the configured maximum {settings.max_dim}"
            )
        matrix = matrix & 1
        matrix.flags.writeable = False
        object.__setattr__(self, "entries", matrix)
        object.__setattr__(self, "_rows", tuple(_mask(row) for row in matrix))
        object.__setattr__(self, "_cols", tuple(_mask(col) for col in matrix.T))

    @classmethod
    def zeros(cls, n: int) -> "BilinearForm":
        return cls(np.zeros((n, n), dtype=np.uint8))

    @classmethod
    def from_pairs(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        arcs: Iterable[tuple[int, int]] = (),
    ) -> "BilinearForm":
        """Edges set both directions, arcs set only ``(a, b)``."""
        matrix = np.zeros((n, n), dtype=np.uint8)
        for a, b in edges:
            matrix[a, b] = matrix[b, a] = 1
        for a, b in arcs:
            matrix[a, b] = 1
        return cls(matrix)

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def alternating(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T) and not self.entries.diagonal().any())

    def check(self, *vectors: int) -> None:
        for x in vectors:
            if x < 0 or x >> self.n:
                raise DimensionMismatch(f"vector {x:#x} does not live in dimension {self.n}")

    def left(self, u: int) -> int:
        """Mask of the basis vectors e_j with Ω(u, e_j) = 1."""
        mask = 0
        for i in bits(u):
            mask ^= self._rows[i]
        return mask

    def right(self, v: int) -> int:
        """Mask of the basis vectors e_i with Ω(e_i, v) = 1."""
        mask = 0
        for j in bits(v):
            mask ^= self._cols[j]
        return mask

    def gram(self, vectors: Sequence[int]) -> np.ndarray:
        lefts = [self.left(u) for u in vectors]
        return np.array([[parity(lu & v) for v in vectors] for lu in lefts], dtype=np.uint8).reshape(
            len(vectors), len(vectors)
        )

    def is_alternating_on(self, vectors: Sequence[int]) -> bool:
        gram = self.gram(vectors)
        return bool(np.array_equal(gram, gram.T) and not gram.diagonal().any())


def pair(form: BilinearForm, u: int, v: int) -> int:
    form.check(u, v)
    return parity(form.left(u) & v)


# =========================================================================
# Subspaces
# =========================================================================


@dataclass(frozen=True)
class Subspace:
    """A subspace of F2^n held as its reduced echelon basis (unique, so equality is exact)."""

    n: int
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def __contains__(self, x: int) -> bool:
        return member(self, x)

    def __iter__(self) -> Iterator[int]:
        return coset_members(0, self)

    def reduce(self, x: int) -> int:
        for row in self.rows:
            if x >> (row.bit_length() - 1) & 1:
                x ^= row
        return x


def _check_vectors(n: int, vectors: Iterable[int]) -> list[int]:
    vectors = list(vectors)
    for x in vectors:
        if x < 0 or x >> n:
            raise DimensionMismatch(f"vector {x:#x} does not live in dimension {n}")
    return vectors


def span(n: int, vectors: Iterable[int]) -> Subspace:
    echelon = _Echelon()
    for x in _check_vectors(n, vectors):
        echelon.push(x)
    return Subspace(n, tuple(sorted(echelon.rows, reverse=True)))


def member(space: Subspace, x: int) -> bool:
    _check_vectors(space.n, [x])
    return space.reduce(x) == 0


def join(first: Subspace, second: Subspace) -> Subspace:
    if first.n != second.n:
        raise DimensionMismatch(f"subspaces of dimensions {first.n} and {second.n}")
    return span(first.n, first.rows + second.rows)


def intersect(first: Subspace, second: Subspace) -> Subspace:
    """Zassenhaus: echelonize [S | S] over [T | 0]; rows with empty upper half span S ∩ T."""
    if first.n != second.n:
        raise DimensionMismatch(f"subspaces of dimensions {first.n} and {second.n}")
    n = first.n
    echelon = _Echelon()
    for s in first.rows:
        echelon.push(s << n | s)
    for t in second.rows:
        echelon.push(t << n)
    low = (1 << n) - 1
    return span(n, [row & low for row in echelon.rows if not row >> n])


def quotient_dim(space: Subspace, sub: Subspace) -> int:
    if any(space.reduce(row) for row in sub.rows) or space.n != sub.n:
        raise NotSubspace("the second space is not contained in the first")
    return space.dim - sub.dim


def coset_members(v: int, space: Subspace) -> Iterator[int]:
    """Enumerate v + S in Gray-code order, each member exactly once."""
    x = v
    yield x
    for i in range(1, space.size):
        x ^= space.rows[(i & -i).bit_length() - 1]
        yield x


# =========================================================================
# Radical and symplectic bases
# =========================================================================


def radical(form: BilinearForm, ambient: Subspace) -> Subspace:
    """{x ∈ ambient : Ω(x, u) = 0 for all u ∈ ambient}."""
    if ambient.n != form.n:
        raise DimensionMismatch(f"subspace of dimension {ambient.n} against a form of dimension {form.n}")
    rows = ambient.rows
    gram_rows = []
    for u in rows:
        left = form.left(u)
        gram_rows.append(sum(1 << j for j, v in enumerate(rows) if parity(left & v)))
    return span(form.n, [combine(rows, relation) for relation in _relations(gram_rows)])


@dataclass(frozen=True)
class SymplecticDecomposition:
    pairs: tuple[tuple[int, int], ...]
    radical_part: tuple[int, ...]

    @property
    def vectors(self) -> tuple[int, ...]:
        return tuple(v for pair_ in self.pairs for v in pair_) + self.radical_part

    def verify(self, form: BilinearForm) -> bool:
        """Check the full pairing table: 1 exactly on the (e_i, f_i) slots and their transposes."""
        vectors = self.vectors
        expected = np.zeros((len(vectors), len(vectors)), dtype=np.uint8)
        for i in range(len(self.pairs)):
            expected[2 * i, 2 * i + 1] = expected[2 * i + 1, 2 * i] = 1
        return bool(np.array_equal(form.gram(vectors), expected))


def symplectic_basis(form: BilinearForm, ambient: Subspace) -> SymplecticDecomposition:
    if not form.is_alternating_on(ambient.rows):
        raise NotAlternating("the form is not alternating on the given subspace")
    pool = list(ambient.rows)
    pairs: list[tuple[int, int]] = []
    radical_part: list[int] = []
    while pool:
        e = pool.pop(0)
        left = form.left(e)
        partner = next((i for i, w in enumerate(pool) if parity(left & w)), None)
        if partner is None:
            radical_part.append(e)
            continue
        f = pool.pop(partner)
        left_f = form.left(f)
        pool = [w ^ (e if parity(left_f & w) else 0) ^ (f if parity(left & w) else 0) for w in pool]
        pairs.append((e, f))
    return SymplecticDecomposition(tuple(pairs), tuple(radical_part))


# =========================================================================
# Quadratic forms
# =========================================================================


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """
    The quadratic form with polarization Ω prescribed on independent vectors.

    Q(Σ λ_i b_i) = Σ λ_i Q(b_i) + Σ_{i<j} λ_i λ_j Ω(b_i, b_j); evaluation outside
    the span of ``basis`` raises NotInSpan.
    """

    form: BilinearForm
    basis: tuple[int, ...]
    values: tuple[int, ...]
    _coordinates: Coordinates = field(init=False, repr=False)

    def __post_init__(self):
        if len(self.basis) != len(self.values):
            raise DimensionMismatch("one value is needed per basis vector")
        self.form.check(*self.basis)
        object.__setattr__(self, "_coordinates", Coordinates(self.basis))

    @classmethod
    def for_generators(cls, form: BilinearForm, vectors: Sequence[int]) -> "QuadraticForm":
        return cls(form, tuple(vectors), (1,) * len(vectors))

    @cached_property
    def domain(self) -> Subspace:
        return span(self.form.n, self.basis)

    def __call__(self, x: int) -> int:
        coefficients = self._coordinates(x)
        total = 0
        tail = x
        for i in bits(coefficients):
            b = self.basis[i]
            tail ^= b
            total ^= self.values[i] ^ parity(self.form.left(b) & tail)
        return total


def arf(quadratic: QuadraticForm) -> int:
    decomposition = symplectic_basis(quadratic.form, quadratic.domain)
    if any(quadratic(h) for h in decomposition.radical_part):
        raise ArfUndefined("the quadratic form is non-zero on the radical")
    return sum(quadratic(e) & quadratic(f) for e, f in decomposition.pairs) & 1
