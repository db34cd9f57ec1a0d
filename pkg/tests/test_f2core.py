import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from transvect.services.errors import (
    ArfUndefined,
    DimensionMismatch,
    DimensionTooLarge,
    NotAlternating,
    NotBasis,
    NotInSpan,
    NotSubspace,
)
from transvect.services.f2core import (
    BilinearForm,
    Coordinates,
    QuadraticForm,
    arf,
    bits,
    combine,
    coset_members,
    from_bitstring,
    intersect,
    join,
    pair,
    parity,
    quotient_dim,
    radical,
    span,
    symplectic_basis,
    to_bitstring,
)


@st.composite
def forms(draw, max_dim: int = 7, alternating: bool = False) -> BilinearForm:
    n = draw(st.integers(1, max_dim))
    cells = draw(st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n))
    matrix = np.array(cells, dtype=np.uint8).reshape(n, n)
    if alternating:
        upper = np.triu(matrix, 1)
        matrix = upper | upper.T
    return BilinearForm(matrix)


def vectors(n: int, count: int):
    return st.lists(st.integers(0, (1 << n) - 1), min_size=count, max_size=count)


# =========================================================================
# Bit helpers
# =========================================================================


def test_bit_helpers():
    assert list(bits(0b10110)) == [1, 2, 4]
    assert parity(0b111) == 1
    assert parity(0b1001) == 0
    assert combine([0b001, 0b010, 0b100], 0b101) == 0b101


def test_bitstrings_read_in_label_order():
    assert from_bitstring("101") == 0b101
    assert from_bitstring("011") == 0b110
    assert to_bitstring(0b110, 4) == "0110"
    with pytest.raises(ValueError):
        from_bitstring("012")


# =========================================================================
# Forms
# =========================================================================


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_pairing_is_bilinear(data):
    form = data.draw(forms())
    u, v, w = data.draw(vectors(form.n, 3))
    assert pair(form, u ^ v, w) == pair(form, u, w) ^ pair(form, v, w)
    assert pair(form, w, u ^ v) == pair(form, w, u) ^ pair(form, w, v)


def test_pairing_reads_the_matrix():
    form = BilinearForm.from_pairs(3, edges=[(0, 1)], arcs=[(1, 2)])
    assert pair(form, 0b001, 0b010) == 1
    assert pair(form, 0b010, 0b001) == 1
    assert pair(form, 0b010, 0b100) == 1
    assert pair(form, 0b100, 0b010) == 0
    assert not form.alternating


def test_form_limits():
    with pytest.raises(DimensionTooLarge):
        BilinearForm.zeros(25)
    with pytest.raises(DimensionMismatch):
        BilinearForm(np.zeros((2, 3), dtype=np.uint8))
    with pytest.raises(DimensionMismatch):
        pair(BilinearForm.zeros(2), 0b100, 1)


def test_gram_matrix():
    form = BilinearForm.from_pairs(3, edges=[(0, 1), (1, 2)])
    gram = form.gram([0b001, 0b010, 0b101])
    assert gram.tolist() == [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    assert form.is_alternating_on([0b001, 0b010])


# =========================================================================
# Subspaces
# =========================================================================


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_span_contains_exactly_the_sums(data):
    n = data.draw(st.integers(1, 6))
    generators = data.draw(vectors(n, data.draw(st.integers(0, 4))))
    space = span(n, generators)
    sums = {combine(generators, mask) for mask in range(1 << len(generators))}
    assert set(space) == sums
    assert space.size == len(sums)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_intersect_and_join_agree_with_sets(data):
    n = data.draw(st.integers(1, 6))
    first = span(n, data.draw(vectors(n, 3)))
    second = span(n, data.draw(vectors(n, 3)))
    assert set(intersect(first, second)) == set(first) & set(second)
    assert set(join(first, second)) == {x ^ y for x in first for y in second}


def test_quotient_dim():
    space = span(4, [0b0001, 0b0010, 0b0100])
    assert quotient_dim(space, span(4, [0b0011])) == 2
    with pytest.raises(NotSubspace):
        quotient_dim(space, span(4, [0b1000]))


def test_coset_members_visit_each_vector_once():
    space = span(5, [0b00011, 0b00110, 0b10000])
    members = list(coset_members(0b01000, space))
    assert len(members) == len(set(members)) == space.size
    assert all(space.reduce(x ^ 0b01000) == 0 for x in members)


def test_subspaces_compare_by_content():
    assert span(3, [0b011, 0b110]) == span(3, [0b101, 0b011])


def test_coordinates():
    solve = Coordinates([0b011, 0b110])
    assert solve(0b101) == 0b11
    with pytest.raises(NotInSpan):
        solve(0b001)
    with pytest.raises(NotBasis):
        Coordinates([0b011, 0b110, 0b101])


# =========================================================================
# Radicals and symplectic bases
# =========================================================================


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_radical_matches_definition_and_is_idempotent(data):
    form = data.draw(forms(max_dim=6))
    ambient = span(form.n, data.draw(vectors(form.n, 3)))
    kernel = radical(form, ambient)
    expected = {x for x in ambient if not any(pair(form, x, u) for u in ambient)}
    assert set(kernel) == expected
    assert radical(form, kernel) == kernel


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_symplectic_basis_table(data):
    form = data.draw(forms(alternating=True))
    ambient = span(form.n, data.draw(vectors(form.n, 4)))
    decomposition = symplectic_basis(form, ambient)
    assert decomposition.verify(form)
    assert 2 * len(decomposition.pairs) + len(decomposition.radical_part) == ambient.dim
    assert span(form.n, decomposition.radical_part) == radical(form, ambient)


def test_symplectic_basis_needs_alternating_form():
    form = BilinearForm.from_pairs(2, arcs=[(0, 1)])
    with pytest.raises(NotAlternating):
        symplectic_basis(form, span(2, [1, 2]))


# =========================================================================
# Quadratic forms
# =========================================================================


def test_quadratic_form_expansion():
    form = BilinearForm.from_pairs(3, edges=[(0, 1), (1, 2)])
    quadratic = QuadraticForm.for_generators(form, [0b001, 0b010, 0b100])
    assert quadratic(0) == 0
    assert quadratic(0b001) == 1
    assert quadratic(0b011) == 1
    assert quadratic(0b101) == 0
    assert quadratic(0b111) == 1
    with pytest.raises(NotInSpan):
        QuadraticForm.for_generators(form, [0b001])(0b010)


def test_arf_of_hyperbolic_planes():
    form = BilinearForm.from_pairs(2, edges=[(0, 1)])
    assert arf(QuadraticForm(form, (0b01, 0b10), (1, 1))) == 1
    assert arf(QuadraticForm(form, (0b01, 0b10), (0, 1))) == 0


def test_arf_of_e6():
    form = BilinearForm.from_pairs(6, edges=[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])
    assert arf(QuadraticForm.for_generators(form, [1 << i for i in range(6)])) == 1


def test_arf_undefined_when_radical_is_odd():
    form = BilinearForm.from_pairs(3, edges=[(0, 1)])
    with pytest.raises(ArfUndefined):
        arf(QuadraticForm.for_generators(form, [0b001, 0b010, 0b100]))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_quadratic_form_and_arf_do_not_depend_on_the_basis(data):
    form = data.draw(forms(alternating=True))
    n = form.n
    values = tuple(data.draw(st.lists(st.integers(0, 1), min_size=n, max_size=n)))
    quadratic = QuadraticForm(form, tuple(1 << i for i in range(n)), values)

    shuffle = random.Random(data.draw(st.integers(0, 2**32)))
    basis = [1 << i for i in range(n)]
    for _ in range(3 * n):
        i, j = shuffle.randrange(n), shuffle.randrange(n)
        if i != j:
            basis[i] ^= basis[j]
    moved = QuadraticForm(form, tuple(basis), tuple(quadratic(b) for b in basis))

    assert all(moved(x) == quadratic(x) for x in range(1 << n))
    try:
        expected = arf(quadratic)
    except ArfUndefined:
        with pytest.raises(ArfUndefined):
            arf(moved)
    else:
        assert arf(moved) == expected
