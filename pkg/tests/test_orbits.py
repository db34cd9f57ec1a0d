import numpy as np
import pytest
from hypothesis import given
from hypothesis import settings as hypothesis_settings
from hypothesis import strategies as st

from tests.conftest import connected_graphs, graph_basis
from transvect.config import settings
from transvect.services.classify import BasisClassifier
from transvect.services.constants import OrbitKind
from transvect.services.errors import (
    DomainNotInvariant,
    DomainTooLarge,
    InvalidTransvector,
    NoDecomposition,
    NotConnected,
)
from transvect.services.f2core import BilinearForm, pair, quotient_dim, span
from transvect.services.formsgraphs import GeneratingSet
from transvect.services.moves import basis_for_graph
from transvect.services.orbits import (
    DeltaSearch,
    Domain,
    d_oracle,
    delta_orbit,
    fixed_points,
    orbit,
    orbit_partition,
    transvect,
    v0,
    v00,
    v000,
)

PATH_3 = [(0, 1), (1, 2)]
PATH_4 = [(0, 1), (1, 2), (2, 3)]


def test_transvection():
    form = BilinearForm.from_pairs(2, edges=[(0, 1)])
    assert transvect(form, 0b01, 0b10) == 0b11
    assert transvect(form, 0b01, 0b01) == 0b01
    with pytest.raises(InvalidTransvector):
        transvect(form, 0, 0b01)


@st.composite
def forms_with_transvector(draw, alternating: bool):
    n = draw(st.integers(2, 6))
    cells = draw(st.lists(st.integers(0, 1), min_size=n * n, max_size=n * n))
    matrix = np.array(cells, dtype=np.uint8).reshape(n, n)
    if alternating:
        matrix = np.triu(matrix, 1)
        matrix = matrix | matrix.T
    vectors = st.integers(0, (1 << n) - 1)
    a = draw(vectors.filter(bool))
    if pair(BilinearForm(matrix), a, a):
        # flipping one diagonal entry on the support of a makes it isotropic
        low = (a & -a).bit_length() - 1
        matrix[low, low] ^= 1
    return BilinearForm(matrix), a, draw(vectors), draw(vectors)


@hypothesis_settings(max_examples=100, deadline=None)
@given(forms_with_transvector(alternating=True))
def test_transvection_preserves_an_alternating_form(case):
    form, a, x, y = case
    assert pair(form, transvect(form, a, x), transvect(form, a, y)) == pair(form, x, y)


@hypothesis_settings(max_examples=100, deadline=None)
@given(st.booleans().flatmap(forms_with_transvector))
def test_transvection_is_an_involution(case):
    form, a, x, _ = case
    assert transvect(form, a, transvect(form, a, x)) == x


def test_single_edge_has_one_moving_orbit():
    B = graph_basis(2, [(0, 1)])
    partition = orbit_partition(B, Domain.whole(2))
    assert partition.blocks() == {frozenset({0}), frozenset({1, 2, 3})}
    assert partition.fixed_count == 1
    assert partition.class_of(0b10).representative == 0b01


def test_partition_of_a_path():
    B = graph_basis(3, PATH_3)
    partition = orbit_partition(B, Domain.subspace(B.span))
    assert sorted(partition.sizes) == [1, 1, 6]
    assert fixed_points(B, Domain.whole(3)) == {0, 0b101}
    assert partition.without([0]) == {frozenset({0b101}), frozenset(range(1, 8)) - {0b101}}


def test_orbits_under_a_non_alternating_form():
    form = BilinearForm.from_pairs(3, arcs=[(0, 1), (1, 2)])
    B = GeneratingSet(form, (0b001, 0b010, 0b100))
    assert orbit(B, 0b001) == {0b001, 0b011, 0b111, 0b101}


def test_domain_must_be_invariant():
    B = graph_basis(2, [(0, 1)])
    with pytest.raises(DomainNotInvariant):
        orbit_partition(B.subset([0]), Domain.subspace(span(2, [0b10])))


def test_domain_budget(monkeypatch):
    monkeypatch.setattr(settings, "visited_budget", 4)
    B = graph_basis(3, PATH_3)
    with pytest.raises(DomainTooLarge):
        orbit_partition(B, Domain.whole(3))


def test_coset_domain():
    form = BilinearForm.from_pairs(3, edges=[(0, 1), (1, 2)])
    B = GeneratingSet(form, (0b001, 0b010))
    domain = Domain.coset(0b100, B.span)
    partition = orbit_partition(B, domain)
    assert sum(partition.sizes) == domain.size == 4
    assert all(x in domain for cls in partition.classes for x in cls.members)


# =========================================================================
# Δ and the radical chain
# =========================================================================


def test_delta_needs_connected_graph():
    with pytest.raises(NotConnected):
        delta_orbit(graph_basis(3, [(0, 1)]))


def test_radical_chain_of_a_path():
    B = graph_basis(3, PATH_3)
    assert set(v0(B)) == {0, 0b101}
    assert v000(B) == v0(B)
    assert v00(B) == v0(B)


def test_radical_chain_of_an_odd_path():
    B = graph_basis(5, [(0, 1), (1, 2), (2, 3), (3, 4)])
    assert set(v0(B)) == {0, 0b10101}
    assert v000(B).dim == 0
    assert v00(B).dim == 0


@hypothesis_settings(max_examples=40, deadline=None)
@given(connected_graphs(max_vertices=6))
def test_radical_chain_properties(G):
    B = basis_for_graph(G)
    kernel = v0(B)
    assert all(b in delta_orbit(B) for b in B)
    assert quotient_dim(kernel, v000(B)) <= 1
    assert quotient_dim(kernel, v00(B)) <= 1
    assert fixed_points(B, Domain.subspace(B.span)) == set(kernel)
    assert all(not pair(B.form, x, b) for x in kernel for b in B)


@hypothesis_settings(max_examples=25, deadline=None)
@given(connected_graphs(max_vertices=6))
def test_orbit_labels_are_constant_on_orbits(G):
    B = basis_for_graph(G)
    classifier = BasisClassifier(B)
    seen = set()
    for cls in orbit_partition(B, Domain.subspace(B.span)).classes:
        labels = {classifier.orbit_label(x) for x in cls.members}
        assert len(labels) == 1
        (label,) = labels
        if label.kind == OrbitKind.MOVING:
            assert label not in seen
            seen.add(label)


# =========================================================================
# The d oracle
# =========================================================================


def test_oracle_on_a_path():
    B = graph_basis(4, PATH_4)
    assert d_oracle(B, 0b0001).d == 1
    decomposition = d_oracle(B, 0b0101)
    assert decomposition.d == 2
    assert decomposition.parts[0] ^ decomposition.parts[1] == 0b0101
    assert not pair(B.form, *decomposition.parts)


def test_oracle_rejects_radical_vectors():
    B = graph_basis(3, PATH_3)
    with pytest.raises(NoDecomposition):
        d_oracle(B, 0b101)


def test_level_search_agrees_with_depth_search():
    B = graph_basis(5, [(0, 1), (1, 2), (2, 3), (2, 4)])
    search = DeltaSearch(B)
    targets = [x for x in B.span if x not in search.kernel]
    levels = search.minimal_decompositions(targets)
    assert all(levels[x].d == search.decompose(x).d for x in targets)
