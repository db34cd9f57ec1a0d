"""End-to-end checks over the fixture catalogue, seeded random instances and every small connected graph."""

import random

import pytest

from tests.conftest import random_block_document, random_coset_basis
from transvect.services.blockforms import block_partition, predicted_orbit
from transvect.services.classify import BasisClassifier, deletion_check, label_partition
from transvect.services.constants import VerifyLevel
from transvect.services.cosets import (
    CosetProblem,
    brute_coset_partition,
    classify_ambient,
    classify_coset,
    coset_representatives,
)
from transvect.services.documents import load as load_text
from transvect.services.f2core import bits, parity, quotient_dim
from transvect.services.moves import contains_e6, scramble
from transvect.services.orbits import DeltaSearch, Domain, orbit_partition, v000
from transvect.services.verification import VerifySuite, connected_graph_sweep

pytestmark = pytest.mark.slow

BROOMS = [f"dmk:{m},{k}" for m in range(2, 9) for k in range(1, 10 - m)] + ["cycle:7", "cycle:8"]

E6_TREES = [
    "janssen-a:3,1",
    "janssen-a:4,0",
    "janssen-a:4,1",
    "janssen-a:5,0",
    "janssen-b:4,0",
    "janssen-b:4,1",
    "janssen-b:5,0",
    "janssen-c:3,1",
    "janssen-c:3,2",
    "janssen-c:4,1",
    "janssen-c:4,2",
]


# =========================================================================
# Worked examples
# =========================================================================


def test_fig_ex_orbit_count(load):
    B = load("fig-ex").generators
    partition = orbit_partition(B, Domain.whole(B.n))
    assert len(partition.classes) == 52
    assert sum(1 for cls in partition.classes if cls.size == 1 and cls.representative in B.span) == 4
    assert classify_ambient(B).blocks() == partition.blocks()


def test_fig_exx_orbit_count(load):
    loaded = load("fig-exx")
    partition = orbit_partition(loaded.generators, Domain.whole(loaded.generators.n))
    assert len(partition.classes) == 30
    assert block_partition(loaded.blocks).blocks() == partition.blocks()


# =========================================================================
# Brooms
# =========================================================================


@pytest.mark.parametrize("m", range(2, 7))
@pytest.mark.parametrize("k", range(1, 5))
def test_broom_orbit_counts(load, m, k):
    B = load(f"dmk:{m},{k}").generators
    partition = orbit_partition(B, Domain.subspace(B.span))
    moving = len(partition.classes) - partition.fixed_count
    if m % 2:
        assert (partition.fixed_count, moving) == (2 ** (k - 1), (m + 1) // 2)
    else:
        assert (partition.fixed_count, moving) == (2**k, m // 2)


def _broom_variants(load, name):
    B = load(name).generators
    return [B, scramble(B, 200, random.Random(name))]


@pytest.mark.parametrize("name", BROOMS)
def test_d_formula_and_levels(load, name):
    for B in _broom_variants(load, name):
        classifier = BasisClassifier(B)
        targets = [x for x in B.span if x not in classifier.kernel]
        oracle = DeltaSearch(B).minimal_decompositions(targets)
        assert [x for x in targets if classifier.d_formula(x) != oracle[x].d] == []
        brute = orbit_partition(B, Domain.subspace(B.span))
        assert label_partition(classifier).blocks() == brute.blocks()


@pytest.mark.parametrize("name", BROOMS)
def test_v000_theorems(load, name):
    B = load(name).generators
    classifier = BasisClassifier(B)
    assert classifier.v000_from_subgraphs() == v000(B)
    assert quotient_dim(classifier.kernel, classifier.kernel_000) <= 1
    if classifier.label.second >= 2:
        for u in classifier.kernel_000:
            for b in bits(B.coordinates(u)):
                deletion_check(B, u, b)


# =========================================================================
# Classes containing E6
# =========================================================================


def test_e6_orbit_sizes(load):
    B = load("e6").generators
    assert sorted(orbit_partition(B, Domain.subspace(B.span)).sizes) == [1, 27, 36]


@pytest.mark.parametrize("name", E6_TREES)
def test_two_moving_orbits(load, name):
    B = load(name).generators
    classifier = BasisClassifier(B)
    moving = orbit_partition(B, Domain.subspace(B.span)).without(classifier.kernel)
    levels = {
        q: frozenset(x for x in B.span if x not in classifier.kernel and classifier.quadratic(x) == q)
        for q in (0, 1)
    }
    assert moving == {levels[0], levels[1]}


# =========================================================================
# Cosets and blocks on seeded random instances
# =========================================================================


@pytest.mark.parametrize("seed", range(30))
def test_random_cosets(seed):
    B = random_coset_basis(random.Random(seed))
    if contains_e6(B.graph) is not None:
        pytest.skip("generators contain E6")
    for v in coset_representatives(B)[1:]:
        report = classify_coset(CosetProblem(B, v))
        assert report.partition.blocks() == brute_coset_partition(B, v).blocks()


@pytest.mark.parametrize("seed", range(50))
def test_random_block_systems(seed):
    rng = random.Random(seed)
    loaded = load_text(random_block_document(rng))
    D = loaded.blocks
    brute = orbit_partition(D.basis, Domain.whole(D.basis.n))
    assert block_partition(D).blocks() == brute.blocks()
    masks = D.basis.right_masks
    moving = [x for x in range(1 << D.basis.n) if any(parity(x & mask) for mask in masks)]
    for x in rng.sample(moving, min(20, len(moving))):
        assert predicted_orbit(D, x, check=False) == brute.class_of(x).members


# =========================================================================
# Recognition and the verify harness
# =========================================================================


def test_connected_graph_sweep():
    result = connected_graph_sweep(6)
    assert result.graphs == 142
    assert result.mismatches == ()


@pytest.mark.parametrize(
    "name",
    ["e6", "dmk:3,2", "dmk:4,3", "cycle:5", "janssen-a:3,1", "janssen-b:4,0", "janssen-c:3,1", "fig-ex", "fig-exx"],
)
def test_verify_quick(load, name):
    checks = VerifySuite(load(name), VerifyLevel.QUICK, 11)()
    assert [check.name for check in checks if not check.passed] == []


def test_verify_full(load):
    checks = VerifySuite(load("dmk:3,2"), VerifyLevel.FULL, 5)()
    assert "connected graph sweep" in [check.name for check in checks]
    assert all(check.passed for check in checks)
