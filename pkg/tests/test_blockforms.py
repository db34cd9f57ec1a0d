import pytest

from transvect.services.blockforms import (
    block_partition,
    first_active_block,
    path_lemma_check,
    predicted_orbit,
    validate_blocks,
)
from transvect.services.documents import load as load_text
from transvect.services.errors import (
    AllFixed,
    BlockConditionViolated,
    NotAlternating,
    PreconditionFailed,
)
from transvect.services.f2core import parity
from transvect.services.orbits import Domain, orbit_partition

SINGLES = [(0,), (1,), (2,)]


def _chain(*arcs: tuple[str, str]):
    """Three generators b1 b2 b3 joined only by the given arcs."""
    lines = ["dim 3", "labels b1 b2 b3", "gens b1 b2 b3"]
    lines += [f"arc {a} {b}" for a, b in arcs]
    return load_text("\n".join(lines) + "\n").generators


# =========================================================================
# Block conditions
# =========================================================================


def test_chain_of_single_vertices_is_valid():
    D = validate_blocks(_chain(("b1", "b2"), ("b2", "b3")), SINGLES)
    assert D.blocks == ((0,), (1,), (2,))
    assert D.later_span(2).rows == (0b100,)


def test_arc_skipping_a_block():
    with pytest.raises(BlockConditionViolated) as excinfo:
        validate_blocks(_chain(("b1", "b2"), ("b2", "b3"), ("b1", "b3")), SINGLES)
    assert (excinfo.value.i, excinfo.value.j) == (1, 3)
    assert (excinfo.value.b_i, excinfo.value.b_j) == ("b1", "b3")


def test_arc_pointing_backwards():
    with pytest.raises(BlockConditionViolated) as excinfo:
        validate_blocks(_chain(("b1", "b2"), ("b2", "b1"), ("b2", "b3")), SINGLES)
    assert (excinfo.value.i, excinfo.value.j) == (2, 1)


def test_consecutive_blocks_must_be_linked():
    with pytest.raises(BlockConditionViolated) as excinfo:
        validate_blocks(_chain(("b1", "b2")), SINGLES)
    assert (excinfo.value.i, excinfo.value.j) == (2, 3)


def test_blocks_must_partition_and_be_alternating():
    B = _chain(("b1", "b2"), ("b2", "b3"))
    with pytest.raises(PreconditionFailed):
        validate_blocks(B, [(0,), (1,)])
    with pytest.raises(PreconditionFailed):
        validate_blocks(B, [(0, 1), (), (2,)])
    with pytest.raises(NotAlternating):
        validate_blocks(B, [(0, 1), (2,)])


# =========================================================================
# Orbit prediction
# =========================================================================


def test_first_active_block():
    D = validate_blocks(_chain(("b1", "b2"), ("b2", "b3")), SINGLES)
    # only arcs into b2 and b3 exist, so b1 never moves anything
    assert first_active_block(D, 0b001) == 2
    assert first_active_block(D, 0b011) == 2
    assert first_active_block(D, 0b010) == 3
    with pytest.raises(AllFixed):
        first_active_block(D, 0b100)


def test_predicted_orbit_on_a_chain():
    D = validate_blocks(_chain(("b1", "b2"), ("b2", "b3")), SINGLES)
    assert predicted_orbit(D, 0b001) == {0b001, 0b011, 0b101, 0b111}
    assert predicted_orbit(D, 0b010) == {0b010, 0b110}


def test_fig_exx_predictions(load):
    D = load("fig-exx").blocks
    masks = D.basis.right_masks
    for x in range(1 << D.basis.n):
        if any(parity(x & mask) for mask in masks):
            predicted_orbit(D, x, check=True)
    with pytest.raises(AllFixed):
        first_active_block(D, 0)


def test_fig_exx_partition(load):
    D = load("fig-exx").blocks
    assembled = block_partition(D)
    assert len(assembled.classes) == 30
    assert assembled.blocks() == orbit_partition(D.basis, Domain.whole(D.basis.n)).blocks()


# =========================================================================
# Path criterion
# =========================================================================


def test_path_criterion_along_forward_arcs():
    B = _chain(("b1", "b2"), ("b2", "b3"))
    result = path_lemma_check(B, 0b001, 2)
    assert (result.hypotheses_hold, result.path, result.in_orbit) == (True, (1, 2), True)
    assert path_lemma_check(B, 0b001, 1).path == (1,)


def test_path_criterion_against_an_arc():
    B = _chain(("b1", "b2"), ("b2", "b3"))
    result = path_lemma_check(B, 0b001, 0)
    assert not result.hypotheses_hold
    assert result.path == (1, 0)
    assert result.in_orbit is None


def test_path_criterion_needs_a_moving_vector():
    with pytest.raises(AllFixed):
        path_lemma_check(_chain(("b1", "b2"), ("b2", "b3")), 0b100, 0)
