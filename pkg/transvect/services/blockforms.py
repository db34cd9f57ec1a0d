"""
Orbits for non-alternating forms built from chained alternating blocks, and
the path criterion for x + b to stay in the orbit of x.
"""

import logging
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from transvect.services.errors import (
    AllFixed,
    BlockConditionViolated,
    LemmaViolated,
    NotAlternating,
    NotConnected,
    PreconditionFailed,
    PredictionMismatch,
)
from transvect.services.f2core import Subspace, bits, parity, span
from transvect.services.formsgraphs import GeneratingSet, is_connected
from transvect.services.orbits import (
    Domain,
    OrbitPartition,
    check_budget,
    orbit,
    partition_from_blocks,
)

logger = logging.getLogger(__name__)

PATH_INTERPRETATION = "restriction of the form to the span of the path vertices is not alternating"


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks B_1..B_r as tuples of generator indices, in chain order."""

    basis: GeneratingSet
    blocks: tuple[tuple[int, ...], ...]

    @cached_property
    def generators(self) -> tuple[GeneratingSet, ...]:
        return tuple(self.basis.subset(block) for block in self.blocks)

    def later_span(self, index: int) -> Subspace:
        """span of every block after block ``index`` (1-based)."""
        vectors = [self.basis[i] for block in self.blocks[index:] for i in block]
        return span(self.basis.n, vectors)


def validate_blocks(B: GeneratingSet, blocks) -> BlockDecomposition:
    """
    Check that ``blocks`` chain B: each block alternating and connected, Ω
    between blocks i < j non-zero only from B_i into B_{i+1}, never backwards,
    and every consecutive pair of blocks linked by at least one such arc.
    """
    blocks = tuple(tuple(block) for block in blocks)
    flat = sorted(i for block in blocks for i in block)
    if flat != list(range(len(B))) or not all(blocks):
        raise PreconditionFailed("blocks must partition the generators")

    for position, block in enumerate(blocks, start=1):
        vectors = [B[i] for i in block]
        if not B.form.is_alternating_on(vectors):
            raise NotAlternating(f"the form is not alternating on block {position}")
        if not is_connected(B.graph.induced(block)):
            raise NotConnected(f"block {position} does not induce a connected graph")

    labels = B.labels
    for first in range(len(blocks)):
        for second in range(first + 1, len(blocks)):
            linked = False
            for i in blocks[first]:
                for j in blocks[second]:
                    forward = parity(B.form.left(B[i]) & B[j])
                    backward = parity(B.form.left(B[j]) & B[i])
                    if backward:
                        raise BlockConditionViolated(
                            f"Ω({labels[j]}, {labels[i]}) = 1 points from block {second + 1} back to block {first + 1}",
                            second + 1,
                            first + 1,
                            labels[j],
                            labels[i],
                        )
                    if forward and second != first + 1:
                        raise BlockConditionViolated(
                            f"Ω({labels[i]}, {labels[j]}) = 1 skips from block {first + 1} to block {second + 1}",
                            first + 1,
                            second + 1,
                            labels[i],
                            labels[j],
                        )
                    linked = linked or bool(forward)
            if second == first + 1 and not linked:
                raise BlockConditionViolated(
                    f"no arc links block {first + 1} to block {second + 1}",
                    first + 1,
                    second + 1,
                )
    return BlockDecomposition(B, blocks)


def first_active_block(D: BlockDecomposition, x: int) -> int:
    """Least (1-based) block containing a generator that moves x."""
    B = D.basis
    B.form.check(x)
    for position, block in enumerate(D.blocks, start=1):
        if any(parity(x & B.right_masks[i]) for i in block):
            return position
    raise AllFixed(f"{x:#x} is fixed by every generator")


def predicted_orbit(D: BlockDecomposition, x: int, check: bool = True) -> frozenset[int]:
    """Γ_{B_L}(x) + span(B_{L+1} ∪ ... ∪ B_r), L the first active block."""
    position = first_active_block(D, x)
    local = orbit(D.generators[position - 1], x)
    later = D.later_span(position)
    predicted = frozenset(y ^ s for y in local for s in later)
    if check:
        actual = orbit(D.basis, x)
        if actual != predicted:
            raise PredictionMismatch(
                f"predicted {len(predicted)} vectors for the orbit of {x:#x}, brute force found {len(actual)}"
            )
    return predicted


def block_partition(D: BlockDecomposition) -> OrbitPartition:
    """Orbit partition of the ambient space assembled from predictions and fixed points."""
    domain = Domain.whole(D.basis.n)
    check_budget(domain)
    masks = D.basis.right_masks
    covered: set[int] = set()
    classes = []
    for x in domain.members():
        if x in covered:
            continue
        if not any(parity(x & mask) for mask in masks):
            members = frozenset([x])
        else:
            members = predicted_orbit(D, x, check=False)
        covered.update(members)
        classes.append(members)
    logger.debug("assembled %d classes from %d blocks", len(classes), len(D.blocks))
    return partition_from_blocks(domain, classes)


# =========================================================================
# Path criterion
# =========================================================================


@dataclass(frozen=True)
class PathLemmaResult:
    hypotheses_hold: bool
    path: tuple[int, ...]
    in_orbit: bool | None
    interpretation: str = PATH_INTERPRETATION


def _shortest_path(B: GeneratingSet, sources: list[int], target: int) -> tuple[int, ...]:
    parent = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        v = queue.popleft()
        if v == target:
            break
        for u in bits(B.graph.adjacency[v]):
            if u not in parent:
                parent[u] = v
                queue.append(u)
    if target not in parent:
        return ()
    path = [target]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])
    return tuple(reversed(path))


def path_lemma_check(B: GeneratingSet, x: int, b: int) -> PathLemmaResult:
    """
    Evaluate the path criterion for x + B[b].

    T(x) is the set of generators moving x and P = [b_0, ..., b_k = b] a
    shortest path from T(x) in Gr(B). When Ω(b_i, b_{i+1}) = 1 along P and Ω
    is not alternating on span(P), x + b must lie in the orbit of x; k = 0 is
    the single transvection τ_b. Violations raise LemmaViolated.
    """
    B.form.check(x)
    moving = [i for i, mask in enumerate(B.right_masks) if parity(x & mask)]
    if not moving:
        raise AllFixed(f"{x:#x} is fixed by every generator")
    path = _shortest_path(B, moving, b)
    if not path:
        return PathLemmaResult(False, (), None)
    if len(path) == 1:
        holds = True
    else:
        forward = all(parity(B.form.left(B[u]) & B[v]) for u, v in zip(path, path[1:]))
        holds = forward and not B.form.is_alternating_on([B[i] for i in path])
    if not holds:
        return PathLemmaResult(False, path, None)
    if x ^ B[b] not in orbit(B, x):
        raise LemmaViolated(f"{B.labels[b]} satisfies the path criterion but x + {B.labels[b]} left the orbit")
    return PathLemmaResult(True, path, True)
