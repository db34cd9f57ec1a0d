"""
The verify harness: every property suite applicable to a loaded document,
each reported as a named Check.

Suites that need an alternating form or a connected generating set report
a passing "skipped" check when the document does not qualify.
"""

import logging
import random
from collections.abc import Callable, Iterator
from dataclasses import dataclass, field
from functools import cached_property

import networkx as nx

from transvect.config import settings
from transvect.schemas.reports import Check
from transvect.services.blockforms import block_partition, path_lemma_check, predicted_orbit
from transvect.services.classify import (
    BasisClassifier,
    deletion_check,
    gamma_invariance_check,
    label_partition,
    tree_arf,
)
from transvect.services.constants import VerifyLevel
from transvect.services.cosets import classify_ambient
from transvect.services.documents import LoadedForm
from transvect.services.errors import ArfUndefined, TransvectError
from transvect.services.f2core import arf, bits, parity, quotient_dim
from transvect.services.formsgraphs import Graph, is_connected
from transvect.services.moves import basis_for_graph, equivalence_class, recognize, scramble
from transvect.services.orbits import DeltaSearch, Domain, delta_orbit, orbit, orbit_partition, transvect

logger = logging.getLogger(__name__)

Outcome = tuple[bool, str]

ORACLE_DIM_LIMIT = 9


def skipped(reason: str) -> Outcome:
    return True, f"skipped: {reason}"


# =========================================================================
# Graph sweep
# =========================================================================


@dataclass(frozen=True)
class SweepResult:
    graphs: int
    classes: int
    mismatches: tuple[str, ...]


def connected_graph_sweep(max_vertices: int = 6, min_vertices: int = 2) -> SweepResult:
    """recognize against exhaustive move exploration on every connected graph in range."""
    label_of_class: dict[str, set[str]] = {}
    class_of_label: dict[str, set[str]] = {}
    count = 0
    for atlas_graph in nx.graph_atlas_g():
        n = atlas_graph.number_of_nodes()
        if not min_vertices <= n <= max_vertices or not nx.is_connected(atlas_graph):
            continue
        count += 1
        graph = Graph.from_networkx(atlas_graph)
        label = str(recognize(basis_for_graph(graph)))
        class_id = min(member.key for member in equivalence_class(graph))
        label_of_class.setdefault(class_id, set()).add(label)
        class_of_label.setdefault(label, set()).add(class_id)
    mismatches = [f"class {c} has labels {sorted(ls)}" for c, ls in sorted(label_of_class.items()) if len(ls) > 1]
    mismatches += [f"label {l} covers classes {sorted(cs)}" for l, cs in sorted(class_of_label.items()) if len(cs) > 1]
    logger.debug("swept %d graphs in %d classes", count, len(label_of_class))
    return SweepResult(count, len(label_of_class), tuple(mismatches))


# =========================================================================
# Suites
# =========================================================================


@dataclass
class VerifySuite:
    loaded: LoadedForm
    level: VerifyLevel = VerifyLevel.QUICK
    seed: int = field(default_factory=lambda: settings.seed)

    @property
    def trials(self) -> int:
        return settings.full_trials if self.level == VerifyLevel.FULL else settings.quick_trials

    @cached_property
    def rng(self) -> random.Random:
        return random.Random(self.seed)

    @property
    def basis(self):
        return self.loaded.generators

    @cached_property
    def alternating(self) -> bool:
        return self.basis.form.is_alternating_on(self.basis.vectors)

    @cached_property
    def connected(self) -> bool:
        return len(self.basis) > 0 and is_connected(self.basis.graph)

    @cached_property
    def classifier(self) -> BasisClassifier:
        return BasisClassifier(self.basis)

    def __call__(self) -> list[Check]:
        checks = [self._run(name, suite) for name, suite in self._suites()]
        failed = [check.name for check in checks if not check.passed]
        logger.debug("verify finished: %d checks, %d failed", len(checks), len(failed))
        return checks

    def _run(self, name: str, suite: Callable[[], Outcome]) -> Check:
        try:
            passed, detail = suite()
        except TransvectError as exc:
            passed, detail = False, f"{type(exc).__name__}: {exc.detail}"
        return Check(name=name, passed=passed, detail=detail)

    def _suites(self) -> Iterator[tuple[str, Callable[[], Outcome]]]:
        yield "transvection involution", self.transvection_involution
        yield "fixed set characterization", self.fixed_set_characterization
        yield "delta contains B", self.delta_contains_b
        yield "V0/V000 codimension", self.v000_codimension
        yield "recognition move invariance", self.recognition_move_invariance
        yield "Q invariance", self.q_invariance
        yield "level sets", self.level_sets
        yield "d formula vs oracle", self.d_formula_vs_oracle
        yield "count corollaries", self.count_corollaries
        yield "V000 from subgraphs", self.v000_spanning
        yield "deletion corollary", self.deletion_corollary
        yield "tree Arf", self.tree_arf_agreement
        yield "coset classification", self.coset_classification
        yield "block prediction", self.block_prediction
        yield "path criterion", self.path_criterion
        if self.level == VerifyLevel.FULL:
            yield "connected graph sweep", self.graph_sweep

    def _random_vector(self) -> int:
        return self.rng.getrandbits(self.basis.n) if self.basis.n else 0

    def _broom_basis(self) -> Outcome | None:
        """None when the broom suites apply, otherwise the skip outcome."""
        if not self.alternating or not self.connected or len(self.basis) < 2:
            return skipped("needs a connected generating set with an alternating form")
        if not self.classifier.label.is_dtype:
            return skipped(f"class {self.classifier.label} is not a broom")
        return None

    # =========================================================================
    # Arbitrary forms
    # =========================================================================

    def transvection_involution(self) -> Outcome:
        for _ in range(self.trials):
            x = self._random_vector()
            for b in self.basis:
                if transvect(self.basis.form, b, transvect(self.basis.form, b, x)) != x:
                    return False, f"τ applied twice moved {self.loaded.render_vector(x)}"
        return True, f"{self.trials} vectors"

    def fixed_set_characterization(self) -> Outcome:
        for _ in range(self.trials):
            x = self._random_vector()
            fixed = not any(parity(x & mask) for mask in self.basis.right_masks)
            if fixed != (len(orbit(self.basis, x)) == 1):
                return False, f"generator test disagrees with the orbit of {self.loaded.render_vector(x)}"
        return True, f"{self.trials} vectors"

    # =========================================================================
    # Alternating, connected bases
    # =========================================================================

    def delta_contains_b(self) -> Outcome:
        if not self.alternating or not self.connected:
            return skipped("needs a connected generating set with an alternating form")
        return True, f"|Δ| = {len(delta_orbit(self.basis))}"

    def v000_codimension(self) -> Outcome:
        if not self.alternating or not self.connected:
            return skipped("needs a connected generating set with an alternating form")
        codim = quotient_dim(self.classifier.kernel, self.classifier.kernel_000)
        return codim <= 1, f"dim V0/V000 = {codim}"

    def recognition_move_invariance(self) -> Outcome:
        if not self.alternating or not self.connected or len(self.basis) < 2:
            return skipped("needs a connected generating set with an alternating form")
        label = self.classifier.label
        rounds = 3 if self.level == VerifyLevel.QUICK else 10
        for _ in range(rounds):
            moved = scramble(self.basis, 20, self.rng)
            if recognize(moved) != label:
                return False, f"{label} became {recognize(moved)} after moves"
        return True, str(label)

    def q_invariance(self) -> Outcome:
        if not self.alternating:
            return skipped("the form is not alternating on span(B)")
        passed = gamma_invariance_check(self.basis, self.classifier.quadratic, self.trials, self.rng)
        return passed, f"{self.trials} trials"

    def level_sets(self) -> Outcome:
        if not self.alternating or not self.connected or len(self.basis) < 2:
            return skipped("needs a connected generating set with an alternating form")
        domain = Domain.subspace(self.basis.span)
        brute = orbit_partition(self.basis, domain)
        closed = label_partition(self.classifier)
        if not self.classifier.label.is_dtype:
            moving = len(brute.classes) - brute.fixed_count
            if moving != 2:
                return False, f"{moving} moving orbits in a class containing E6"
        return closed.blocks() == brute.blocks(), f"{len(brute.classes)} orbits on span(B)"

    def d_formula_vs_oracle(self) -> Outcome:
        if outcome := self._broom_basis():
            return outcome
        if len(self.basis) > ORACLE_DIM_LIMIT:
            return skipped(f"oracle limited to dimension {ORACLE_DIM_LIMIT}")
        targets = [x for x in self.basis.span if x not in self.classifier.kernel]
        decompositions = DeltaSearch(self.basis).minimal_decompositions(targets)
        for x in targets:
            if self.classifier.d_formula(x) != decompositions[x].d:
                return False, f"d({self.loaded.render_vector(x)}) disagrees with the oracle"
        return True, f"{len(targets)} vectors"

    def count_corollaries(self) -> Outcome:
        if outcome := self._broom_basis():
            return outcome
        m, k = self.classifier.label.first, self.classifier.label.second
        partition = orbit_partition(self.basis, Domain.subspace(self.basis.span))
        fixed, moving = partition.fixed_count, len(partition.classes) - partition.fixed_count
        expected = (2 ** (k - 1), (m + 1) // 2) if m % 2 else (2**k, m // 2)
        return (fixed, moving) == expected, f"fixed={fixed} moving={moving} expected={expected}"

    def v000_spanning(self) -> Outcome:
        if outcome := self._broom_basis():
            return outcome
        if len(self.basis) < 3:
            return skipped("needs dim >= 3")
        return True, f"dim V000 = {self.classifier.v000_from_subgraphs().dim}"

    def deletion_corollary(self) -> Outcome:
        if outcome := self._broom_basis():
            return outcome
        if self.classifier.label.second < 2:
            return skipped("needs k >= 2")
        triples = 0
        for u in self.classifier.kernel_000:
            for b in bits(self.basis.coordinates(u)):
                deletion_check(self.basis, u, b)
                triples += 1
        return True, f"{triples} (u, b) pairs"

    def tree_arf_agreement(self) -> Outcome:
        if not self.alternating or not self.connected or len(self.basis.graph.edges()) != len(self.basis) - 1:
            return skipped("Gr(B) is not a tree with an alternating form")
        try:
            expected = arf(self.classifier.quadratic)
        except ArfUndefined:
            expected = None
        try:
            peeled = tree_arf(self.basis)
        except ArfUndefined:
            peeled = None
        return expected == peeled, f"Arf = {expected}"

    # =========================================================================
    # Cosets and blocks
    # =========================================================================

    def coset_classification(self) -> Outcome:
        if self.basis.span.dim == self.basis.n:
            return skipped("B spans the ambient space")
        if not self.loaded.form.alternating or not self.connected or len(self.basis) < 2:
            return skipped("needs an alternating ambient form and a connected generating set")
        brute = orbit_partition(self.basis, Domain.whole(self.basis.n))
        closed = classify_ambient(self.basis)
        return closed.blocks() == brute.blocks(), f"{len(brute.classes)} orbits on the ambient space"

    def block_prediction(self) -> Outcome:
        decomposition = self.loaded.blocks
        if decomposition is None:
            return skipped("no blocks declared")
        masks = self.basis.right_masks
        moving = [
            x for x in range(1 << self.basis.n) if any(parity(x & mask) for mask in masks)
        ]
        for x in moving:
            predicted_orbit(decomposition, x, check=True)
        assembled = block_partition(decomposition)
        return True, f"{len(moving)} moving vectors, {len(assembled.classes)} orbits"

    def path_criterion(self) -> Outcome:
        if self.alternating:
            return skipped("the criterion only concerns non-alternating forms")
        checked = held = 0
        masks = self.basis.right_masks
        for _ in range(self.trials):
            x = self._random_vector()
            if not any(parity(x & mask) for mask in masks):
                continue
            for b in range(len(self.basis)):
                held += path_lemma_check(self.basis, x, b).hypotheses_hold
                checked += 1
        return True, f"{checked} pairs, hypotheses held on {held}"

    def graph_sweep(self) -> Outcome:
        result = connected_graph_sweep(6)
        detail = f"{result.graphs} graphs, {result.classes} classes"
        return not result.mismatches, "; ".join((detail,) + result.mismatches[:3])


def verify(loaded: LoadedForm, level: VerifyLevel = VerifyLevel.QUICK, seed: int | None = None) -> list[Check]:
    return VerifySuite(loaded, level, settings.seed if seed is None else seed)()
