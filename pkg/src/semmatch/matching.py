"""Bipartite max-min (bottleneck) matching between two concept lists.

The left side is the requesting service's concepts, the right side a
candidate's. Edges carry a DegreeOfMatch label; FAIL pairs produce no
edge. The matcher finds a complete matching of the left side whose
minimum edge label is maximal, by descending the lattice and testing
saturation with augmenting paths. A factorial brute-force twin serves
as the testing oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterator, Sequence

from .errors import SemMatchError
from .ontology import DegreeOfMatch, Ontology


class InstanceTooLargeError(SemMatchError):
    """Brute-force enumeration refused: left side exceeds the size guard."""


BRUTE_FORCE_LIMIT = 8


@dataclass(frozen=True)
class MatchGraph:
    """Labeled bipartite graph between two ordered concept lists."""

    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: dict[tuple[int, int], DegreeOfMatch]

    def __post_init__(self):
        for (i, j), label in self.edges.items():
            if not (0 <= i < len(self.left) and 0 <= j < len(self.right)):
                raise ValueError(f"edge ({i}, {j}) out of range")
            if label is DegreeOfMatch.FAIL:
                raise ValueError("FAIL pairs must be omitted, not labeled")

    def label(self, i: int, j: int) -> DegreeOfMatch:
        """Label of the (i, j) pair; FAIL when the pair has no edge."""
        return self.edges.get((i, j), DegreeOfMatch.FAIL)

    def neighbors(self, i: int, at_least: DegreeOfMatch) -> list[int]:
        """Right indices adjacent to left vertex i with label >= at_least, ascending."""
        return [j for j in range(len(self.right)) if self.label(i, j) >= at_least]


@dataclass(frozen=True)
class Assignment:
    """Injective pairing covering every left vertex exactly once."""

    pairs: tuple[tuple[int, int], ...]

    def right_of(self, i: int) -> int:
        for left, right in self.pairs:
            if left == i:
                return right
        raise KeyError(i)

    def min_label(self, graph: MatchGraph) -> DegreeOfMatch:
        """Weakest edge used; EXACT for the vacuous empty assignment."""
        if not self.pairs:
            return DegreeOfMatch.EXACT
        return min(graph.label(i, j) for i, j in self.pairs)


@dataclass(frozen=True)
class BottleneckResult:
    """Outcome of max-min matching: a degree, and a witness unless it failed."""

    degree: DegreeOfMatch
    assignment: Assignment | None

    def __post_init__(self):
        if (self.degree is DegreeOfMatch.FAIL) != (self.assignment is None):
            raise ValueError("assignment must be present exactly when degree != FAIL")


FAILED = BottleneckResult(DegreeOfMatch.FAIL, None)


def build_graph(ont: Ontology, left: Sequence[str], right: Sequence[str], stats=None) -> MatchGraph:
    """Label every left x right pair via the ontology; drop FAIL pairs.

    ``stats``, when given, has its ``evaluations`` counter bumped once per
    degree-of-match computation.
    """
    edges: dict[tuple[int, int], DegreeOfMatch] = {}
    for i, a in enumerate(left):
        for j, b in enumerate(right):
            degree = ont.degree_of_match(a, b)
            if stats is not None:
                stats.evaluations += 1
            if degree is not DegreeOfMatch.FAIL:
                edges[(i, j)] = degree
    return MatchGraph(tuple(left), tuple(right), edges)


_THRESHOLDS = (DegreeOfMatch.EXACT, DegreeOfMatch.PLUGIN, DegreeOfMatch.SUBSUME)


def bottleneck_match(graph: MatchGraph) -> BottleneckResult:
    """Complete matching of the left side maximizing the minimum edge label.

    Thresholding: for each degree descending EXACT -> PLUGIN -> SUBSUME,
    keep only edges at least that strong and test whether the left side can
    be saturated; the first degree that succeeds is the answer. An empty
    left side is vacuously satisfied and scores EXACT. FAIL (with no
    assignment) means no complete matching exists at any threshold.
    """
    if not graph.left:
        return BottleneckResult(DegreeOfMatch.EXACT, Assignment(()))
    if len(graph.left) > len(graph.right):
        return FAILED
    for threshold in _THRESHOLDS:
        assignment = _saturate(graph, threshold)
        if assignment is not None:
            return BottleneckResult(threshold, assignment)
    return FAILED


def _saturate(graph: MatchGraph, threshold: DegreeOfMatch) -> Assignment | None:
    """Kuhn's augmenting-path matching over edges labeled >= threshold.

    Left vertices are processed in list order and right candidates tried in
    ascending index order, so the returned assignment is deterministic.
    """
    adjacency = [graph.neighbors(i, threshold) for i in range(len(graph.left))]
    matched_left_of = [-1] * len(graph.right)

    def augment(i: int, visited: list[bool]) -> bool:
        for j in adjacency[i]:
            if visited[j]:
                continue
            visited[j] = True
            if matched_left_of[j] == -1 or augment(matched_left_of[j], visited):
                matched_left_of[j] = i
                return True
        return False

    for i in range(len(graph.left)):
        if not augment(i, [False] * len(graph.right)):
            return None
    pairs = sorted((i, j) for j, i in enumerate(matched_left_of) if i != -1)
    return Assignment(tuple(pairs))


def brute_force_bottleneck(graph: MatchGraph) -> BottleneckResult:
    """Oracle twin of bottleneck_match: enumerate every injective mapping.

    Guarded to |left| <= BRUTE_FORCE_LIMIT since enumeration is factorial.
    The returned degree always equals bottleneck_match's on the same graph;
    the witnessing assignment may differ when several optima exist.
    """
    n = len(graph.left)
    if n > BRUTE_FORCE_LIMIT:
        raise InstanceTooLargeError(
            f"left side has {n} vertices; brute force is limited to {BRUTE_FORCE_LIMIT}"
        )
    if n == 0:
        return BottleneckResult(DegreeOfMatch.EXACT, Assignment(()))

    best: tuple[DegreeOfMatch, Assignment] | None = None
    for candidate in _complete_matchings(graph):
        weight = candidate.min_label(graph)
        if best is None or weight > best[0]:
            best = (weight, candidate)
    if best is None:
        return FAILED
    return BottleneckResult(best[0], best[1])


def _complete_matchings(graph: MatchGraph) -> Iterator[Assignment]:
    """Every injective left-saturating pairing that uses only existing edges."""
    n = len(graph.left)
    for rights in permutations(range(len(graph.right)), n):
        if all((i, j) in graph.edges for i, j in enumerate(rights)):
            yield Assignment(tuple(enumerate(rights)))
