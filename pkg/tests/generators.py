"""Seeded random inputs and independent oracles shared across test modules.

The oracles here deliberately use different algorithms from the package:
connected components by BFS instead of union-find, reachability by BFS
instead of a precomputed closure, so agreement is meaningful.
"""

from __future__ import annotations

import random

from semmatch import DegreeOfMatch, MatchGraph, Ontology, RelationKind

LABELS = (DegreeOfMatch.EXACT, DegreeOfMatch.PLUGIN, DegreeOfMatch.SUBSUME)


def random_match_graph(rng: random.Random, max_side: int = 5) -> MatchGraph:
    """Graph with side sizes <= max_side; each pair gets E/P/S/absent uniformly."""
    n_left = rng.randint(0, max_side)
    n_right = rng.randint(0, max_side)
    edges = {}
    for i in range(n_left):
        for j in range(n_right):
            pick = rng.randrange(4)
            if pick < 3:
                edges[(i, j)] = LABELS[pick]
    left = tuple(f"L{i}" for i in range(n_left))
    right = tuple(f"R{j}" for j in range(n_right))
    return MatchGraph(left, right, edges)


def random_dag_ontology(
    rng: random.Random,
    max_concepts: int = 12,
    edge_prob: float = 0.3,
    alias_prob: float = 0.25,
) -> Ontology:
    """Random multi-parent DAG with equivalence aliases.

    Subclass edges always point from a higher index to a lower one, so the
    base graph is acyclic by construction. Equivalences are modeled as
    fresh alias concepts with no subclass edges of their own, which cannot
    create cycles under lifting.
    """
    n = rng.randint(1, max_concepts)
    concepts = [f"c{i}" for i in range(n)]
    edges = []
    for child in range(1, n):
        for parent in range(child):
            if rng.random() < edge_prob:
                edges.append((concepts[child], concepts[parent]))
    equivalences = []
    aliases = []
    for i in range(n):
        if rng.random() < alias_prob:
            alias = f"a{i}"
            aliases.append(alias)
            equivalences.append((alias, concepts[i]))
    return Ontology(concepts + aliases, subclass_edges=edges, equivalences=equivalences)


def naive_relation(ont: Ontology, a: str, b: str) -> RelationKind:
    """Classify (a, b) by plain graph traversal over the declared sets."""
    component = _components(ont)
    ca, cb = component[a], component[b]
    if ca == cb:
        return RelationKind.EQUAL
    direct = {(component[child], component[parent]) for child, parent in ont.subclass_edges}
    if (ca, cb) in direct:
        return RelationKind.DIRECT_SUBCLASS_OF
    if _reachable(direct, ca, cb):
        return RelationKind.SUBSUMED_BY
    if _reachable(direct, cb, ca):
        return RelationKind.SUBSUMES
    return RelationKind.UNRELATED


def _components(ont: Ontology) -> dict[str, int]:
    adjacency: dict[str, set[str]] = {c: set() for c in ont.concepts}
    for pair in ont.equivalences:
        x, y = tuple(pair)
        adjacency[x].add(y)
        adjacency[y].add(x)
    component: dict[str, int] = {}
    for index, start in enumerate(sorted(ont.concepts)):
        if start in component:
            continue
        queue = [start]
        while queue:
            node = queue.pop()
            if node in component:
                continue
            component[node] = index
            queue.extend(adjacency[node])
    return component


def _reachable(direct: set[tuple[int, int]], source: int, target: int) -> bool:
    frontier = [source]
    seen = {source}
    while frontier:
        node = frontier.pop()
        for child, parent in direct:
            if child == node and parent not in seen:
                if parent == target:
                    return True
                seen.add(parent)
                frontier.append(parent)
    return False
