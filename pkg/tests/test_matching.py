import random

import pytest

from semmatch import (
    Assignment,
    DegreeOfMatch,
    InstanceTooLargeError,
    MatchGraph,
    bottleneck_match,
    brute_force_bottleneck,
    build_graph,
)

from .generators import random_match_graph

E, P, S, F = (
    DegreeOfMatch.EXACT,
    DegreeOfMatch.PLUGIN,
    DegreeOfMatch.SUBSUME,
    DegreeOfMatch.FAIL,
)


def graph(n_left: int, n_right: int, edges: dict) -> MatchGraph:
    left = tuple(f"L{i}" for i in range(n_left))
    right = tuple(f"R{j}" for j in range(n_right))
    return MatchGraph(left, right, edges)


class TestBuildGraph:
    def test_identity_pair(self, vehicles):
        g = build_graph(vehicles, ["Car"], ["Car"])
        assert g.edges == {(0, 0): E}

    def test_unrelated_pair_has_no_edge(self, vehicles):
        g = build_graph(vehicles, ["Car"], ["Boat"])
        assert g.edges == {}

    def test_two_by_two_labels(self, vehicles):
        g = build_graph(vehicles, ["SUV", "Vehicle"], ["Vehicle", "Car"])
        assert g.edges == {(0, 0): P, (0, 1): E, (1, 0): E, (1, 1): S}

    def test_duplicates_are_distinct_vertices(self, vehicles):
        g = build_graph(vehicles, ["Car", "Car"], ["Car"])
        assert g.edges == {(0, 0): E, (1, 0): E}

    def test_order_preserved(self, vehicles):
        g = build_graph(vehicles, ["SUV", "Car"], ["Boat", "Vehicle"])
        assert g.left == ("SUV", "Car")
        assert g.right == ("Boat", "Vehicle")


class TestBottleneckMatch:
    def test_single_forced_pair(self):
        result = bottleneck_match(graph(1, 1, {(0, 0): E}))
        assert result.degree is E
        assert result.assignment == Assignment(((0, 0),))

    def test_two_by_two_prefers_plugin_diagonal(self):
        # minima of the two perfect matchings are P (diagonal) and S (anti)
        g = graph(2, 2, {(0, 0): P, (0, 1): S, (1, 0): S, (1, 1): P})
        result = bottleneck_match(g)
        assert result.degree is P
        assert result.assignment == Assignment(((0, 0), (1, 1)))

    def test_pigeonhole_failure(self):
        result = bottleneck_match(graph(2, 1, {(0, 0): E, (1, 0): E}))
        assert result.degree is F
        assert result.assignment is None

    def test_empty_left_is_vacuously_exact(self):
        result = bottleneck_match(graph(0, 3, {}))
        assert result.degree is E
        assert result.assignment == Assignment(())

    def test_isolated_left_vertex_fails(self):
        result = bottleneck_match(graph(2, 2, {(0, 0): E, (0, 1): E}))
        assert result.degree is F

    def test_augmenting_reassignment(self):
        # left 1 only fits right 0, so left 0 must be rerouted to right 1
        g = graph(2, 2, {(0, 0): E, (0, 1): P, (1, 0): E})
        result = bottleneck_match(g)
        assert result.degree is P
        assert result.assignment == Assignment(((0, 1), (1, 0)))

    def test_threshold_steps_down_to_subsume(self):
        g = graph(2, 2, {(0, 0): E, (1, 1): S})
        result = bottleneck_match(g)
        assert result.degree is S


class TestBruteForce:
    def test_empty_left(self):
        result = brute_force_bottleneck(graph(0, 2, {}))
        assert result.degree is E
        assert result.assignment == Assignment(())

    def test_two_by_two(self):
        g = graph(2, 2, {(0, 0): P, (0, 1): S, (1, 0): S, (1, 1): P})
        assert brute_force_bottleneck(g).degree is P

    def test_one_by_two_picks_stronger_edge(self):
        g = graph(1, 2, {(0, 0): S, (0, 1): P})
        result = brute_force_bottleneck(g)
        assert result.degree is P
        assert result.assignment == Assignment(((0, 1),))

    def test_size_guard(self):
        g = graph(9, 9, {(i, i): E for i in range(9)})
        with pytest.raises(InstanceTooLargeError):
            brute_force_bottleneck(g)


SEEDED = [random.Random(2000 + k) for k in range(80)]


class TestMatchingProperties:
    @pytest.mark.parametrize("rng", SEEDED)
    def test_oracle_equivalence(self, rng):
        for _ in range(8):
            g = random_match_graph(rng)
            assert bottleneck_match(g).degree is brute_force_bottleneck(g).degree

    @pytest.mark.parametrize("rng", SEEDED[:30])
    def test_assignment_is_complete_injective_and_tight(self, rng):
        g = random_match_graph(rng)
        result = bottleneck_match(g)
        if result.degree is F:
            assert result.assignment is None
            return
        pairs = result.assignment.pairs
        lefts = [i for i, _ in pairs]
        rights = [j for _, j in pairs]
        assert lefts == list(range(len(g.left)))
        assert len(set(rights)) == len(rights)
        assert all(g.label(i, j) >= result.degree for i, j in pairs)
        if pairs:
            assert min(g.label(i, j) for i, j in pairs) is result.degree

    @pytest.mark.parametrize("rng", SEEDED[:30])
    def test_threshold_monotonicity(self, rng):
        g = random_match_graph(rng)
        degree = bottleneck_match(g).degree
        if degree is F or not g.left:
            return
        for weaker in DegreeOfMatch:
            if F < weaker <= degree:
                trimmed = {k: v for k, v in g.edges.items() if v >= weaker}
                assert bottleneck_match(MatchGraph(g.left, g.right, trimmed)).degree is not F

    @pytest.mark.parametrize("rng", SEEDED[:30])
    def test_permutation_invariance(self, rng):
        g = random_match_graph(rng)
        baseline = bottleneck_match(g).degree
        left_perm = list(range(len(g.left)))
        right_perm = list(range(len(g.right)))
        rng.shuffle(left_perm)
        rng.shuffle(right_perm)
        left_pos = {old: new for new, old in enumerate(left_perm)}
        right_pos = {old: new for new, old in enumerate(right_perm)}
        shuffled = MatchGraph(
            tuple(g.left[i] for i in left_perm),
            tuple(g.right[j] for j in right_perm),
            {(left_pos[i], right_pos[j]): v for (i, j), v in g.edges.items()},
        )
        assert bottleneck_match(shuffled).degree is baseline

    @pytest.mark.parametrize("rng", SEEDED[:30])
    def test_adding_an_edge_never_hurts(self, rng):
        g = random_match_graph(rng)
        baseline = bottleneck_match(g).degree
        absent = [
            (i, j)
            for i in range(len(g.left))
            for j in range(len(g.right))
            if (i, j) not in g.edges
        ]
        if not absent:
            return
        extra = dict(g.edges)
        extra[rng.choice(absent)] = rng.choice([E, P, S])
        assert bottleneck_match(MatchGraph(g.left, g.right, extra)).degree >= baseline

    @pytest.mark.parametrize("rng", SEEDED[:30])
    def test_dropping_a_right_vertex_never_helps(self, rng):
        g = random_match_graph(rng)
        if not g.right:
            return
        baseline = bottleneck_match(g).degree
        last = len(g.right) - 1
        trimmed = MatchGraph(
            g.left,
            g.right[:-1],
            {(i, j): v for (i, j), v in g.edges.items() if j != last},
        )
        assert bottleneck_match(trimmed).degree <= baseline

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_all_exact_graph_scores_exact(self, n):
        edges = {(i, j): E for i in range(n) for j in range(n + 1)}
        assert bottleneck_match(graph(n, n + 1, edges)).degree is E
