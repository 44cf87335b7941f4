"""Tests for multigraphs, neighborhoods and canonical codes."""

import random

import numpy as np
import pytest

from src.errors import DuplicateLabel, LoopForbidden, TooLarge, UnknownEndpoint, UnknownVertex
from src.multigraph import (
    Dart,
    Multigraph,
    adjacency_matrix,
    build_graph,
    canonical_code,
    canonical_representative,
    graph_from_matrix,
    induced_neighborhood,
    is_connected,
    is_simple_vertex,
)
from tests.conftest import complete_graph, cycle_graph

pytestmark = pytest.mark.unit


class TestBuildGraph:
    """Test graph construction and validation."""

    def test_dense_ids_follow_label_order(self):
        g = build_graph(["x", "y", "z"], [("x", "y"), ("y", "z")])

        assert g.n == 3
        assert g.m == 2
        assert g.index("z") == 2
        assert g.label(0) == "x"
        assert g.ends == ((0, 1), (1, 2))

    def test_duplicate_label(self):
        with pytest.raises(DuplicateLabel):
            build_graph(["a", "a"], [])

    def test_unknown_endpoint(self):
        with pytest.raises(UnknownEndpoint):
            build_graph(["a", "b"], [("a", "c")])

    def test_loop_forbidden_by_default(self):
        with pytest.raises(LoopForbidden):
            build_graph(["a"], [("a", "a")])

    def test_loop_counts_twice_in_degree(self):
        g = build_graph(["a", "b"], [("a", "a"), ("a", "b")], loops_allowed=True)

        assert g.has_loops
        assert g.degree(0) == 3
        assert g.loop_count(0) == 1
        assert g.darts_at(0) == (Dart(0, 0), Dart(0, 1), Dart(1, 0))
        assert g.degree_sum() == 2 * g.m

    def test_unknown_vertex_lookup(self, k4_graph):
        with pytest.raises(UnknownVertex):
            k4_graph.index("q")
        with pytest.raises(UnknownVertex):
            k4_graph.darts_at(7)

    def test_errors_are_value_errors(self):
        """Input validation errors can be caught as ValueError."""
        with pytest.raises(ValueError):
            build_graph(["a", "a"], [])


class TestDarts:
    """Test darts and adjacency queries."""

    def test_partner_flips_end(self):
        assert Dart(3, 0).partner() == Dart(3, 1)
        assert Dart(3, 1).partner().partner() == Dart(3, 1)

    def test_far_end_and_vertex_of(self):
        g = build_graph(["a", "b"], [("a", "b")])

        assert g.vertex_of(Dart(0, 0)) == 0
        assert g.far_end(Dart(0, 0)) == 1

    def test_multiplicity_and_neighbors(self):
        g = build_graph(["a", "b", "c"], [("a", "b"), ("b", "a"), ("b", "c")])

        assert g.multiplicity(0, 1) == 2
        assert g.multiplicity(1, 0) == 2
        assert g.multiplicity(0, 2) == 0
        assert g.neighbors(1) == [0, 2]
        assert not g.adjacent(0, 2)
        assert not g.is_simple

    def test_with_extra_edge(self, k4_graph):
        bigger = k4_graph.with_extra_edge(0)

        assert bigger.m == 7
        assert bigger.ends[6] == k4_graph.ends[0]
        assert bigger.multiplicity(0, 1) == 2


class TestNeighborhoods:
    """Test simple vertices and induced neighborhoods."""

    def test_simple_vertex(self, k4_graph):
        assert all(is_simple_vertex(k4_graph, v) for v in k4_graph.vertices)

    def test_parallel_edges_make_vertex_non_simple(self):
        g = build_graph(["a", "b", "c"], [("a", "b"), ("a", "b"), ("b", "c")])

        assert not is_simple_vertex(g, 0)
        assert is_simple_vertex(g, 2)

    def test_loop_makes_vertex_non_simple(self):
        g = build_graph(["a", "b"], [("a", "a"), ("a", "b")], loops_allowed=True)

        assert not is_simple_vertex(g, 0)

    def test_neighborhood_of_k4_vertex_is_triangle(self, k4_graph):
        nbhd = induced_neighborhood(k4_graph, 0)

        assert nbhd.labels == ("b", "c", "d")
        assert nbhd.m == 3

    def test_neighborhood_keeps_multiplicities(self):
        g = build_graph(
            ["v", "a", "b"], [("v", "a"), ("v", "b"), ("a", "b"), ("a", "b")]
        )

        nbhd = induced_neighborhood(g, 0)
        assert nbhd.multiplicity(0, 1) == 2


class TestConnectivity:
    def test_empty_graph_is_connected(self):
        assert is_connected(build_graph([], []))

    def test_isolated_vertices(self):
        assert not is_connected(build_graph(["a", "b"], []))

    def test_cycle_is_connected(self, c4_graph):
        assert is_connected(c4_graph)


class TestCanonicalCode:
    """Test isomorphism-invariant codes."""

    def test_relabeling_keeps_code(self):
        g1 = build_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("a", "c")])
        g2 = build_graph(["p", "q", "r", "s"], [("s", "r"), ("q", "p"), ("q", "s"), ("p", "s")])

        assert canonical_code(g1) == canonical_code(g2)

    def test_non_isomorphic_graphs_differ(self):
        path = build_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d")])
        star = build_graph(["a", "b", "c", "d"], [("a", "b"), ("a", "c"), ("a", "d")])

        assert canonical_code(path) != canonical_code(star)

    def test_multiplicity_is_part_of_the_code(self):
        single = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
        doubled = build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a"), ("a", "b")])

        assert canonical_code(single) != canonical_code(doubled)

    def test_code_starts_with_vertex_count(self, k4_graph):
        assert canonical_code(k4_graph)[0] == 4

    def test_too_large(self):
        with pytest.raises(TooLarge):
            canonical_code(cycle_graph("abcdefghijk"))

    def test_representative_is_shared_by_isomorphic_copies(self):
        g1 = cycle_graph("abcde")
        g2 = build_graph(
            ["1", "2", "3", "4", "5"],
            [("1", "3"), ("3", "5"), ("5", "2"), ("2", "4"), ("4", "1")],
        )

        r1 = canonical_representative(g1)
        assert r1 == canonical_representative(g2)
        assert r1.labels == ("0", "1", "2", "3", "4")
        assert canonical_code(r1) == canonical_code(g1)


def random_multigraph(rng: random.Random, max_n: int) -> Multigraph:
    """Random multigraph with loops, parallel edges and possibly isolated vertices."""
    n = rng.randint(1, max_n)
    labels = [f"v{i}" for i in range(n)]
    edges = [(rng.choice(labels), rng.choice(labels)) for _ in range(rng.randint(0, 2 * n))]
    return build_graph(labels, edges, loops_allowed=True)


def shuffled_copy(g: Multigraph, rng: random.Random) -> Multigraph:
    """Isomorphic copy with fresh labels, vertex order, edge order and endpoint order."""
    perm = list(g.vertices)
    rng.shuffle(perm)
    labels = [f"w{perm[v]}" for v in g.vertices]
    edges = [
        (labels[u], labels[w]) if rng.random() < 0.5 else (labels[w], labels[u])
        for u, w in g.ends
    ]
    rng.shuffle(edges)
    order = list(labels)
    rng.shuffle(order)
    return build_graph(order, edges, loops_allowed=True)


class TestCanonicalCodeInvariance:
    """Relabeling never changes the canonical code."""

    def _check(self, seed: int, count: int, max_n: int) -> None:
        rng = random.Random(seed)
        for _ in range(count):
            g = random_multigraph(rng, max_n)
            h = shuffled_copy(g, rng)

            assert canonical_code(h) == canonical_code(g)
            assert canonical_representative(h) == canonical_representative(g)

    def test_random_relabelings(self):
        self._check(seed=1, count=200, max_n=6)

    @pytest.mark.slow
    def test_random_relabelings_up_to_seven_vertices(self):
        self._check(seed=2, count=1000, max_n=7)


class TestMatrices:
    def test_adjacency_matrix_diagonal_holds_loops(self):
        g = build_graph(["a", "b"], [("a", "a"), ("a", "b"), ("a", "b")], loops_allowed=True)

        matrix = adjacency_matrix(g)
        assert matrix.tolist() == [[1, 2], [2, 0]]

    def test_graph_from_matrix(self):
        matrix = np.array([[0, 2, 1], [2, 0, 0], [1, 0, 0]])

        g = graph_from_matrix(matrix)
        assert g.labels == ("0", "1", "2")
        assert g.ends == ((0, 1), (0, 1), (0, 2))

    def test_complete_graph_matrix(self):
        matrix = adjacency_matrix(complete_graph("abc"))

        assert matrix.sum() == 6
        assert np.all(np.diag(matrix) == 0)
