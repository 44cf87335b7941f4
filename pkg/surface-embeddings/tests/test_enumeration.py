"""Tests for graph and scheme enumeration and the verification claims."""

import itertools
import random

import networkx as nx
import pytest

from src.embedding import (
    Orientation,
    euler_genus,
    face_sets_equal,
    is_edge_maximal,
    is_sphere_triangulation,
    rotation_orientation_match,
    trace_faces,
)
from src.errors import Disconnected, RangeTooLarge, ValidationError
from src.enumeration import (
    EnumerationRange,
    VerificationReport,
    enumerate_classes,
    enumerate_graphs,
    enumerate_schemes,
    find_scheme,
    labeled_space_size,
    lemma1_fixture,
    verify_lemma1,
    verify_lh_bound,
    verify_loop_bound,
    verify_maximal_embeddings,
    verify_neighborhood_uniqueness,
)
from src.local_hamiltonicity import is_locally_hamiltonian, validate_ordering
from src.multigraph import build_graph, canonical_code
from src.serialization import dumps
from src.triangulation import side_decomposition

pytestmark = pytest.mark.unit


class TestEnumerationRange:
    def test_edge_counts(self):
        r = EnumerationRange(max_n=4)

        assert r.edge_counts(4) == range(3, 7)
        assert r.edge_counts(1) == range(0, 1)

    def test_exact_bound(self):
        r = EnumerationRange(max_n=4, exact_bound=True)

        assert list(r.edge_counts(4)) == [6]
        assert list(r.edge_counts(2)) == []

    def test_bound_slack_and_multiplicity(self):
        r = EnumerationRange(max_n=4, max_multiplicity=2, bound_slack=1)

        assert r.edge_counts(4) == range(3, 8)

    def test_labeled_space_size(self):
        assert labeled_space_size(EnumerationRange(max_n=3), 3) == 4
        assert labeled_space_size(EnumerationRange(max_n=3, max_multiplicity=2), 3) == 27

    def test_to_json(self):
        data = EnumerationRange(max_n=3).to_json()

        assert data["max_n"] == 3
        assert data["allow_loops"] is False


class TestEnumerateGraphs:
    """Test enumeration of isomorphism classes."""

    def test_connected_simple_graphs_up_to_four_vertices(self):
        graphs = enumerate_graphs(EnumerationRange(max_n=4))

        assert [g.n for g in graphs].count(4) == 6
        assert len(graphs) == 10

    def test_connected_simple_graphs_on_five_vertices(self):
        assert len(enumerate_graphs(EnumerationRange(max_n=5, min_n=5))) == 21

    def test_two_vertex_multigraphs(self):
        graphs = enumerate_graphs(EnumerationRange(max_n=2, min_n=2, max_multiplicity=3))

        assert sorted(g.m for g in graphs) == [1, 2, 3]

    def test_classes_are_distinct_and_sorted(self):
        classes = enumerate_classes(EnumerationRange(max_n=4, max_multiplicity=2))

        codes = [c.code for c in classes]
        assert len(set(codes)) == len(codes)
        keys = [(c.graph.n, c.graph.m, c.code) for c in classes]
        assert keys == sorted(keys)

    def test_classes_agree_with_networkx(self):
        graphs = enumerate_graphs(EnumerationRange(max_n=4, max_multiplicity=2, max_edges=5))

        for a, b in itertools.combinations(graphs, 2):
            if (a.n, a.m) == (b.n, b.m):
                assert not nx.is_isomorphic(a.to_networkx(), b.to_networkx())

    def test_representative_matches_code(self):
        for c in enumerate_classes(EnumerationRange(max_n=4)):
            assert canonical_code(c.graph) == c.code

    def test_threads_do_not_change_the_result(self):
        r = EnumerationRange(max_n=4, max_multiplicity=2)

        assert enumerate_graphs(r, threads=1) == enumerate_graphs(r, threads=4)

    def test_keep_filter(self):
        graphs = enumerate_graphs(EnumerationRange(max_n=4), keep=lambda g: g.m == 3)

        # triangle, path and star
        assert all(g.m == 3 for g in graphs)
        assert len(graphs) == 3

    def test_range_limits(self):
        with pytest.raises(RangeTooLarge):
            enumerate_graphs(EnumerationRange(max_n=9))
        with pytest.raises(RangeTooLarge):
            enumerate_graphs(EnumerationRange(max_n=5), labeled_limit=10)
        with pytest.raises(RangeTooLarge):
            enumerate_graphs(EnumerationRange(max_n=3, max_multiplicity=0))


class TestEnumerateSchemes:
    """Test scheme enumeration up to switching and reflection."""

    def test_k4_scheme_count(self, k4_graph):
        assert len(list(enumerate_schemes(k4_graph))) == 64

    def test_k4_genera(self, k4_graph):
        genera = {euler_genus(s) for s in enumerate_schemes(k4_graph)}

        assert 0 in genera
        assert 1 in genera

    def test_edge_maximal_only(self, c4_graph):
        assert list(enumerate_schemes(c4_graph, edge_max_only=True)) == []

    def test_dart_cap(self, k4_graph):
        with pytest.raises(RangeTooLarge):
            list(enumerate_schemes(k4_graph, max_darts=10))

    def test_disconnected(self):
        g = build_graph(["a", "b", "c", "d"], [("a", "b"), ("c", "d")])

        with pytest.raises(Disconnected):
            list(enumerate_schemes(g))

    @pytest.mark.slow
    def test_octahedron_maximal_schemes_match_the_sphere(self, octahedron):
        """Every edge-maximal scheme of the octahedron has its faces and its
        rotations up to per-vertex reversal."""
        g = octahedron.graph
        schemes = list(enumerate_schemes(g, edge_max_only=True))

        assert schemes
        for s in schemes:
            assert face_sets_equal(octahedron, s)
            for v in g.vertices:
                assert rotation_orientation_match(octahedron, s, v) is not Orientation.MISMATCH

    def test_find_scheme(self, k4_graph):
        s = find_scheme(k4_graph, lambda s: euler_genus(s) == 1)

        assert s is not None
        assert euler_genus(s) == 1

    def test_find_scheme_none(self, c4_graph):
        assert find_scheme(c4_graph, lambda s: True) is None


@pytest.fixture(scope="module")
def maximal_schemes():
    """Edge-maximal schemes of every small connected loopless graph, from a full scan."""
    ranges = [
        EnumerationRange(max_n=4),
        EnumerationRange(max_n=3, max_multiplicity=2, max_edges=5),
    ]
    return [
        s
        for r in ranges
        for g in enumerate_graphs(r, threads=1)
        for s in enumerate_schemes(g)
        if is_edge_maximal(s).maximal
    ]


class TestEdgeMaximalSchemes:
    """Properties every edge-maximal scheme has."""

    def test_scan_is_not_empty(self, maximal_schemes, k4_graph):
        codes = {canonical_code(s.graph) for s in maximal_schemes}

        assert canonical_code(k4_graph) in codes
        assert any(s.graph.n == 3 and s.graph.m == 5 for s in maximal_schemes)

    def test_rotations_are_hamiltonian_orderings(self, maximal_schemes):
        for s in maximal_schemes:
            for v in s.graph.vertices:
                assert validate_ordering(s.graph, v, s.rotation[v])

    def test_graph_is_locally_hamiltonian(self, maximal_schemes):
        for s in maximal_schemes:
            assert is_locally_hamiltonian(s.graph).holds

    def test_vertices_have_two_distinct_neighbors(self, maximal_schemes):
        for s in maximal_schemes:
            g = s.graph
            if g.n >= 3:
                assert all(len(g.neighbors(v)) >= 2 for v in g.vertices)


class TestVertexSwitching:
    """Switching at a vertex keeps the surface."""

    @pytest.mark.parametrize(
        "g",
        [
            build_graph(list("abcd"), list(itertools.combinations("abcd", 2))),
            build_graph(list("abcd"), [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]),
            build_graph(
                list("abc"), [("a", "b"), ("b", "c"), ("c", "a"), ("a", "a")], loops_allowed=True
            ),
            build_graph(list("ab"), [("a", "b"), ("a", "b"), ("a", "b")]),
        ],
        ids=["k4", "c4", "triangle-with-loop", "triple-edge"],
    )
    def test_face_count_and_genus_are_kept(self, g):
        for s in enumerate_schemes(g):
            faces, genus = len(trace_faces(s)), euler_genus(s)
            for v in g.vertices:
                flipped = s.flip_vertex(v)

                assert len(trace_faces(flipped)) == faces
                assert euler_genus(flipped) == genus
                assert flipped.flip_vertex(v) == s


class TestLemma1Fixtures:
    """Random separating-cycle fixtures."""

    def test_fixtures_are_varied_triangulations(self):
        rng = random.Random(3)
        kinds, shapes = set(), set()

        for _ in range(40):
            kind, s, cycle = lemma1_fixture(rng)
            g = s.graph
            assert g.n <= 12
            assert is_sphere_triangulation(s)
            assert frozenset(cycle.edges) not in {frozenset(f.edges()) for f in trace_faces(s)}

            sides = side_decomposition(s, cycle)
            qualifying = [
                side
                for side in (sides.interior, sides.exterior)
                if side and min(g.degree(v) for v in side) >= 4
            ]
            assert qualifying
            kinds.add(kind)
            shapes.update(tuple(sorted(g.degree(v) for v in side)) for side in qualifying)

        assert kinds == {"lens", "triangle"}
        assert len(shapes) > 5

    def test_lens_cycle_is_a_two_cycle(self):
        rng = random.Random(8)
        for _ in range(20):
            kind, s, cycle = lemma1_fixture(rng, max_n=9)
            if kind == "lens":
                u, v = s.graph.ends[0]
                assert cycle.edges == (0, 1)
                assert s.graph.multiplicity(u, v) == 2

    def test_max_n_too_small(self):
        with pytest.raises(ValidationError):
            lemma1_fixture(random.Random(0), max_n=6)


class TestReport:
    def test_timing_can_be_omitted(self):
        report = VerificationReport("lh-bound", {"max_n": 3}, seconds=1.23456)

        assert report.ok
        assert report.to_json()["seconds"] == 1.235
        assert "seconds" not in report.to_json(include_timing=False)


class TestClaims:
    """Test the verification claims on small ranges."""

    def test_lh_bound_simple(self):
        report = verify_lh_bound(EnumerationRange(max_n=5), threads=1)

        assert report.ok
        assert report.details["equality_by_n"] == {"3": 1, "4": 1, "5": 1}
        assert len(report.equality_cases) == 3

    def test_lh_bound_multigraphs_include_two_cycle(self, two_cycle):
        r = EnumerationRange(max_n=4, max_multiplicity=2, bound_slack=1)
        report = verify_lh_bound(r, threads=2)

        assert report.ok
        assert canonical_code(two_cycle.graph).hex() in report.equality_cases

    def test_lh_bound_rejects_loops(self):
        with pytest.raises(RangeTooLarge):
            verify_lh_bound(EnumerationRange(max_n=3, allow_loops=True))

    def test_maximal_embeddings(self):
        report = verify_maximal_embeddings(EnumerationRange(max_n=4, bound_slack=0), threads=1)

        assert report.ok
        assert len(report.equality_cases) == 2
        demonstrations = report.details["demonstrations"]
        assert len(demonstrations) == 1
        assert demonstrations[0]["hypothesis"] == "K4-free"
        assert demonstrations[0]["genus"] > 0

    def test_loop_bound(self):
        r = EnumerationRange(max_n=3, max_multiplicity=2, allow_loops=True, max_darts=12)
        report = verify_loop_bound(r, threads=1)

        assert report.ok
        assert len(report.equality_cases) == 3

    def test_loop_bound_range(self):
        with pytest.raises(RangeTooLarge):
            verify_loop_bound(EnumerationRange(max_n=4, allow_loops=True))

    def test_lemma1(self):
        report = verify_lemma1(samples=5, seed=0)

        assert report.ok
        assert report.population == 5
        assert report.range == {"samples": 5, "seed": 0, "max_n": 12}
        assert report.details["sides_checked"] >= 5
        assert sum(report.details["kinds"].values()) == 5

    def test_neighborhood_uniqueness(self):
        report = verify_neighborhood_uniqueness(EnumerationRange(max_n=5), threads=1)

        assert report.ok
        assert report.population == 3


class TestDeterminism:
    """Claim reports do not depend on the run or the thread count."""

    @staticmethod
    def _text(report: VerificationReport) -> str:
        return dumps(report.to_json(include_timing=False))

    def test_lh_bound_report(self):
        r = EnumerationRange(max_n=4, max_multiplicity=2, bound_slack=1)

        first = self._text(verify_lh_bound(r, threads=1))
        assert self._text(verify_lh_bound(r, threads=1)) == first
        assert self._text(verify_lh_bound(r, threads=4)) == first

    def test_maximal_embeddings_report(self):
        r = EnumerationRange(max_n=4, bound_slack=0)

        first = self._text(verify_maximal_embeddings(r, threads=1))
        assert self._text(verify_maximal_embeddings(r, threads=3)) == first


@pytest.mark.slow
class TestClaimsAtScale:
    """Larger ranges matching the reference runs."""

    def test_lh_bound_simple_six(self):
        assert verify_lh_bound(EnumerationRange(max_n=6)).ok

    def test_lh_bound_multigraphs_five(self):
        r = EnumerationRange(max_n=5, max_multiplicity=2, bound_slack=1)
        assert verify_lh_bound(r).ok

    def test_maximal_five(self):
        assert verify_maximal_embeddings(EnumerationRange(max_n=5, bound_slack=0)).ok

    def test_neighborhood_seven(self):
        assert verify_neighborhood_uniqueness(EnumerationRange(max_n=7)).ok

    def test_lemma1_hundred(self):
        assert verify_lemma1(samples=100, seed=0).ok
