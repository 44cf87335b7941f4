"""Tests for Hamiltonian orderings and local Hamiltonicity certificates."""

import pytest

from src.enumeration import EnumerationRange, enumerate_graphs
from src.errors import DegreeTooLarge, HasLoops, NonSimpleVertex
from src.local_hamiltonicity import (
    hamiltonian_ordering,
    is_locally_hamiltonian,
    iter_hamiltonian_orderings,
    neighborhood_hamiltonian_cycles,
    validate_ordering,
)
from src.multigraph import Dart, build_graph

pytestmark = pytest.mark.unit


class TestHamiltonianOrdering:
    """Test orderings of the darts around a single vertex."""

    def test_k4_vertex_has_two_orderings(self, k4_graph):
        orders = list(iter_hamiltonian_orderings(k4_graph, 0))

        assert len(orders) == 2
        assert orders[0][1:] == tuple(reversed(orders[1][1:]))
        for order in orders:
            assert order[0] == Dart(0, 0)
            assert validate_ordering(k4_graph, 0, order)

    def test_cycle_vertex_has_no_ordering(self, c4_graph):
        assert hamiltonian_ordering(c4_graph, 0) is None

    def test_parallel_darts_are_compatible(self):
        g = build_graph(["u", "v"], [("u", "v"), ("u", "v")])

        ordering = hamiltonian_ordering(g, 0)
        assert ordering is not None
        assert ordering.order == (Dart(0, 0), Dart(1, 0))

    def test_validate_rejects_missing_dart(self, k4_graph):
        assert not validate_ordering(k4_graph, 0, (Dart(0, 0), Dart(1, 0)))

    def test_validate_rejects_non_adjacent_step(self, c4_graph):
        assert not validate_ordering(c4_graph, 0, c4_graph.darts_at(0))

    def test_degree_cap(self, k4_graph):
        with pytest.raises(DegreeTooLarge):
            hamiltonian_ordering(k4_graph, 0, max_degree=2)

    def test_ordering_to_json_uses_labels(self, k4_graph):
        ordering = hamiltonian_ordering(k4_graph, 1)

        data = ordering.to_json(k4_graph)
        assert data["vertex"] == "b"
        assert all(len(d) == 2 for d in data["order"])


class TestLocalHamiltonicity:
    """Test whole-graph certificates."""

    def test_k4(self, k4_graph):
        result = is_locally_hamiltonian(k4_graph)

        assert result.holds
        assert result.failing_vertex is None
        assert len(result.certificate.orderings) == 4
        for ordering in result.certificate.orderings:
            assert validate_ordering(k4_graph, ordering.vertex, ordering.order)

    def test_octahedron(self, octahedron):
        assert is_locally_hamiltonian(octahedron.graph).holds

    def test_two_cycle_multigraph(self, two_cycle):
        result = is_locally_hamiltonian(two_cycle.graph)

        assert result.holds
        for ordering in result.certificate.orderings:
            assert validate_ordering(two_cycle.graph, ordering.vertex, ordering.order)

    def test_cycle_fails_at_first_vertex(self, c4_graph):
        result = is_locally_hamiltonian(c4_graph)

        assert not result.holds
        assert result.failing_vertex == 0
        assert result.certificate is None

    def test_loops_rejected(self):
        g = build_graph(["a", "b"], [("a", "a"), ("a", "b")], loops_allowed=True)

        with pytest.raises(HasLoops):
            is_locally_hamiltonian(g)

    def test_certificate_json(self, k4_graph):
        result = is_locally_hamiltonian(k4_graph)

        data = result.certificate.to_json(k4_graph)
        assert [entry["vertex"] for entry in data] == ["a", "b", "c", "d"]


class TestEdgeDuplication:
    """Duplicating an edge of a locally Hamiltonian graph keeps it locally Hamiltonian."""

    @pytest.mark.parametrize(
        "r",
        [
            EnumerationRange(max_n=5),
            EnumerationRange(max_n=4, max_multiplicity=2, max_edges=7),
        ],
        ids=["simple", "multigraph"],
    )
    def test_every_edge_of_every_graph(self, r):
        checked = 0
        for g in enumerate_graphs(r, threads=1):
            if not is_locally_hamiltonian(g).holds:
                continue
            for e in range(g.m):
                doubled = g.with_extra_edge(e)
                result = is_locally_hamiltonian(doubled)

                assert result.holds
                for ordering in result.certificate.orderings:
                    assert validate_ordering(doubled, ordering.vertex, ordering.order)
                checked += 1

        assert checked > 0


class TestNeighborhoodCycles:
    """Test Hamiltonian cycles of neighborhoods of simple vertices."""

    def test_octahedron_neighborhood_is_a_single_cycle(self, octahedron):
        cycles = neighborhood_hamiltonian_cycles(octahedron.graph, 0)

        assert len(cycles) == 1
        assert len(cycles[0]) == 4

    def test_k5_neighborhood_has_three_cycles(self, k5_graph):
        cycles = neighborhood_hamiltonian_cycles(k5_graph, 0)

        assert len(cycles) == 3
        assert all(c[0] == 1 for c in cycles)

    def test_cap(self, k5_graph):
        assert len(neighborhood_hamiltonian_cycles(k5_graph, 0, cap=2)) == 2

    def test_two_adjacent_neighbors(self):
        g = build_graph(["v", "a", "b"], [("v", "a"), ("v", "b"), ("a", "b")])

        assert neighborhood_hamiltonian_cycles(g, 0) == [(1, 2)]

    def test_non_simple_vertex(self):
        g = build_graph(["u", "v"], [("u", "v"), ("u", "v")])

        with pytest.raises(NonSimpleVertex):
            neighborhood_hamiltonian_cycles(g, 0)
