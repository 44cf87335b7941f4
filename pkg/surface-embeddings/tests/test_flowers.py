"""Tests for flower construction and recognition."""

import random

import networkx as nx
import pytest

from src.embedding import euler_genus, is_edge_maximal
from src.errors import BadAttachmentVertex, ValidationError
from src.fixtures import SAMPLE_FLOWERS
from src.flowers import (
    FlowerDecomposition,
    Petal,
    PetalKind,
    build_flower,
    flower_scheme,
    is_flower,
    random_decomposition,
)
from src.multigraph import build_graph, canonical_code

pytestmark = pytest.mark.unit


class TestBuildFlower:
    """Test building flower graphs and schemes."""

    def test_k2_with_pendant_petal(self):
        g = build_flower(SAMPLE_FLOWERS["flower_k2_k2o"])

        assert (g.n, g.m) == (3, 3)
        assert g.labels == ("v0", "v1", "v2")
        assert g.loop_count(0) == 1
        assert g.degree(2) == 1

    def test_k3_with_triangle_petal(self):
        g = build_flower(SAMPLE_FLOWERS["flower_k3_k3o"])

        assert (g.n, g.m) == (5, 7)
        assert g.loop_count(0) == 1
        assert g.adjacent(3, 4)

    @pytest.mark.parametrize("name", sorted(SAMPLE_FLOWERS))
    def test_edge_count_and_scheme(self, name):
        d = SAMPLE_FLOWERS[name]
        g = build_flower(d)
        s = flower_scheme(d)

        assert g.m == 2 * g.n - 3
        assert s.graph == g
        assert s.all_positive
        assert euler_genus(s) == 0
        assert is_edge_maximal(s).maximal

    def test_explicit_labels(self):
        d = FlowerDecomposition(
            "K2", (Petal(PetalKind.K3O, "a", ("x", "y")),), base_vertices=("a", "b")
        )

        g = build_flower(d)
        assert g.labels == ("a", "b", "x", "y")

    def test_petal_on_petal_vertex(self):
        d = FlowerDecomposition(
            "K3", (Petal(PetalKind.K2O, "v1"), Petal(PetalKind.K2O, "v3"))
        )

        g = build_flower(d)
        assert g.loop_count(g.index("v3")) == 1
        assert euler_genus(flower_scheme(d)) == 0

    def test_attachment_vertex_must_exist(self):
        d = FlowerDecomposition("K2", (Petal(PetalKind.K2O, "v5"),))

        with pytest.raises(BadAttachmentVertex):
            build_flower(d)

    def test_new_label_count(self):
        d = FlowerDecomposition("K2", (Petal(PetalKind.K3O, "v0", ("x",)),))

        with pytest.raises(ValidationError):
            build_flower(d)

    def test_duplicate_label(self):
        d = FlowerDecomposition("K2", (Petal(PetalKind.K2O, "v0", ("v1",)),))

        with pytest.raises(ValidationError):
            build_flower(d)


class TestDecompositionJson:
    def test_round_trip(self):
        d = FlowerDecomposition(
            "K3", (Petal(PetalKind.K3O, "b", ("x", "y")),), base_vertices=("a", "b", "c")
        )

        assert FlowerDecomposition.from_json(d.to_json()) == d

    def test_bad_base(self):
        with pytest.raises(ValidationError):
            FlowerDecomposition.from_json({"base": "K4"})

    def test_missing_base(self):
        with pytest.raises(ValidationError):
            FlowerDecomposition.from_json({"petals": []})

    def test_unknown_petal_kind(self):
        with pytest.raises(ValidationError):
            FlowerDecomposition.from_json({"base": "K2", "petals": [{"kind": "K4o", "at": "v0"}]})


class TestIsFlower:
    """Test flower recognition."""

    @pytest.mark.parametrize("name", sorted(SAMPLE_FLOWERS))
    def test_samples_are_recognized(self, name):
        d = SAMPLE_FLOWERS[name]
        g = build_flower(d)

        found = is_flower(g)
        assert found is not None
        assert found.base == d.base
        assert len(found.petals) == len(d.petals)
        assert canonical_code(build_flower(found)) == canonical_code(g)

    def test_base_graphs(self):
        assert is_flower(build_graph(["a", "b"], [("a", "b")])).base == "K2"
        assert is_flower(build_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])).base == "K3"

    @pytest.mark.parametrize("seed", range(6))
    def test_random_flowers(self, seed):
        d = random_decomposition(8, random.Random(seed))
        g = build_flower(d)

        assert 2 <= g.n <= 8
        found = is_flower(g)
        assert found is not None
        assert canonical_code(build_flower(found)) == canonical_code(g)

    def test_wrong_edge_count(self, c4_graph):
        assert is_flower(c4_graph) is None

    def test_k4_minus_edge_is_not_a_flower(self):
        g = build_graph(
            ["a", "b", "c", "d"],
            [("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")],
        )

        assert is_flower(g) is None

    def test_pendant_without_loop(self):
        g = build_graph(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "a"), ("a", "d"), ("a", "b")],
        )

        assert is_flower(g) is None

    def test_disconnected(self):
        g = build_graph(
            ["a", "b", "c", "d"],
            [("a", "b"), ("b", "c"), ("c", "a"), ("a", "b"), ("a", "b")],
        )

        assert is_flower(g) is None

    def test_random_decomposition_needs_two_vertices(self):
        with pytest.raises(ValueError):
            random_decomposition(1, random.Random(0))


class TestRandomDecompositions:
    """Random flowers up to 30 vertices survive a build and recognize round trip."""

    def _check(self, seed: int, samples: int) -> None:
        rng = random.Random(seed)
        for _ in range(samples):
            d = random_decomposition(30, rng)
            g = build_flower(d)
            assert g.m == 2 * g.n - 3

            s = flower_scheme(d)
            assert euler_genus(s) == 0
            assert is_edge_maximal(s).maximal

            found = is_flower(g)
            assert found is not None
            rebuilt = build_flower(found)
            assert nx.is_isomorphic(rebuilt.to_networkx(), g.to_networkx())

    def test_sample(self):
        self._check(seed=11, samples=25)

    @pytest.mark.slow
    def test_five_hundred(self):
        self._check(seed=0, samples=500)
