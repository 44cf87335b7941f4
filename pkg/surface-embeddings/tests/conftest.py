"""Pytest configuration and shared fixtures for Surface Embeddings tests."""

import shutil
import tempfile
from collections.abc import Generator
from itertools import combinations
from pathlib import Path

import pytest

from src.config import ToolkitConfig
from src.fixtures import five_vertex_sphere_scheme, k4_scheme, two_cycle_scheme
from src.gluing import octahedron_scheme
from src.multigraph import Multigraph, build_graph


def complete_graph(labels: str) -> Multigraph:
    """Complete simple graph on single-character labels."""
    return build_graph(list(labels), list(combinations(labels, 2)))


def cycle_graph(labels: str) -> Multigraph:
    return build_graph(
        list(labels), [(labels[i], labels[(i + 1) % len(labels)]) for i in range(len(labels))]
    )


@pytest.fixture
def temp_dir() -> Generator[Path, None, None]:
    """Create a temporary directory for testing."""
    temp_path = Path(tempfile.mkdtemp())
    yield temp_path
    shutil.rmtree(temp_path, ignore_errors=True)


@pytest.fixture
def config() -> ToolkitConfig:
    """Default configuration with a single worker thread."""
    return ToolkitConfig(threads=1)


@pytest.fixture
def k4_graph() -> Multigraph:
    return complete_graph("abcd")


@pytest.fixture
def k5_graph() -> Multigraph:
    return complete_graph("abcde")


@pytest.fixture
def c4_graph() -> Multigraph:
    return cycle_graph("abcd")


@pytest.fixture
def k4_sphere():
    """K4 embedded as a tetrahedron."""
    return k4_scheme()


@pytest.fixture
def octahedron():
    return octahedron_scheme()


@pytest.fixture
def two_cycle():
    """Sphere triangulation with a separating 2-cycle."""
    return two_cycle_scheme()


@pytest.fixture
def five_vertex_sphere():
    return five_vertex_sphere_scheme()
