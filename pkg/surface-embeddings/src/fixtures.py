"""Named example graphs and schemes, and the ``fixtures`` bundle writer."""

import logging
from pathlib import Path
from typing import Any

from .embedding import (
    EmbeddingScheme,
    Orientation,
    euler_genus,
    is_edge_maximal,
    rotation_orientation_match,
    trace_faces,
)
from .enumeration import find_scheme
from .flowers import FlowerDecomposition, Petal, PetalKind, build_flower, flower_scheme
from .gluing import (
    double_octahedron_scheme,
    lens_scheme,
    octahedron_scheme,
    scheme_from_coordinates,
    triangle_scheme,
)
from .multigraph import Dart, Multigraph, build_graph
from .serialization import document, dumps

logger = logging.getLogger(__name__)


def _darts(*pairs: tuple[int, int]) -> list[Dart]:
    return [Dart(e, end) for e, end in pairs]


def k3_scheme() -> EmbeddingScheme:
    return triangle_scheme(("a", "b", "c"))


def k4_scheme() -> EmbeddingScheme:
    """K4 as a tetrahedron."""
    points = [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]
    edges = [(u, w) for u in range(4) for w in range(u + 1, 4)]
    return scheme_from_coordinates(("a", "b", "c", "d"), edges, points)


def k4_projective_scheme() -> EmbeddingScheme:
    """Edge-maximal K4 scheme with three faces of length 4 (Euler genus 1)."""
    g = k4_scheme().graph
    found = find_scheme(g, lambda s: trace_faces(s).lengths == [4, 4, 4])
    assert found is not None
    return found


def two_cycle_scheme() -> EmbeddingScheme:
    """A 2-cycle ``uv`` with ``x`` inside the lens and ``y`` outside: n=4, m=6."""
    return lens_scheme()


def five_vertex_graph() -> Multigraph:
    """Two parallel ``uv`` edges (ids 0 and 3) plus ``a, b, c`` around them."""
    return build_graph(
        ["u", "v", "a", "b", "c"],
        [
            ("u", "v"),
            ("u", "a"),
            ("u", "b"),
            ("u", "v"),
            ("u", "c"),
            ("v", "a"),
            ("v", "b"),
            ("v", "c"),
            ("a", "b"),
        ],
    )


def five_vertex_sphere_scheme() -> EmbeddingScheme:
    """Sphere triangulation; the rotation at ``u`` is ``uv, ua, ub, uv, uc``."""
    return EmbeddingScheme(
        five_vertex_graph(),
        [
            _darts((0, 0), (1, 0), (2, 0), (3, 0), (4, 0)),
            _darts((5, 0), (0, 1), (7, 0), (3, 1), (6, 0)),
            _darts((1, 1), (5, 1), (8, 0)),
            _darts((2, 1), (8, 1), (6, 1)),
            _darts((4, 1), (7, 1)),
        ],
    )


def five_vertex_projective_scheme() -> EmbeddingScheme:
    """Edge-maximal genus-1 scheme whose rotation at ``u`` matches neither the sphere
    rotation nor its reverse."""
    sphere = five_vertex_sphere_scheme()
    u = sphere.graph.index("u")

    def departs(s: EmbeddingScheme) -> bool:
        return (
            rotation_orientation_match(sphere, s, u) is Orientation.MISMATCH
            and euler_genus(s) == 1
        )

    found = find_scheme(sphere.graph, departs)
    assert found is not None
    return found


def c5_scheme() -> EmbeddingScheme:
    """The 5-cycle on the sphere; its two faces visit non-adjacent vertices."""
    labels = ["a", "b", "c", "d", "e"]
    g = build_graph(labels, [(labels[i], labels[(i + 1) % 5]) for i in range(5)])
    return EmbeddingScheme(g, [g.darts_at(v) for v in g.vertices])


SAMPLE_FLOWERS = {
    "flower_k2_k2o": FlowerDecomposition("K2", (Petal(PetalKind.K2O, "v0"),)),
    "flower_k3_k3o": FlowerDecomposition("K3", (Petal(PetalKind.K3O, "v0"),)),
    "flower_k3_three_k2o": FlowerDecomposition(
        "K3", tuple(Petal(PetalKind.K2O, "v0") for _ in range(3))
    ),
}


def bundle() -> dict[str, dict[str, Any]]:
    """Every fixture document by file stem."""
    octahedron = octahedron_scheme()
    double, cycle = double_octahedron_scheme()
    schemes = {
        "k3": k3_scheme(),
        "k4_sphere": k4_scheme(),
        "k4_projective": k4_projective_scheme(),
        "two_cycle": two_cycle_scheme(),
        "five_vertex_sphere": five_vertex_sphere_scheme(),
        "five_vertex_projective": five_vertex_projective_scheme(),
        "octahedron": octahedron,
        "double_octahedron": double,
        "c5_sphere": c5_scheme(),
    }
    docs = {name: document(s.graph, s) for name, s in schemes.items()}
    docs["double_octahedron"]["cycle"] = list(cycle)
    for name, d in SAMPLE_FLOWERS.items():
        docs[name] = {**document(build_flower(d), flower_scheme(d)), "flower": d.to_json()}

    sphere = schemes["five_vertex_sphere"]
    u = sphere.graph.index("u")
    docs["counterexamples"] = {
        "k4_projective": _scheme_report(schemes["k4_projective"]),
        "five_vertex_projective": {
            **_scheme_report(schemes["five_vertex_projective"]),
            "orientation_at_u": rotation_orientation_match(
                sphere, schemes["five_vertex_projective"], u
            ).value,
        },
    }
    return docs


def _scheme_report(s: EmbeddingScheme) -> dict[str, Any]:
    return {
        "euler_genus": euler_genus(s),
        "face_lengths": trace_faces(s).lengths,
        "edge_maximal": is_edge_maximal(s).maximal,
    }


def write_fixtures(directory: str | Path) -> list[Path]:
    """Write the bundle as ``<stem>.json`` files and return their paths."""
    target = Path(directory)
    target.mkdir(parents=True, exist_ok=True)
    written = []
    for name, data in sorted(bundle().items()):
        path = target / f"{name}.json"
        path.write_text(dumps(data), encoding="utf-8")
        written.append(path)
    logger.info(f"Wrote {len(written)} fixtures to {target}")
    return written
