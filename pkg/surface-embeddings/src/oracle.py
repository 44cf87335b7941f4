"""Brute-force search for a spherical triangulation of a small multigraph.

Independent of the reconstruction engine: every combination of per-vertex cyclic
orders is tried with the all-positive signature. The first dart at each vertex is
pinned, and orders whose consecutive far ends are equal or non-adjacent are pruned
because such a corner can never lie on a triangular face.
"""

import itertools
import logging
from concurrent.futures import ThreadPoolExecutor

from .embedding import EmbeddingScheme, is_sphere_triangulation
from .errors import Disconnected, HasLoops, TooLarge
from .local_hamiltonicity import iter_hamiltonian_orderings
from .multigraph import Dart, Multigraph, is_connected

logger = logging.getLogger(__name__)

DEFAULT_ORACLE_CAP = 8


def triangular_orders(g: Multigraph, v: int) -> list[tuple[Dart, ...]]:
    """Cyclic orders at ``v`` (first dart pinned) whose consecutive far ends are
    distinct and adjacent."""
    orders = []
    for order in iter_hamiltonian_orderings(g, v):
        ends = [g.far_end(d) for d in order]
        if all(ends[i - 1] != ends[i] for i in range(len(ends))):
            orders.append(order)
    return orders


def _all_faces_triangles(g: Multigraph, rotation: tuple[tuple[Dart, ...], ...]) -> bool:
    successor: dict[Dart, Dart] = {}
    for r in rotation:
        for i, d in enumerate(r):
            successor[d] = r[(i + 1) % len(r)]

    def step(d: Dart) -> Dart:
        return successor[d.partner()]

    for d in successor:
        first = step(d)
        if first == d or step(first) == d or step(step(first)) != d:
            return False
    return True


def _scan(
    g: Multigraph, first: tuple[Dart, ...], rest: list[list[tuple[Dart, ...]]]
) -> tuple[tuple[Dart, ...], ...] | None:
    for combo in itertools.product(*rest):
        rotation = (first, *combo)
        if _all_faces_triangles(g, rotation):
            return rotation
    return None


def oracle_embed(
    g: Multigraph, max_vertices: int = DEFAULT_ORACLE_CAP, threads: int | None = None
) -> EmbeddingScheme | None:
    """Return a genus-0 scheme with all faces of length 3, or None if none exists.

    Work is split over the choices at vertex 0; the least scheme code among the
    partitions' first hits is returned, so the answer does not depend on threading.

    Raises:
        TooLarge: more than ``max_vertices`` vertices
    """
    if g.n > max_vertices:
        raise TooLarge(f"Oracle limited to {max_vertices} vertices, got {g.n}")
    if g.has_loops:
        raise HasLoops("Oracle requires a loopless graph")
    if not is_connected(g):
        raise Disconnected("Oracle requires a connected graph")
    # f = 2m/3 and genus 0 force m = 3n - 6
    if g.n < 3 or g.m != 3 * g.n - 6:
        return None

    choices = [triangular_orders(g, v) for v in g.vertices]
    if any(not c for c in choices):
        return None
    logger.debug(f"Oracle scanning {[len(c) for c in choices]} orders per vertex")

    with ThreadPoolExecutor(max_workers=threads) as pool:
        hits = list(pool.map(lambda first: _scan(g, first, choices[1:]), choices[0]))

    found = [EmbeddingScheme(g, rotation) for rotation in hits if rotation is not None]
    if not found:
        return None
    best = min(found, key=lambda s: s.code())
    assert is_sphere_triangulation(best)
    return best
