"""Local Hamiltonicity: Hamiltonian orderings of the darts around each vertex."""

import logging
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .errors import DegreeTooLarge, HasLoops, NonSimpleVertex
from .multigraph import Dart, Multigraph, is_simple_vertex

logger = logging.getLogger(__name__)

DEFAULT_MAX_DEGREE = 12


@dataclass(frozen=True)
class HamiltonianOrdering:
    """Cyclic order of the darts at ``vertex``."""

    vertex: int
    order: tuple[Dart, ...]

    def to_json(self, g: Multigraph) -> dict:
        return {"vertex": g.labels[self.vertex], "order": [d.to_json() for d in self.order]}


@dataclass(frozen=True)
class HamiltonianCertificate:
    orderings: tuple[HamiltonianOrdering, ...]

    def to_json(self, g: Multigraph) -> list[dict]:
        return [o.to_json(g) for o in self.orderings]


@dataclass(frozen=True)
class LocalHamiltonicityResult:
    holds: bool
    certificate: HamiltonianCertificate | None = None
    failing_vertex: int | None = None


def _compatible(g: Multigraph, a: Dart, b: Dart) -> bool:
    fa, fb = g.far_end(a), g.far_end(b)
    return fa == fb or g.adjacent(fa, fb)


def validate_ordering(g: Multigraph, v: int, order: Sequence[Dart]) -> bool:
    """Independent check: all darts of ``v`` once, consecutive distinct ends adjacent."""
    order = tuple(order)
    if sorted(order) != list(g.darts_at(v)):
        return False
    return all(_compatible(g, order[i - 1], order[i]) for i in range(1, len(order))) and (
        len(order) < 2 or _compatible(g, order[-1], order[0])
    )


def iter_hamiltonian_orderings(
    g: Multigraph, v: int, interchangeable: bool = False
) -> Iterator[tuple[Dart, ...]]:
    """Yield the cyclic orders of the darts at ``v`` satisfying the ordering condition.

    The least dart is pinned first so each cyclic order appears once (its reversal
    appears separately). With ``interchangeable`` set, darts sharing a far endpoint
    are treated as identical and only the least unused one is tried, which keeps
    existence searches fast on multigraphs.
    """
    darts = g.darts_at(v)
    if not darts:
        yield ()
        return

    used = [False] * len(darts)
    used[0] = True
    path = [darts[0]]

    def extend() -> Iterator[tuple[Dart, ...]]:
        if len(path) == len(darts):
            if len(path) < 2 or _compatible(g, path[-1], path[0]):
                yield tuple(path)
            return
        tried: set[int] = set()
        for i, dart in enumerate(darts):
            if used[i]:
                continue
            if interchangeable:
                far = g.far_end(dart)
                if far in tried:
                    continue
                tried.add(far)
            if not _compatible(g, path[-1], dart):
                continue
            used[i] = True
            path.append(dart)
            yield from extend()
            path.pop()
            used[i] = False

    yield from extend()


def hamiltonian_ordering(
    g: Multigraph, v: int, max_degree: int = DEFAULT_MAX_DEGREE
) -> HamiltonianOrdering | None:
    """First Hamiltonian ordering at ``v`` under the deterministic dart order, if any."""
    g.check_vertex(v)
    if g.has_loops:
        raise HasLoops("Hamiltonian orderings are defined for loopless graphs")
    if g.degree(v) > max_degree:
        raise DegreeTooLarge(
            f"Vertex {g.labels[v]!r} has degree {g.degree(v)} > cap {max_degree}"
        )
    for order in iter_hamiltonian_orderings(g, v, interchangeable=True):
        return HamiltonianOrdering(v, order)
    return None


def is_locally_hamiltonian(
    g: Multigraph, max_degree: int = DEFAULT_MAX_DEGREE
) -> LocalHamiltonicityResult:
    """Certificate for every vertex, or the least vertex without an ordering."""
    if g.has_loops:
        raise HasLoops("Local Hamiltonicity is defined for loopless graphs")
    orderings = []
    for v in g.vertices:
        ordering = hamiltonian_ordering(g, v, max_degree)
        if ordering is None:
            logger.debug(f"Vertex {g.labels[v]!r} admits no Hamiltonian ordering")
            return LocalHamiltonicityResult(False, failing_vertex=v)
        orderings.append(ordering)
    return LocalHamiltonicityResult(True, certificate=HamiltonianCertificate(tuple(orderings)))


def neighborhood_hamiltonian_cycles(
    g: Multigraph, v: int, cap: int = 16
) -> list[tuple[int, ...]]:
    """Hamiltonian cycles of the neighborhood of a simple vertex.

    Cycles are vertex sequences starting at the least neighbor, each reported once
    up to rotation and reversal. Two adjacent neighbors count as one degenerate cycle.
    """
    g.check_vertex(v)
    if g.has_loops:
        raise HasLoops("Neighborhood cycles are defined for loopless graphs")
    if not is_simple_vertex(g, v):
        raise NonSimpleVertex(f"Vertex {g.labels[v]!r} is not simple")

    members = g.neighbors(v)
    if len(members) < 2:
        return []
    if len(members) == 2:
        return [tuple(members)] if g.adjacent(*members) else []

    cycles: list[tuple[int, ...]] = []
    path = [members[0]]
    remaining = set(members[1:])

    def extend() -> bool:
        if len(cycles) >= cap:
            return True
        if not remaining:
            if g.adjacent(path[-1], path[0]) and path[1] < path[-1]:
                cycles.append(tuple(path))
            return len(cycles) >= cap
        for w in sorted(remaining):
            if g.adjacent(path[-1], w):
                remaining.discard(w)
                path.append(w)
                stop = extend()
                path.pop()
                remaining.add(w)
                if stop:
                    return True
        return False

    extend()
    return cycles
