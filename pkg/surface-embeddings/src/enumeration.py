"""Exhaustive enumeration of small multigraphs and embedding schemes, and the
verification claims run over them.

Graph classes come from labeled enumeration followed by canonical-code dedupe.
Work is split into chunks (by vertex count and edge count, or by the multiplicity
of the first vertex pair) and run on a thread pool; results are merged and sorted
so reports are identical for any worker count.
"""

import itertools
import logging
import math
import random
import time
from collections import Counter
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Any

import numpy as np

from .embedding import (
    EmbeddingScheme,
    FacialWalk,
    Orientation,
    euler_genus,
    face_sets_equal,
    is_edge_maximal,
    is_sphere_triangulation,
    rotation_orientation_match,
    spanning_tree_edges,
    trace_faces,
)
from .errors import Disconnected, RangeTooLarge, ReconstructionFailed, ValidationError
from .flowers import is_flower
from .gluing import (
    glue_along_triangle,
    lens_scheme,
    random_min_degree_four,
    random_stacked_triangulation,
)
from .local_hamiltonicity import is_locally_hamiltonian, neighborhood_hamiltonian_cycles
from .multigraph import (
    Dart,
    Multigraph,
    adjacency_matrix,
    canonical_code,
    canonical_representative,
    graph_from_matrix,
    is_connected,
    is_simple_vertex,
)
from .oracle import oracle_embed
from .serialization import document
from .triangulation import CycleSpec, lemma1_candidates, reconstruct_triangulation, side_decomposition

logger = logging.getLogger(__name__)

MAX_ENUMERATION_VERTICES = 8
DEFAULT_LABELED_LIMIT = 5_000_000
DEFAULT_MAX_DARTS = 24


@dataclass(frozen=True)
class EnumerationRange:
    """Which labeled multigraphs to enumerate.

    ``bound_slack`` keeps only graphs with ``m <= max(3n - 6, n - 1) + slack``;
    ``exact_bound`` keeps only ``m == 3n - 6``. ``max_darts`` caps ``2m`` for the
    scheme scans.
    """

    max_n: int
    min_n: int = 1
    max_multiplicity: int = 1
    allow_loops: bool = False
    max_edges: int | None = None
    bound_slack: int | None = None
    exact_bound: bool = False
    max_darts: int = DEFAULT_MAX_DARTS

    def edge_counts(self, n: int) -> range:
        pairs = math.comb(n, 2) + (n if self.allow_loops else 0)
        high = pairs * self.max_multiplicity
        low = max(n - 1, 0)
        if self.max_edges is not None:
            high = min(high, self.max_edges)
        if self.bound_slack is not None:
            high = min(high, max(3 * n - 6, n - 1) + self.bound_slack)
        if self.exact_bound:
            if n < 3:
                return range(0)
            low, high = max(low, 3 * n - 6), min(high, 3 * n - 6)
        return range(low, high + 1)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class GraphClass:
    code: bytes
    graph: Multigraph

    @property
    def code_hex(self) -> str:
        return self.code.hex()


@dataclass
class VerificationReport:
    claim: str
    range: dict[str, Any]
    population: int = 0
    equality_cases: list[str] = field(default_factory=list)
    violations: list[dict[str, Any]] = field(default_factory=list)
    seconds: float = 0.0
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self, include_timing: bool = True) -> dict[str, Any]:
        data = {
            "claim": self.claim,
            "range": self.range,
            "population": self.population,
            "equality_cases": self.equality_cases,
            "violations": self.violations,
            "details": self.details,
        }
        if include_timing:
            data["seconds"] = round(self.seconds, 3)
        return data


# Graph enumeration


def _vertex_pairs(n: int, allow_loops: bool) -> list[tuple[int, int]]:
    return [(u, w) for u in range(n) for w in range(u if allow_loops else u + 1, n)]


def labeled_space_size(r: EnumerationRange, n: int) -> int:
    pairs = len(_vertex_pairs(n, r.allow_loops))
    counts = r.edge_counts(n)
    if r.max_multiplicity == 1:
        return sum(math.comb(pairs, m) for m in counts)
    return (r.max_multiplicity + 1) ** pairs


def _check_range(r: EnumerationRange, limit: int) -> None:
    if r.max_n > MAX_ENUMERATION_VERTICES:
        raise RangeTooLarge(
            f"Enumeration limited to n <= {MAX_ENUMERATION_VERTICES}, got max_n={r.max_n}"
        )
    if r.max_multiplicity < 1 or r.min_n < 1:
        raise RangeTooLarge("Enumeration needs max_multiplicity >= 1 and min_n >= 1")
    total = sum(labeled_space_size(r, n) for n in range(r.min_n, r.max_n + 1))
    if total > limit:
        raise RangeTooLarge(f"Labeled space of {total} graphs exceeds the limit of {limit}")


def _chunks(r: EnumerationRange) -> list[tuple[int, int]]:
    """Work units: ``(n, m)`` for simple graphs, ``(n, head)`` with the first pair's
    multiplicity for multigraphs."""
    chunks = []
    for n in range(r.min_n, r.max_n + 1):
        if r.max_multiplicity == 1:
            chunks.extend((n, m) for m in r.edge_counts(n))
        elif _vertex_pairs(n, r.allow_loops):
            chunks.extend((n, head) for head in range(r.max_multiplicity + 1))
        else:
            chunks.append((n, 0))
    return chunks


def _labeled_graphs(r: EnumerationRange, chunk: tuple[int, int]) -> Iterator[list[tuple[int, int]]]:
    n, key = chunk
    pairs = _vertex_pairs(n, r.allow_loops)
    if r.max_multiplicity == 1:
        yield from (list(c) for c in itertools.combinations(pairs, key))
        return
    allowed = set(r.edge_counts(n))
    if not pairs:
        if 0 in allowed:
            yield []
        return
    for rest in itertools.product(range(r.max_multiplicity + 1), repeat=len(pairs) - 1):
        mult = (key, *rest)
        if sum(mult) not in allowed:
            continue
        yield [pair for pair, k in zip(pairs, mult) for _ in range(k)]


def _scan_chunk(
    r: EnumerationRange,
    chunk: tuple[int, int],
    keep: Callable[[Multigraph], bool] | None,
    canonical_cap: int,
) -> dict[bytes, np.ndarray]:
    n = chunk[0]
    labels = [str(i) for i in range(n)]
    found: dict[bytes, np.ndarray] = {}
    for ends in _labeled_graphs(r, chunk):
        g = Multigraph(labels, ends, r.allow_loops)
        if n > 1 and any(g.degree(v) == g.loop_count(v) * 2 for v in g.vertices):
            continue
        if not is_connected(g):
            continue
        if keep is not None and not keep(g):
            continue
        code = canonical_code(g, canonical_cap)
        if code not in found:
            found[code] = adjacency_matrix(g)
    return found


def enumerate_classes(
    r: EnumerationRange,
    keep: Callable[[Multigraph], bool] | None = None,
    threads: int | None = None,
    labeled_limit: int = DEFAULT_LABELED_LIMIT,
    canonical_cap: int = 10,
) -> list[GraphClass]:
    """One representative per isomorphism class of connected graphs in range.

    ``keep`` filters labeled graphs before dedupe. Representatives are rebuilt from
    the canonical matrix, so they do not depend on which labeled copy was seen first.
    """
    _check_range(r, labeled_limit)
    chunks = _chunks(r)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        results = list(pool.map(lambda c: _scan_chunk(r, c, keep, canonical_cap), chunks))

    merged: dict[bytes, np.ndarray] = {}
    for found in results:
        for code, matrix in found.items():
            merged.setdefault(code, matrix)

    classes = []
    for code, matrix in merged.items():
        rep = canonical_representative(graph_from_matrix(matrix, r.allow_loops), canonical_cap)
        classes.append(GraphClass(code, rep))
    classes.sort(key=lambda c: (c.graph.n, c.graph.m, c.code))
    logger.info(f"Enumerated {len(classes)} classes over {len(chunks)} chunks")
    return classes


def enumerate_graphs(r: EnumerationRange, **kwargs: Any) -> list[Multigraph]:
    """Connected graphs in range, one per isomorphism class, ordered by (n, m, code)."""
    return [c.graph for c in enumerate_classes(r, **kwargs)]


# Scheme enumeration


def _rotation_choices(g: Multigraph, v: int, edge_max_only: bool) -> list[tuple[Dart, ...]]:
    darts = g.darts_at(v)
    if len(darts) <= 1:
        return [tuple(darts)]
    orders = []
    for perm in itertools.permutations(darts[1:]):
        order = (darts[0], *perm)
        if edge_max_only:
            ends = [g.far_end(d) for d in order]
            if any(
                ends[i - 1] != ends[i] and not g.adjacent(ends[i - 1], ends[i])
                for i in range(len(ends))
            ):
                continue
        orders.append(order)
    return orders


def enumerate_schemes(
    g: Multigraph, edge_max_only: bool = False, max_darts: int = DEFAULT_MAX_DARTS
) -> Iterator[EmbeddingScheme]:
    """Every scheme of ``g`` once up to vertex switching and global reflection.

    Spanning-tree edges are fixed to +1 and the other edges (loops included) take
    both signs. At the least vertex of degree at least 3 the second dart must precede
    the last one, which picks one of each mirror pair.

    Raises:
        RangeTooLarge: more than ``max_darts`` darts
    """
    if 2 * g.m > max_darts:
        raise RangeTooLarge(f"Scheme enumeration limited to {max_darts} darts, got {2 * g.m}")
    if not is_connected(g):
        raise Disconnected("Scheme enumeration requires a connected graph")

    choices = [_rotation_choices(g, v, edge_max_only) for v in g.vertices]
    root = next((v for v in g.vertices if g.degree(v) >= 3), None)
    if root is not None:
        choices[root] = [order for order in choices[root] if order[1] < order[-1]]

    tree = set(spanning_tree_edges(g))
    free = [e for e in range(g.m) if e not in tree]
    for rotation in itertools.product(*choices):
        for signs in itertools.product((1, -1), repeat=len(free)):
            signature = [1] * g.m
            for e, sign in zip(free, signs):
                signature[e] = sign
            s = EmbeddingScheme(g, rotation, signature)
            if edge_max_only and not is_edge_maximal(s).maximal:
                continue
            yield s


def find_scheme(
    g: Multigraph,
    predicate: Callable[[EmbeddingScheme], bool],
    edge_max_only: bool = True,
    max_darts: int = DEFAULT_MAX_DARTS,
) -> EmbeddingScheme | None:
    """First enumerated scheme satisfying ``predicate``."""
    return next((s for s in enumerate_schemes(g, edge_max_only, max_darts) if predicate(s)), None)


# Claims


def _violation(reason: str, g: Multigraph, s: EmbeddingScheme | None = None, **extra: Any) -> dict[str, Any]:
    logger.error(f"Violation: {reason}")
    return {"reason": reason, "witness": document(g, s), **extra}


def _timed(report: VerificationReport, started: float) -> VerificationReport:
    report.seconds = time.perf_counter() - started
    logger.info(
        f"Claim {report.claim}: population {report.population}, "
        f"{len(report.equality_cases)} equality cases, {len(report.violations)} violations"
    )
    return report


def _has_k4(g: Multigraph) -> bool:
    return any(
        all(g.adjacent(a, b) for a, b in itertools.combinations(quad, 2))
        for quad in itertools.combinations(g.vertices, 4)
    )


def verify_lh_bound(
    r: EnumerationRange,
    threads: int | None = None,
    labeled_limit: int = DEFAULT_LABELED_LIMIT,
    oracle_cap: int = 8,
    budget: int = 20000,
) -> VerificationReport:
    """Every connected locally Hamiltonian graph has ``m >= 3n - 6``; at equality it
    triangulates the sphere (reconstruction and oracle must both succeed)."""
    if r.allow_loops:
        raise RangeTooLarge("The local Hamiltonicity bound is checked on loopless ranges")
    started = time.perf_counter()
    report = VerificationReport("lh-bound", r.to_json())
    classes = enumerate_classes(
        r, keep=lambda g: is_locally_hamiltonian(g).holds, threads=threads, labeled_limit=labeled_limit
    )
    inventory: Counter = Counter()
    backtracked = []
    for c in classes:
        g = c.graph
        report.population += 1
        if g.n < 3:
            continue
        bound = 3 * g.n - 6
        if g.m < bound:
            report.violations.append(_violation(f"locally Hamiltonian with m={g.m} < 3n-6={bound}", g))
            continue
        if g.m != bound:
            continue
        report.equality_cases.append(c.code_hex)
        inventory[g.n] += 1
        try:
            scheme, trace = reconstruct_triangulation(g, budget=budget)
        except ReconstructionFailed as e:
            report.violations.append(_violation(f"reconstruction failed: {e}", g))
            continue
        if trace.backtracking_needed:
            backtracked.append(c.code_hex)
        if len(trace_faces(scheme)) != 2 * g.n - 4:
            report.violations.append(_violation("reconstructed face count is not 2n-4", g, scheme))
        if g.n <= oracle_cap:
            witness = oracle_embed(g, max_vertices=oracle_cap, threads=1)
            if witness is None or len(trace_faces(witness)) != len(trace_faces(scheme)):
                report.violations.append(_violation("oracle disagrees with reconstruction", g, scheme))
    report.details = {
        "equality_by_n": {str(n): k for n, k in sorted(inventory.items())},
        "backtracking_needed": backtracked,
    }
    return _timed(report, started)


def verify_maximal_embeddings(
    r: EnumerationRange,
    threads: int | None = None,
    labeled_limit: int = DEFAULT_LABELED_LIMIT,
    budget: int = 20000,
) -> VerificationReport:
    """Edge-maximal schemes of graphs with ``m <= 3n - 6`` force ``m = 3n - 6``; for
    simple graphs the rotations agree with the sphere up to per-vertex reversal, and
    for simple K4-free graphs the faces agree too.

    Classes where a hypothesis is needed (a non-simple or K4 graph whose edge-maximal
    scheme departs from the sphere) are listed under ``demonstrations``.
    """
    if r.allow_loops:
        raise RangeTooLarge("Edge-maximal embeddings are checked on loopless ranges")
    started = time.perf_counter()
    report = VerificationReport("maximal", r.to_json())
    census: dict[str, dict[str, int]] = {}
    demonstrations = []
    schemes_seen = 0
    for c in enumerate_classes(r, threads=threads, labeled_limit=labeled_limit):
        g = c.graph
        if g.n < 3 or g.m > 3 * g.n - 6 or 2 * g.m > r.max_darts:
            continue
        report.population += 1
        maximal = list(enumerate_schemes(g, edge_max_only=True, max_darts=r.max_darts))
        schemes_seen += len(maximal)
        if not maximal:
            continue
        genus_counts = Counter(euler_genus(s) for s in maximal)
        census[c.code_hex] = {str(k): v for k, v in sorted(genus_counts.items())}
        if g.m != 3 * g.n - 6:
            report.violations.append(
                _violation(f"edge-maximal scheme with m={g.m} < 3n-6", g, maximal[0])
            )
            continue
        report.equality_cases.append(c.code_hex)
        try:
            sphere, _ = reconstruct_triangulation(g, budget=budget)
        except ReconstructionFailed as e:
            report.violations.append(_violation(f"reconstruction failed: {e}", g))
            continue

        simple = g.is_simple
        k4_free = not _has_k4(g)
        demonstrated = False
        for s in maximal:
            mismatched = [
                v for v in g.vertices
                if rotation_orientation_match(sphere, s, v) is Orientation.MISMATCH
            ]
            faces_differ = g.n >= 4 and not face_sets_equal(sphere, s)
            if simple and mismatched:
                report.violations.append(
                    _violation("rotation mismatch on a simple graph", g, s, vertices=mismatched)
                )
            elif simple and k4_free and faces_differ:
                report.violations.append(_violation("face sets differ on a K4-free simple graph", g, s))
            elif not demonstrated and (mismatched or faces_differ):
                demonstrated = True
                demonstrations.append(
                    {
                        "class": c.code_hex,
                        "hypothesis": "simple" if mismatched else "K4-free",
                        "genus": euler_genus(s),
                        "witness": document(g, s),
                    }
                )
    report.details = {
        "edge_maximal_schemes": schemes_seen,
        "genus_census": census,
        "demonstrations": demonstrations,
    }
    return _timed(report, started)


def verify_loop_bound(
    r: EnumerationRange,
    threads: int | None = None,
    labeled_limit: int = DEFAULT_LABELED_LIMIT,
) -> VerificationReport:
    """Edge-maximal loop graphs have ``m >= 2n - 3``, with equality only on flowers,
    and every flower in range has an edge-maximal scheme."""
    if r.max_n > 3:
        raise RangeTooLarge(f"The loop bound is checked for n <= 3, got max_n={r.max_n}")
    started = time.perf_counter()
    logger.warning("Loop graphs: maximality only concerns distinct non-adjacent pairs")
    report = VerificationReport("loop-bound", r.to_json())
    for c in enumerate_classes(r, threads=threads, labeled_limit=labeled_limit):
        g = c.graph
        if g.n < 2 or 2 * g.m > r.max_darts:
            continue
        report.population += 1
        bound = 2 * g.n - 3
        flower = is_flower(g) is not None
        if g.m > bound:
            continue
        has_maximal = find_scheme(g, lambda s: True, max_darts=r.max_darts) is not None
        if has_maximal and g.m < bound:
            report.violations.append(_violation(f"edge-maximal scheme with m={g.m} < 2n-3", g))
        elif has_maximal and not flower:
            report.violations.append(_violation("equality case is not a flower", g))
        elif flower and not has_maximal:
            report.violations.append(_violation("flower without an edge-maximal scheme", g))
        elif has_maximal:
            report.equality_cases.append(c.code_hex)
    return _timed(report, started)


def _random_face(s: EmbeddingScheme, rng: random.Random, at: int | None = None) -> FacialWalk:
    faces = [f for f in trace_faces(s) if at is None or at in f.vertices(s.graph)]
    return faces[rng.randrange(len(faces))]


def _random_outer(n_max: int, rng: random.Random) -> EmbeddingScheme:
    if n_max >= 6 and rng.random() < 0.5:
        return random_min_degree_four(rng.randint(6, n_max), rng, prefix="o")
    return random_stacked_triangulation(rng.randint(4, n_max), rng)


def lemma1_fixture(rng: random.Random, max_n: int = 12) -> tuple[str, EmbeddingScheme, CycleSpec]:
    """Random sphere triangulation on at most ``max_n`` vertices with a separating
    2- or 3-cycle and a side whose vertices all have degree at least 4.

    A ``triangle`` fixture glues a minimum-degree-4 piece onto a stacked or
    minimum-degree-4 triangulation. A ``lens`` fixture glues such a piece inside the
    2-cycle of a lens and sometimes another triangulation outside it.
    """
    if max_n < 7:
        raise ValidationError(f"max_n: lemma1 fixtures need at least 7 vertices, got {max_n}")
    inner = random_min_degree_four(rng.randint(6, max_n - 1), rng)
    inner_face = _random_face(inner, rng)

    if rng.random() < 0.5:
        outer = _random_outer(max_n - inner.graph.n + 3, rng)
        face = _random_face(outer, rng)
        glued = glue_along_triangle(outer, face, inner, inner_face)
        return "triangle", glued, CycleSpec(tuple(sorted(face.edges())))

    lens = lens_scheme()
    glued = glue_along_triangle(lens, _random_face(lens, rng, at=2), inner, inner_face)
    room = max_n - glued.graph.n + 3
    if room >= 4 and rng.random() < 0.5:
        outer = _random_outer(room, rng)
        outside = _random_face(glued, rng, at=3)
        glued = glue_along_triangle(glued, outside, outer, _random_face(outer, rng))
    return "lens", glued, CycleSpec((0, 1))


def verify_lemma1(
    samples: int = 100,
    seed: int = 0,
    max_n: int = 12,
) -> VerificationReport:
    """Interior-vertex candidates on random separating-cycle fixtures.

    Every side of a fixture whose vertices all have degree at least 4 must offer
    two candidates.
    """
    if samples < 0:
        raise ValidationError(f"samples: expected a non-negative count, got {samples}")
    started = time.perf_counter()
    rng = random.Random(seed)
    report = VerificationReport(
        "lemma1", {"samples": samples, "seed": seed, "max_n": max_n}
    )
    kinds: Counter[str] = Counter()
    sides_checked = 0
    for _ in range(samples):
        kind, s, cycle = lemma1_fixture(rng, max_n)
        g = s.graph
        kinds[kind] += 1
        report.population += 1
        sides = side_decomposition(s, cycle)
        checked = 0
        for side in ("interior", "exterior"):
            members = sides.side(side)
            if not members or any(g.degree(v) < 4 for v in members):
                continue
            checked += 1
            found = lemma1_candidates(s, cycle, side)
            if len(found) < 2:
                report.violations.append(
                    _violation(
                        f"only {len(found)} {side} candidates", g, s, cycle=list(cycle.edges)
                    )
                )
        if not checked:
            report.violations.append(
                _violation("no side has minimum degree 4", g, s, cycle=list(cycle.edges))
            )
        sides_checked += checked
    report.details = {"kinds": dict(sorted(kinds.items())), "sides_checked": sides_checked}
    return _timed(report, started)


def verify_neighborhood_uniqueness(
    r: EnumerationRange,
    threads: int | None = None,
    labeled_limit: int = DEFAULT_LABELED_LIMIT,
    oracle_cap: int = 8,
) -> VerificationReport:
    """Each simple vertex of an enumerated simple planar triangulation has exactly
    one Hamiltonian cycle in its neighborhood."""
    started = time.perf_counter()
    report = VerificationReport("neighborhood", r.to_json())
    exact = EnumerationRange(
        max_n=r.max_n,
        min_n=max(r.min_n, 3),
        max_multiplicity=1,
        exact_bound=True,
        max_darts=r.max_darts,
    )
    classes = enumerate_classes(
        exact, keep=lambda g: is_locally_hamiltonian(g).holds, threads=threads, labeled_limit=labeled_limit
    )
    for c in classes:
        g = c.graph
        scheme = oracle_embed(g, max_vertices=oracle_cap, threads=1)
        if scheme is None or not is_sphere_triangulation(scheme):
            continue
        report.population += 1
        report.equality_cases.append(c.code_hex)
        for v in g.vertices:
            if not is_simple_vertex(g, v):
                continue
            cycles = neighborhood_hamiltonian_cycles(g, v)
            if len(cycles) != 1:
                report.violations.append(
                    _violation(
                        f"vertex {g.labels[v]} has {len(cycles)} neighborhood Hamiltonian cycles",
                        g,
                        scheme,
                    )
                )
    return _timed(report, started)


CLAIMS = ("lh-bound", "maximal", "loop-bound", "lemma1", "neighborhood")
