"""Flowers: loop graphs grown from K2 or K3 by attaching petals at loop vertices.

A K2o petal adds a loop at the attachment vertex and a pendant vertex; a K3o petal
adds a loop and a triangle through two new vertices. Every flower has exactly
``2n - 3`` edges.
"""

import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from .embedding import EmbeddingScheme
from .errors import BadAttachmentVertex, ValidationError
from .multigraph import Dart, Multigraph, is_connected

logger = logging.getLogger(__name__)

BASES = ("K2", "K3")


class PetalKind(str, Enum):
    K2O = "K2o"
    K3O = "K3o"

    @property
    def new_vertices(self) -> int:
        return 1 if self is PetalKind.K2O else 2

    @property
    def new_edges(self) -> int:
        return 2 if self is PetalKind.K2O else 4


@dataclass(frozen=True)
class Petal:
    kind: PetalKind
    at: str
    new: tuple[str, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"kind": self.kind.value, "at": self.at}
        if self.new is not None:
            data["new"] = list(self.new)
        return data


@dataclass(frozen=True)
class FlowerDecomposition:
    """Base graph plus petals in attachment order.

    Vertex labels default to ``v0, v1, ...`` in creation order when
    ``base_vertices`` or a petal's ``new`` labels are omitted.
    """

    base: str
    petals: tuple[Petal, ...] = ()
    base_vertices: tuple[str, ...] | None = None

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"base": self.base, "petals": [p.to_json() for p in self.petals]}
        if self.base_vertices is not None:
            data["base_vertices"] = list(self.base_vertices)
        return data

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> "FlowerDecomposition":
        try:
            base = data["base"]
            if base not in BASES:
                raise ValidationError(f"Flower base must be K2 or K3, got {base!r}")
            petals = []
            for item in data.get("petals", []):
                new = item.get("new")
                petals.append(
                    Petal(
                        PetalKind(item["kind"]),
                        str(item["at"]),
                        None if new is None else tuple(str(x) for x in new),
                    )
                )
            base_vertices = data.get("base_vertices")
        except (KeyError, TypeError, AttributeError) as e:
            raise ValidationError(f"Malformed flower decomposition: {e}") from e
        except ValueError as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"Unknown petal kind: {e}") from e
        return cls(
            base,
            tuple(petals),
            None if base_vertices is None else tuple(str(x) for x in base_vertices),
        )


@dataclass
class _Assembly:
    labels: list[str] = field(default_factory=list)
    ends: list[tuple[int, int]] = field(default_factory=list)
    rotation: list[list[Dart]] = field(default_factory=list)

    def fresh_label(self) -> str:
        k = len(self.labels)
        while f"v{k}" in self.labels:
            k += 1
        return f"v{k}"

    def add_vertex(self, label: str | None) -> int:
        label = self.fresh_label() if label is None else label
        if label in self.labels:
            raise ValidationError(f"Flower vertex label {label!r} used twice")
        self.labels.append(label)
        self.rotation.append([])
        return len(self.labels) - 1

    def add_edge(self, u: int, w: int) -> int:
        self.ends.append((u, w))
        return len(self.ends) - 1


def _assemble(d: FlowerDecomposition) -> _Assembly:
    """Lay out the flower's vertices, edges and planar rotation in build order.

    Each petal is nested in the corner following the attachment vertex's first dart.
    """
    if d.base not in BASES:
        raise ValidationError(f"Flower base must be K2 or K3, got {d.base!r}")
    size = 2 if d.base == "K2" else 3
    names = d.base_vertices
    if names is not None and len(names) != size:
        raise ValidationError(f"Base {d.base} needs {size} vertex labels, got {len(names)}")

    a = _Assembly()
    for i in range(size):
        a.add_vertex(None if names is None else names[i])
    if size == 2:
        e = a.add_edge(0, 1)
        a.rotation[0] = [Dart(e, 0)]
        a.rotation[1] = [Dart(e, 1)]
    else:
        for u, w in ((0, 1), (1, 2), (2, 0)):
            e = a.add_edge(u, w)
            a.rotation[u].append(Dart(e, 0))
            a.rotation[w].append(Dart(e, 1))

    for step, petal in enumerate(d.petals):
        if petal.at not in a.labels:
            raise BadAttachmentVertex(
                f"Petal {step} attaches at {petal.at!r}, which does not exist yet"
            )
        if petal.new is not None and len(petal.new) != petal.kind.new_vertices:
            raise ValidationError(
                f"Petal {step} ({petal.kind.value}) needs {petal.kind.new_vertices} new labels"
            )
        at = a.labels.index(petal.at)
        fresh = [None] * petal.kind.new_vertices if petal.new is None else list(petal.new)
        loop = a.add_edge(at, at)
        first, *rest = a.rotation[at]
        if petal.kind is PetalKind.K2O:
            p = a.add_vertex(fresh[0])
            stem = a.add_edge(at, p)
            a.rotation[p] = [Dart(stem, 1)]
            inner = [Dart(stem, 0)]
        else:
            x = a.add_vertex(fresh[0])
            y = a.add_vertex(fresh[1])
            ax = a.add_edge(at, x)
            xy = a.add_edge(x, y)
            ay = a.add_edge(at, y)
            a.rotation[x] = [Dart(ax, 1), Dart(xy, 0)]
            a.rotation[y] = [Dart(xy, 1), Dart(ay, 1)]
            inner = [Dart(ax, 0), Dart(ay, 0)]
        a.rotation[at] = [first, Dart(loop, 0), *inner, Dart(loop, 1), *rest]
    return a


def build_flower(d: FlowerDecomposition) -> Multigraph:
    """The flower graph of a decomposition (loops allowed).

    Raises:
        BadAttachmentVertex: a petal names a vertex that does not exist at its step
    """
    a = _assemble(d)
    g = Multigraph(a.labels, a.ends, loops_allowed=True)
    assert g.m == 2 * g.n - 3
    return g


def flower_scheme(d: FlowerDecomposition) -> EmbeddingScheme:
    """Genus-0, edge-maximal, all-positive scheme of the flower."""
    a = _assemble(d)
    return EmbeddingScheme(Multigraph(a.labels, a.ends, loops_allowed=True), a.rotation)


def _is_base(g: Multigraph, vertices: frozenset[int], edges: frozenset[int]) -> str | None:
    if any(g.ends[e][0] == g.ends[e][1] for e in edges):
        return None
    pairs = {frozenset(g.ends[e]) for e in edges}
    if len(vertices) == 2 and len(edges) == 1:
        return "K2"
    if len(vertices) == 3 and len(edges) == 3 and len(pairs) == 3:
        return "K3"
    return None


def is_flower(g: Multigraph) -> FlowerDecomposition | None:
    """A decomposition of ``g`` into base and petals, or None.

    Leaves are peeled in reverse: a degree-1 vertex next to a loop vertex (K2o), or
    two adjacent degree-2 vertices whose other neighbor is a common loop vertex
    (K3o). The highest-id loop at the attachment vertex goes with the petal. Dead
    ends are memoized on the remaining edge set.
    """
    if g.n < 2 or g.m != 2 * g.n - 3:
        return None
    if not is_connected(g):
        logger.debug("Disconnected graph is not a flower")
        return None

    failed: set[frozenset[int]] = set()

    def incident(v: int, edges: frozenset[int]) -> list[int]:
        return [e for e in sorted(edges) if v in g.ends[e]]

    def degree(v: int, edges: frozenset[int]) -> int:
        return sum((g.ends[e][0] == v) + (g.ends[e][1] == v) for e in edges)

    def top_loop(v: int, edges: frozenset[int]) -> int | None:
        loops = [e for e in edges if g.ends[e] == (v, v)]
        return max(loops) if loops else None

    def other(e: int, v: int) -> int:
        a, b = g.ends[e]
        return b if a == v else a

    def peel(vertices: frozenset[int], edges: frozenset[int]) -> list[tuple] | None:
        base = _is_base(g, vertices, edges)
        if base is not None:
            return [("base", base, tuple(sorted(vertices)))]
        if edges in failed:
            return None

        for p in sorted(vertices):
            if degree(p, edges) != 1:
                continue
            (stem,) = incident(p, edges)
            at = other(stem, p)
            loop = top_loop(at, edges)
            if loop is None:
                continue
            rest = peel(vertices - {p}, edges - {stem, loop})
            if rest is not None:
                return [*rest, (PetalKind.K2O, at, (p,))]

        for x in sorted(vertices):
            if degree(x, edges) != 2:
                continue
            for xy in incident(x, edges):
                y = other(xy, x)
                if y <= x or degree(y, edges) != 2:
                    continue
                (ax,) = [e for e in incident(x, edges) if e != xy]
                (ay,) = [e for e in incident(y, edges) if e != xy]
                at = other(ax, x)
                if at in (x, y) or other(ay, y) != at:
                    continue
                loop = top_loop(at, edges)
                if loop is None:
                    continue
                rest = peel(vertices - {x, y}, edges - {ax, xy, ay, loop})
                if rest is not None:
                    return [*rest, (PetalKind.K3O, at, (x, y))]

        failed.add(edges)
        return None

    found = peel(frozenset(g.vertices), frozenset(range(g.m)))
    if found is None:
        return None
    (_, base, base_ids), *attachments = found
    labels = g.labels
    petals = tuple(
        Petal(kind, labels[at], tuple(labels[v] for v in new)) for kind, at, new in attachments
    )
    return FlowerDecomposition(base, petals, tuple(labels[v] for v in base_ids))


def random_decomposition(n_max: int, rng: random.Random) -> FlowerDecomposition:
    """Random flower with between 2 and ``n_max`` vertices."""
    if n_max < 2:
        raise ValueError(f"A flower needs at least 2 vertices, got n_max={n_max}")
    target = rng.randint(2, n_max)
    base = "K2" if target == 2 else rng.choice(BASES)
    n = 2 if base == "K2" else 3
    labels = [f"v{i}" for i in range(n)]
    petals = []
    while n < target:
        kind = PetalKind.K3O if target - n >= 2 and rng.random() < 0.5 else PetalKind.K2O
        at = rng.choice(labels)
        new = tuple(f"v{n + i}" for i in range(kind.new_vertices))
        petals.append(Petal(kind, at, new))
        labels.extend(new)
        n += kind.new_vertices
    return FlowerDecomposition(base, tuple(petals), tuple(f"v{i}" for i in range(2 if base == "K2" else 3)))
