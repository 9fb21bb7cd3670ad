"""Weighted dependency graphs and the graph algebra used by the miner.

A dependency graph has one vertex per distinct activity plus two synthetic
sentinel vertices marking the start and the end of an execution. Edge
``(a, b)`` carries the number of times ``b`` directly followed ``a``.

Graphs are immutable values. Every operation below is a pure function that
returns a new graph, so graphs can be shared freely between threads.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .exceptions import (
    EmptyInputError,
    EmptySequenceError,
    InvalidGraphError,
    SentinelCollisionError,
    UniverseMismatchError,
)

Edge = tuple[str, str]

DEFAULT_START = "__START__"
DEFAULT_END = "__END__"


def _check_label(label, what="label"):
    if not isinstance(label, str) or not label or any(c.isspace() for c in label):
        raise InvalidGraphError(f"{what} must be a non-empty token without whitespace, got {label!r}")


@dataclass(frozen=True)
class GraphUniverse:
    """The pair of sentinel labels shared by a family of graphs."""

    start_label: str = DEFAULT_START
    end_label: str = DEFAULT_END

    def __post_init__(self):
        _check_label(self.start_label, "start_label")
        _check_label(self.end_label, "end_label")
        if self.start_label == self.end_label:
            raise InvalidGraphError("start and end sentinels must differ")

    @property
    def sentinels(self) -> frozenset[str]:
        return frozenset((self.start_label, self.end_label))

    def check_activity(self, label: str) -> None:
        _check_label(label, "activity label")
        if label in self.sentinels:
            raise SentinelCollisionError(f"activity {label!r} collides with a sentinel label")


@dataclass(frozen=True)
class ReachabilitySets:
    """Non-sentinel vertices reachable from start (``forward``) and
    co-reachable from end (``backward``)."""

    forward: frozenset[str]
    backward: frozenset[str]


class DependencyGraph:
    """Immutable labelled digraph with positive integer edge weights.

    Vertices and edges are kept in lexicographic order, so iteration and
    serialization are deterministic.
    """

    __slots__ = ("universe", "_vertices", "_edges", "_succ", "_pred", "_hash")

    def __init__(
        self,
        universe: GraphUniverse,
        edges: Mapping[Edge, int] | Iterable[tuple[Edge, int]] = (),
        vertices: Iterable[str] = (),
    ):
        edge_map = dict(edges.items() if isinstance(edges, Mapping) else edges)
        verts = set(vertices) | universe.sentinels
        for (src, dst), w in edge_map.items():
            if isinstance(w, bool) or not isinstance(w, int) or w < 1:
                raise InvalidGraphError(f"edge ({src}, {dst}) has weight {w!r}; weights must be integers >= 1")
            if dst == universe.start_label:
                raise InvalidGraphError(f"edge ({src}, {dst}) enters the start sentinel")
            if src == universe.end_label:
                raise InvalidGraphError(f"edge ({src}, {dst}) leaves the end sentinel")
            verts.add(src)
            verts.add(dst)
        for v in verts:
            _check_label(v, "vertex label")

        self.universe = universe
        self._vertices = tuple(sorted(verts))
        self._edges = MappingProxyType(dict(sorted(edge_map.items())))
        succ: dict[str, list[str]] = {v: [] for v in self._vertices}
        pred: dict[str, list[str]] = {v: [] for v in self._vertices}
        for src, dst in self._edges:
            succ[src].append(dst)
            pred[dst].append(src)
        self._succ = succ
        self._pred = pred
        self._hash = None

    @property
    def vertices(self) -> tuple[str, ...]:
        return self._vertices

    @property
    def edges(self) -> Mapping[Edge, int]:
        return self._edges

    @property
    def start(self) -> str:
        return self.universe.start_label

    @property
    def end(self) -> str:
        return self.universe.end_label

    @property
    def n_vertices(self) -> int:
        return len(self._vertices)

    @property
    def n_edges(self) -> int:
        return len(self._edges)

    @property
    def activities(self) -> tuple[str, ...]:
        """Vertices other than the two sentinels."""
        sentinels = self.universe.sentinels
        return tuple(v for v in self._vertices if v not in sentinels)

    def weight(self, src: str, dst: str) -> int:
        """Weight of ``(src, dst)``, or 0 when the edge is absent."""
        return self._edges.get((src, dst), 0)

    def successors(self, v: str) -> tuple[str, ...]:
        return tuple(self._succ.get(v, ()))

    def predecessors(self, v: str) -> tuple[str, ...]:
        return tuple(self._pred.get(v, ()))

    def out_edges(self, v: str) -> list[Edge]:
        return [(v, d) for d in self._succ.get(v, ())]

    def in_edges(self, v: str) -> list[Edge]:
        return sorted((s, v) for s in self._pred.get(v, ()))

    def total_weight(self) -> int:
        return sum(self._edges.values())

    def distinct_weights(self) -> list[int]:
        """Distinct edge weights in descending order."""
        return sorted(set(self._edges.values()), reverse=True)

    def __eq__(self, other):
        if not isinstance(other, DependencyGraph):
            return NotImplemented
        return (
            self.universe == other.universe
            and self._vertices == other._vertices
            and self._edges == other._edges
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.universe, self._vertices, tuple(self._edges.items())))
        return self._hash

    def __repr__(self):
        edges = ", ".join(f"({s},{d}):{w}" for (s, d), w in self._edges.items())
        return f"DependencyGraph(|V|={self.n_vertices}, |E|={self.n_edges}, {{{edges}}})"


def _check_universe(*graphs: DependencyGraph) -> GraphUniverse:
    universe = graphs[0].universe
    for g in graphs[1:]:
        if g.universe != universe:
            raise UniverseMismatchError(f"graphs use different sentinels: {universe} vs {g.universe}")
    return universe


def from_sequence(seq: Sequence[str], universe: GraphUniverse | None = None) -> DependencyGraph:
    """Convert one activity sequence into its dependency graph.

    The start sentinel is linked to the first activity and the last activity
    to the end sentinel, each with weight 1. Every pair of consecutive
    activities adds 1 to the weight of the corresponding edge.
    """
    universe = universe or GraphUniverse()
    if len(seq) == 0:
        raise EmptySequenceError("cannot build a dependency graph from an empty sequence")
    for token in seq:
        universe.check_activity(token)
    counts = Counter(zip(seq, seq[1:]))
    counts[(universe.start_label, seq[0])] += 1
    counts[(seq[-1], universe.end_label)] += 1
    return DependencyGraph(universe, counts)


def _reach(adj: Mapping[str, list[str]], source: str) -> set[str]:
    seen = {source}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in adj.get(v, ()):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def reachability(g: DependencyGraph) -> ReachabilitySets:
    sentinels = g.universe.sentinels
    forward = _reach(g._succ, g.start) - sentinels
    backward = _reach(g._pred, g.end) - sentinels
    return ReachabilitySets(frozenset(forward), frozenset(backward))


def has_complete_walk(g: DependencyGraph) -> bool:
    """True when the end sentinel can be reached from the start sentinel."""
    return g.end in _reach(g._succ, g.start)


def is_valid(g: DependencyGraph) -> bool:
    """A graph is valid when every activity reachable from start can also reach
    end (and vice versa), and at least one complete walk exists.

    The second condition rules out the edge-empty graph, for which the set
    equality holds vacuously.
    """
    sets = reachability(g)
    return sets.forward == sets.backward and has_complete_walk(g)


def aggregate(graphs: Sequence[DependencyGraph]) -> DependencyGraph:
    """Union of vertices and edges; edge weights are summed over the members."""
    graphs = list(graphs)
    if not graphs:
        raise EmptyInputError("aggregate needs at least one graph")
    universe = _check_universe(*graphs)
    total: Counter[Edge] = Counter()
    vertices: set[str] = set()
    for g in graphs:
        total.update(g.edges)
        vertices.update(g.vertices)
    return DependencyGraph(universe, total, vertices)


def intersect(g1: DependencyGraph, g2: DependencyGraph) -> DependencyGraph:
    """Common vertices and edges; shared edges keep the smaller weight."""
    universe = _check_universe(g1, g2)
    e2 = g2.edges
    edges = {e: min(w, e2[e]) for e, w in g1.edges.items() if e in e2}
    return DependencyGraph(universe, edges, set(g1.vertices) & set(g2.vertices))


def apply_threshold(g: DependencyGraph, theta: int) -> DependencyGraph:
    """Keep edges with weight >= ``theta`` and the vertices they touch.

    The result need not be valid.
    """
    if isinstance(theta, bool) or not isinstance(theta, int) or theta < 1:
        raise InvalidGraphError(f"threshold must be an integer >= 1, got {theta!r}")
    return DependencyGraph(g.universe, {e: w for e, w in g.edges.items() if w >= theta})


def overlaps(g1: DependencyGraph, g2: DependencyGraph) -> bool:
    return is_valid(intersect(g1, g2))
