"""Finite directed multigraphs and their closed-path combinatorics.

Vertices and edges carry string names.  Parallel edges and loops are fully
supported; edges are distinguished by name, never by endpoints.  The input
order of vertices and edges is preserved and acts as the canonical order for
everything built on top: special edges, cycle rotation keys, term ordering,
and all deterministic output.

A *closed simple path* at a vertex v is a closed path that returns to v
exactly once (it never passes through v internally).  A *cycle* is a closed
simple path whose edge sources are pairwise distinct.  Vertices are
classified K0 / K1 / K2 by having zero, exactly one, or at least two closed
simple paths based at them; a graph satisfies Condition (K) when no vertex
is K1.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

from .errors import DomainError, GraphError

__all__ = [
    "Graph",
    "Path",
    "Cycle",
    "VertexClass",
    "HeredSatSet",
    "validate_graph",
    "parse_graph",
    "serialize_graph",
    "simple_cycles_through",
    "classify_vertex",
    "condition_k",
    "hereditary_saturated_closure",
    "all_hereditary_saturated_sets",
    "exit_range",
    "k1_cycles",
    "iter_closed_simple_paths",
]

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


def _check_name(name: str) -> None:
    if not isinstance(name, str) or not _NAME_RE.match(name):
        raise GraphError(f"bad identifier {name!r}: use letters, digits, _")


@dataclass(frozen=True)
class Graph:
    """Immutable directed multigraph with ordered vertex and edge lists.

    Construct through :func:`validate_graph` or :func:`parse_graph`; the
    raw constructor performs no checking.
    """

    vertices: tuple[str, ...]
    edges: tuple[str, ...]
    ends: tuple[tuple[str, str], ...]  # (source, range) per edge, same order

    _vindex: dict = field(init=False, repr=False, compare=False)
    _eindex: dict = field(init=False, repr=False, compare=False)
    _out: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_vindex", {v: i for i, v in enumerate(self.vertices)})
        object.__setattr__(self, "_eindex", {e: i for i, e in enumerate(self.edges)})
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for e, (s, _) in zip(self.edges, self.ends):
            out[s].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    def has_vertex(self, v: str) -> bool:
        return v in self._vindex

    def has_edge(self, e: str) -> bool:
        return e in self._eindex

    def check_vertex(self, v: str) -> None:
        if v not in self._vindex:
            raise GraphError(f"unknown vertex {v!r}")

    def check_edge(self, e: str) -> None:
        if e not in self._eindex:
            raise GraphError(f"unknown edge {e!r}")

    def src(self, e: str) -> str:
        self.check_edge(e)
        return self.ends[self._eindex[e]][0]

    def rng(self, e: str) -> str:
        self.check_edge(e)
        return self.ends[self._eindex[e]][1]

    def out_edges(self, v: str) -> tuple[str, ...]:
        self.check_vertex(v)
        return self._out[v]

    def is_sink(self, v: str) -> bool:
        return not self.out_edges(v)

    def special_edge(self, v: str) -> str | None:
        """First outgoing edge of v in input order, or None for a sink."""
        out = self.out_edges(v)
        return out[0] if out else None

    def vertex_index(self, v: str) -> int:
        self.check_vertex(v)
        return self._vindex[v]

    def edge_index(self, e: str) -> int:
        self.check_edge(e)
        return self._eindex[e]

    def reach_from(self, v: str) -> frozenset[str]:
        """Vertices reachable from v by a directed path (v included)."""
        self.check_vertex(v)
        seen = {v}
        queue = deque([v])
        while queue:
            w = queue.popleft()
            for e in self._out[w]:
                r = self.ends[self._eindex[e]][1]
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return frozenset(seen)

    def sort_vertices(self, vs: Iterable[str]) -> tuple[str, ...]:
        return tuple(sorted(vs, key=self.vertex_index))


def validate_graph(vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]) -> Graph:
    """Build a :class:`Graph` from listings, rejecting malformed input.

    ``vertices`` is an iterable of names; ``edges`` an iterable of
    ``(name, source, range)`` triples.  Input order is preserved.  Names
    must be unique across vertices *and* edges so that element expressions
    stay unambiguous.
    """
    vs = tuple(vertices)
    if not vs:
        raise GraphError("a graph needs at least one vertex")
    seen: set[str] = set()
    for v in vs:
        _check_name(v)
        if v in seen:
            raise GraphError(f"duplicate identifier {v!r}")
        seen.add(v)
    vset = set(vs)
    names, ends = [], []
    for e, s, r in edges:
        _check_name(e)
        if e in seen:
            raise GraphError(f"duplicate identifier {e!r}")
        seen.add(e)
        if s not in vset:
            raise GraphError(f"edge {e!r} leaves unknown vertex {s!r}")
        if r not in vset:
            raise GraphError(f"edge {e!r} enters unknown vertex {r!r}")
        names.append(e)
        ends.append((s, r))
    return Graph(vs, tuple(names), tuple(ends))


_EDGE_LINE_RE = re.compile(r"edge\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\Z")


def parse_graph(text: str) -> Graph:
    """Parse the line-oriented graph format.

    ``# ...`` comments and blank lines are ignored.  The first content line
    must be ``vertices: u v w``; every following line is
    ``edge NAME: SRC -> RNG``.
    """
    vertices: tuple[str, ...] | None = None
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("vertices:"):
            if vertices is not None:
                raise GraphError(f"line {lineno}: repeated vertices line")
            vertices = tuple(line[len("vertices:"):].split())
            continue
        m = _EDGE_LINE_RE.match(line)
        if not m:
            raise GraphError(f"line {lineno}: cannot parse {line!r}")
        if vertices is None:
            raise GraphError(f"line {lineno}: edge line before vertices line")
        edges.append((m.group(1), m.group(2), m.group(3)))
    if vertices is None:
        raise GraphError("missing vertices line")
    return validate_graph(vertices, edges)


def serialize_graph(g: Graph) -> str:
    """Inverse of :func:`parse_graph`; output is byte-deterministic."""
    lines = ["vertices: " + " ".join(g.vertices)]
    for e, (s, r) in zip(g.edges, g.ends):
        lines.append(f"edge {e}: {s} -> {r}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Path:
    """Composable edge sequence; with no edges it denotes a single vertex."""

    graph: Graph
    base: str  # source vertex; for the empty path also the range
    edges: tuple[str, ...]

    @staticmethod
    def of(graph: Graph, edges: Iterable[str] = (), at: str | None = None) -> "Path":
        es = tuple(edges)
        if not es:
            if at is None:
                raise DomainError("an empty path needs a base vertex")
            graph.check_vertex(at)
            return Path(graph, at, ())
        base = graph.src(es[0])
        if at is not None and at != base:
            raise DomainError(f"path starts at {base!r}, not {at!r}")
        here = base
        for e in es:
            if graph.src(e) != here:
                raise DomainError(f"edges do not compose at {e!r}")
            here = graph.rng(e)
        return Path(graph, base, es)

    @property
    def deg(self) -> int:
        return len(self.edges)

    @property
    def src(self) -> str:
        return self.base

    @property
    def rng(self) -> str:
        return self.graph.rng(self.edges[-1]) if self.edges else self.base

    def extend(self, more: Iterable[str]) -> "Path":
        more = tuple(more)
        here = self.rng
        for e in more:
            if self.graph.src(e) != here:
                raise DomainError(f"edges do not compose at {e!r}")
            here = self.graph.rng(e)
        return Path(self.graph, self.base, self.edges + more)

    def drop_last(self) -> "Path":
        if not self.edges:
            raise DomainError("empty path has no last edge")
        return Path(self.graph, self.base, self.edges[:-1])

    def startswith(self, other: "Path") -> bool:
        return (
            self.base == other.base
            and self.edges[: len(other.edges)] == other.edges
        )

    def key(self) -> tuple:
        g = self.graph
        return (g.vertex_index(self.base),) + tuple(g.edge_index(e) for e in self.edges)

    def __str__(self) -> str:
        return ".".join(self.edges) if self.edges else self.base


@dataclass(frozen=True)
class Cycle:
    """Closed path with pairwise-distinct edge sources.

    Two rotations of the same cycle compare unequal but share
    :meth:`rotation_key`; :meth:`canonical` picks the rotation whose edge
    sequence is least in the graph's edge order.
    """

    graph: Graph
    edges: tuple[str, ...]

    @staticmethod
    def of(graph: Graph, edges: Iterable[str]) -> "Cycle":
        es = tuple(edges)
        if not es:
            raise DomainError("a cycle needs at least one edge")
        p = Path.of(graph, es)
        if p.rng != p.src:
            raise DomainError(f"edge sequence {'.'.join(es)} is not closed")
        srcs = [graph.src(e) for e in es]
        if len(set(srcs)) != len(srcs):
            raise DomainError(f"edge sequence {'.'.join(es)} repeats a source vertex")
        return Cycle(graph, es)

    @property
    def sources(self) -> tuple[str, ...]:
        return tuple(self.graph.src(e) for e in self.edges)

    @property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.sources)

    def _rotations(self) -> list[tuple[str, ...]]:
        es = self.edges
        return [es[i:] + es[:i] for i in range(len(es))]

    def rotation_key(self) -> tuple[int, ...]:
        g = self.graph
        return min(tuple(g.edge_index(e) for e in rot) for rot in self._rotations())

    def canonical(self) -> "Cycle":
        g = self.graph
        best = min(self._rotations(), key=lambda rot: tuple(g.edge_index(e) for e in rot))
        return Cycle(self.graph, best)

    def based_at(self, v: str) -> "Cycle":
        for rot in self._rotations():
            if self.graph.src(rot[0]) == v:
                return Cycle(self.graph, rot)
        raise DomainError(f"vertex {v!r} is not on the cycle")

    def to_path(self) -> Path:
        return Path.of(self.graph, self.edges)

    def __str__(self) -> str:
        return ".".join(self.edges)


@dataclass(frozen=True)
class VertexClass:
    """K-classification of a vertex; K1 carries its unique cycle."""

    kind: str  # "K0" | "K1" | "K2"
    cycle: Cycle | None = None

    @staticmethod
    def k0() -> "VertexClass":
        return VertexClass("K0")

    @staticmethod
    def k1(cycle: Cycle) -> "VertexClass":
        return VertexClass("K1", cycle)

    @staticmethod
    def k2() -> "VertexClass":
        return VertexClass("K2")

    @property
    def is_k0(self) -> bool:
        return self.kind == "K0"

    @property
    def is_k1(self) -> bool:
        return self.kind == "K1"

    @property
    def is_k2(self) -> bool:
        return self.kind == "K2"


def simple_cycles_through(g: Graph, v: str) -> tuple[Cycle, ...]:
    """All cycles whose vertex set contains v, rotated to start at v.

    Finite because cycle sources are pairwise distinct.  Ordered by
    (length, edge sequence) under the graph's edge order.
    """
    g.check_vertex(v)
    found: list[Cycle] = []

    def walk(current: str, trail: list[str], visited: set[str]) -> None:
        for e in g.out_edges(current):
            w = g.rng(e)
            if w == v:
                found.append(Cycle(g, tuple(trail) + (e,)))
            elif w not in visited:
                trail.append(e)
                visited.add(w)
                walk(w, trail, visited)
                visited.remove(w)
                trail.pop()

    walk(v, [], {v})
    found.sort(key=lambda c: (len(c.edges), tuple(g.edge_index(e) for e in c.edges)))
    return tuple(found)


def classify_vertex(g: Graph, v: str) -> VertexClass:
    """K-classify v by 0 / 1 / >=2 closed simple paths based at it.

    Closed simple paths cannot be enumerated directly (detours around
    remote loops make them infinite in number), so the count is decided
    through cycles: no cycle through v means no closed path at all; two
    cycles are two closed simple paths; a single cycle is unique exactly
    when no edge leaves the cycle and can come back to v.
    """
    g.check_vertex(v)
    cycles = simple_cycles_through(g, v)
    if not cycles:
        return VertexClass.k0()
    if len(cycles) >= 2:
        return VertexClass.k2()
    (c,) = cycles
    on_cycle = set(c.edges)
    cycle_vertices = c.vertex_set
    for f in g.edges:
        if f in on_cycle or g.src(f) not in cycle_vertices:
            continue
        if v in g.reach_from(g.rng(f)):
            return VertexClass.k2()
    return VertexClass.k1(c)


def condition_k(g: Graph) -> tuple[bool, tuple[str, ...]]:
    """Whether every vertex is K0 or K2, plus the offending K1 vertices."""
    offenders = tuple(v for v in g.vertices if classify_vertex(g, v).is_k1)
    return (not offenders, offenders)


def _is_hereditary(g: Graph, s: frozenset[str]) -> bool:
    return all(g.rng(e) in s for v in s for e in g.out_edges(v))


def _is_saturated(g: Graph, s: frozenset[str]) -> bool:
    for v in g.vertices:
        out = g.out_edges(v)
        if out and v not in s and all(g.rng(e) in s for e in out):
            return False
    return True


@dataclass(frozen=True)
class HeredSatSet:
    """A hereditary and saturated set of vertices.

    Hereditary: closed under following edges out of members.  Saturated:
    contains every non-sink vertex all of whose edges land in it (sinks are
    never forced in).  Use :meth:`of` to validate.
    """

    graph: Graph
    members: frozenset[str]

    @staticmethod
    def of(graph: Graph, members: Iterable[str]) -> "HeredSatSet":
        ms = frozenset(members)
        for v in ms:
            graph.check_vertex(v)
        if not _is_hereditary(graph, ms):
            raise DomainError(f"{sorted(ms)} is not hereditary")
        if not _is_saturated(graph, ms):
            raise DomainError(f"{sorted(ms)} is not saturated")
        return HeredSatSet(graph, ms)

    def sorted_members(self) -> tuple[str, ...]:
        return self.graph.sort_vertices(self.members)

    def __contains__(self, v: str) -> bool:
        return v in self.members

    def __le__(self, other: "HeredSatSet") -> bool:
        return self.members <= other.members

    def __str__(self) -> str:
        return "{" + ", ".join(self.sorted_members()) + "}" if self.members else "{}"


def hereditary_saturated_closure(g: Graph, xs: Iterable[str]) -> HeredSatSet:
    """Least hereditary and saturated superset of ``xs``.

    Alternates the two closure rules to a fixed point; the result does not
    depend on the interleaving order.
    """
    s = set(xs)
    for v in s:
        g.check_vertex(v)
    changed = True
    while changed:
        changed = False
        for v in tuple(s):
            for e in g.out_edges(v):
                r = g.rng(e)
                if r not in s:
                    s.add(r)
                    changed = True
        for v in g.vertices:
            out = g.out_edges(v)
            if out and v not in s and all(g.rng(e) in s for e in out):
                s.add(v)
                changed = True
    return HeredSatSet(g, frozenset(s))


def all_hereditary_saturated_sets(g: Graph) -> tuple[HeredSatSet, ...]:
    """Every hereditary saturated subset, ordered by (size, vertex order).

    Brute force over all vertex subsets; the graphs handled here are small.
    """
    result = []
    n = len(g.vertices)
    for size in range(n + 1):
        for combo in combinations(range(n), size):
            s = frozenset(g.vertices[i] for i in combo)
            if _is_hereditary(g, s) and _is_saturated(g, s):
                result.append(HeredSatSet(g, s))
    return tuple(result)


def exit_range(g: Graph, c: Cycle) -> frozenset[str]:
    """Ranges of the edges that leave the cycle's vertices but are not on it."""
    c = Cycle.of(g, c.edges)  # revalidates against this graph
    on_cycle = set(c.edges)
    srcs = c.vertex_set
    return frozenset(g.rng(f) for f in g.edges if f not in on_cycle and g.src(f) in srcs)


def k1_cycles(g: Graph) -> tuple[Cycle, ...]:
    """Distinct cycles (canonical rotations) carried by the K1 vertices."""
    seen: dict[tuple[int, ...], Cycle] = {}
    for v in g.vertices:
        vc = classify_vertex(g, v)
        if vc.is_k1:
            canon = vc.cycle.canonical()
            seen.setdefault(canon.rotation_key(), canon)
    return tuple(seen[k] for k in sorted(seen))


def iter_closed_simple_paths(g: Graph, v: str, max_len: int) -> Iterator[Path]:
    """Closed simple paths based at v, shortest first, up to ``max_len`` edges.

    Breadth-first, so within one length the edge order of the graph decides
    the order.  The stream can be infinite without the bound.
    """
    g.check_vertex(v)
    queue: deque[tuple[str, tuple[str, ...]]] = deque([(v, ())])
    while queue:
        here, trail = queue.popleft()
        for e in g.out_edges(here):
            w = g.rng(e)
            if w == v:
                yield Path.of(g, trail + (e,))
            elif len(trail) + 1 < max_len:
                queue.append((w, trail + (e,)))
