"""Two-vertex graphs: counting up to isomorphism, reduction to the sixteen
canonical types, and classification of their cycle-polynomial ideal
lattices into nine skeleton-isomorphism classes.

A two-vertex graph is a shape (loops on u, loops on v, edges u->v, edges
v->u), canonical under the vertex swap.  For lattice purposes a vertex
keeps at most two loops, a direction with no opposite keeps one edge, and
anything dominating one of the two minimal simple configurations collapses
onto it.  Two leftover loop-only shapes share their lattice with smaller
types and map onto them.

The lattice skeleton of a graph records its graded nodes (hereditary
saturated sets under inclusion) plus one family of polynomial-generated
ideals per K1 cycle and compatible vertex part; skeletons compare by
isomorphism via canonical labeling.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .errors import DomainError
from .graphs import (
    Cycle,
    Graph,
    all_hereditary_saturated_sets,
    exit_range,
    hereditary_saturated_closure,
    k1_cycles,
    validate_graph,
)

__all__ = [
    "TwoVertexShape",
    "CanonicalForm16",
    "LatticeSkeleton",
    "SkeletonFamily",
    "Classification",
    "count_closed_form",
    "enumerate_up_to_iso",
    "canonicalize16",
    "canonical_form_of_shape",
    "build_skeleton",
    "classify",
]

ENUMERATION_GUARD = 12


@dataclass(frozen=True, order=True)
class TwoVertexShape:
    """Edge multiplicities of a two-vertex graph, canonical under swap."""

    loops_u: int
    loops_v: int
    uv: int
    vu: int

    def astuple(self) -> tuple[int, int, int, int]:
        return (self.loops_u, self.loops_v, self.uv, self.vu)

    def swapped(self) -> "TwoVertexShape":
        return TwoVertexShape(self.loops_v, self.loops_u, self.vu, self.uv)

    @property
    def is_canonical(self) -> bool:
        return self.astuple() >= self.swapped().astuple()

    def canon(self) -> "TwoVertexShape":
        return self if self.is_canonical else self.swapped()

    @property
    def total(self) -> int:
        return self.loops_u + self.loops_v + self.uv + self.vu

    def to_graph(self, u: str = "u", v: str = "v") -> Graph:
        edges = []
        for i in range(self.loops_u):
            edges.append((f"p{i + 1}", u, u))
        for i in range(self.loops_v):
            edges.append((f"q{i + 1}", v, v))
        for i in range(self.uv):
            edges.append((f"a{i + 1}", u, v))
        for i in range(self.vu):
            edges.append((f"b{i + 1}", v, u))
        return validate_graph((u, v), edges)


def count_closed_form(k: int) -> int:
    """Number of two-vertex graphs with k edges, up to isomorphism.

    Closed form n(n+1)(3k - 4n + 1)/3 + (n+1)*ceil((k+1)/2) with
    n = ceil(k/2), evaluated exactly in integer arithmetic.
    """
    if k < 0:
        raise DomainError("edge count must be nonnegative")
    n = (k + 1) // 2
    first = n * (n + 1) * (3 * k - 4 * n + 1)
    if first % 3:
        raise AssertionError("closed form lost integrality")
    return first // 3 + (n + 1) * ((k + 2) // 2)


def enumerate_up_to_iso(k: int) -> tuple[TwoVertexShape, ...]:
    """All k-edge shapes up to the vertex swap, largest tuple first."""
    if k < 0:
        raise DomainError("edge count must be nonnegative")
    if k > ENUMERATION_GUARD:
        raise DomainError(f"edge count {k} exceeds the enumeration guard {ENUMERATION_GUARD}")
    shapes = set()
    for lu in range(k + 1):
        for lv in range(k + 1 - lu):
            for uv in range(k + 1 - lu - lv):
                shape = TwoVertexShape(lu, lv, uv, k - lu - lv - uv)
                shapes.add(shape.canon())
    return tuple(sorted(shapes, reverse=True))


@dataclass(frozen=True)
class CanonicalForm16:
    """One of the sixteen canonical two-vertex types."""

    id: int
    shape: TwoVertexShape


_SHAPES_16 = {
    1: (0, 0, 0, 0),
    2: (0, 0, 1, 0),
    3: (0, 0, 1, 1),
    4: (0, 0, 2, 1),
    5: (1, 0, 0, 0),
    6: (1, 0, 1, 0),
    7: (1, 0, 0, 1),
    8: (1, 0, 1, 1),
    9: (1, 1, 0, 0),
    10: (1, 1, 1, 0),
    11: (2, 0, 0, 0),
    12: (2, 0, 1, 0),
    13: (2, 0, 0, 1),
    14: (2, 1, 1, 0),
    15: (2, 1, 0, 1),
    16: (2, 2, 1, 0),
}

_ID_BY_SHAPE = {shape: i for i, shape in _SHAPES_16.items()}
# Loop-only shapes whose lattices coincide with smaller types: an isolated
# vertex with two loops behaves like a bare vertex (its singleton is
# hereditary and saturated either way and it contributes no K1 cycle).
_ID_BY_SHAPE[(2, 1, 0, 0)] = 5
_ID_BY_SHAPE[(2, 2, 0, 0)] = 1


def canonical_form_of_shape(shape: TwoVertexShape) -> CanonicalForm16:
    """Reduce an arbitrary shape to its canonical type.

    Loops cap at two (extra loops on a two-or-more-loop vertex change no
    hereditary saturated set and add no K1 cycle).  A shape dominating the
    minimal simple configurations -- two parallel edges with one back edge,
    or a loop with edges both ways -- has a simple algebra, and extra edges
    keep it simple, so it collapses to that base type.  Otherwise a
    direction with no opposite keeps a single edge.
    """
    s = TwoVertexShape(
        min(shape.loops_u, 2), min(shape.loops_v, 2), shape.uv, shape.vu
    ).canon()
    if s.loops_u == 0 and s.loops_v == 0 and s.uv >= 2 and s.vu >= 1:
        cid = 4
    elif (s.loops_u > 0 or s.loops_v > 0) and s.uv >= 1 and s.vu >= 1:
        cid = 8
    else:
        capped = TwoVertexShape(
            s.loops_u, s.loops_v, min(s.uv, 1), min(s.vu, 1)
        ).canon()
        cid = _ID_BY_SHAPE[capped.astuple()]
    return CanonicalForm16(cid, TwoVertexShape(*_SHAPES_16[cid]))


def canonicalize16(g: Graph) -> CanonicalForm16:
    """Canonical type of a two-vertex graph."""
    if len(g.vertices) != 2:
        raise DomainError("canonicalization needs exactly two vertices")
    u, v = g.vertices
    counts = {(u, u): 0, (u, v): 0, (v, u): 0, (v, v): 0}
    for ends in g.ends:
        counts[ends] += 1
    shape = TwoVertexShape(counts[(u, u)], counts[(v, v)], counts[(u, v)], counts[(v, u)])
    return canonical_form_of_shape(shape)


# --- lattice skeletons --------------------------------------------------------


@dataclass(frozen=True)
class SkeletonFamily:
    """Family of polynomial-generated ideals on one cycle and vertex part.

    ``att`` indexes the attached graded node; ``inside`` indexes the graded
    nodes whose ideal contains every member of the family.
    """

    cycle: Cycle
    att: int
    inside: frozenset[int]


@dataclass(frozen=True)
class LatticeSkeleton:
    """Finite summary of a graph's cycle-polynomial ideal lattice."""

    graph: Graph
    nodes: tuple[frozenset[str], ...]
    leq: tuple[tuple[bool, ...], ...]
    families: tuple[SkeletonFamily, ...]

    def canonical_key(self) -> tuple:
        """Isomorphism invariant: minimal encoding over node relabelings."""
        n = len(self.nodes)
        fams = [(f.cycle.rotation_key(), f.att, f.inside) for f in self.families]
        best = None
        for perm in permutations(range(n)):
            matrix = tuple(
                tuple(self.leq[i][j] for j in _inverse(perm, n))
                for i in _inverse(perm, n)
            )
            groups: dict[tuple, list[tuple[int, tuple[int, ...]]]] = {}
            for cyc_key, att, inside in fams:
                entry = (perm[att], tuple(sorted(perm[i] for i in inside)))
                groups.setdefault(cyc_key, []).append(entry)
            profiles = sorted(tuple(sorted(v)) for v in groups.values())
            fam_key = tuple(
                (gi, entry)
                for gi, profile in enumerate(profiles)
                for entry in profile
            )
            cand = (n, matrix, fam_key)
            if best is None or cand < best:
                best = cand
        return best

    def isomorphic(self, other: "LatticeSkeleton") -> bool:
        return self.canonical_key() == other.canonical_key()

    def to_dot(self, name: str = "skeleton") -> str:
        """DOT rendering: solid arcs for covering containments of the full
        order, dashed arcs for partial containment between same-cycle
        families."""
        g = self.graph
        kinds = [("node", i) for i in range(len(self.nodes))] + [
            ("family", i) for i in range(len(self.families))
        ]

        def full_leq(x, y) -> bool:
            kx, ix = x
            ky, iy = y
            if kx == "node" and ky == "node":
                return self.leq[ix][iy]
            if kx == "node" and ky == "family":
                return self.leq[ix][self.families[iy].att]
            if kx == "family" and ky == "node":
                return iy in self.families[ix].inside
            fx, fy = self.families[ix], self.families[iy]
            if fx.cycle.rotation_key() == fy.cycle.rotation_key():
                return ix == iy
            return fy.att in fx.inside

        lines = [f"digraph {name} {{", "  rankdir=BT;"]
        for i, members in enumerate(self.nodes):
            lines.append(
                f'  n{i} [shape=box, label="{_set_label(g, members)}"];'
            )
        for i, f in enumerate(self.families):
            att = self.nodes[f.att]
            label = f"P({f.cycle})"
            if att:
                label += ", " + ",".join(g.sort_vertices(att))
            lines.append(f'  f{i} [shape=ellipse, label="<{label}>"];')

        def dot_id(x) -> str:
            return ("n" if x[0] == "node" else "f") + str(x[1])

        for x in kinds:
            for y in kinds:
                if x == y or not full_leq(x, y):
                    continue
                if any(
                    z not in (x, y) and full_leq(x, z) and full_leq(z, y)
                    for z in kinds
                ):
                    continue
                lines.append(f"  {dot_id(x)} -> {dot_id(y)};")
        for i, fx in enumerate(self.families):
            for j, fy in enumerate(self.families):
                if i == j:
                    continue
                same = fx.cycle.rotation_key() == fy.cycle.rotation_key()
                if same and self.leq[fx.att][fy.att]:
                    lines.append(f"  f{i} -> f{j} [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"


def _inverse(perm: tuple[int, ...], n: int) -> list[int]:
    inv = [0] * n
    for old, new in enumerate(perm):
        inv[new] = old
    return inv


def _set_label(g: Graph, members: frozenset) -> str:
    if not members:
        return "0"
    if members == frozenset(g.vertices):
        return "L"
    return "{" + ",".join(g.sort_vertices(members)) + "}"


def build_skeleton(g: Graph) -> LatticeSkeleton:
    """Graded nodes plus one family per K1 cycle and compatible vertex part.

    A vertex part is compatible with a cycle when it misses the cycle's
    sources and already contains the closure of the cycle's exit range (the
    exit range sits inside any ideal with a polynomial on the cycle).
    """
    hs = all_hereditary_saturated_sets(g)
    nodes = tuple(h.members for h in hs)
    leq = tuple(tuple(a <= b for b in nodes) for a in nodes)
    families = []
    for c in k1_cycles(g):
        required = hereditary_saturated_closure(g, exit_range(g, c)).members
        srcs = set(c.sources)
        for i, nd in enumerate(nodes):
            if srcs.isdisjoint(nd) and required <= nd:
                inside = frozenset(
                    j for j, m in enumerate(nodes) if nd <= m and srcs <= m
                )
                families.append(SkeletonFamily(c, i, inside))
    families.sort(key=lambda f: (f.cycle.rotation_key(), f.att))
    return LatticeSkeleton(g, nodes, leq, tuple(families))


# --- the nine classes ---------------------------------------------------------

# Memberships that determine the class labels; the remaining skeleton class
# gets the last label.  Types [7] and [9] are assigned by computation.
_ANCHORS = {
    "I": (2, 4, 8, 13),
    "II": (3,),
    "III": (6, 15),
    "IV": (10,),
    "V": (12, 16),
    "VI": (14,),
    "VII": (1, 11),
    "VIII": (5,),
}
_LABELS = ("I", "II", "III", "IV", "V", "VI", "VII", "VIII", "IX")


@lru_cache(maxsize=1)
def _reference_classes() -> tuple[dict, dict]:
    keys = {
        i: build_skeleton(TwoVertexShape(*shape).to_graph()).canonical_key()
        for i, shape in _SHAPES_16.items()
    }
    groups: dict[tuple, list[int]] = {}
    for i, key in keys.items():
        groups.setdefault(key, []).append(i)
    if len(groups) != 9:
        raise AssertionError(f"expected 9 skeleton classes, found {len(groups)}")
    label_of_key: dict[tuple, str] = {}
    for label, ids in _ANCHORS.items():
        anchor_keys = {keys[i] for i in ids}
        if len(anchor_keys) != 1:
            raise AssertionError(f"anchor types of class {label} split: {ids}")
        label_of_key[anchor_keys.pop()] = label
    leftovers = [k for k in groups if k not in label_of_key]
    if len(leftovers) != 1:
        raise AssertionError(f"expected one unanchored class, found {len(leftovers)}")
    label_of_key[leftovers[0]] = "IX"
    members = {label_of_key[k]: tuple(sorted(ids)) for k, ids in groups.items()}
    return label_of_key, members


@dataclass(frozen=True)
class Classification:
    label: str
    canonical: CanonicalForm16
    skeleton: LatticeSkeleton
    note: str | None = None


def classify(g: Graph) -> Classification:
    """Class (I..IX) of a two-vertex graph's ideal lattice, with skeleton.

    Two graphs share a label exactly when their skeletons are isomorphic.
    Type [7] carries a note: its skeleton coincides with type [3]'s, so it
    classifies there, and class IX is realized by the remaining type.
    """
    if len(g.vertices) != 2:
        raise DomainError("classification needs exactly two vertices")
    label_of_key, members = _reference_classes()
    cf = canonicalize16(g)
    skel = build_skeleton(g)
    key = skel.canonical_key()
    label = label_of_key.get(key)
    if label is None:
        raise AssertionError("two-vertex skeleton matches no reference class")
    note = None
    if cf.id == 7:
        ix = ", ".join(f"[{i}]" for i in members["IX"])
        note = (
            f"type [7] classifies as {label} (skeleton isomorphic to type [3]); "
            f"class IX is realized by type {ix}"
        )
    return Classification(label, cf, skel, note)


def class_members() -> dict[str, tuple[int, ...]]:
    """Canonical types grouped by class label."""
    _, members = _reference_classes()
    return {label: members[label] for label in _LABELS}
