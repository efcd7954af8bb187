"""Shared fixture graphs and random-value generators for the test suite."""

from __future__ import annotations

import random
from fractions import Fraction

from leavitt import Element, Graph, monomial, normalize, validate_graph

# Small named graphs used throughout.  Vertex/edge order is significant.
R1 = validate_graph(["v"], [("e", "v", "v")])
R2 = validate_graph(["v"], [("e", "v", "v"), ("f", "v", "v")])
L2 = validate_graph(["u", "v"], [("a", "u", "v")])  # type [2]
C2 = validate_graph(["u", "v"], [("g", "u", "v"), ("h", "v", "u")])
G1 = validate_graph(["u", "v"], [])  # type [1]
G4 = validate_graph(["u", "v"], [("a", "u", "v"), ("b", "u", "v"), ("c", "v", "u")])
G8 = validate_graph(["u", "v"], [("p", "u", "u"), ("a", "u", "v"), ("b", "v", "u")])
G5 = validate_graph(["u", "v"], [("e", "u", "u")])
G6 = validate_graph(["u", "v"], [("e", "u", "u"), ("a", "u", "v")])
G7 = validate_graph(["u", "v"], [("e", "u", "u"), ("d", "v", "u")])
E38 = validate_graph(
    ["u", "v", "w"],
    [("e", "v", "v"), ("f", "w", "w"), ("a", "u", "v"), ("b", "u", "w"), ("c", "v", "w")],
)

ALL_FIXTURES = {
    "R1": R1,
    "R2": R2,
    "L2": L2,
    "C2": C2,
    "G1": G1,
    "G4": G4,
    "G8": G8,
    "G5": G5,
    "G6": G6,
    "G7": G7,
    "E38": E38,
}

# Graphs satisfying / failing Condition (K).
CONDITION_K = {"R2": R2, "L2": L2, "G1": G1, "G4": G4, "G8": G8}
NOT_CONDITION_K = {"R1": R1, "G5": G5, "G6": G6, "G7": G7, "C2": C2}

COEFFS = [Fraction(c) for c in (-3, -2, -1, 1, 2, 3)] + [
    Fraction(1, 2),
    Fraction(-3, 2),
]


def paths_up_to(g: Graph, max_len: int) -> list[tuple[str, tuple[str, ...]]]:
    """All (base, edges) paths with at most max_len edges, in a fixed order."""
    out = [(v, ()) for v in g.vertices]
    frontier = list(out)
    for _ in range(max_len):
        nxt = []
        for base, edges in frontier:
            here = g.rng(edges[-1]) if edges else base
            for e in g.out_edges(here):
                nxt.append((base, edges + (e,)))
        out.extend(nxt)
        frontier = nxt
    return out


def paths_by_range(g: Graph, max_len: int) -> dict[str, list[tuple[str, tuple[str, ...]]]]:
    table: dict[str, list] = {v: [] for v in g.vertices}
    for base, edges in paths_up_to(g, max_len):
        rng_v = g.rng(edges[-1]) if edges else base
        table[rng_v].append((base, edges))
    return table


def random_monomial(g: Graph, rng: random.Random, table) -> "object":
    w = rng.choice([v for v in g.vertices if table[v]])
    _, alpha = rng.choice(table[w])
    _, beta = rng.choice(table[w])
    return monomial(g, alpha, beta, at=w)


def random_element(
    g: Graph,
    rng: random.Random,
    max_terms: int = 3,
    max_len: int = 2,
    table=None,
) -> Element:
    """Random nonzero normalized element with small paths and coefficients."""
    if table is None:
        table = paths_by_range(g, max_len)
    for _ in range(50):
        n = rng.randint(1, max_terms)
        items = [(random_monomial(g, rng, table), rng.choice(COEFFS)) for _ in range(n)]
        x = normalize(Element.of(g, items))
        if not x.is_zero:
            return x
    raise AssertionError("could not generate a nonzero element")


def random_homogeneous(
    g: Graph,
    rng: random.Random,
    max_terms: int = 3,
    max_len: int = 2,
    table=None,
) -> Element:
    """Random nonzero homogeneous element."""
    if table is None:
        table = paths_by_range(g, max_len)
    for _ in range(100):
        w = rng.choice([v for v in g.vertices if table[v]])
        _, alpha0 = rng.choice(table[w])
        _, beta0 = rng.choice(table[w])
        d = len(alpha0) - len(beta0)
        items = [(monomial(g, alpha0, beta0, at=w), rng.choice(COEFFS))]
        for _ in range(rng.randint(0, max_terms - 1)):
            ww = rng.choice([v for v in g.vertices if table[v]])
            pool = [
                (a, b)
                for _, a in table[ww]
                for _, b in table[ww]
                if len(a) - len(b) == d
            ]
            if pool:
                a, b = rng.choice(pool)
                items.append((monomial(g, a, b, at=ww), rng.choice(COEFFS)))
        x = normalize(Element.of(g, items))
        if not x.is_zero:
            return x
    raise AssertionError("could not generate a nonzero homogeneous element")
