"""Named extremal graphs, seeded random graphs of maximum degree 4, and
recognition of the 4-regular blown-up 5-cycle."""

from __future__ import annotations

import random
from collections import defaultdict
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .graph import Graph, build_graph, is_connected


class BadSpec(ValueError):
    pass


def blown_c5(sizes: Sequence[int]) -> Graph:
    """5-cycle with vertex ``t`` replaced by an independent set of ``sizes[t]``.

    Parts are numbered consecutively: part 0 gets ids ``0..sizes[0]-1`` and so on.
    """
    sizes = list(sizes)
    if len(sizes) != 5 or any(not isinstance(s, int) or s < 1 for s in sizes):
        raise BadSpec(f"need five positive part sizes, got {sizes}")
    parts = []
    start = 0
    for s in sizes:
        parts.append(range(start, start + s))
        start += s
    edges = [
        (a, b)
        for t in range(5)
        for a in parts[t]
        for b in parts[(t + 1) % 5]
    ]
    return build_graph(start, edges)


def c5_squared() -> Graph:
    return blown_c5([2, 2, 2, 2, 2])


def k33_plus() -> Graph:
    return blown_c5([1, 1, 1, 2, 2])


def h_graph() -> Graph:
    """Blown-up 5-cycle with parts 1,1,1,3,3; vertex 1 is its only degree-2 vertex."""
    return blown_c5([1, 1, 1, 3, 3])


def triangle_pendants() -> Graph:
    """Triangle 0,1,2 with pendants 3,4 on 0, 5,6 on 1 and 7,8 on 2."""
    edges = [(0, 1), (0, 2), (1, 2)]
    for t in range(3):
        edges += [(t, 3 + 2 * t), (t, 4 + 2 * t)]
    return build_graph(9, edges)


def double_h() -> Graph:
    """Two copies of H glued at their degree-2 vertices.

    Copy one keeps ids 0..8; copy two's degree-2 vertex becomes vertex 1 and
    its remaining eight vertices take ids 9..16.
    """
    h = h_graph()
    (glue,) = [v for v in range(h.n) if h.degree(v) == 2]
    remap = {}
    nxt = h.n
    for v in range(h.n):
        if v == glue:
            remap[v] = glue
        else:
            remap[v] = nxt
            nxt += 1
    edges = h.edges() + [(remap[a], remap[b]) for a, b in h.edges()]
    return build_graph(nxt, edges)


def random_max_deg4(n: int, density: float | Fraction, seed: int) -> Graph:
    """Seeded random simple graph with every degree at most 4.

    All vertex pairs are shuffled; a pair becomes an edge when both ends still
    have degree below 4 and a coin with success probability ``density`` lands.
    """
    if n < 0:
        raise ValueError(f"negative order {n}")
    p = float(density)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"density {density} outside [0, 1]")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    deg = [0] * n
    edges = []
    for a, b in pairs:
        if deg[a] < 4 and deg[b] < 4 and rng.random() < p:
            edges.append((a, b))
            deg[a] += 1
            deg[b] += 1
    return build_graph(n, edges)


def false_twin_classes(g: Graph) -> list[list[int]]:
    """Classes of vertices with identical open neighbourhoods, ordered by least member."""
    groups: dict[frozenset[int], list[int]] = defaultdict(list)
    for v in range(g.n):
        groups[g.nbr_sets[v]].append(v)
    return sorted(groups.values())


def is_c5_squared(g: Graph) -> bool:
    if g.n != 10 or g.m != 20 or any(d != 4 for d in g.degrees):
        return False
    if not is_connected(g):
        return False
    classes = false_twin_classes(g)
    if len(classes) != 5 or any(len(c) != 2 for c in classes):
        return False
    which = {v: t for t, cls in enumerate(classes) for v in cls}
    quotient: list[set[int]] = [set() for _ in range(5)]
    for a, b in g.edges():
        quotient[which[a]].add(which[b])
    for a in range(5):
        for b in quotient[a]:
            quotient[b].add(a)
    if any(len(q) != 2 for q in quotient):
        return False
    # a 2-regular graph on five nodes is a 5-cycle iff it is connected
    seen = {0}
    stack = [0]
    while stack:
        for w in quotient[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == 5


def circulant(n: int, jumps: Sequence[int]) -> Graph:
    return build_graph(n, [(v, (v + j) % n) for v in range(n) for j in jumps])


FAMILIES = {
    "c5sq": c5_squared,
    "k33plus": k33_plus,
    "h": h_graph,
    "doubleh": double_h,
    "tripend": triangle_pendants,
}


def family(name: str) -> Graph:
    """Look up a named construction; ``blown:a,b,c,d,e`` builds a blown-up 5-cycle."""
    if name.startswith("blown:"):
        try:
            sizes = [int(t) for t in name[len("blown:"):].split(",")]
        except ValueError:
            raise BadSpec(f"bad part sizes in {name!r}") from None
        return blown_c5(sizes)
    try:
        return FAMILIES[name]()
    except KeyError:
        known = ", ".join(sorted(FAMILIES) + ["blown:a,b,c,d,e"])
        raise BadSpec(f"unknown family {name!r}; known: {known}") from None
