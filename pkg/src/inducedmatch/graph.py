"""Immutable simple undirected graphs on dense 0-based vertex ids.

Every algorithm in the package consumes :class:`Graph`.  Deletion never
mutates; it returns a fresh graph together with the map from old ids to
new ids so that results can be lifted back.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

Edge = tuple[int, int]


class GraphError(ValueError):
    """Base class for invalid graph input."""


class SelfLoop(GraphError):
    def __init__(self, v: int):
        super().__init__(f"self-loop at vertex {v}")
        self.vertex = v


class VertexOutOfRange(GraphError):
    def __init__(self, v: int, n: int):
        super().__init__(f"vertex {v} out of range for graph of order {n}")
        self.vertex = v
        self.n = n


class NotAnEdge(GraphError):
    def __init__(self, e: Sequence[int]):
        super().__init__(f"({e[0]}, {e[1]}) is not an edge of the graph")
        self.edge = tuple(e)


def canonical_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``adj[v]`` is the ascending tuple of neighbours of ``v``.  Instances
    are normally created through :func:`build_graph`, which canonicalises
    input; the constructor checks the invariants regardless.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int = field(init=False)

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError(f"adjacency has {len(self.adj)} rows for n={self.n}")
        total = 0
        for v, row in enumerate(self.adj):
            prev = -1
            for w in row:
                if w == v:
                    raise SelfLoop(v)
                if not 0 <= w < self.n:
                    raise VertexOutOfRange(w, self.n)
                if w <= prev:
                    raise GraphError(f"neighbours of {v} not strictly ascending")
                prev = w
            total += len(row)
        for v, row in enumerate(self.adj):
            for w in row:
                if v not in self.nbr_sets[w]:
                    raise GraphError(f"adjacency not symmetric on ({v}, {w})")
        object.__setattr__(self, "m", total // 2)

    @cached_property
    def nbr_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.adj)

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        """Open neighbourhoods as integer bitmasks."""
        out = []
        for row in self.adj:
            mask = 0
            for w in row:
                mask |= 1 << w
            out.append(mask)
        return tuple(out)

    @cached_property
    def closed_masks(self) -> tuple[int, ...]:
        return tuple(mask | (1 << v) for v, mask in enumerate(self.nbr_masks))

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, a: int, b: int) -> bool:
        return 0 <= a < self.n and 0 <= b < self.n and b in self.nbr_sets[a]

    @cached_property
    def max_degree(self) -> int:
        return max((len(r) for r in self.adj), default=0)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(r) for r in self.adj)

    def edges(self) -> list[Edge]:
        """All edges ``(a, b)`` with ``a < b`` in lexicographic order."""
        return [(a, b) for a, row in enumerate(self.adj) for b in row if a < b]

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise VertexOutOfRange(v, self.n)

    def check_edge(self, e: Sequence[int]) -> Edge:
        a, b = e
        if not self.has_edge(a, b):
            raise NotAnEdge(e)
        return canonical_edge(a, b)

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple[Graph, tuple[int, ...]]:
        """Induced subgraph on ``vertices`` re-indexed densely in ascending order.

        Returns the subgraph and ``ids`` with ``ids[new] == old``.
        """
        ids = tuple(sorted(set(vertices)))
        index = {old: new for new, old in enumerate(ids)}
        adj = tuple(
            tuple(index[w] for w in self.adj[old] if w in index) for old in ids
        )
        return Graph(len(ids), adj), ids

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return build_graph(self.n, [(perm[a], perm[b]) for a, b in self.edges()])

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Canonical graph on ``n`` vertices; duplicate edges collapse."""
    if n < 0:
        raise GraphError(f"negative order {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for a, b in edges:
        for v in (a, b):
            if not 0 <= v < n:
                raise VertexOutOfRange(v, n)
        if a == b:
            raise SelfLoop(a)
        nbrs[a].add(b)
        nbrs[b].add(a)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs))


def empty_graph(n: int) -> Graph:
    return Graph(n, ((),) * n)


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by their least vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        comp.sort()
        out.append(comp)
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def bfs_distances(g: Graph, source: int) -> list[int | None]:
    """Hop distances from ``source``; ``None`` for unreachable vertices."""
    dist: list[int | None] = [None] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        d = dist[v] + 1  # type: ignore[operator]
        for w in g.adj[v]:
            if dist[w] is None:
                dist[w] = d
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int | None:
    """Shortest-path length between ``u`` and ``v``, ``None`` if unreachable."""
    g.check_vertex(u)
    g.check_vertex(v)
    return bfs_distances(g, u)[v]


def edges_independent(g: Graph, e: Sequence[int], f: Sequence[int]) -> bool:
    """True iff ``e`` and ``f`` share no vertex and no edge of ``g`` joins them."""
    e = g.check_edge(e)
    f = g.check_edge(f)
    if set(e) & set(f):
        return False
    return not any(g.has_edge(x, y) for x in e for y in f)


def closed_ball(g: Graph, marked: Iterable[Sequence[int]]) -> int:
    """Bitmask of vertices within distance 1 of some marked endpoint."""
    ball = 0
    for a, b in marked:
        ball |= g.closed_masks[a] | g.closed_masks[b]
    return ball


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class BallRemoval(NamedTuple):
    remainder: Graph
    removed: tuple[int, ...]
    ids: tuple[int, ...]  # ids[new] == old

    @property
    def old_to_new(self) -> dict[int, int]:
        return {old: new for new, old in enumerate(self.ids)}


def remove_closed_ball(g: Graph, marked: Sequence[Sequence[int]]) -> BallRemoval:
    """Delete every vertex at distance at most 1 from the marked edges."""
    if not marked:
        raise ValueError("at least one marked edge is required")
    for e in marked:
        g.check_edge(e)
    ball = closed_ball(g, marked)
    removed = tuple(mask_to_list(ball))
    keep = [v for v in range(g.n) if not (ball >> v) & 1]
    remainder, ids = g.induced_subgraph(keep)
    return BallRemoval(remainder, removed, ids)


def isolated_count(g: Graph) -> int:
    return sum(1 for row in g.adj if not row)
