"""Induced matchings: validity, a greedy baseline and an exact solver."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .graph import Edge, Graph, canonical_edge, mask_to_list

DEFAULT_NODE_BUDGET = 10_000_000


class BudgetExhausted(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"branch-and-bound exceeded its budget of {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class InducedMatching:
    edges: tuple[Edge, ...]
    graph_order: int

    @classmethod
    def of(cls, edges: Iterable[Sequence[int]], graph_order: int) -> InducedMatching:
        return cls(tuple(sorted(canonical_edge(a, b) for a, b in edges)), graph_order)

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)


class Violation(NamedTuple):
    """Why an edge set is not an induced matching.

    ``kind`` is one of ``not-an-edge``, ``duplicate``, ``shared-vertex`` or
    ``joined``; ``joining`` is the offending graph edge for ``joined``.
    """

    kind: str
    e: Edge
    f: Edge | None = None
    joining: Edge | None = None

    def __str__(self) -> str:
        if self.kind == "not-an-edge":
            return f"{self.e} is not an edge"
        if self.kind == "joined":
            return f"{self.e} and {self.f} are joined by edge {self.joining}"
        return f"{self.e} and {self.f}: {self.kind}"


def find_violation(g: Graph, edges: Sequence[Sequence[int]]) -> Violation | None:
    """First witness that ``edges`` is not an induced matching of ``g``, or None."""
    canon = []
    for a, b in edges:
        e = canonical_edge(a, b)
        if not g.has_edge(a, b):
            return Violation("not-an-edge", e)
        canon.append(e)
    for i, e in enumerate(canon):
        for f in canon[i + 1:]:
            if e == f:
                return Violation("duplicate", e, f)
            if set(e) & set(f):
                return Violation("shared-vertex", e, f)
            for x in e:
                for y in f:
                    if g.has_edge(x, y):
                        return Violation("joined", e, f, canonical_edge(x, y))
    return None


def is_induced_matching(g: Graph, edges: Sequence[Sequence[int]]) -> bool:
    return find_violation(g, edges) is None


def greedy_maximal_induced_matching(g: Graph) -> InducedMatching:
    """Scan edges in lexicographic order, keeping each one independent of those kept."""
    blocked = 0
    chosen = []
    cm = g.closed_masks
    for a, b in g.edges():
        if (blocked >> a) & 1 or (blocked >> b) & 1:
            continue
        chosen.append((a, b))
        blocked |= cm[a] | cm[b]
    return InducedMatching(tuple(chosen), g.n)


class _Search:
    """Branch and bound over the edges of one graph.

    Candidate edges live in an integer bitmask over edge indices.  Taking an
    edge kills every candidate with an endpoint in its closed ball; forbidding
    an edge only drops it from the candidates (it still joins other edges).
    """

    def __init__(self, g: Graph, node_budget: int):
        self.g = g
        self.edges = g.edges()
        self.budget = node_budget
        self.nodes = 0
        inc = [0] * g.n
        for idx, (a, b) in enumerate(self.edges):
            inc[a] |= 1 << idx
            inc[b] |= 1 << idx
        self.inc = inc
        cm = g.closed_masks
        # edges touching the closed ball of each edge, itself included
        self.kill = []
        self.touch = []
        for a, b in self.edges:
            k = 0
            for v in mask_to_list(cm[a] | cm[b]):
                k |= inc[v]
            self.kill.append(k)
            self.touch.append(inc[a] | inc[b])
        self.best: list[int] = []

    def upper_bound(self, cand: int) -> int:
        # edges meeting both ends of one edge are pairwise in conflict
        count = 0
        while cand:
            low = (cand & -cand).bit_length() - 1
            cand &= ~self.touch[low]
            count += 1
        return count

    def pick(self, cand: int) -> int:
        inc = self.inc
        best_key = None
        best_idx = -1
        for idx in mask_to_list(cand):
            a, b = self.edges[idx]
            d = max((inc[a] & cand).bit_count(), (inc[b] & cand).bit_count())
            if best_key is None or d > best_key:
                best_key = d
                best_idx = idx
        return best_idx

    def run(self, cand: int, chosen: list[int]) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise BudgetExhausted(self.budget)
        # edges with no surviving conflict can always be taken
        forced = []
        rest = cand
        while rest:
            low = rest & -rest
            idx = low.bit_length() - 1
            rest ^= low
            if self.kill[idx] & cand == low:
                forced.append(idx)
                cand ^= low
        if forced:
            chosen = chosen + forced
        if not cand:
            if len(chosen) > len(self.best):
                self.best = chosen
            return
        if len(chosen) + self.upper_bound(cand) <= len(self.best):
            return
        idx = self.pick(cand)
        self.run(cand & ~self.kill[idx], chosen + [idx])
        self.run(cand & ~(1 << idx), chosen)


def exact_max_induced_matching(
    g: Graph, node_budget: int = DEFAULT_NODE_BUDGET
) -> InducedMatching:
    """Maximum induced matching by branch and bound.

    Raises :class:`BudgetExhausted` instead of returning a possibly
    suboptimal answer when more than ``node_budget`` nodes are expanded.
    """
    search = _Search(g, node_budget)
    index = {e: i for i, e in enumerate(search.edges)}
    search.best = [index[e] for e in greedy_maximal_induced_matching(g).edges]
    search.run((1 << len(search.edges)) - 1, [])
    return InducedMatching.of((search.edges[i] for i in search.best), g.n)
