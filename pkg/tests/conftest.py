from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest

from inducedmatch.families import random_max_deg4
from inducedmatch.graph import Graph, build_graph

DENSITIES = (0.2, 0.4, 0.6, 0.8, 0.9, 1.0)


def naive_max_induced_matching(g: Graph) -> int:
    """Largest edge subset passing a direct pairwise check; independent of the package."""
    edges = [(a, b) for a in range(g.n) for b in g.adj[a] if a < b]
    adj = [set(r) for r in g.adj]

    def indep(e, f):
        if set(e) & set(f):
            return False
        return not any(y in adj[x] for x in e for y in f)

    best = 0
    for k in range(1, len(edges) + 1):
        found = any(
            all(indep(e, f) for e, f in combinations(sub, 2))
            for sub in combinations(edges, k)
        )
        if not found:
            break
        best = k
    return best


def random_suite(count: int, n_lo: int, n_hi: int, base_seed: int = 0):
    """Deterministic stream of (seed, graph) with varied order and density."""
    for s in range(base_seed, base_seed + count):
        r = random.Random(s)
        n = r.randint(n_lo, n_hi)
        yield s, random_max_deg4(n, r.choice(DENSITIES), s)


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def from_nx(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return build_graph(h.number_of_nodes(), h.edges())


def path(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


@pytest.fixture
def p3() -> Graph:
    return path(3)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.write_sep("=", "acceptance criteria")
        for num in sorted(results):
            terminalreporter.write_line(results[num])
