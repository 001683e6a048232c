import random

import pytest
from conftest import cycle, naive_max_induced_matching, path, random_suite

from inducedmatch.families import c5_squared, double_h, triangle_pendants
from inducedmatch.graph import build_graph, empty_graph
from inducedmatch.matching import (
    BudgetExhausted,
    InducedMatching,
    exact_max_induced_matching,
    find_violation,
    greedy_maximal_induced_matching,
    is_induced_matching,
)

K3 = build_graph(3, [(0, 1), (0, 2), (1, 2)])


def test_is_induced_matching():
    assert is_induced_matching(path(5), [(0, 1), (3, 4)])
    assert is_induced_matching(path(5), [])
    assert not is_induced_matching(path(4), [(0, 1), (2, 3)])


def test_witnesses():
    bad = find_violation(path(4), [(0, 1), (3, 2)])
    assert bad.kind == "joined" and bad.joining == (1, 2)
    assert find_violation(path(4), [(0, 2)]).kind == "not-an-edge"
    assert find_violation(path(4), [(0, 1), (1, 2)]).kind == "shared-vertex"
    assert find_violation(path(4), [(0, 1), (1, 0)]).kind == "duplicate"


def test_greedy_examples():
    assert greedy_maximal_induced_matching(path(5)).edges == ((0, 1), (3, 4))
    assert len(greedy_maximal_induced_matching(K3)) == 1
    assert len(greedy_maximal_induced_matching(empty_graph(4))) == 0


def test_exact_examples():
    assert len(exact_max_induced_matching(build_graph(2, [(0, 1)]))) == 1
    assert len(exact_max_induced_matching(c5_squared())) == 1
    assert len(exact_max_induced_matching(double_h())) == 2
    assert len(exact_max_induced_matching(triangle_pendants())) == 1
    assert len(exact_max_induced_matching(empty_graph(0))) == 0


def test_exact_cycles():
    # C_n has strong matching number floor(n/3)
    for n in range(3, 25):
        assert len(exact_max_induced_matching(cycle(n))) == n // 3


def test_budget_exhausted():
    g = random_suite(1, 40, 40, base_seed=3)
    _, g = next(g)
    with pytest.raises(BudgetExhausted):
        exact_max_induced_matching(g, node_budget=3)


def test_exact_matches_naive_oracle():
    count = 0
    for _, g in random_suite(80, 1, 10, base_seed=500):
        got = exact_max_induced_matching(g)
        assert is_induced_matching(g, got.edges)
        assert len(got) == naive_max_induced_matching(g)
        count += 1
    assert count >= 50


@pytest.mark.parametrize("seed,g", list(random_suite(80, 1, 22, base_seed=1000)))
def test_greedy_and_exact_properties(seed, g):
    greedy = greedy_maximal_induced_matching(g)
    exact = exact_max_induced_matching(g)
    assert is_induced_matching(g, greedy.edges)
    assert is_induced_matching(g, exact.edges)
    assert len(greedy) <= len(exact)
    chosen = set(greedy.edges)
    for e in g.edges():
        if e not in chosen:
            assert not is_induced_matching(g, list(greedy.edges) + [e])
    perm = list(range(g.n))
    random.Random(seed).shuffle(perm)
    assert len(exact_max_induced_matching(g.relabel(perm))) == len(exact)


def test_induced_matching_type():
    m = InducedMatching.of([(3, 2), (0, 1)], 4)
    assert m.edges == ((0, 1), (2, 3))
    assert len(m) == 2 and list(m) == [(0, 1), (2, 3)]
