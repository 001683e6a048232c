import math
from dataclasses import replace
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from conftest import cycle, from_nx, path, random_suite

from inducedmatch.bounds import c5sq_count
from inducedmatch.engine import (
    MaxDegreeExceeded,
    PreconditionViolated,
    ReductionTrace,
    TheoremViolation,
    TraceStep,
    bounded_induced_matching,
    candidate_marks,
    evaluate_marks,
    find_reduction,
    verify_trace,
)
from inducedmatch.families import (
    blown_c5,
    c5_squared,
    double_h,
    is_c5_squared,
    random_max_deg4,
    triangle_pendants,
)
from inducedmatch.graph import (
    build_graph,
    components,
    distance,
    edges_independent,
    isolated_count,
    mask_to_list,
)
from inducedmatch.matching import exact_max_induced_matching, is_induced_matching


def test_find_reduction_p3():
    red = find_reduction(path(3))
    assert red.marked == ((0, 1),)
    assert red.ball == (0, 1, 2)
    assert red.isolated_after == 0
    assert (red.budget_lhs, red.budget_rhs) == (3, 9)


def test_triangle_edge_mark():
    red = evaluate_marks(triangle_pendants(), [(0, 1)])
    assert len(red.ball) == 7
    assert red.isolated_after == 2
    assert red.budget_lhs == 9 and red.ok


def test_c5_squared_single_marks_all_fail():
    # the reason C5^2 is excluded: every single mark costs 8 + 2 = 10
    c = c5_squared()
    assert {evaluate_marks(c, [e]).budget_lhs for e in c.edges()} == {10}


@pytest.mark.parametrize("n", range(2, 10))
def test_small_components_take_first_edge(n):
    for _, g in random_suite(30, n, n, base_seed=77 * n):
        for comp in components(g):
            if len(comp) < 2:
                continue
            c = g.induced_subgraph(comp)[0]
            assert all(evaluate_marks(c, [e]).ok for e in c.edges())


def test_find_reduction_preconditions():
    with pytest.raises(PreconditionViolated):
        find_reduction(c5_squared())
    with pytest.raises(PreconditionViolated):
        find_reduction(build_graph(4, [(0, 1), (2, 3)]))
    with pytest.raises(PreconditionViolated):
        find_reduction(build_graph(6, [(0, i) for i in range(1, 6)]))
    with pytest.raises(PreconditionViolated):
        find_reduction(build_graph(1, []))


@pytest.mark.parametrize("seed", range(12))
def test_candidate_marks_against_brute_force(seed):
    g = next(random_suite(1, 8, 16, base_seed=seed + 600))[1]
    comp = max(components(g), key=len)
    c = g.induced_subgraph(comp)[0]
    if c.m == 0:
        return
    got = list(candidate_marks(c, distance_cap=3))
    singles = [m for phase, m, _ in got if phase == 1]
    assert sorted(singles) == sorted((e,) for e in c.edges())
    pairs = {frozenset(m): phase for phase, m, _ in got if phase > 1}
    expect = {}
    for e, f in combinations(c.edges(), 2):
        if edges_independent(c, e, f):
            gap = min(distance(c, x, y) for x in e for y in f)
            expect[frozenset((e, f))] = 2 if gap <= 3 else 3
    assert pairs == expect
    phases = [phase for phase, _, _ in got]
    assert phases == sorted(phases)
    for _, marked, ball in got:
        assert evaluate_marks(c, marked).ball == tuple(mask_to_list(ball))


def test_c5_squared_has_no_independent_pair():
    assert all(phase == 1 for phase, _, _ in candidate_marks(c5_squared()))


def test_pendants_at_distance_four_fit_double_budget():
    # two pendant edges whose pendants are 4 apart, as in the two-mark case
    g = build_graph(7, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 5), (3, 6)])
    red = evaluate_marks(g, [(0, 1), (3, 4)])
    assert red.k == 2 and red.ok and red.budget_lhs <= 18


def test_regular_graphs_reduce():
    for seed in range(30):
        g = from_nx(nx.random_regular_graph(4, 30, seed=seed))
        red = find_reduction(g)
        assert red.ok and red.k in (1, 2)
        assert evaluate_marks(g, red.marked) == red


def test_engine_k1_k2():
    g = build_graph(3, [(1, 2)])
    res = bounded_induced_matching(g)
    assert res.matching.edges == ((1, 2),)
    r = res.report
    assert (r.n, r.isolated, r.c5sq, r.matching_size) == (3, 1, 0, 1)
    assert r.guarantee_ok


def test_engine_c5_squared():
    res = bounded_induced_matching(c5_squared())
    assert len(res.matching) == 1
    assert [s.kind for s in res.trace.steps] == ["c5sq"]
    assert (res.report.n, res.report.isolated, res.report.c5sq) == (10, 0, 1)
    assert verify_trace(c5_squared(), res.trace, res.matching)


def test_engine_double_h():
    g = double_h()
    res = bounded_induced_matching(g)
    assert len(res.matching) == 2
    assert [s.kind for s in res.trace.steps] == ["exact"]
    assert res.report.guarantee_ok and res.report.guarantee_rhs == 17


def test_engine_rejects_degree_five():
    with pytest.raises(MaxDegreeExceeded) as exc:
        bounded_induced_matching(build_graph(6, [(0, i) for i in range(1, 6)]))
    assert exc.value.vertex == 0


def test_verify_trace_p3_and_tamper():
    g = path(3)
    res = bounded_induced_matching(g, exact_threshold=0)
    assert [s.kind for s in res.trace.steps] == ["reduction"]
    assert verify_trace(g, res.trace, res.matching)
    step = res.trace.steps[0]
    bad_red = replace(step.reduction, budget_lhs=10)
    bad = ReductionTrace(g.n, [replace(step, reduction=bad_red)])
    check = verify_trace(g, bad, res.matching)
    assert not check and check.condition == "b"


def test_verify_trace_triangle_equality():
    g = triangle_pendants()
    res = bounded_induced_matching(g, exact_threshold=0)
    assert verify_trace(g, res.trace, res.matching)
    red = res.trace.steps[0].reduction
    assert red.budget_lhs == red.budget_rhs == 9
    assert 9 * len(res.matching) == g.n


def test_verify_trace_conditions():
    g = cycle(12)
    res = bounded_induced_matching(g, exact_threshold=0)
    assert verify_trace(g, res.trace, res.matching)
    # (a) a step dropped
    assert verify_trace(g, ReductionTrace(g.n, res.trace.steps[1:]), res.matching).condition == "a"
    # (c) matching not equal to the contributed edges
    short = replace(res.matching, edges=res.matching.edges[1:])
    assert verify_trace(g, res.trace, short).condition == "c"
    # (d) contributed edges that are not an induced matching
    fake = ReductionTrace(g.n, [TraceStep("exact", tuple(range(12)), ((0, 1), (1, 2)))])
    m = replace(res.matching, edges=((0, 1), (1, 2)))
    assert verify_trace(g, fake, m).condition == "d"
    # (e) valid but too small
    tiny = ReductionTrace(g.n, [TraceStep("exact", tuple(range(12)), ((0, 1),))])
    assert verify_trace(g, tiny, replace(res.matching, edges=((0, 1),))).condition == "e"
    # (b) a leaf mislabelled as C5^2
    wrong = ReductionTrace(g.n, [replace(tiny.steps[0], kind="c5sq")])
    assert verify_trace(g, wrong, replace(res.matching, edges=((0, 1),))).condition == "b"


def test_small_families_reduce_without_exact_leaves():
    for g in (double_h(), blown_c5([1, 1, 1, 2, 2]), blown_c5([1, 2, 1, 2, 2])):
        res = bounded_induced_matching(g, exact_threshold=0)
        assert verify_trace(g, res.trace, res.matching)
        assert res.trace.fallbacks == 0


def test_theorem_violation_carries_component(monkeypatch):
    import inducedmatch.engine as eng

    def boom(c, distance_cap=6):
        raise TheoremViolation(c)

    monkeypatch.setattr(eng, "find_reduction", boom)
    g = cycle(20)
    with pytest.raises(TheoremViolation) as exc:
        eng.bounded_induced_matching(g)
    assert exc.value.component.n == 20
    res = eng.bounded_induced_matching(g, fallback_exact=True)
    assert res.trace.fallbacks == 1
    assert res.trace.steps[0].kind == "exact"
    assert len(res.matching) == 6
    assert verify_trace(g, res.trace, res.matching)


@pytest.mark.parametrize("seed,g", list(random_suite(150, 1, 60, base_seed=9000)))
def test_engine_random(seed, g):
    res = bounded_induced_matching(g)
    assert verify_trace(g, res.trace, res.matching)
    assert 9 * len(res.matching) >= g.n - isolated_count(g) - c5sq_count(g)
    # every reduction removes at least two vertices
    for step in res.trace.steps:
        if step.reduction is not None:
            assert len(step.reduction.ball) >= 2


def test_no_c5_squared_in_remainders():
    # components created by a reduction touch the removed ball, so none is C5^2
    for _, g in random_suite(200, 20, 60, base_seed=4000):
        res = bounded_induced_matching(g, exact_threshold=0)
        roots = {tuple(c) for c in components(g)}
        for step in res.trace.steps:
            if tuple(step.vertices) not in roots and len(step.vertices) == 10:
                assert not is_c5_squared(g.induced_subgraph(step.vertices)[0])


def test_sandwich_small():
    for _, g in random_suite(60, 1, 16, base_seed=300):
        exact = len(exact_max_induced_matching(g))
        rhs = g.n - isolated_count(g) - c5sq_count(g)
        for threshold in (18, 0):
            res = bounded_induced_matching(g, exact_threshold=threshold)
            assert exact >= len(res.matching) >= math.ceil(rhs / 9)
            assert is_induced_matching(g, res.matching.edges)


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 45), st.sampled_from([0.3, 0.6, 0.9, 1.0]), st.integers(0, 2**32),
       st.sampled_from([0, 18]))
def test_guarantee_property(n, density, seed, threshold):
    g = random_max_deg4(n, density, seed)
    res = bounded_induced_matching(g, exact_threshold=threshold)
    assert verify_trace(g, res.trace, res.matching)
    assert res.report.guarantee_ok
