"""Budget-checked reduction search producing induced matchings with
9 * |M| >= n - i - n5 on graphs of maximum degree at most 4.

Each step marks one or two pairwise independent edges of a connected
component, deletes the closed ball S around them, and accepts the marks
when ``|S| + i(G - S) <= 9k``.  The marked edges are independent of every
edge left in ``G - S``, so a matching of the remainder extends by the marks
and the bound telescopes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import NamedTuple, Sequence

from .bounds import BoundReport, bound_report, c5sq_count
from .families import is_c5_squared
from .graph import (
    Edge,
    Graph,
    bfs_distances,
    canonical_edge,
    closed_ball,
    components,
    isolated_count,
    mask_to_list,
    remove_closed_ball,
)
from .matching import (
    DEFAULT_NODE_BUDGET,
    InducedMatching,
    exact_max_induced_matching,
    find_violation,
)

DEFAULT_EXACT_THRESHOLD = 18
PAIR_DISTANCE_CAP = 6
BUDGET_PER_MARK = 9


class MaxDegreeExceeded(ValueError):
    def __init__(self, v: int, degree: int):
        super().__init__(f"vertex {v} has degree {degree} > 4")
        self.vertex = v
        self.degree = degree


class PreconditionViolated(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """No one- or two-edge mark meets the budget on ``component``.

    For valid input this cannot happen; it means a bug or a bad precondition.
    """

    def __init__(self, component: Graph):
        from .graphio import encode_graph6

        self.component = component
        self.graph6 = encode_graph6(component)
        super().__init__(
            f"no reduction meets the budget on component {self.graph6} "
            f"(n={component.n}, m={component.m})"
        )


@dataclass(frozen=True)
class Reduction:
    marked: tuple[Edge, ...]
    ball: tuple[int, ...]
    isolated_after: int
    budget_lhs: int
    budget_rhs: int

    @property
    def k(self) -> int:
        return len(self.marked)

    @property
    def ok(self) -> bool:
        return self.budget_lhs <= self.budget_rhs

    def lift(self, ids: Sequence[int]) -> Reduction:
        return replace(
            self,
            marked=tuple(sorted(canonical_edge(ids[a], ids[b]) for a, b in self.marked)),
            ball=tuple(sorted(ids[v] for v in self.ball)),
        )


@dataclass(frozen=True)
class TraceStep:
    """One processed component.

    ``kind`` is ``reduction``, ``exact``, ``c5sq`` or ``isolated``.  All ids
    are vertex ids of the input graph; ``vertices`` is the component handled.
    """

    kind: str
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    reduction: Reduction | None = None
    fallback: bool = False

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def consumed(self) -> tuple[int, ...]:
        """Vertices this step accounts for in the partition of V(G)."""
        return self.reduction.ball if self.reduction is not None else self.vertices


@dataclass
class ReductionTrace:
    n: int
    steps: list[TraceStep] = field(default_factory=list)

    def contributed(self) -> list[Edge]:
        return sorted(e for s in self.steps for e in s.edges)

    @property
    def fallbacks(self) -> int:
        return sum(s.fallback for s in self.steps)


class EngineResult(NamedTuple):
    matching: InducedMatching
    trace: ReductionTrace
    report: BoundReport


def _isolated_after(c: Graph, ball: int) -> int:
    """Vertices outside ``ball`` whose whole neighbourhood lies inside it."""
    nm = c.nbr_masks
    frontier = 0
    for v in mask_to_list(ball):
        frontier |= nm[v]
    frontier &= ~ball
    return sum(1 for v in mask_to_list(frontier) if not nm[v] & ~ball)


def _check_component(c: Graph) -> None:
    if c.n < 2:
        raise PreconditionViolated(f"component of order {c.n} has no edge to mark")
    if c.max_degree > 4:
        v = c.degrees.index(c.max_degree)
        raise PreconditionViolated(f"vertex {v} has degree {c.max_degree} > 4")
    if len(components(c)) != 1:
        raise PreconditionViolated("graph is disconnected")
    if is_c5_squared(c):
        raise PreconditionViolated("graph is C5^2")


def _reduction(c: Graph, marked: Sequence[Edge], ball: int, iso: int) -> Reduction:
    return Reduction(
        marked=tuple(marked),
        ball=tuple(mask_to_list(ball)),
        isolated_after=iso,
        budget_lhs=ball.bit_count() + iso,
        budget_rhs=BUDGET_PER_MARK * len(marked),
    )


def evaluate_marks(c: Graph, marked: Sequence[Sequence[int]]) -> Reduction:
    """Score an arbitrary mark set; the result's ``ok`` tells whether it fits the budget."""
    edges = [c.check_edge(e) for e in marked]
    ball = closed_ball(c, edges)
    return _reduction(c, edges, ball, _isolated_after(c, ball))


def candidate_order(c: Graph) -> list[Edge]:
    """Edges with a low-degree endpoint first, lexicographic within a degree."""
    deg = c.degrees
    return sorted(c.edges(), key=lambda e: (min(deg[e[0]], deg[e[1]]), e))


def candidate_marks(c: Graph, distance_cap: int = PAIR_DISTANCE_CAP):
    """Yield ``(phase, marked, ball)`` in search order.

    Phase 1 is every single edge in :func:`candidate_order`; phase 2 every
    independent pair whose closest endpoints are at most ``distance_cap``
    apart; phase 3 the remaining independent pairs.  Pairs follow the
    single-edge order lexicographically.
    """
    order = candidate_order(c)
    cm = c.closed_masks
    balls = [cm[a] | cm[b] for a, b in order]
    for e, ball in zip(order, balls):
        yield 1, (e,), ball

    dist = [bfs_distances(c, v) for v in range(c.n)]
    far = []
    for i, e in enumerate(order):
        ends_e = (1 << e[0]) | (1 << e[1])
        for j in range(i + 1, len(order)):
            f = order[j]
            # independent iff neither edge has an endpoint in the other's ball
            if balls[i] & ((1 << f[0]) | (1 << f[1])) or balls[j] & ends_e:
                continue
            gap = min(dist[x][y] for x in e for y in f)  # type: ignore[type-var]
            if gap > distance_cap:
                far.append((i, j))
            else:
                yield 2, (e, f), balls[i] | balls[j]
    for i, j in far:
        yield 3, (order[i], order[j]), balls[i] | balls[j]


def find_reduction(c: Graph, distance_cap: int = PAIR_DISTANCE_CAP) -> Reduction:
    """First one- or two-edge mark on connected ``c`` that meets the budget.

    Single edges are tried first (``|S| + i <= 9``), then independent pairs at
    endpoint distance at most ``distance_cap`` and finally all independent
    pairs (``|S| + i <= 18``).
    """
    _check_component(c)
    for _, marked, ball in candidate_marks(c, distance_cap):
        iso = _isolated_after(c, ball)
        if ball.bit_count() + iso <= BUDGET_PER_MARK * len(marked):
            return _reduction(c, marked, ball, iso)
    raise TheoremViolation(c)


def _lift(edges: Sequence[Edge], ids: Sequence[int]) -> tuple[Edge, ...]:
    return tuple(sorted(canonical_edge(ids[a], ids[b]) for a, b in edges))


def bounded_induced_matching(
    g: Graph,
    exact_threshold: int = DEFAULT_EXACT_THRESHOLD,
    fallback_exact: bool = False,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> EngineResult:
    """Induced matching ``M`` of ``g`` with ``9|M| >= n - i - n5``, plus its trace.

    Components are processed in order of their least vertex; remainders of a
    reduction are queued behind the components already waiting.
    Components of order at most ``exact_threshold`` are solved exactly.
    With ``fallback_exact`` a component on which the search fails is solved
    exactly and the step is flagged; otherwise :class:`TheoremViolation`
    propagates.
    """
    for v, d in enumerate(g.degrees):
        if d > 4:
            raise MaxDegreeExceeded(v, d)
    trace = ReductionTrace(g.n)
    queue = deque(tuple(comp) for comp in components(g))
    while queue:
        verts = queue.popleft()
        if len(verts) == 1:
            trace.steps.append(TraceStep("isolated", verts, ()))
            continue
        c, ids = g.induced_subgraph(verts)
        if is_c5_squared(c):
            first = (0, c.adj[0][0])
            trace.steps.append(TraceStep("c5sq", ids, _lift([first], ids)))
            continue
        if c.n <= exact_threshold:
            exact = exact_max_induced_matching(c, node_budget)
            trace.steps.append(TraceStep("exact", ids, _lift(exact.edges, ids)))
            continue
        try:
            red = find_reduction(c)
        except TheoremViolation:
            if not fallback_exact:
                raise
            exact = exact_max_induced_matching(c, node_budget)
            trace.steps.append(TraceStep("exact", ids, _lift(exact.edges, ids), fallback=True))
            continue
        lifted = red.lift(ids)
        trace.steps.append(TraceStep("reduction", ids, lifted.marked, lifted))
        rest = remove_closed_ball(c, red.marked)
        for comp in components(rest.remainder):
            queue.append(tuple(ids[rest.ids[v]] for v in comp))
    matching = InducedMatching.of(trace.contributed(), g.n)
    return EngineResult(matching, trace, bound_report(g, len(matching)))


@dataclass(frozen=True)
class TraceCheck:
    """Outcome of :func:`verify_trace`; truthy iff every condition holds.

    ``condition`` names the first failed check: ``a`` partition, ``b``
    reduction budgets, ``c`` matching equals contributed edges, ``d``
    induced matching on the input, ``e`` the global bound.
    """

    ok: bool
    condition: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _fail(condition: str, detail: str) -> TraceCheck:
    return TraceCheck(False, condition, detail)


def verify_trace(g: Graph, t: ReductionTrace, m: InducedMatching) -> TraceCheck:
    if t.n != g.n or m.graph_order != g.n:
        return _fail("a", f"trace/matching order {t.n}/{m.graph_order} != n={g.n}")
    seen = [False] * g.n
    for pos, step in enumerate(t.steps):
        for v in step.consumed:
            if not 0 <= v < g.n or seen[v]:
                return _fail("a", f"step {pos} covers vertex {v} twice or out of range")
            seen[v] = True
        if not set(step.consumed) <= set(step.vertices):
            return _fail("a", f"step {pos} removes vertices outside its component")
    if not all(seen):
        return _fail("a", f"vertex {seen.index(False)} covered by no step")

    for pos, step in enumerate(t.steps):
        red = step.reduction
        if step.kind != "reduction":
            if red is not None:
                return _fail("b", f"step {pos}: {step.kind} leaf carries a reduction")
            inside = set(step.vertices)
            if any(a not in inside or b not in inside for a, b in step.edges):
                return _fail("b", f"step {pos}: leaf edge outside its component")
            if step.kind == "isolated" and (len(step.vertices) != 1 or step.edges):
                return _fail("b", f"step {pos}: isolated leaf is not a single vertex")
            if step.kind == "c5sq" and (
                len(step.edges) != 1
                or not is_c5_squared(g.induced_subgraph(step.vertices)[0])
            ):
                return _fail("b", f"step {pos}: c5sq leaf is not C5^2 with one edge")
            if step.kind not in ("isolated", "c5sq", "exact"):
                return _fail("b", f"step {pos}: unknown kind {step.kind!r}")
            continue
        if red is None:
            return _fail("b", f"step {pos}: reduction step without marks")
        c, ids = g.induced_subgraph(step.vertices)
        index = {old: new for new, old in enumerate(ids)}
        try:
            local = [canonical_edge(index[a], index[b]) for a, b in red.marked]
        except KeyError:
            return _fail("b", f"step {pos}: marked edge outside component")
        if not local or len(local) > 2 or any(not c.has_edge(a, b) for a, b in local):
            return _fail("b", f"step {pos}: marks {red.marked} invalid")
        if find_violation(c, local) is not None:
            return _fail("b", f"step {pos}: marks not independent")
        ball = closed_ball(c, local)
        if tuple(ids[v] for v in mask_to_list(ball)) != red.ball:
            return _fail("b", f"step {pos}: ball differs from closed neighbourhood of marks")
        iso = _isolated_after(c, ball)
        if iso != red.isolated_after:
            return _fail("b", f"step {pos}: isolated count {red.isolated_after} != {iso}")
        lhs = len(red.ball) + iso
        if red.budget_lhs != lhs or red.budget_rhs != BUDGET_PER_MARK * len(local):
            return _fail("b", f"step {pos}: recorded budget {red.budget_lhs} <= "
                              f"{red.budget_rhs} does not match recomputation {lhs}")
        if lhs > BUDGET_PER_MARK * len(local):
            return _fail("b", f"step {pos}: budget {lhs} > {BUDGET_PER_MARK * len(local)}")
        if tuple(sorted(step.edges)) != red.marked:
            return _fail("b", f"step {pos}: contributed edges differ from marks")

    if list(m.edges) != t.contributed():
        return _fail("c", "matching differs from the union of contributed edges")
    bad = find_violation(g, m.edges)
    if bad is not None:
        return _fail("d", str(bad))
    rhs = g.n - isolated_count(g) - c5sq_count(g)
    if BUDGET_PER_MARK * len(m) < rhs:
        return _fail("e", f"9*{len(m)} < {rhs}")
    return TraceCheck(True)
