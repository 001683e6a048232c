"""Bound reports, corollary checks and the m/17 conjecture scan."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .families import is_c5_squared
from .graph import Graph, components, isolated_count


def c5sq_count(g: Graph) -> int:
    count = 0
    for comp in components(g):
        if len(comp) == 10 and is_c5_squared(g.induced_subgraph(comp)[0]):
            count += 1
    return count


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    isolated: int
    c5sq: int
    matching_size: int
    guarantee_ok: bool
    m20_ok: bool
    m18_applicable: bool
    m18_ok: bool
    conjecture_ratio: Fraction | None

    @property
    def guarantee_rhs(self) -> int:
        """n - i - n5, the quantity nine matching edges must cover."""
        return self.n - self.isolated - self.c5sq


def _report(n: int, m: int, isolated: int, c5sq: int, size: int) -> BoundReport:
    m18_applicable = c5sq == 0
    return BoundReport(
        n=n,
        m=m,
        isolated=isolated,
        c5sq=c5sq,
        matching_size=size,
        guarantee_ok=9 * size >= n - isolated - c5sq,
        m20_ok=20 * size >= m,
        m18_applicable=m18_applicable,
        m18_ok=m18_applicable and 18 * size >= m,
        conjecture_ratio=Fraction(17 * size, m) if m and not c5sq else None,
    )


def bound_report(g: Graph, matching_size: int) -> BoundReport:
    return _report(g.n, g.m, isolated_count(g), c5sq_count(g), matching_size)


@dataclass(frozen=True)
class CorollaryCheck:
    ok: bool
    failures: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def corollary_check(r: BoundReport) -> CorollaryCheck:
    """Check ``20|M| >= m`` and, without C5^2 components, ``18|M| >= m``."""
    failures = []
    if 20 * r.matching_size < r.m:
        failures.append(f"m/20 violated: 20*{r.matching_size} < {r.m}")
    if r.m18_applicable and 18 * r.matching_size < r.m:
        failures.append(f"m/18 violated: 18*{r.matching_size} < {r.m}")
    if r.m > 2 * (r.n - r.isolated):
        failures.append(f"degree bound violated: m={r.m} > 2(n-i)={2 * (r.n - r.isolated)}")
    return CorollaryCheck(not failures, tuple(failures))


@dataclass(frozen=True)
class ScanEntry:
    graph6: str
    n: int
    m: int
    size: int | None = None
    exact: bool = False
    ratio: Fraction | None = None
    skipped: str | None = None


@dataclass
class ScanSummary:
    entries: list[ScanEntry] = field(default_factory=list)
    min_ratio: Fraction | None = None
    argmin_graph6: str | None = None
    min_is_exact: bool = False
    counterexample: bool = False

    @property
    def skipped(self) -> list[ScanEntry]:
        return [e for e in self.entries if e.skipped]

    def to_dict(self) -> dict:
        from .graphio import format_ratio

        return {
            "scanned": len(self.entries) - len(self.skipped),
            "skipped": [{"graph6": e.graph6, "reason": e.skipped} for e in self.skipped],
            "min_ratio": format_ratio(self.min_ratio),
            "argmin_graph6": self.argmin_graph6,
            "min_is_exact": self.min_is_exact,
            "counterexample": self.counterexample,
            "entries": [
                {
                    "graph6": e.graph6,
                    "n": e.n,
                    "m": e.m,
                    "strong_matching": e.size,
                    "exact": e.exact,
                    "ratio": format_ratio(e.ratio),
                }
                for e in self.entries
                if not e.skipped
            ],
        }


def scan_one(g: Graph, use_exact: bool = True, exact_limit: int = 24) -> ScanEntry:
    from .engine import bounded_induced_matching
    from .graphio import encode_graph6
    from .matching import exact_max_induced_matching

    g6 = encode_graph6(g)
    if g.max_degree > 4:
        return ScanEntry(g6, g.n, g.m, skipped="max degree above 4")
    if c5sq_count(g):
        return ScanEntry(g6, g.n, g.m, skipped="C5^2 component")
    if g.m == 0:
        return ScanEntry(g6, g.n, g.m, skipped="no edges")
    if use_exact and g.n <= exact_limit:
        size, exact = len(exact_max_induced_matching(g)), True
    else:
        size, exact = len(bounded_induced_matching(g, fallback_exact=True).matching), False
    return ScanEntry(g6, g.n, g.m, size, exact, Fraction(17 * size, g.m))


def summarize(entries: Iterable[ScanEntry]) -> ScanSummary:
    """Fold entries into a summary; the result does not depend on entry order
    apart from the entry list itself."""
    summary = ScanSummary(list(entries))
    best = None
    for e in summary.entries:
        if e.ratio is None:
            continue
        key = (e.ratio, not e.exact, e.graph6)
        if best is None or key < best:
            best = key
        if e.exact and e.ratio < 1:
            summary.counterexample = True
    if best is not None:
        summary.min_ratio, inexact, summary.argmin_graph6 = best
        summary.min_is_exact = not inexact
    return summary


def _scan_job(args: tuple[Graph, bool, int]) -> ScanEntry:
    return scan_one(*args)


def conjecture_scan(
    sources: Sequence[Graph],
    use_exact: bool = True,
    exact_limit: int = 24,
    jobs: int = 1,
) -> ScanSummary:
    """Smallest ``17 * nu_s / m`` over ``sources``.

    Only exactly computed values may raise the counterexample flag; engine
    values are lower estimates and are marked ``exact=False``.
    """
    work = [(g, use_exact, exact_limit) for g in sources]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(_scan_job, work))
    else:
        entries = [_scan_job(w) for w in work]
    return summarize(entries)
