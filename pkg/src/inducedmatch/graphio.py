"""graph6 codec, plain edge lists, and JSON run reports."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Any

from .graph import Graph, GraphError, build_graph

if TYPE_CHECKING:
    from .bounds import BoundReport
    from .engine import ReductionTrace
    from .matching import InducedMatching

GRAPH6_HEADER = ">>graph6<<"
MAX_GRAPH6_ORDER = 258047


class Graph6Error(GraphError):
    pass


class MalformedHeader(Graph6Error):
    pass


class TrailingGarbage(Graph6Error):
    pass


class ByteOutOfRange(Graph6Error):
    def __init__(self, pos: int, byte: int):
        super().__init__(f"byte {byte!r} at position {pos} outside 63..126")
        self.pos = pos
        self.byte = byte


class TruncatedBody(Graph6Error):
    pass


class GraphTooLarge(Graph6Error):
    pass


class EdgeListError(GraphError):
    pass


class BadToken(EdgeListError):
    def __init__(self, line: int, token: str):
        super().__init__(f"line {line}: bad token {token!r}")
        self.line = line
        self.token = token


class CountMismatch(EdgeListError):
    pass


class InconsistentInputs(ValueError):
    pass


def _encode_order(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= MAX_GRAPH6_ORDER:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise GraphTooLarge(f"graph6 supports n <= {MAX_GRAPH6_ORDER}, got {n}")


def encode_graph6(g: Graph) -> str:
    """graph6 line for ``g`` (no header, no newline)."""
    head = _encode_order(g.n)
    nbits = g.n * (g.n - 1) // 2
    body = []
    acc = 0
    count = 0
    for j in range(1, g.n):
        row = g.nbr_sets[j]
        for i in range(j):
            acc = (acc << 1) | (i in row)
            count += 1
            if count == 6:
                body.append(chr(acc + 63))
                acc = count = 0
    if count:
        body.append(chr((acc << (6 - count)) + 63))
    assert len(body) == (nbits + 5) // 6
    return head + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise MalformedHeader("empty graph6 line")
    data = [ord(ch) for ch in s]
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise ByteOutOfRange(pos, byte)
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        raise MalformedHeader("8-byte order header is not supported")
    elif len(data) < 4:
        raise MalformedHeader("truncated 4-byte order header")
    else:
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n <= 62:
            raise MalformedHeader(f"non-minimal order header for n={n}")
        pos = 4
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise TruncatedBody(f"expected {nbytes} body bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise TrailingGarbage(f"{len(body) - nbytes} unexpected bytes after body")
    pad = 6 * nbytes - nbits
    if pad and (body[-1] - 63) & ((1 << pad) - 1):
        raise TrailingGarbage("non-zero padding bits")
    edges = []
    k = 0
    i, j = 0, 1
    for byte in body:
        val = byte - 63
        for shift in range(5, -1, -1):
            if k == nbits:
                break
            if (val >> shift) & 1:
                edges.append((i, j))
            k += 1
            i += 1
            if i == j:
                i, j = 0, j + 1
    return build_graph(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append((lineno, line.split()))
    if not rows:
        raise CountMismatch("missing 'n m' header line")

    def ints(lineno: int, toks: list[str]) -> tuple[int, int]:
        if len(toks) != 2:
            raise BadToken(lineno, " ".join(toks))
        out = []
        for t in toks:
            try:
                val = int(t)
            except ValueError:
                raise BadToken(lineno, t) from None
            if val < 0:
                raise BadToken(lineno, t)
            out.append(val)
        return out[0], out[1]

    n, m = ints(*rows[0])
    pairs = [ints(lineno, toks) for lineno, toks in rows[1:]]
    if len(pairs) != m:
        raise CountMismatch(f"header announces {m} edges, found {len(pairs)}")
    return build_graph(n, pairs)


def encode_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{a} {b}" for a, b in g.edges()]
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Graph:
    """Sniff the format: a first data line of two integers means an edge list."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 2 and all(t.lstrip("-").isdigit() for t in toks):
            return parse_edge_list(text)
        return parse_graph6(line)
    raise MalformedHeader("no graph found in input")


def format_ratio(r: Fraction | None) -> str | None:
    return None if r is None else f"{r.numerator}/{r.denominator}"


def parse_ratio(s: str | None) -> Fraction | None:
    return None if s is None else Fraction(s)


@dataclass
class TraceEntry:
    kind: str
    k: int
    ball_size: int
    isolated_after: int
    fallback: bool = False


@dataclass
class ReportDocument:
    """JSON-facing form of a run: bound report, matching and trace summary."""

    n: int
    m: int
    isolated: int
    c5sq_components: int
    matching_size: int
    guarantee_ok: bool
    ratio_m_over_20_ok: bool
    m18_applicable: bool
    m18_ok: bool
    conjecture_ratio: Fraction | None
    matching: list[list[int]] = field(default_factory=list)
    trace: list[TraceEntry] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["conjecture_ratio"] = format_ratio(self.conjecture_ratio)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> ReportDocument:
        d = dict(d)
        d["conjecture_ratio"] = parse_ratio(d.get("conjecture_ratio"))
        d["matching"] = [list(e) for e in d.get("matching", [])]
        d["trace"] = [TraceEntry(**t) for t in d.get("trace", [])]
        return cls(**d)

    @classmethod
    def from_json(cls, text: str) -> ReportDocument:
        return cls.from_dict(json.loads(text))


def report_document(
    r: BoundReport, m: InducedMatching, t: ReductionTrace | None = None
) -> ReportDocument:
    if m.graph_order != r.n:
        raise InconsistentInputs(f"matching computed on n={m.graph_order}, report has n={r.n}")
    if len(m) != r.matching_size:
        raise InconsistentInputs(
            f"matching has {len(m)} edges, report says {r.matching_size}"
        )
    entries = []
    if t is not None:
        if t.n != r.n:
            raise InconsistentInputs(f"trace covers n={t.n}, report has n={r.n}")
        for step in t.steps:
            if step.reduction is not None:
                red = step.reduction
                entries.append(TraceEntry("reduction", red.k, len(red.ball), red.isolated_after))
            else:
                entries.append(
                    TraceEntry(step.kind, len(step.edges), len(step.vertices), 0, step.fallback)
                )
    return ReportDocument(
        n=r.n,
        m=r.m,
        isolated=r.isolated,
        c5sq_components=r.c5sq,
        matching_size=r.matching_size,
        guarantee_ok=r.guarantee_ok,
        ratio_m_over_20_ok=r.m20_ok,
        m18_applicable=r.m18_applicable,
        m18_ok=r.m18_ok,
        conjecture_ratio=r.conjecture_ratio,
        matching=[list(e) for e in m.edges],
        trace=entries,
    )


def encode_report(r: BoundReport, m: InducedMatching, t: ReductionTrace | None = None) -> str:
    return report_document(r, m, t).to_json()


def decode_report(text: str) -> ReportDocument:
    return ReportDocument.from_json(text)
