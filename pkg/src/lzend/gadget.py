"""Vertex-cover reduction strings and their parsings.

For a connected graph with minimum degree 2 on vertices v_1..v_n and edges
e_1..e_m, the string is P_1..P_n Q_1..Q_m R_1..R_n S_1..S_m with

    P_i = v^3 # v^2 $ # v $^2 # X_i Y_i     X_i = prod (v $ e #)
    Q_j = e^3 #                             Y_i = prod (e^2 v #)
    R_i = v^4 $ prod (e^3 v^2 $) $ #
    S_j = $ e^3 #

where products run over the edges incident to v_i in ascending edge index
and every # is a fresh symbol. Its greedy parsing has 13n + 23m phrases and
a vertex cover U yields a parsing of 13n + 22m + |U| phrases.
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field

from .errors import (
    ContractViolation,
    InputFormatError,
    ReductionIntegrityError,
    ReductionPreconditionError,
    ResourceLimitError,
    SegmentAlignmentError,
)
from .parsing import Parsing, greedy_parse, parsing_from_lengths, require_valid
from .text import Text, from_labels

MAX_BRUTE_FORCE_VERTICES = 20


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        norm = []
        for j, (u, v) in enumerate(self.edges, 1):
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ContractViolation(f"edge e{j} = {{{u}, {v}}} has an endpoint outside 1..{self.n}")
            if u == v:
                raise ContractViolation(f"edge e{j} is a self-loop at v{u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ContractViolation(f"edge e{j} duplicates {{{u}, {v}}}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident(self, i: int) -> list[int]:
        """Indices of edges incident to v_i, ascending."""
        return [j for j, e in enumerate(self.edges, 1) if i in e]

    def degree(self, i: int) -> int:
        return len(self.incident(i))

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = {i: set() for i in range(1, self.n + 1)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        seen, stack = {1}, [1]
        while stack:
            for w in adj[stack.pop()] - seen:
                seen.add(w)
                stack.append(w)
        return len(seen) == self.n

    def is_cover(self, vertices: Iterable[int]) -> bool:
        vs = set(vertices)
        return all(u in vs or v in vs for u, v in self.edges)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(1, n + 1), 2)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


# The triangle exactly as labelled in the worked example: e1={v1,v2}, e2={v2,v3}, e3={v1,v3}.
TRIANGLE = Graph(3, ((1, 2), (2, 3), (1, 3)))


def parse_graph(content: str) -> Graph:
    """Edge-list format: ``n m`` on the first line, then ``u v`` per edge."""
    lines = [ln.split() for ln in content.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    try:
        n, m = map(int, lines[0])
        edges = tuple((int(a), int(b)) for a, b in lines[1:])
    except (IndexError, ValueError):
        raise InputFormatError("graph file must hold 'n m' then one 'u v' line per edge") from None
    if len(edges) != m:
        raise InputFormatError(f"graph header announces {m} edges, file lists {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def check_preconditions(g: Graph) -> None:
    if g.n < 1:
        raise ReductionPreconditionError("graph has no vertices")
    for i in range(1, g.n + 1):
        if g.degree(i) < 2:
            raise ReductionPreconditionError(f"vertex v{i} has degree {g.degree(i)} < 2")
    if not g.is_connected():
        raise ReductionPreconditionError("graph is not connected (vertex v1's component misses some vertices)")


@dataclass(frozen=True)
class Segment:
    label: str
    start: int  # 1-based, inclusive
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class GadgetString:
    graph: Graph
    text: Text
    segments: tuple[Segment, ...]
    legend: dict[int, str] = field(hash=False)

    def segment(self, label: str) -> Segment:
        for seg in self.segments:
            if seg.label == label:
                return seg
        raise KeyError(label)

    def main_segments(self) -> list[Segment]:
        """The P, Q, R and S segments in text order."""
        return [s for s in self.segments if s.label[0] in "PQRS"]

    def hash_count(self) -> int:
        return sum(1 for lab in self.legend.values() if lab.startswith("#"))

    def segment_table(self) -> str:
        return "".join(f"{s.label} {s.start} {s.end}\n" for s in self.segments)

    def legend_table(self) -> str:
        return "".join(f"{t} {lab}\n" for t, lab in sorted(self.legend.items()))


def build_gadget(g: Graph) -> GadgetString:
    check_preconditions(g)
    labels: list[str] = []
    segments: list[Segment] = []
    hashes = itertools.count(1)

    def emit(*parts: str) -> None:
        for part in parts:
            labels.append(f"#{next(hashes)}" if part == "#" else part)

    def span(label: str, body) -> None:
        start = len(labels) + 1
        body()
        segments.append(Segment(label, start, len(labels)))

    for i in range(1, g.n + 1):
        v = f"v{i}"
        inc = g.incident(i)

        def p_body(v=v, inc=inc, i=i):
            emit(v, v, v, "#", v, v, "$", "#", v, "$", "$", "#")
            span(f"X{i}", lambda: [emit(v, "$", f"e{j}", "#") for j in inc])
            span(f"Y{i}", lambda: [emit(f"e{j}", f"e{j}", v, "#") for j in inc])

        span(f"P{i}", p_body)
    for j in range(1, g.m + 1):
        span(f"Q{j}", lambda j=j: emit(*[f"e{j}"] * 3, "#"))
    for i in range(1, g.n + 1):
        v = f"v{i}"

        def r_body(v=v, i=i):
            emit(v, v, v, v, "$")
            for j in g.incident(i):
                emit(*[f"e{j}"] * 3, v, v, "$")
            emit("$", "#")

        span(f"R{i}", r_body)
    for j in range(1, g.m + 1):
        span(f"S{j}", lambda j=j: emit("$", *[f"e{j}"] * 3, "#"))

    text = from_labels(labels, origin="gadget")
    legend = dict(enumerate(text.labels))
    order = {s.label: k for k, s in enumerate(segments)}
    ordered = sorted(segments, key=lambda s: (s.start, -s.end, order[s.label]))
    return GadgetString(g, text, tuple(ordered), legend)


def expected_length(g: Graph) -> int:
    return 19 * g.n + 37 * g.m


def segment_counts(gs: GadgetString, parsing: Parsing) -> dict[str, int]:
    """Phrases per P/Q/R/S segment. Raises SegmentAlignmentError when a phrase
    crosses a segment boundary."""
    segs = gs.main_segments()
    counts = {s.label: 0 for s in segs}
    k = 0
    for ph in parsing.phrases:
        while k < len(segs) and segs[k].end < ph.start:
            k += 1
        if k == len(segs) or ph.end > segs[k].end:
            raise SegmentAlignmentError(f"phrase at {ph.start}..{ph.end} crosses the end of segment {segs[min(k, len(segs) - 1)].label}")
        counts[segs[k].label] += 1
    return counts


@dataclass
class GreedyCounts:
    p_part: int
    q_part: int
    r: dict[int, int]
    s: dict[int, int]

    @property
    def total(self) -> int:
        return self.p_part + self.q_part + sum(self.r.values()) + sum(self.s.values())


def greedy_counts(g: Graph, gs: GadgetString | None = None) -> GreedyCounts:
    """Greedy phrase counts per part, checked against the closed forms."""
    gs = gs or build_gadget(g)
    counts = segment_counts(gs, greedy_parse(gs.text))
    res = GreedyCounts(
        p_part=sum(counts[f"P{i}"] for i in range(1, g.n + 1)),
        q_part=sum(counts[f"Q{j}"] for j in range(1, g.m + 1)),
        r={i: counts[f"R{i}"] for i in range(1, g.n + 1)},
        s={j: counts[f"S{j}"] for j in range(1, g.m + 1)},
    )
    problems = []
    if res.p_part != 10 * g.n + 13 * g.m:
        problems.append(f"P-part has {res.p_part} phrases, expected {10 * g.n + 13 * g.m}")
    if res.q_part != 3 * g.m:
        problems.append(f"Q-part has {res.q_part} phrases, expected {3 * g.m}")
    problems += [f"R{i} has {c} phrases, expected {2 * g.degree(i) + 3}" for i, c in res.r.items() if c != 2 * g.degree(i) + 3]
    problems += [f"S{j} has {c} phrases, expected 3" for j, c in res.s.items() if c != 3]
    if res.total != 13 * g.n + 23 * g.m:
        problems.append(f"greedy total {res.total} differs from {13 * g.n + 23 * g.m}")
    if problems:
        raise ReductionIntegrityError("; ".join(problems))
    return res


def _r_lengths(degree: int, covering: bool) -> list[int]:
    if covering:
        # v^2 | v^2 $ | (e^3 | v^2 $)* | $ | #
        return [2, 3] + [3, 3] * degree + [1, 1]
    # v^3 | (v $ e | e^2 v)* | v $ $ | #
    return [3] + [3, 3] * degree + [3, 1]


def witness_parsing(g: Graph, cover: Iterable[int], gs: GadgetString | None = None) -> Parsing:
    """Explicit parsing of size 13n + 22m + |cover| built from a vertex cover."""
    cover = set(cover)
    if not cover <= set(range(1, g.n + 1)):
        raise ContractViolation(f"cover {sorted(cover)} names vertices outside 1..{g.n}")
    missing = [j for j, (u, v) in enumerate(g.edges, 1) if u not in cover and v not in cover]
    if missing:
        u, v = g.edges[missing[0] - 1]
        raise ContractViolation(f"{sorted(cover)} is not a vertex cover: e{missing[0]} = {{v{u}, v{v}}} is uncovered")
    gs = gs or build_gadget(g)
    q_end = gs.segment(f"Q{g.m}").end
    prefix = Text(gs.text.symbols[:q_end], gs.text.labels)
    lengths = list(greedy_parse(prefix).lengths)
    for i in range(1, g.n + 1):
        lengths += _r_lengths(g.degree(i), i in cover)
    lengths += [4, 1] * g.m
    try:
        parsing = parsing_from_lengths(gs.text, lengths)
        require_valid(gs.text, parsing)
    except Exception as exc:
        raise ReductionIntegrityError(f"witness parsing is invalid: {exc}") from exc
    expected = 13 * g.n + 22 * g.m + len(cover)
    if parsing.size != expected:
        raise ReductionIntegrityError(f"witness parsing has {parsing.size} phrases, expected {expected}")
    return parsing


@dataclass
class CoverExtraction:
    m: int
    v_prime: list[int]  # vertices whose R segment uses the longer parsing
    e_prime: list[int]  # edges whose S segment is not two phrases
    cover: list[int]

    @property
    def r(self) -> int:
        return len(self.v_prime)

    @property
    def s(self) -> int:
        return self.m - len(self.e_prime)

    @property
    def bound(self) -> int:
        return self.r + self.m - self.s


def cover_from_parsing(g: Graph, parsing: Parsing, gs: GadgetString | None = None) -> CoverExtraction:
    """Read a vertex cover off a valid parsing of the reduction string.

    V' holds the vertices whose R segment has more than 2*deg+3 phrases, E'
    the edges whose S segment has more than two. Each edge of E' not already
    covered adds its smaller-index endpoint.
    """
    gs = gs or build_gadget(g)
    counts = segment_counts(gs, parsing)
    v_prime = [i for i in range(1, g.n + 1) if counts[f"R{i}"] > 2 * g.degree(i) + 3]
    e_prime = [j for j in range(1, g.m + 1) if counts[f"S{j}"] > 2]
    cover = set(v_prime)
    for j in e_prime:
        u, v = g.edges[j - 1]
        if u not in cover and v not in cover:
            cover.add(min(u, v))
    res = CoverExtraction(g.m, v_prime, e_prime, sorted(cover))
    if not g.is_cover(cover):
        raise ReductionIntegrityError(f"extracted set {res.cover} is not a vertex cover")
    if len(cover) > res.bound:
        raise ReductionIntegrityError(f"extracted cover has {len(cover)} vertices, bound is {res.bound}")
    return res


def minimum_vertex_cover(g: Graph) -> list[int]:
    """A minimum vertex cover by subset enumeration (smallest first, then
    lexicographic)."""
    if g.n > MAX_BRUTE_FORCE_VERTICES:
        raise ResourceLimitError(f"brute-force vertex cover limited to {MAX_BRUTE_FORCE_VERTICES} vertices, got {g.n}")
    for k in range(g.n + 1):
        for subset in itertools.combinations(range(1, g.n + 1), k):
            if g.is_cover(subset):
                return list(subset)
    raise AssertionError("the full vertex set is always a cover")


def brute_force_vertex_cover(g: Graph) -> int:
    return len(minimum_vertex_cover(g))


@dataclass
class ReductionReport:
    n: int
    m: int
    length: int
    greedy_size: int
    tau: int
    min_cover: list[int]
    witness_size: int
    maxsat_optimum: int | None = None
    notes: list[str] = field(default_factory=list)

    def lines(self) -> list[str]:
        out = [
            f"graph: n={self.n} m={self.m}",
            f"|W_G| = {self.length} (19n+37m = {19 * self.n + 37 * self.m})",
            f"greedy size = {self.greedy_size} (13n+23m = {13 * self.n + 23 * self.m})",
            f"vertex cover number = {self.tau}, minimum cover {self.min_cover}",
            f"witness size = {self.witness_size} (13n+22m+tau = {13 * self.n + 22 * self.m + self.tau})",
        ]
        if self.maxsat_optimum is not None:
            out.append(f"MAX-SAT optimum = {self.maxsat_optimum}")
        return out + self.notes


def verify_reduction(g: Graph, solver=None, timeout: float | None = None) -> ReductionReport:
    """Check every closed-form count on ``g``; with a solver, also the optimum."""
    gs = build_gadget(g)
    if gs.text.n != expected_length(g):
        raise ReductionIntegrityError(f"|W_G| = {gs.text.n}, expected {expected_length(g)}")
    counts = greedy_counts(g, gs)
    cover = minimum_vertex_cover(g)
    witness = witness_parsing(g, cover, gs)
    extraction = cover_from_parsing(g, witness, gs)
    if len(extraction.cover) > len(cover):
        raise ReductionIntegrityError("cover extracted from the witness is larger than the cover it came from")
    report = ReductionReport(g.n, g.m, gs.text.n, counts.total, len(cover), cover, witness.size)
    if solver is not None:
        from .maxsat import solve

        optimum = solve(gs.text, solver, timeout=timeout)
        report.maxsat_optimum = optimum.size
        expected = 13 * g.n + 22 * g.m + len(cover)
        if optimum.size != expected:
            raise ReductionIntegrityError(f"MAX-SAT optimum {optimum.size} differs from 13n+22m+tau = {expected}")
        found = cover_from_parsing(g, optimum, gs)
        report.notes.append(f"cover read from the optimum: {found.cover}")
    return report
