import itertools
import pathlib

import pytest

from lzend.errors import ContractViolation, ReductionPreconditionError, ResourceLimitError, SegmentAlignmentError
from lzend.gadget import (
    TRIANGLE,
    Graph,
    brute_force_vertex_cover,
    build_gadget,
    complete_graph,
    cover_from_parsing,
    cycle_graph,
    format_graph,
    greedy_counts,
    minimum_vertex_cover,
    parse_graph,
    segment_counts,
    verify_reduction,
    witness_parsing,
)
from lzend.parsing import Parsing, Phrase, greedy_parse, parsing_from_lengths, validate

GOLDEN = pathlib.Path(__file__).parent / "data" / "k3_gadget.txt"

GRAPHS = {
    "K3": TRIANGLE,
    "C4": cycle_graph(4),
    "K4": complete_graph(4),
    "C5": cycle_graph(5),
    "K2,3": Graph(5, ((1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5))),
}


def golden_segments():
    return [ln.split() for ln in GOLDEN.read_text().splitlines() if ln and not ln.startswith("#")]


def test_triangle_matches_hand_transcription():
    gs = build_gadget(TRIANGLE)
    rendered = gs.text.render().split()
    assert [("#" if tok.startswith("#") else tok) for tok in rendered] == list(itertools.chain(*golden_segments()))
    hashes = [tok for tok in rendered if tok.startswith("#")]
    assert hashes == [f"#{k}" for k in range(1, len(hashes) + 1)]
    labels = [s.label for s in gs.main_segments()]
    assert labels == ["P1", "P2", "P3", "Q1", "Q2", "Q3", "R1", "R2", "R3", "S1", "S2", "S3"]
    assert [s.length for s in gs.main_segments()] == [len(seg) for seg in golden_segments()]


def test_triangle_first_tokens():
    assert build_gadget(TRIANGLE).text.render().split()[:12] == "v1 v1 v1 #1 v1 v1 $ #2 v1 $ $ #3".split()


@pytest.mark.parametrize("name", GRAPHS)
def test_lengths_and_alphabet(name):
    g = GRAPHS[name]
    gs = build_gadget(g)
    assert gs.text.n == 19 * g.n + 37 * g.m
    for i in range(1, g.n + 1):
        d = g.degree(i)
        assert gs.segment(f"P{i}").length == 12 + 8 * d
        assert gs.segment(f"R{i}").length == 7 + 6 * d
        assert gs.segment(f"X{i}").length == gs.segment(f"Y{i}").length == 4 * d
    assert all(gs.segment(f"Q{j}").length == 4 and gs.segment(f"S{j}").length == 5 for j in range(1, g.m + 1))
    assert gs.hash_count() == 4 * g.n + 6 * g.m
    assert gs.text.alphabet_size == g.n + g.m + 1 + gs.hash_count()
    counts = {}
    for s in gs.text.symbols:
        counts[s] = counts.get(s, 0) + 1
    assert all(counts[t] == 1 for t, lab in gs.legend.items() if lab.startswith("#"))


@pytest.mark.parametrize("name", GRAPHS)
def test_greedy_counts(name):
    g = GRAPHS[name]
    c = greedy_counts(g)
    assert c.total == 13 * g.n + 23 * g.m == greedy_parse(build_gadget(g).text).size
    assert c.p_part == 10 * g.n + 13 * g.m and c.q_part == 3 * g.m


def test_triangle_greedy_r_segment_shape():
    gs = build_gadget(TRIANGLE)
    g = greedy_parse(gs.text)
    r1 = gs.segment("R1")
    phrases = [ph for ph in g if r1.start <= ph.start <= r1.end]
    rendered = [" ".join(gs.text.labels[s] for s in gs.text.slice(ph.start, ph.end)) for ph in phrases]
    assert rendered == ["v1 v1 v1", "v1 $ e1", "e1 e1 v1", "v1 $ e3", "e3 e3 v1", "v1 $ $", rendered[-1]]
    assert rendered[-1].startswith("#")
    assert greedy_counts(TRIANGLE).total == 108


@pytest.mark.parametrize("name", GRAPHS)
def test_witness_for_every_cover(name):
    g = GRAPHS[name]
    gs = build_gadget(g)
    for k in range(g.n + 1):
        for cover in itertools.combinations(range(1, g.n + 1), k):
            if not g.is_cover(cover):
                continue
            w = witness_parsing(g, cover, gs)
            assert validate(gs.text, w)
            assert w.size == 13 * g.n + 22 * g.m + len(cover)
            found = cover_from_parsing(g, w, gs)
            assert found.v_prime == sorted(cover) and found.e_prime == []
            assert len(found.cover) <= len(cover)


def test_triangle_known_cover():
    w = witness_parsing(TRIANGLE, [1, 3])
    assert w.size == 107
    assert witness_parsing(TRIANGLE, [1, 2, 3]).size == 108
    assert cover_from_parsing(TRIANGLE, w).cover == [1, 3]


def test_witness_rejects_non_cover():
    with pytest.raises(ContractViolation, match="e2"):
        witness_parsing(TRIANGLE, [1])


def test_cover_from_greedy_parsing():
    res = cover_from_parsing(TRIANGLE, greedy_parse(build_gadget(TRIANGLE).text))
    assert res.v_prime == [] and res.e_prime == [1, 2, 3]
    assert TRIANGLE.is_cover(res.cover) and len(res.cover) <= 3
    assert res.r == 0 and res.s == 0 and res.bound == 3


def _mixed_triangle_parsing(gs, long_r, short_s):
    """Greedy P/Q, the longer R parsing on ``long_r``, two-phrase S on ``short_s``."""
    g = TRIANGLE
    greedy = greedy_parse(gs.text)
    q_end = gs.segment("Q3").end
    lengths = [ph.length for ph in greedy if ph.end <= q_end]
    for i in range(1, 4):
        lengths += [2, 3, 3, 3, 3, 3, 1, 1] if i in long_r else [3, 3, 3, 3, 3, 3, 1]
    for j in range(1, 4):
        lengths += [4, 1] if j in short_s else [1, 3, 1]
    return parsing_from_lengths(gs.text, lengths)


def test_cover_augmentation():
    # V' = {v1}, E' = {e2}: e1 and e3 are sourced from R1, e2 = {v2, v3} gets v2
    gs = build_gadget(TRIANGLE)
    p = _mixed_triangle_parsing(gs, long_r={1}, short_s={1, 3})
    assert validate(gs.text, p)
    res = cover_from_parsing(TRIANGLE, p, gs)
    assert res.v_prime == [1] and res.e_prime == [2]
    assert res.cover == [1, 2]
    assert len(res.cover) <= res.r + (TRIANGLE.m - res.s)


def test_segment_alignment_error():
    gs = build_gadget(TRIANGLE)
    crossing = Parsing((Phrase(1, gs.text.n),))
    with pytest.raises(SegmentAlignmentError):
        segment_counts(gs, crossing)


@pytest.mark.parametrize("g, tau", [(TRIANGLE, 2), (cycle_graph(4), 2), (complete_graph(4), 3), (cycle_graph(5), 3)])
def test_vertex_cover_number(g, tau):
    assert brute_force_vertex_cover(g) == tau
    for k in range(tau):
        assert not any(g.is_cover(c) for c in itertools.combinations(range(1, g.n + 1), k))


def test_vertex_cover_limit():
    with pytest.raises(ResourceLimitError):
        minimum_vertex_cover(cycle_graph(21))


@pytest.mark.parametrize(
    "g, match",
    [
        (Graph(6, ((1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6))), "connected"),
        (Graph(3, ((1, 2), (2, 3))), "v1"),
    ],
)
def test_preconditions(g, match):
    with pytest.raises(ReductionPreconditionError, match=match):
        build_gadget(g)


@pytest.mark.parametrize("edges", [((1, 1),), ((1, 2), (2, 1)), ((1, 4),)])
def test_graph_invariants(edges):
    with pytest.raises(ContractViolation):
        Graph(3, edges)


def test_graph_file_round_trip():
    g = complete_graph(4)
    assert parse_graph(format_graph(g)) == g


def test_verify_reduction_without_solver():
    rep = verify_reduction(complete_graph(4))
    assert rep.witness_size == 13 * 4 + 22 * 6 + 3 == 187
    rep = verify_reduction(TRIANGLE)
    assert (rep.greedy_size, rep.witness_size, rep.maxsat_optimum) == (108, 107, None)


@pytest.mark.parametrize("name", ["K3", "C4"])
def test_verify_reduction_with_solver(name, solver):
    g = GRAPHS[name]
    rep = verify_reduction(g, solver)
    assert rep.maxsat_optimum == 13 * g.n + 22 * g.m + brute_force_vertex_cover(g)
