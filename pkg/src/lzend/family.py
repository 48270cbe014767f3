"""Binary strings whose greedy LZ-End parsing is nearly twice the optimum.

    w_k = aa . a^2 a^4 ... a^(2^k) . b^4 . (a^1 b^3)(a^2 b^3)...(a^K b^3)

with K = 2 + 4 + ... + 2^k. The greedy parsing has 2K + k + 5 phrases while
an explicit parsing has K + k + 6.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .errors import ContractViolation, FamilyIntegrityError, ValidationError
from .parsing import Parsing, greedy_parse, parsing_from_lengths, require_valid
from .text import Text

A, B = 0, 1
MEASURE_LIMIT = 8
DEFAULT_KMAX = 12


def big_k(k: int) -> int:
    return 2 ** (k + 1) - 2


def family_length(k: int) -> int:
    K = big_k(k)
    return 6 + K + K * (K + 7) // 2


def greedy_size_formula(k: int) -> int:
    return 2 * big_k(k) + k + 5


def witness_size_formula(k: int) -> int:
    return big_k(k) + k + 6


@dataclass(frozen=True)
class FamilyInstance:
    k: int
    K: int
    text: Text
    prefix_end: int  # last position of W_0 = aa a^2 .. a^(2^k) b^4
    blocks: tuple[tuple[int, int], ...]  # 1-based span of a^j b^3 for j = 1..K


def build_family(k: int) -> FamilyInstance:
    if k < 1:
        raise ContractViolation(f"k must be >= 1, got {k}")
    K = big_k(k)
    sym = [A] * (2 + K) + [B] * 4
    prefix_end = len(sym)
    blocks = []
    for j in range(1, K + 1):
        start = len(sym) + 1
        sym += [A] * j + [B] * 3
        blocks.append((start, len(sym)))
    text = Text(tuple(sym), ("a", "b"), origin=f"family k={k}")
    return FamilyInstance(k, K, text, prefix_end, tuple(blocks))


def _prefix_greedy_lengths(k: int) -> list[int]:
    return [1, 1] + [2**i for i in range(1, k + 1)] + [1, 1, 2]


@dataclass
class FamilyGreedyReport:
    k: int
    size: int
    expected: int
    blocks_checked: int


def check_greedy_family(k: int, inst: FamilyInstance | None = None, parsing: Parsing | None = None) -> FamilyGreedyReport:
    """Greedy-parse w_k and check the size and the phrase structure.

    W_0 must parse as a, a, a^2, ..., a^(2^k), b, b, b^2 and each block a^j b^3
    must add exactly the phrases a^j b^2 and b.
    """
    inst = inst or build_family(k)
    parsing = parsing or greedy_parse(inst.text)
    lengths = list(parsing.lengths)
    head = _prefix_greedy_lengths(k)
    if lengths[: len(head)] != head:
        raise FamilyIntegrityError(f"W_0 parses as {lengths[: len(head)]}, expected {head}")
    starts = parsing.starts
    for j, (start, end) in enumerate(inst.blocks, 1):
        idx = len(head) + 2 * (j - 1)
        got = lengths[idx : idx + 2]
        if got != [j + 2, 1] or starts[idx] != start:
            raise FamilyIntegrityError(f"block {j} adds phrases of lengths {got} at {starts[idx] if idx < len(starts) else None}, expected [{j + 2}, 1] at {start}")
    expected = greedy_size_formula(k)
    if parsing.size != expected:
        raise FamilyIntegrityError(f"greedy size {parsing.size}, expected 2K+k+5 = {expected}")
    return FamilyGreedyReport(k, parsing.size, expected, inst.K)


def witness_parsing_family(k: int, inst: FamilyInstance | None = None) -> Parsing:
    """a, a, a^2, ..., a^(2^k), b, b, b, b, a^1 b^3, ..., a^K b^3."""
    inst = inst or build_family(k)
    lengths = [1, 1] + [2**i for i in range(1, k + 1)] + [1, 1, 1, 1] + [j + 3 for j in range(1, inst.K + 1)]
    try:
        parsing = require_valid(inst.text, parsing_from_lengths(inst.text, lengths))
    except ValidationError as exc:
        raise FamilyIntegrityError(f"witness parsing for k={k} is invalid: {exc}") from exc
    if parsing.size != witness_size_formula(k):
        raise FamilyIntegrityError(f"witness has {parsing.size} phrases, expected K+k+6 = {witness_size_formula(k)}")
    return parsing


@dataclass(frozen=True)
class RatioRow:
    k: int
    n: int
    greedy_size: int
    witness_size: int
    measured: bool

    @property
    def ratio(self) -> float:
        return self.greedy_size / self.witness_size


def ratio_table(k_max: int = DEFAULT_KMAX, measure_limit: int = MEASURE_LIMIT) -> list[RatioRow]:
    """Rows k = 1..k_max. Rows with k <= measure_limit come from running the
    greedy parser and validating the witness; the rest use the closed forms."""
    if k_max < 1:
        raise ContractViolation("k_max must be >= 1")
    rows = []
    for k in range(1, k_max + 1):
        if k <= measure_limit:
            inst = build_family(k)
            greedy = greedy_parse(inst.text)
            check_greedy_family(k, inst, greedy)
            witness = witness_parsing_family(k, inst)
            rows.append(RatioRow(k, inst.text.n, greedy.size, witness.size, True))
        else:
            rows.append(RatioRow(k, family_length(k), greedy_size_formula(k), witness_size_formula(k), False))
    for a, b in zip(rows, rows[1:]):
        if not b.ratio > a.ratio:
            raise FamilyIntegrityError(f"ratio does not increase from k={a.k} to k={b.k}")
    return rows


def format_table(rows: list[RatioRow]) -> str:
    out = [f"{'k':>3} {'n':>10} {'z_e':>7} {'witness':>8} {'ratio':>8}  basis"]
    for r in rows:
        out.append(f"{r.k:>3} {r.n:>10} {r.greedy_size:>7} {r.witness_size:>8} {r.ratio:>8.4f}  {'measured' if r.measured else 'formula'}")
    return "\n".join(out) + "\n"


def table_csv(rows: list[RatioRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "n", "z_e_measured", "witness_size", "ratio", "basis"])
    for r in rows:
        w.writerow([r.k, r.n, r.greedy_size if r.measured else "", r.witness_size, f"{r.ratio:.6f}", "measured" if r.measured else "formula"])
    return buf.getvalue()
