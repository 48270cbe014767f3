"""Exact optimal LZ-End parsing by depth-first branch and bound.

Practical up to roughly 40 symbols. The search tries longer phrases first,
starts from the greedy parsing as incumbent and prunes with an admissible
bound: every leftmost occurrence still ahead needs its own singleton phrase,
and any other remaining position needs at least one more phrase.
"""

from __future__ import annotations

from .errors import ContractViolation, NoParsingWithinBound, SearchBudgetExceeded
from .parsing import Parsing, greedy_parse, parsing_from_lengths
from .text import Text

DEFAULT_BUDGET = 10**8


def _source_masks(sym: tuple[int, ...]) -> list[list[int]]:
    # masks[e][p]: bit l set iff sym[e-l:e] == sym[p:p+l] (0-based p, end e)
    n = len(sym)
    masks = [[0] * n for _ in range(n + 1)]
    for e in range(1, n + 1):
        row = masks[e]
        for p in range(e, n):
            m = 0
            for ln in range(1, min(e, n - p) + 1):
                if sym[e - ln : e] == sym[p : p + ln]:
                    m |= 1 << ln
            row[p] = m
    return masks


def _bits(mask: int) -> list[int]:
    out = []
    ln = 0
    while mask:
        if mask & 1:
            out.append(ln)
        mask >>= 1
        ln += 1
    return out


def candidate_lengths(text: Text, pos: int, ends) -> list[int]:
    """Valid lengths of a phrase starting at 1-based ``pos`` given the
    phrase ends committed so far, in ascending order."""
    n = text.n
    if not 1 <= pos <= n:
        raise ContractViolation(f"position {pos} outside 1..{n}")
    if text.is_leftmost(pos):
        return [1]
    sym = text.symbols
    out = []
    for ln in range(1, n - pos + 2):
        seg = sym[pos - 1 : pos - 1 + ln]
        if any(ln <= e < pos and sym[e - ln : e] == seg for e in ends):
            out.append(ln)
    return out


def optimal_parse(
    text: Text,
    upper_bound: int | None = None,
    budget: int = DEFAULT_BUDGET,
    prune: bool = True,
) -> Parsing:
    """Minimum-size LZ-End-like parsing.

    Among optimal parsings the one with the lexicographically largest length
    sequence is returned (longer leading phrases win ties). With
    ``upper_bound``, raises NoParsingWithinBound when every parsing is larger.
    ``prune=False`` disables the incumbent and the lower bound.
    """
    if budget < 1:
        raise ContractViolation("budget must be positive")
    n = text.n
    if n == 0:
        if upper_bound is not None and upper_bound < 0:
            raise NoParsingWithinBound(f"no parsing of size <= {upper_bound}")
        return Parsing(())
    sym = text.symbols
    leftmost = [text.is_leftmost(i + 1) for i in range(n)]
    # lower[p]: phrases still needed for the suffix starting at p
    singles = [0] * (n + 1)
    copies = [False] * (n + 1)
    for p in range(n - 1, -1, -1):
        singles[p] = singles[p + 1] + leftmost[p]
        copies[p] = copies[p + 1] or not leftmost[p]
    lower = [s + c for s, c in zip(singles, copies)]

    best: tuple[int, ...] | None = None
    limit = float("inf")  # sizes >= limit are not wanted
    if prune:
        greedy = greedy_parse(text)
        best, limit = greedy.lengths, greedy.size
    if upper_bound is not None and upper_bound + 1 < limit:
        best, limit = None, upper_bound + 1

    masks = _source_masks(sym)
    lengths: list[int] = []
    ends: list[int] = []
    nodes = 0

    def dfs(p: int) -> None:
        nonlocal best, limit, nodes
        count = len(lengths)
        if p == n:
            if count < limit:
                best, limit = tuple(lengths), count
            return
        if prune and count + lower[p] >= limit:
            return
        if not prune and count + 1 >= limit:
            return
        nodes += 1
        if nodes > budget:
            raise SearchBudgetExceeded(budget)
        if leftmost[p]:
            cands = [1]
        else:
            m = 0
            for e in ends:
                m |= masks[e][p]
            cands = _bits(m)
        for ln in reversed(cands):
            lengths.append(ln)
            ends.append(p + ln)
            dfs(p + ln)
            lengths.pop()
            ends.pop()

    dfs(0)
    if best is None:
        raise NoParsingWithinBound(f"no parsing of size <= {upper_bound}")
    return parsing_from_lengths(text, best)


def z_end(text: Text, **kwargs) -> int:
    """Size of an optimal LZ-End parsing."""
    return optimal_parse(text, **kwargs).size
