"""Independent brute-force references. None of these call into lzend beyond
reading plain symbol tuples."""

from __future__ import annotations

import itertools


def compositions(n: int):
    """Every tuple of positive lengths summing to n."""
    if n == 0:
        yield ()
        return
    for cuts in itertools.product((False, True), repeat=n - 1):
        out, run = [], 1
        for c in cuts:
            if c:
                out.append(run)
                run = 1
            else:
                run += 1
        out.append(run)
        yield tuple(out)


def is_lzend_like(sym, lengths) -> bool:
    """Direct check of the definition on a tiling, using string slices."""
    s = list(sym)
    pos, ends = 0, []
    for ln in lengths:
        phrase = s[pos : pos + ln]
        if ln == 1 and s[pos] not in s[:pos]:
            pass
        elif not any(e >= ln and s[e - ln : e] == phrase for e in ends):
            return False
        pos += ln
        ends.append(pos)
    return pos == len(s)


def min_parsing_size(sym) -> int:
    return min(len(c) for c in compositions(len(sym)) if is_lzend_like(sym, c))


def naive_greedy_lengths(sym) -> list[int]:
    """Greedy by definition: longest prefix of the rest that is a suffix of
    some phrase-end prefix, or a singleton for a new symbol."""
    s = list(sym)
    pos, ends, out = 0, [], []
    while pos < len(s):
        if s[pos] not in s[:pos]:
            ln = 1
        else:
            ln = max(
                l
                for l in range(1, len(s) - pos + 1)
                if any(e >= l and s[e - l : e] == s[pos : pos + l] for e in ends)
            )
        out.append(ln)
        pos += ln
        ends.append(pos)
    return out


def restricted_growth_strings(length: int, max_alphabet: int):
    """Texts in first-appearance canonical form (every text up to renaming)."""
    def rec(prefix, top):
        if len(prefix) == length:
            yield tuple(prefix)
            return
        for c in range(min(top + 1, max_alphabet)):
            yield from rec(prefix + [c], max(top, c + 1))
    yield from rec([], 0)
