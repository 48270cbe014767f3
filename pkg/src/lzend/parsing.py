"""Parsings, the greedy LZ-End parser and the validity checker.

A parsing tiles a text into phrases. Each phrase is either a singleton
holding the leftmost occurrence of its symbol, or a copy whose content is a
suffix of the text ending at the end of some earlier phrase (its source end).
"""

from __future__ import annotations

import json
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np

from .errors import InputFormatError, ValidationError
from .text import Text

SINGLETON = "singleton"
COPY = "copy"


@dataclass(frozen=True)
class Phrase:
    start: int
    length: int
    kind: str = COPY
    source_end: int | None = None

    @property
    def end(self) -> int:
        return self.start + self.length - 1

    def to_record(self) -> dict:
        rec = {"start": self.start, "len": self.length, "kind": self.kind}
        if self.kind == COPY and self.source_end is not None:
            rec["source_end"] = self.source_end
        return rec


@dataclass(frozen=True)
class Parsing:
    phrases: tuple[Phrase, ...]

    @property
    def size(self) -> int:
        return len(self.phrases)

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(ph.length for ph in self.phrases)

    @property
    def starts(self) -> tuple[int, ...]:
        return tuple(ph.start for ph in self.phrases)

    def __len__(self) -> int:
        return len(self.phrases)

    def __iter__(self):
        return iter(self.phrases)

    def to_records(self) -> list[dict]:
        return [ph.to_record() for ph in self.phrases]

    def dumps(self) -> str:
        """Canonical serialization: a JSON array, one phrase object per line."""
        if not self.phrases:
            return "[]\n"
        lines = ",\n".join("  " + json.dumps(r) for r in self.to_records())
        return "[\n" + lines + "\n]\n"

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> Parsing:
        phrases = []
        for idx, rec in enumerate(records, 1):
            try:
                start, length, kind = rec["start"], rec["len"], rec["kind"]
            except (KeyError, TypeError):
                raise InputFormatError(f"phrase record {idx} lacks start/len/kind") from None
            source_end = rec.get("source_end")
            values = [start, length] + ([source_end] if source_end is not None else [])
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in values):
                raise InputFormatError(f"phrase record {idx} has non-integer fields")
            if kind not in (SINGLETON, COPY):
                raise InputFormatError(f"phrase record {idx} has unknown kind {kind!r}")
            phrases.append(Phrase(start, length, kind, source_end))
        return cls(tuple(phrases))

    @classmethod
    def loads(cls, content: str) -> Parsing:
        try:
            records = json.loads(content)
        except json.JSONDecodeError as exc:
            raise InputFormatError(f"parsing record is not valid JSON: {exc}") from None
        if not isinstance(records, list):
            raise InputFormatError("parsing record must be a JSON array")
        return cls.from_records(records)


def phrase_ends(parsing: Parsing | Sequence[int]) -> list[int]:
    """Cumulative 1-based end positions of the phrases.

    Accepts a parsing or a plain sequence of phrase lengths.

    >>> phrase_ends([1, 1, 2])
    [1, 2, 4]
    """
    lengths = parsing.lengths if isinstance(parsing, Parsing) else parsing
    out, total = [], 0
    for ln in lengths:
        total += ln
        out.append(total)
    return out


@dataclass(frozen=True)
class ValidityReport:
    accepted: bool
    phrase_index: int | None = None  # 1-based index of the first offending phrase
    rule: str | None = None
    detail: str = ""
    sources: tuple[int | None, ...] = ()  # witnessed source end per phrase

    def __bool__(self) -> bool:
        return self.accepted

    def describe(self) -> str:
        if self.accepted:
            return "accept"
        where = f"phrase {self.phrase_index}" if self.phrase_index else "parsing"
        return f"reject at {where} [{self.rule}]: {self.detail}"


def _is_source(sym: Sequence[int], start: int, length: int, end: int) -> bool:
    # 1-based: text[end-length+1 .. end] == text[start .. start+length-1]
    return end >= length and end < start and sym[end - length : end] == sym[start - 1 : start - 1 + length]


def find_source(text: Text, start: int, length: int, ends: Iterable[int]) -> int | None:
    """Smallest end in ``ends`` witnessing a copy of ``text[start..start+length-1]``."""
    sym = text.symbols
    for e in sorted(ends):
        if _is_source(sym, start, length, e):
            return e
    return None


def validate(text: Text, parsing: Parsing) -> ValidityReport:
    """Check tiling and the singleton/copy rule of every phrase.

    A copy without an explicit source end is accepted when any earlier
    phrase end witnesses it; the smallest witness is reported in ``sources``.
    """
    sym = text.symbols
    n = len(sym)
    ends: list[int] = []
    end_set: set[int] = set()
    sources: list[int | None] = []
    cursor = 1
    for idx, ph in enumerate(parsing.phrases, 1):

        def reject(rule: str, detail: str) -> ValidityReport:
            return ValidityReport(False, idx, rule, detail, tuple(sources))

        if ph.start != cursor:
            return reject("tiling", f"starts at {ph.start}, expected {cursor}")
        if ph.length < 1 or ph.end > n:
            return reject("tiling", f"length {ph.length} at {ph.start} does not fit a text of length {n}")
        if ph.kind == SINGLETON:
            if ph.length != 1:
                return reject("singleton", f"singleton of length {ph.length}")
            if not text.is_leftmost(ph.start):
                return reject("singleton", f"symbol at {ph.start} occurs earlier")
            sources.append(None)
        elif ph.kind == COPY:
            if ph.source_end is not None:
                e = ph.source_end
                if e not in end_set:
                    return reject("copy-source", f"source end {e} is not the end of an earlier phrase")
                if not _is_source(sym, ph.start, ph.length, e):
                    return reject(
                        "copy-source",
                        f"{_show(text, ph.start, ph.end)!r} is not a suffix of the text ending at {e}",
                    )
            else:
                e = next((e for e in ends if _is_source(sym, ph.start, ph.length, e)), None)
                if e is None:
                    prefix = _show(text, 1, ph.start - 1)
                    return reject(
                        "copy-source",
                        f"{_show(text, ph.start, ph.end)!r} is not a suffix of any phrase-end prefix of {prefix!r}",
                    )
            sources.append(e)
        else:
            return reject("kind", f"unknown phrase kind {ph.kind!r}")
        cursor = ph.end + 1
        ends.append(ph.end)
        end_set.add(ph.end)
    if cursor != n + 1:
        return ValidityReport(False, None, "tiling", f"phrases cover {cursor - 1} of {n} positions", tuple(sources))
    return ValidityReport(True, sources=tuple(sources))


def _show(text: Text, start: int, end: int, limit: int = 40) -> str:
    labels = [text.labels[s] for s in text.slice(start, end)]
    if all(len(x) == 1 for x in labels):
        out = "".join(labels)
    else:
        out = " ".join(labels)
    return out if len(out) <= limit else out[:limit] + "..."


def require_valid(text: Text, parsing: Parsing, error=ValidationError) -> Parsing:
    report = validate(text, parsing)
    if not report:
        raise error(report.describe())
    return parsing


def parsing_from_lengths(text: Text, lengths: Iterable[int]) -> Parsing:
    """Annotate a tiling: singletons at leftmost occurrences, otherwise a copy
    with the smallest witnessing source end. Raises ValidationError when no
    witness exists."""
    phrases = []
    ends: list[int] = []
    start = 1
    for idx, ln in enumerate(lengths, 1):
        if ln < 1 or start + ln - 1 > text.n:
            raise ValidationError(f"phrase {idx}: length {ln} at {start} does not tile the text")
        if ln == 1 and text.is_leftmost(start):
            phrases.append(Phrase(start, 1, SINGLETON))
        else:
            e = find_source(text, start, ln, ends)
            if e is None:
                raise ValidationError(f"phrase {idx}: no earlier phrase end sources {_show(text, start, start + ln - 1)!r}")
            phrases.append(Phrase(start, ln, COPY, e))
        start += ln
        ends.append(start - 1)
    if start != text.n + 1:
        raise ValidationError(f"lengths cover {start - 1} of {text.n} positions")
    return Parsing(tuple(phrases))


# Greedy parser. Candidate lengths are bounded by the longest prefix of the
# remaining suffix that occurs inside the already parsed prefix; within that
# bound, polynomial hashes filter (end, length) pairs and every accepted pair
# is confirmed by direct comparison.

_MOD = (1 << 31) - 1
_BASE = 1_000_003
_CHUNK = 1 << 21
SMALL_TEXT = 256  # below this length candidates are compared directly


def _hash_tables(sym: Sequence[int]) -> tuple[np.ndarray, np.ndarray]:
    n = len(sym)
    h = [0] * (n + 1)
    pw = [1] * (n + 1)
    acc, p = 0, 1
    for i, s in enumerate(sym):
        acc = (acc * _BASE + s + 1) % _MOD
        p = p * _BASE % _MOD
        h[i + 1] = acc
        pw[i + 1] = p
    return np.array(h, dtype=np.int64), np.array(pw, dtype=np.int64)


def _longest_earlier_factor(s: str, p: int) -> int:
    # occurrence of s[p:p+l] inside s[:p] is monotone in l; binary search it
    lo, hi = 1, min(len(s) - p, p)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if s.find(s[p : p + mid], 0, p) >= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def _longest_copy_direct(sym, s, p: int, ends: list[int]) -> tuple[int, int]:
    for ln in range(_longest_earlier_factor(s, p), 0, -1):
        seg = sym[p : p + ln]
        for e in ends:
            if e >= ln and sym[e - ln : e] == seg:
                return ln, e
    return 0, 0


def _longest_copy(sym, s, H, PW, p: int, ends: np.ndarray) -> tuple[int, int]:
    """Longest length and smallest source end for a copy starting at 0-based ``p``."""
    bound = _longest_earlier_factor(s, p)
    ls = np.arange(1, bound + 1)
    target = (H[p + ls] - H[p] * PW[ls]) % _MOD
    best_len, best_end = 0, 0
    step = max(1, _CHUNK // bound)
    for lo in range(0, len(ends), step):
        E = ends[lo : lo + step, None]
        starts = E - ls[None, :]
        ok = starts >= 0
        src = (H[E] - H[np.where(ok, starts, 0)] * PW[ls]) % _MOD
        hit = ok & (src == target)
        cols = np.flatnonzero(hit.any(axis=0))
        for c in cols[::-1]:
            ln = int(c) + 1
            if ln <= best_len:
                break  # earlier chunks hold smaller ends
            e = next((int(E[r, 0]) for r in np.flatnonzero(hit[:, c])
                      if sym[int(E[r, 0]) - ln : int(E[r, 0])] == sym[p : p + ln]), None)
            if e is not None:
                best_len, best_end = ln, e
                break
    return best_len, best_end


def greedy_parse(text: Text, small_text: int = SMALL_TEXT) -> Parsing:
    """The greedy LZ-End parsing: every copy phrase is as long as possible.

    Among several source ends for the chosen phrase the smallest is recorded.
    Texts shorter than ``small_text`` skip the hashing filter.
    """
    sym = text.symbols
    n = len(sym)
    if n == 0:
        return Parsing(())
    s = "".join(map(chr, sym))
    direct = n < small_text
    if not direct:
        H, PW = _hash_tables(sym)
    phrases: list[Phrase] = []
    ends: list[int] = []
    seen: set[int] = set()
    p = 0
    while p < n:
        if sym[p] not in seen:
            phrases.append(Phrase(p + 1, 1, SINGLETON))
            ln = 1
        else:
            if direct:
                ln, e = _longest_copy_direct(sym, s, p, ends)
            else:
                ln, e = _longest_copy(sym, s, H, PW, p, np.array(ends, dtype=np.int64))
            assert ln >= 1, "a repeated symbol always has a length-1 source"
            phrases.append(Phrase(p + 1, ln, COPY, e))
        seen.update(sym[p : p + ln])
        p += ln
        ends.append(p)
    return Parsing(tuple(phrases))
