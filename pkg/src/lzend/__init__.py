"""Greedy and optimal LZ-End parsings, with exact checks."""

from .parsing import Parsing, Phrase, ValidityReport, greedy_parse, phrase_ends, validate
from .search import candidate_lengths, optimal_parse, z_end
from .text import Text, canonicalize

__all__ = [
    "Parsing",
    "Phrase",
    "Text",
    "ValidityReport",
    "canonicalize",
    "candidate_lengths",
    "greedy_parse",
    "optimal_parse",
    "phrase_ends",
    "validate",
    "z_end",
]
