"""Texts over a dense integer alphabet."""

from __future__ import annotations

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field

from .errors import InputFormatError


@dataclass(frozen=True)
class Text:
    """An immutable token sequence.

    ``symbols`` are dense ids in first-appearance order, so every token is
    below ``alphabet_size``. ``labels[t]`` is the display form of token ``t``.
    Positions in every public interface are 1-based.
    """

    symbols: tuple[int, ...]
    labels: tuple[str, ...] = ()
    origin: str | None = None
    _first: tuple[int, ...] = field(default=(), repr=False, compare=False)

    def __post_init__(self):
        first: dict[int, int] = {}
        for i, s in enumerate(self.symbols):
            if s < 0:
                raise InputFormatError(f"negative token {s} at position {i + 1}")
            first.setdefault(s, i)
        size = max(first, default=-1) + 1
        if len(first) != size:
            raise InputFormatError("symbols are not a dense 0-based alphabet")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(s) for s in range(size)))
        elif len(self.labels) < size:
            raise InputFormatError("fewer labels than alphabet symbols")
        object.__setattr__(self, "_first", tuple(first[s] for s in range(size)))

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, pos: int) -> int:
        """Symbol at 1-based position ``pos``."""
        if not 1 <= pos <= len(self.symbols):
            raise IndexError(pos)
        return self.symbols[pos - 1]

    @property
    def n(self) -> int:
        return len(self.symbols)

    @property
    def alphabet_size(self) -> int:
        return len(self._first)

    def is_leftmost(self, pos: int) -> bool:
        """True when 1-based ``pos`` is the first occurrence of its symbol."""
        return self._first[self.symbols[pos - 1]] == pos - 1

    def leftmost_positions(self) -> list[int]:
        return sorted(p + 1 for p in self._first)

    def render(self, sep: str = " ") -> str:
        return sep.join(self.labels[s] for s in self.symbols)

    def slice(self, start: int, end: int) -> tuple[int, ...]:
        """Symbols at 1-based inclusive span ``[start, end]``."""
        return self.symbols[start - 1 : end]


def _from_keys(keys: Iterable[Hashable], render, origin: str | None) -> Text:
    ids: dict[Hashable, int] = {}
    symbols = []
    labels = []
    for key in keys:
        t = ids.get(key)
        if t is None:
            t = ids[key] = len(ids)
            labels.append(render(key))
        symbols.append(t)
    return Text(tuple(symbols), tuple(labels), origin)


def _render_byte(b: int) -> str:
    c = chr(b)
    return c if c.isprintable() and not c.isspace() else f"\\x{b:02x}"


def canonicalize(raw: bytes | str | Sequence[int], origin: str | None = None) -> Text:
    """Remap raw input to a dense alphabet in order of first appearance.

    ``bytes`` and ``str`` inputs treat each byte or character as a symbol;
    any other sequence is taken as a list of non-negative integer tokens.

    >>> canonicalize(b"aab").symbols
    (0, 0, 1)
    >>> canonicalize([7, 7, 9, 7]).symbols
    (0, 0, 1, 0)
    """
    if isinstance(raw, (bytes, bytearray)):
        return _from_keys(raw, _render_byte, origin or "bytes")
    if isinstance(raw, str):
        return _from_keys(raw, str, origin or "string")
    tokens = list(raw)
    for i, t in enumerate(tokens):
        if isinstance(t, bool) or not isinstance(t, int) or t < 0:
            raise InputFormatError(f"token {t!r} at position {i + 1} is not a non-negative integer")
    return _from_keys(tokens, str, origin or "tokens")


def from_labels(labels: Sequence[str], origin: str | None = None) -> Text:
    """Build a text whose tokens are identified and displayed by label."""
    return _from_keys(labels, str, origin)


def parse_tokens(content: str) -> list[int]:
    """Parse whitespace-separated non-negative decimal integers."""
    tokens = []
    for i, word in enumerate(content.split()):
        if not word.isdigit():
            raise InputFormatError(f"token {i + 1} ({word!r}) is not a non-negative decimal integer")
        tokens.append(int(word))
    return tokens


def read_text(path: str, mode: str = "bytes") -> Text:
    """Load a text file in ``bytes`` mode (one symbol per byte, a single
    trailing line terminator dropped) or ``tokens`` mode."""
    if mode == "tokens":
        with open(path, encoding="ascii", errors="replace") as fh:
            return canonicalize(parse_tokens(fh.read()), origin=f"token file {path}")
    if mode != "bytes":
        raise InputFormatError(f"unknown text mode {mode!r}")
    with open(path, "rb") as fh:
        data = fh.read()
    if data.endswith(b"\r\n"):
        data = data[:-2]
    elif data.endswith(b"\n"):
        data = data[:-1]
    return canonicalize(data, origin=f"bytes {path}")


def write_tokens(text: Text, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(" ".join(map(str, text.symbols)))
        fh.write("\n")
