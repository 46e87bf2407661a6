"""Finite words over coding alphabets and the periodicity toolkit on them.

Symbols are non-negative integers; the spacer symbol is ``SPACER`` (-1).
Long words produced by block expansion travel internally in *packed* form,
a ``str`` with one character per symbol (``chr(symbol + 1)``, spacer is
``"\\x00"``), so slicing and comparison run at C speed.
"""
from __future__ import annotations

from itertools import groupby
from typing import Iterable, Iterator, Sequence

SPACER = -1
PACKED_SPACER = "\x00"
_MAX_PACKED_SYMBOL = 0x10FFFE - 1


class Word(tuple):
    """Immutable symbol sequence with spacer run-length views."""

    def __new__(cls, symbols: Iterable[int] = ()):
        return super().__new__(cls, symbols)

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Read ``0ss0s`` (compact) or ``0,12,s`` (comma-separated) notation."""
        text = text.strip()
        if not text:
            return cls()
        if "," in text:
            items = [t.strip() for t in text.split(",") if t.strip()]
        else:
            items = list(text)
        return cls(SPACER if t == "s" else int(t) for t in items)

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[int, int]]) -> "Word":
        out: list[int] = []
        for symbol, count in runs:
            out.extend([symbol] * count)
        return cls(out)

    def runs(self) -> list[tuple[int, int]]:
        """Run-length form ``[(symbol, count), ...]``; spacer runs collapse."""
        return [(sym, len(list(grp))) for sym, grp in groupby(self)]

    def __getitem__(self, item):
        result = super().__getitem__(item)
        if isinstance(item, slice):
            return Word(result)
        return result

    def __add__(self, other) -> "Word":
        return Word(tuple(self) + tuple(other))

    def __mul__(self, n: int) -> "Word":
        return Word(tuple(self) * n)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def format_word(word: Sequence[int], alphabet_size: int | None = None) -> str:
    """Render with ``s`` for spacers.

    Symbols are concatenated when the alphabet has at most 10 letters
    (``alphabet_size`` counts the spacer) and comma-separated otherwise.
    Without an alphabet size the decision is made from the symbols present.
    """
    if alphabet_size is None:
        compact = all(sym < 10 for sym in word)
    else:
        compact = alphabet_size <= 10
    items = ("s" if sym == SPACER else str(sym) for sym in word)
    return ("" if compact else ",").join(items)


def pack(word: Iterable[int]) -> str:
    try:
        return "".join(map(chr, (sym + 1 for sym in word)))
    except (ValueError, OverflowError) as exc:
        raise ValueError("symbol out of packable range") from exc


def unpack(packed: str) -> Word:
    return Word(ord(ch) - 1 for ch in packed)


def packed_range(start: int, stop: int) -> str:
    """Packed form of the consecutive symbols ``start .. stop-1``."""
    if stop - 1 > _MAX_PACKED_SYMBOL:
        raise ValueError("alphabet too large for packed words")
    return "".join(map(chr, range(start + 1, stop + 1)))


# --- failure function machinery -------------------------------------------

def failure_function(word: Sequence) -> list[int]:
    """``f[i]`` = length of the longest proper border of ``word[:i]``; ``f[0] = -1``."""
    n = len(word)
    f = [0] * (n + 1)
    f[0] = -1
    k = -1
    for i in range(n):
        while k >= 0 and word[k] != word[i]:
            k = f[k]
        k += 1
        f[i + 1] = k
    return f


def least_period(word: Sequence) -> int:
    """Smallest ``p >= 1`` with ``word[i] == word[i + p]`` wherever both exist."""
    if len(word) == 0:
        raise ValueError("least_period of the empty word")
    return len(word) - failure_function(word)[-1]


def certifies_period(word: Sequence, period: int) -> bool:
    """A finite window only vouches for a period it repeats at least twice."""
    return len(word) >= 2 * period


def first_break(word: Sequence, period: int) -> int | None:
    """First index ``i`` with ``word[i] != word[i + period]``, or None."""
    for i in range(len(word) - period):
        if word[i] != word[i + period]:
            return i
    return None


def primitive_root(word: Sequence) -> tuple[Sequence, int]:
    """Shortest ``w`` and maximal ``e`` with ``word == w * e``."""
    if len(word) == 0:
        raise ValueError("primitive_root of the empty word")
    n = len(word)
    p = least_period(word)
    if n % p:
        p = n
    return word[:p], n // p


def commute(u: Sequence, v: Sequence) -> bool:
    """``uv == vu``; cross-checked against equality of primitive roots."""
    uv = tuple(u) + tuple(v)
    vu = tuple(v) + tuple(u)
    direct = uv == vu
    if len(u) == 0 or len(v) == 0:
        return direct
    via_roots = tuple(primitive_root(u)[0]) == tuple(primitive_root(v)[0])
    assert direct == via_roots, (u, v)
    return direct


class StreamMatcher:
    """Knuth-Morris-Pratt matcher fed one chunk at a time."""

    def __init__(self, pattern: Sequence):
        if len(pattern) == 0:
            raise ValueError("cannot search for the empty word")
        self.pattern = pattern
        self.fail = failure_function(pattern)
        self.matched = 0
        self.consumed = 0

    def feed(self, chunk: Iterable) -> Iterator[int]:
        """Yield start positions of matches completed inside ``chunk``."""
        pat, fail, m = self.pattern, self.fail, len(self.pattern)
        k = self.matched
        pos = self.consumed
        for ch in chunk:
            while k >= 0 and (k == m or pat[k] != ch):
                k = fail[k]
            k += 1
            pos += 1
            if k == m:
                yield pos - m
        self.matched = k
        self.consumed = pos


def find_all(pattern: Sequence, chunks: Iterable[Iterable]) -> list[int]:
    matcher = StreamMatcher(pattern)
    hits: list[int] = []
    for chunk in chunks:
        hits.extend(matcher.feed(chunk))
    return hits


def longest_run(word: Sequence, symbol) -> int:
    best = run = 0
    for ch in word:
        run = run + 1 if ch == symbol else 0
        if run > best:
            best = run
    return best
