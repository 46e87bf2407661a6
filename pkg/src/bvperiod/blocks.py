"""Basic blocks ``B^(k)(n, j)`` as a shared DAG over the recursion.

Each handle stores its children once, the spacer run after each child and
its exact length.  Short handles (and all seed handles) also carry their
packed expansion so that streaming a long prefix reduces to joining a few
thousand cached strings.
"""
from __future__ import annotations

import sys
import threading
from bisect import bisect_right
from dataclasses import dataclass
from typing import Iterator, Sequence

from .diagram import ContractError, OrderedDiagram
from .words import PACKED_SPACER, SPACER, Word, find_all, pack, packed_range, unpack

FLAT_LIMIT = 4096
_lock = threading.Lock()


@dataclass(frozen=True)
class Alphabet:
    """Labels of the root segments of length ``k``."""

    k: int
    dims: tuple[int, ...]
    offsets: tuple[int, ...]

    @property
    def size(self) -> int:
        """``d_k``: all segments, the spacer segment included."""
        return sum(self.dims)

    def symbols(self, j: int) -> range:
        return range(self.offsets[j - 1], self.offsets[j - 1] + self.dims[j - 1])

    def locate(self, symbol: int) -> tuple[int, int]:
        """``(vertex, rank)`` of the segment carrying ``symbol``."""
        if symbol == SPACER:
            return len(self.dims), 0
        if not 0 <= symbol < self.size - 1:
            raise ValueError(f"symbol {symbol} not in A_{self.k}")
        j = bisect_right(self.offsets, symbol)
        return j, symbol - self.offsets[j - 1]


def alphabet(diagram: OrderedDiagram, k: int) -> Alphabet:
    return Alphabet(k, diagram.dims(k), diagram.label_offsets(k))


@dataclass(frozen=True, eq=False)
class BlockHandle:
    n: int
    j: int
    k: int
    length: int
    parts: tuple[tuple["BlockHandle", int], ...]
    starts: tuple[int, ...]
    flat: str | None
    alphabet_size: int
    is_spacer: bool = False

    def __len__(self) -> int:
        return self.length

    def __repr__(self) -> str:
        return f"BlockHandle(n={self.n}, j={self.j}, k={self.k}, length={self.length})"


def _spacer_handle(n: int, j: int, k: int, size: int) -> BlockHandle:
    return BlockHandle(n, j, k, 1, (), (), PACKED_SPACER, size, True)


def _level_handles(diagram: OrderedDiagram, k: int, n: int) -> tuple[BlockHandle, ...]:
    key = ("blocks", k)
    table = diagram._cache.get(key)
    if table is None or len(table) <= n - k:
        with _lock:
            table = diagram._cache.setdefault(key, [])
            size = diagram.alphabet_size(k)
            while len(table) <= n - k:
                level = k + len(table)
                K = diagram.K(level)
                if level == k:
                    alpha = alphabet(diagram, k)
                    handles = [
                        BlockHandle(k, j, k, alpha.dims[j - 1], (), (),
                                    packed_range(alpha.offsets[j - 1],
                                                 alpha.offsets[j - 1] + alpha.dims[j - 1]),
                                    size)
                        for j in range(1, K + 1)
                    ]
                else:
                    below = table[-1]
                    handles = [_compose(diagram, level, j, k, below, size) for j in range(1, K + 1)]
                handles.append(_spacer_handle(level, K + 1, k, size))
                table.append(tuple(handles))
    return table[n - k]


def _compose(diagram, n, j, k, below, size) -> BlockHandle:
    parts, starts, pos = [], [], 0
    for g, a in diagram.recursion_row(n, j):
        child = below[g - 1]
        parts.append((child, a))
        starts.append(pos)
        pos += child.length + a
    flat = None
    if pos <= FLAT_LIMIT:
        flat = "".join(child.flat + PACKED_SPACER * a for child, a in parts)
    return BlockHandle(n, j, k, pos, tuple(parts), tuple(starts), flat, size)


def basic_block(diagram: OrderedDiagram, n: int, j: int, k: int = 1) -> BlockHandle:
    """Handle for ``B^(k)(n, j)``."""
    if k < 1 or k > n:
        raise ContractError(f"need 1 <= k <= n, got k={k}, n={n}")
    K = diagram.K(n)
    if not 1 <= j <= K + 1:
        raise ContractError(f"vertex {j} outside level {n}")
    return _level_handles(diagram, k, n)[j - 1]


def level_blocks(diagram: OrderedDiagram, n: int, k: int = 1) -> tuple[BlockHandle, ...]:
    """All non-spacer handles of level ``n``."""
    if k < 1 or k > n:
        raise ContractError(f"need 1 <= k <= n, got k={k}, n={n}")
    return _level_handles(diagram, k, n)[:-1]


def iter_packed(handle: BlockHandle, offset: int = 0, length: int | None = None) -> Iterator[str]:
    """Stream the packed expansion of a window without materializing the block."""
    if length is None:
        length = handle.length - offset
    if offset < 0 or length < 0 or offset + length > handle.length:
        raise ContractError(
            f"window [{offset}, {offset + length}) outside block of length {handle.length}"
        )
    stack: list = [(handle, offset, length)]
    while stack:
        node, off, ln = stack.pop()
        if ln == 0:
            continue
        if node is None:
            yield from _spacer_chunks(ln)
            continue
        if node.flat is not None:
            yield node.flat[off:off + ln]
            continue
        end = off + ln
        pending = []
        idx = max(bisect_right(node.starts, off) - 1, 0)
        for (child, a), start in zip(node.parts[idx:], node.starts[idx:]):
            if start >= end:
                break
            c_lo, c_hi = max(off, start), min(end, start + child.length)
            if c_lo < c_hi:
                pending.append((child, c_lo - start, c_hi - c_lo))
            s_lo, s_hi = max(off, start + child.length), min(end, start + child.length + a)
            if s_lo < s_hi:
                pending.append((None, 0, s_hi - s_lo))
        stack.extend(reversed(pending))


def _spacer_chunks(count: int) -> Iterator[str]:
    while count > 0:
        step = min(count, FLAT_LIMIT)
        yield PACKED_SPACER * step
        count -= step


def expand_packed(handle: BlockHandle, offset: int = 0, length: int | None = None) -> str:
    if length is None:
        length = handle.length - offset
    if length > sys.maxsize:
        raise ContractError("window too long to address")
    return "".join(iter_packed(handle, offset, length))


def expand(handle: BlockHandle, offset: int = 0, length: int | None = None) -> Word:
    """The exact subword ``[offset, offset + length)`` of the expansion."""
    return unpack(expand_packed(handle, offset, length))


def all_occurrences(outer: BlockHandle, word: Sequence[int] | str) -> list[int]:
    """Every start position of ``word`` in the expansion of ``outer``."""
    pattern = word if isinstance(word, str) else pack(word)
    if not pattern:
        raise ContractError("cannot search for the empty word")
    if len(pattern) > outer.length:
        return []
    return find_all(pattern, iter_packed(outer))


def explicit_positions(diagram: OrderedDiagram, n: int, j: int, m: int, i: int, k: int = 1) -> list[int]:
    """Positions in ``B^(k)(m, i)`` where the orbit of the minimal path enters ``C(n, j)``.

    Computed by descending the recursion; never by matching strings.  The
    answer does not depend on ``k`` beyond the precondition ``k <= n``.
    """
    if not (1 <= k <= n <= m):
        raise ContractError(f"need k <= n <= m, got k={k}, n={n}, m={m}")
    target_spacer = j == diagram.spacer(n)
    memo: dict[tuple[int, int], list[int]] = {}

    def positions(level: int, vertex: int) -> list[int]:
        if level == n:
            return [0] if vertex == j else []
        if vertex == diagram.spacer(level):
            return [0] if target_spacer else []
        key = (level, vertex)
        if key in memo:
            return memo[key]
        dims = diagram.dims(level - 1)
        spacer_below = diagram.spacer(level - 1)
        out: list[int] = []
        pos = 0
        for g, a in diagram.recursion_row(level, vertex):
            out.extend(pos + p for p in positions(level - 1, g))
            pos += dims[g - 1]
            if a:
                if target_spacer:
                    inner = positions(level - 1, spacer_below)
                    out.extend(pos + r + p for r in range(a) for p in inner)
                pos += a
        memo[key] = out
        return out

    return positions(m, i)


def vertex_coding(diagram: OrderedDiagram, n: int, j: int, k: int) -> tuple[int, ...]:
    """Level-``k`` vertices visited by the explicit appearances inside ``B(n, j)``."""
    if k < 1 or k > n:
        raise ContractError(f"need 1 <= k <= n, got k={k}, n={n}")
    memo: dict[tuple[int, int], tuple[int, ...]] = {}
    spacer_k = diagram.spacer(k)

    def coding(level: int, vertex: int) -> tuple[int, ...]:
        if level == k:
            return (vertex,)
        if vertex == diagram.spacer(level):
            return (spacer_k,)
        key = (level, vertex)
        if key not in memo:
            out: list[int] = []
            for g, a in diagram.recursion_row(level, vertex):
                out.extend(coding(level - 1, g))
                out.extend([spacer_k] * a)
            memo[key] = tuple(out)
        return memo[key]

    return coding(n, j)


def factor_table(diagram: OrderedDiagram, k: int, k_prime: int) -> tuple[int, ...]:
    """``table[a]`` = symbol of A_{k'} for the length-k' initial segment of symbol ``a``."""
    if not 1 <= k_prime <= k:
        raise ContractError(f"need 1 <= k' <= k, got k={k}, k'={k_prime}")
    key = ("factor", k, k_prime)
    cached = diagram._cache.get(key)
    if cached is not None:
        return cached
    source = alphabet(diagram, k)
    target_offsets = diagram.label_offsets(k_prime)
    out = []
    for symbol in range(source.size - 1):
        vertex, rank = source.locate(symbol)
        level = k
        while level > k_prime and vertex != diagram.spacer(level):
            dims = diagram.dims(level - 1)
            for src in diagram.inputs(level, vertex):
                if rank < dims[src - 1]:
                    vertex = src
                    break
                rank -= dims[src - 1]
            level -= 1
        if vertex == diagram.spacer(level):
            out.append(SPACER)
        else:
            out.append(target_offsets[vertex - 1] + rank)
    table = tuple(out)
    diagram._cache[key] = table
    return table


def factor_map(diagram: OrderedDiagram, word: Sequence[int], k: int, k_prime: int) -> Word:
    """Apply the one-block map from the k-coding to the k'-coding."""
    if k_prime == k:
        return Word(word)
    table = factor_table(diagram, k, k_prime)
    return Word(SPACER if a == SPACER else table[a] for a in word)


def factor_map_packed(diagram: OrderedDiagram, packed: str, k: int, k_prime: int) -> str:
    if k_prime == k:
        return packed
    table = factor_table(diagram, k, k_prime)
    trans = {a + 1: b + 1 for a, b in enumerate(table)}
    return packed.translate(trans)
