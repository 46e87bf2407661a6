"""The Vershik successor on finite path prefixes and k-codings of orbits.

A prefix of depth ``m`` is stored as the range vertex and order value of
its edges at levels ``1..m``.  Paths compare by the order value at the
deepest edge where they differ, so the successor increments the shallowest
non-maximal edge and resets everything above it to minimal.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator

from .blocks import basic_block, expand_packed
from .diagram import ContractError, DiagramError, OrderedDiagram
from .words import PACKED_SPACER, SPACER, Word, unpack


@dataclass(frozen=True)
class PathPrefix:
    diagram: OrderedDiagram = field(compare=False, repr=False)
    vertices: tuple[int, ...]
    xis: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) != len(self.xis):
            raise DiagramError("vertex and order sequences differ in length")
        d = self.diagram
        below = 1
        for level, (v, xi) in enumerate(zip(self.vertices, self.xis), start=1):
            srcs = d.inputs(level, v)
            if not 1 <= xi <= len(srcs):
                raise DiagramError(f"level {level}: order value {xi} outside 1..{len(srcs)}")
            if srcs[xi - 1] != below:
                raise DiagramError(f"level {level}: edge does not start at vertex {below}")
            below = v

    @property
    def depth(self) -> int:
        return len(self.vertices)

    @property
    def on_spacer(self) -> bool:
        d = self.diagram
        return all(v == d.spacer(n) for n, v in enumerate(self.vertices, start=1))

    @property
    def is_maximal(self) -> bool:
        d = self.diagram
        return all(xi == len(d.inputs(n, v))
                   for n, (v, xi) in enumerate(zip(self.vertices, self.xis), start=1))

    def symbol(self, k: int) -> int:
        """``alpha_k``: label of the first ``k`` edges."""
        if not 1 <= k <= self.depth:
            raise ContractError(f"need 1 <= k <= depth {self.depth}, got {k}")
        d = self.diagram
        vk = self.vertices[k - 1]
        if vk == d.spacer(k):
            return SPACER
        rank = 0
        for n in range(1, k + 1):
            dims = d.dims(n - 1)
            srcs = d.inputs(n, self.vertices[n - 1])
            rank += sum(dims[s - 1] for s in srcs[: self.xis[n - 1] - 1])
        return d.label_offsets(k)[vk - 1] + rank

    def __str__(self) -> str:
        return " ".join(f"{v}:{xi}" for v, xi in zip(self.vertices, self.xis))


@dataclass(frozen=True)
class CarryOverflow:
    prefix: PathPrefix


@dataclass(frozen=True)
class FixedPoint:
    prefix: PathPrefix


def _minimal_below(diagram: OrderedDiagram, n: int, j: int) -> list[int]:
    """Vertices at levels ``1..n`` of the minimal path into ``v(n, j)``."""
    out = [j]
    for level in range(n, 1, -1):
        out.append(diagram.minimal_source(level, out[-1]))
    out.reverse()
    return out


def minimal_prefix(diagram: OrderedDiagram, n: int, j: int) -> PathPrefix:
    if n < 1 or not 1 <= j <= diagram.spacer(n):
        raise ContractError(f"no vertex {j} at level {n}")
    return PathPrefix(diagram, tuple(_minimal_below(diagram, n, j)), (1,) * n)


def spacer_prefix(diagram: OrderedDiagram, n: int) -> PathPrefix:
    return PathPrefix(diagram, tuple(diagram.spacer(i) for i in range(1, n + 1)), (1,) * n)


def successor(prefix: PathPrefix) -> PathPrefix | CarryOverflow | FixedPoint:
    if prefix.on_spacer:
        return FixedPoint(prefix)
    d = prefix.diagram
    for i, (v, xi) in enumerate(zip(prefix.vertices, prefix.xis)):
        level = i + 1
        srcs = d.inputs(level, v)
        if xi < len(srcs):
            vertices = list(prefix.vertices)
            xis = list(prefix.xis)
            xis[i] = xi + 1
            if level > 1:
                vertices[: level - 1] = _minimal_below(d, level - 1, srcs[xi])
                xis[: level - 1] = [1] * (level - 1)
            return PathPrefix(d, tuple(vertices), tuple(xis))
    return CarryOverflow(prefix)


def deepen(prefix: PathPrefix) -> PathPrefix | None:
    """Extend by the least edge ``(xi, target)`` leaving the top vertex; None if no level exists."""
    d = prefix.diagram
    n = prefix.depth + 1
    if not d.has_level(n):
        return None
    top = prefix.vertices[-1] if prefix.vertices else 1
    best = None
    for j, srcs in enumerate(d.level(n).inputs, start=1):
        for xi, s in enumerate(srcs, start=1):
            if s == top and (best is None or (xi, j) < best):
                best = (xi, j)
    if best is None:
        raise DiagramError(f"vertex {top} at level {n - 1} has no outgoing edge")
    xi, j = best
    return PathPrefix(d, prefix.vertices + (j,), prefix.xis + (xi,))


@dataclass(frozen=True)
class OrbitCoding:
    origin: PathPrefix
    k: int
    word: Word
    reason: str  # "length" | "carry-overflow" | "fixed-point"
    overflow_depth: int | None = None

    @property
    def steps(self) -> int:
        return len(self.word)


def iter_orbit(start: PathPrefix) -> Iterator[PathPrefix | CarryOverflow | FixedPoint]:
    """Visited prefixes, deepening on carries; ends with the terminal outcome if any."""
    x = start
    d = start.diagram
    while True:
        yield x
        nxt = successor(x)
        seen = set()
        while isinstance(nxt, CarryOverflow):
            deeper = deepen(nxt.prefix)
            if deeper is None:
                yield nxt
                return
            # a repeated (level structure, top vertex) state means the carry never settles
            state = (d.resolve(deeper.depth), deeper.vertices[-1])
            if d.is_stationary and deeper.depth > d.explicit_depth and state in seen:
                yield CarryOverflow(deeper)
                return
            seen.add(state)
            nxt = successor(deeper)
        if isinstance(nxt, FixedPoint):
            yield nxt
            return
        x = nxt


def code_orbit(diagram: OrderedDiagram, start: PathPrefix, k: int, length: int) -> OrbitCoding:
    """First ``length`` symbols of ``phi_k`` along the orbit of ``start``."""
    if not 1 <= k <= start.depth:
        raise ContractError(f"need 1 <= k <= depth {start.depth}, got {k}")
    if length < 0:
        raise ContractError("negative length")
    if start.on_spacer:
        return OrbitCoding(start, k, Word((SPACER,) * length), "fixed-point")
    out: list[int] = []
    orbit = iter_orbit(start)
    while len(out) < length:
        item = next(orbit)
        if isinstance(item, CarryOverflow):
            return OrbitCoding(start, k, Word(out), "carry-overflow", item.prefix.depth)
        if isinstance(item, FixedPoint):
            out.extend([SPACER] * (length - len(out)))
            return OrbitCoding(start, k, Word(out), "fixed-point")
        out.append(item.symbol(k))
    return OrbitCoding(start, k, Word(out), "length")


# --- minimal paths -------------------------------------------------------------

@dataclass(frozen=True)
class Thread:
    """Vertices of a minimal infinite path, one per level.

    ``vertices[n - 1]`` is the vertex at level ``n`` for explicit levels;
    beyond them the last ``span`` entries repeat.
    """

    vertices: tuple[int, ...]
    span: int | None = None

    def vertex(self, n: int) -> int:
        T = len(self.vertices)
        if n <= T:
            return self.vertices[n - 1]
        if self.span is None:
            raise ContractError(f"thread only known up to level {T}")
        base = T - self.span
        return self.vertices[base + (n - base - 1) % self.span]

    @property
    def known_depth(self) -> int | None:
        return None if self.span is not None else len(self.vertices)


@dataclass(frozen=True)
class MinimalCensus:
    count: int
    threads: tuple[Thread, ...]
    exact: bool
    horizon: int

    @property
    def unique(self) -> bool:
        return self.count == 1


def _descend(diagram: OrderedDiagram, top: int, j: int) -> tuple[int, ...]:
    return tuple(_minimal_below(diagram, top, j))


def minimal_path_census(diagram: OrderedDiagram, horizon: int = 10) -> MinimalCensus:
    """Count all-minimal infinite paths other than the spacer path."""
    if horizon < 2:
        raise ContractError("census needs horizon >= 2")
    if diagram.is_stationary:
        m, L = diagram.stationary_from, diagram.explicit_depth
        period = L - m + 1
        anchor = m - 1 if m > 1 else L
        K = diagram.K(anchor)

        def f(j: int) -> int:
            # one repeating block of levels, walked downward along minimal edges
            v = j
            for level in range(anchor + period, anchor, -1):
                v = diagram.minimal_source(level, v)
            return v

        fmap = {j: f(j) for j in range(1, K + 1)}
        periodic = []
        for j in range(1, K + 1):
            x = fmap[j]
            for _ in range(K):
                if x == j:
                    periodic.append(j)
                    break
                x = fmap[x]
        threads = []
        for x in periodic:
            cycle_len, y = 1, fmap[x]
            while y != x:
                y, cycle_len = fmap[y], cycle_len + 1
            top = anchor + period * cycle_len
            verts = _descend(diagram, top, x)
            threads.append(Thread(verts, period * cycle_len))
        return MinimalCensus(len(threads), tuple(threads), True, horizon)
    H = min(horizon, diagram.explicit_depth)
    low = max(1, H // 2)
    seen: dict[int, tuple[int, ...]] = {}
    for j in range(1, diagram.K(H) + 1):
        verts = _descend(diagram, H, j)
        seen.setdefault(verts[low - 1], verts)
    threads = tuple(Thread(v) for _, v in sorted(seen.items()))
    return MinimalCensus(len(threads), threads, False, H)


def minimal_orbit_prefix(diagram: OrderedDiagram, thread: Thread, k: int, length: int) -> tuple[str, bool]:
    """Packed ``phi_k`` prefix of the minimal path along ``thread``.

    Uses the shallowest block on the thread that is long enough; the second
    value is False when the thread runs out of levels first, or when its
    blocks stop growing for good.
    """
    n = k
    known = thread.known_depth
    # lengths along a thread never shrink; flat over one joint period of the
    # diagram and the thread past both explicit parts means flat forever
    settled = max(diagram.explicit_depth, len(thread.vertices))
    joint = math.lcm(diagram.explicit_depth - (diagram.stationary_from or 1) + 1, thread.span or 1)
    flat = 0
    size = diagram.dims(n)[thread.vertex(n) - 1]
    while size < length and (known is None or n < known):
        n += 1
        grown = diagram.dims(n)[thread.vertex(n) - 1]
        flat = flat + 1 if grown == size and n > settled else 0
        size = grown
        if flat >= joint:
            break
    block = basic_block(diagram, n, thread.vertex(n), k)
    take = min(length, block.length)
    return expand_packed(block, 0, take), take == length


def minimal_orbit_word(diagram: OrderedDiagram, thread: Thread, k: int, length: int) -> Word:
    return unpack(minimal_orbit_prefix(diagram, thread, k, length)[0])


# --- Lemma-style transitivity conditions -----------------------------------------

@dataclass(frozen=True)
class TransitiveReport:
    horizon: int
    semi_levels: tuple[int, ...]
    spacer_branching_levels: tuple[int, ...]
    semi_infinitely_often: bool | None
    spacer_infinitely_often: bool | None

    @property
    def holds(self) -> bool | None:
        a, b = self.semi_infinitely_often, self.spacer_infinitely_often
        if a is None or b is None:
            return None
        return a or b


def transitive_conditions(diagram: OrderedDiagram, horizon: int = 10) -> TransitiveReport:
    """(a) levels n with level n+1 semi n-periodic; (b) levels whose spacer feeds more than one edge."""
    from .analysis import level_token_semi_periodic

    if horizon < 2:
        raise ContractError("horizon must be at least 2")
    H = horizon if diagram.is_stationary else min(horizon, diagram.explicit_depth - 1)
    semi = tuple(n for n in range(1, H + 1) if level_token_semi_periodic(diagram, n + 1))
    branching = tuple(n for n in range(1, H + 1) if diagram.out_degree(n, diagram.spacer(n)) > 1)
    a_inf = b_inf = None
    if diagram.is_stationary:
        m, L = diagram.stationary_from, diagram.explicit_depth
        rep = range(max(m, 2), max(m, 2) + (L - m + 1))
        a_inf = any(level_token_semi_periodic(diagram, n) for n in rep)
        b_inf = any(diagram.out_degree(n - 1, diagram.spacer(n - 1)) > 1 for n in rep)
    return TransitiveReport(H, semi, branching, a_inf, b_inf)


__all__ = [
    "PathPrefix", "CarryOverflow", "FixedPoint", "OrbitCoding", "Thread", "MinimalCensus",
    "TransitiveReport", "minimal_prefix", "spacer_prefix", "successor", "deepen", "code_orbit",
    "iter_orbit", "minimal_path_census", "minimal_orbit_prefix", "minimal_orbit_word",
    "transitive_conditions", "PACKED_SPACER",
]
