"""Ordered Bratteli diagrams with a distinguished spacer vertex per level.

Levels are numbered from the root (level 0).  Level ``n >= 1`` has vertices
``1 .. K_n + 1``; the last one is the spacer vertex.  A level is stored as
the ordered list of source vertices of the incoming edges of each of its
vertices, so the edge with order value ``xi`` into ``v(n, j)`` comes from
``inputs[j - 1][xi - 1]`` at level ``n - 1``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain
from typing import Sequence


class DiagramError(ValueError):
    """Structurally malformed diagram or recursion table."""


class ContractError(ValueError):
    """An operation was called outside its documented preconditions."""


@dataclass(frozen=True)
class LevelSpec:
    K: int
    inputs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.inputs) != self.K + 1:
            raise DiagramError(
                f"level with K={self.K} needs {self.K + 1} vertex input lists, got {len(self.inputs)}"
            )


@dataclass(frozen=True)
class OrderedDiagram:
    """An ordered diagram, finite or eventually periodic in its levels.

    ``levels[n - 1]`` describes level ``n``.  With ``stationary_from = m``
    the explicit levels ``m .. len(levels)`` repeat forever.
    """

    levels: tuple[LevelSpec, ...]
    stationary_from: int | None = None
    origins: tuple[int, ...] | None = field(default=None, compare=False)
    _cache: dict = field(default_factory=dict, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if not self.levels:
            raise DiagramError("empty diagram: no levels below the root")
        L = len(self.levels)
        m = self.stationary_from
        if m is not None:
            if not 1 <= m <= L:
                raise DiagramError(f"stationary-from {m} outside explicit levels 1..{L}")
            if self.K(m - 1) != self.levels[-1].K:
                raise DiagramError(
                    f"repeating block {m}..{L} does not close up: K_{m - 1} != K_{L}"
                )
        for n in range(1, L + 1):
            prev = self.K(n - 1)
            spec = self.levels[n - 1]
            if spec.K < 0:
                raise DiagramError(f"level {n}: negative K")
            for j, srcs in enumerate(spec.inputs, start=1):
                if not srcs:
                    raise DiagramError(f"level {n} vertex {j}: no incoming edge")
                for xi, s in enumerate(srcs, start=1):
                    if not 1 <= s <= prev + 1:
                        raise DiagramError(
                            f"level {n} vertex {j} edge xi={xi}: source {s} outside 1..{prev + 1}"
                        )

    # --- level access -----------------------------------------------------

    @property
    def explicit_depth(self) -> int:
        return len(self.levels)

    @property
    def is_stationary(self) -> bool:
        return self.stationary_from is not None

    @property
    def depth(self) -> int | None:
        """Deepest level, or None for an infinite (stationary) diagram."""
        return None if self.is_stationary else len(self.levels)

    def has_level(self, n: int) -> bool:
        return n >= 0 and (self.is_stationary or n <= len(self.levels))

    def resolve(self, n: int) -> int:
        """Index of the explicit level whose edge structure level ``n`` uses."""
        L = len(self.levels)
        if 1 <= n <= L:
            return n
        m = self.stationary_from
        if n > L and m is not None:
            return m + (n - m) % (L - m + 1)
        raise DiagramError(f"level {n} does not exist (diagram has {L} levels)")

    def level(self, n: int) -> LevelSpec:
        return self.levels[self.resolve(n) - 1]

    def K(self, n: int) -> int:
        return 0 if n == 0 else self.level(n).K

    def spacer(self, n: int) -> int:
        return self.K(n) + 1

    def inputs(self, n: int, j: int) -> tuple[int, ...]:
        spec = self.level(n)
        if not 1 <= j <= spec.K + 1:
            raise DiagramError(f"vertex {j} outside level {n} (1..{spec.K + 1})")
        return spec.inputs[j - 1]

    def out_degree(self, n: int, j: int) -> int:
        return sum(srcs.count(j) for srcs in self.level(n + 1).inputs)

    def recursion_row(self, n: int, j: int) -> tuple[tuple[int, int], ...]:
        """Recursion entries ``((g, a), ...)`` building ``B(n, j)`` from level ``n-1``."""
        spacer = self.spacer(n - 1)
        row: list[list[int]] = []
        for s in self.inputs(n, j):
            if s == spacer:
                if not row:
                    raise DiagramError(f"level {n} vertex {j}: minimal edge has spacer source")
                row[-1][1] += 1
            else:
                row.append([s, 0])
        return tuple((g, a) for g, a in row)

    def minimal_source(self, n: int, j: int) -> int:
        return self.inputs(n, j)[0]

    # --- path counting ----------------------------------------------------

    def dims(self, n: int) -> tuple[int, ...]:
        """``(dim(n, 1), ..., dim(n, K_n + 1))`` with exact integers."""
        table = self._cache.setdefault("dims", [(1,)])
        while len(table) <= n:
            m = len(table)
            prev = table[m - 1]
            table.append(tuple(sum(prev[s - 1] for s in srcs) for srcs in self.level(m).inputs))
        return table[n]

    def label_offsets(self, k: int) -> tuple[int, ...]:
        """First symbol assigned to segments into each non-spacer vertex of level ``k``."""
        dims = self.dims(k)
        out, acc = [], 0
        for d in dims[:-1]:
            out.append(acc)
            acc += d
        return tuple(out)

    def alphabet_size(self, k: int) -> int:
        return sum(self.dims(k))


def dim(diagram: OrderedDiagram, n: int, j: int) -> int:
    """Number of root paths ending at ``v(n, j)``."""
    if not 1 <= j <= diagram.K(n) + 1 and not (n == 0 and j == 1):
        raise DiagramError(f"vertex {j} outside level {n}")
    return diagram.dims(n)[j - 1]


def pseudo_complete(diagram: OrderedDiagram, n: int) -> bool:
    """Every non-spacer vertex of level ``n-1`` feeds every non-spacer vertex of level ``n``."""
    if n < 1:
        raise ContractError("pseudo_complete needs n >= 1")
    wanted = set(range(1, diagram.K(n - 1) + 1))
    return all(wanted <= set(diagram.inputs(n, j)) for j in range(1, diagram.K(n) + 1))


# --- validation --------------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    level: int
    vertex: int
    detail: str

    def __str__(self) -> str:
        return f"level {self.level} vertex {self.vertex}: {self.detail}"


@dataclass(frozen=True)
class GrowthVerdict:
    horizon: int
    min_lengths: tuple[int, ...]
    nondecreasing: bool
    doubled: bool
    branching: bool | None
    passed: bool


@dataclass(frozen=True)
class ValidationReport:
    structure: tuple[Violation, ...]
    c1: tuple[Violation, ...]
    c2: tuple[Violation, ...]
    c3: tuple[Violation, ...]
    c4: GrowthVerdict

    @property
    def ok(self) -> bool:
        return not (self.structure or self.c1 or self.c2 or self.c3) and self.c4.passed

    def records(self) -> list[tuple[str, str]]:
        out = []
        for name in ("structure", "c1", "c2", "c3"):
            items = getattr(self, name)
            out.append((name, "pass" if not items else "fail"))
            out.extend((f"{name}.violation", str(v)) for v in items)
        g = self.c4
        out.append(("c4", "pass" if g.passed else "fail"))
        out.append(("c4.horizon", str(g.horizon)))
        out.append(("c4.min_lengths", ",".join(map(str, g.min_lengths))))
        return out


def _levels_to_check(diagram: OrderedDiagram, horizon: int) -> range:
    last = horizon if diagram.is_stationary else min(horizon, diagram.explicit_depth)
    if diagram.is_stationary:
        last = max(last, diagram.explicit_depth + 1)
    return range(1, last + 1)


def validate(diagram: OrderedDiagram, horizon: int = 10) -> ValidationReport:
    """Check the standing conditions C1-C3 exactly and growth (C4) up to ``horizon``."""
    structure: list[Violation] = []
    c1: list[Violation] = []
    c2: list[Violation] = []
    c3: list[Violation] = []
    levels = _levels_to_check(diagram, horizon)
    for n in levels:
        K = diagram.K(n)
        if K < 1:
            c1.append(Violation(n, 0, f"K_{n} = {K} < 1"))
        spacer_in = diagram.inputs(n, K + 1)
        if len(spacer_in) != 1 or spacer_in[0] != diagram.spacer(n - 1):
            c2.append(Violation(n, K + 1, f"spacer vertex has incoming sources {list(spacer_in)}"))
        if n >= 2:
            for j in range(1, K + 1):
                if diagram.minimal_source(n, j) == diagram.spacer(n - 1):
                    c3.append(Violation(n, j, "minimal incoming edge has the spacer as source"))
        if diagram.has_level(n + 1):
            fed = set(chain.from_iterable(diagram.level(n + 1).inputs))
            for j in range(1, K + 2):
                if j not in fed:
                    structure.append(Violation(n, j, "vertex is not the source of any edge"))
    return ValidationReport(tuple(structure), tuple(c1), tuple(c2), tuple(c3),
                            growth(diagram, horizon))


def growth(diagram: OrderedDiagram, horizon: int) -> GrowthVerdict:
    """Finite-horizon surrogate for the growing condition.

    Minimal non-spacer block lengths must be nondecreasing over levels
    ``1..H`` and at least double from level 1 to level H.  Stationary
    diagrams additionally need every non-spacer vertex of the repeating
    levels to have two or more incoming edges.
    """
    H = horizon if diagram.is_stationary else min(horizon, diagram.explicit_depth)
    mins = []
    for n in range(1, H + 1):
        dims = diagram.dims(n)[:-1]
        mins.append(min(dims) if dims else 0)
    nondecreasing = all(a <= b for a, b in zip(mins, mins[1:]))
    doubled = bool(mins) and mins[-1] >= 2 * mins[0]
    branching = None
    if diagram.is_stationary:
        branching = all(
            len(srcs) >= 2
            for n in range(diagram.stationary_from, diagram.explicit_depth + 1)
            for srcs in diagram.levels[n - 1].inputs[:-1]
        )
    passed = nondecreasing and doubled and branching is not False
    return GrowthVerdict(H, tuple(mins), nondecreasing, doubled, branching, passed)


# --- telescoping -------------------------------------------------------------

def _segment_sources(diagram: OrderedDiagram, lo: int, hi: int) -> tuple[tuple[int, ...], ...]:
    """Sources at level ``lo`` of all ``lo -> hi`` segments into each level-``hi`` vertex, in path order."""
    current = [(j,) for j in range(1, diagram.K(lo) + 2)] if lo > 0 else [(1,)]
    for n in range(lo + 1, hi + 1):
        current = [
            tuple(chain.from_iterable(current[s - 1] for s in srcs))
            for srcs in diagram.level(n).inputs
        ]
    return tuple(current)


def telescope(diagram: OrderedDiagram, cut_levels: Sequence[int]) -> OrderedDiagram:
    """Collapse the levels between consecutive cuts into single edges.

    Levels past the last cut are kept one-for-one.  Composite edges into a
    vertex are ordered as paths: deepest edge first, then shallower ones.
    """
    cuts = list(cut_levels)
    if not cuts or cuts[0] != 0:
        raise ContractError("cut levels must start at 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ContractError("cut levels must be strictly increasing")
    for c in cuts:
        if not diagram.has_level(c):
            raise ContractError(f"cut level {c} does not exist")
    last = cuts[-1]
    new_levels: list[LevelSpec] = []
    origins: list[int] = [0]
    for lo, hi in zip(cuts, cuts[1:]):
        new_levels.append(LevelSpec(diagram.K(hi), _segment_sources(diagram, lo, hi)))
        origins.append(hi)
    stationary_from = None
    if diagram.is_stationary:
        m = diagram.stationary_from
        period = diagram.explicit_depth - m + 1
        start = max(m, last + 1)
        for n in range(last + 1, start + period):
            new_levels.append(diagram.level(n))
            origins.append(n)
        stationary_from = origins.index(start)
    else:
        for n in range(last + 1, diagram.explicit_depth + 1):
            new_levels.append(diagram.level(n))
            origins.append(n)
    if not new_levels:
        raise ContractError("telescoping leaves no level below the root")
    return OrderedDiagram(tuple(new_levels), stationary_from, tuple(origins))


# --- recursion tables ----------------------------------------------------------

@dataclass(frozen=True)
class RecursionTable:
    """Cutting-and-stacking form of a diagram.

    ``seeds[j - 1]`` is the level-1 block ``D_j`` (no spacers).
    ``rows[n - 2][j - 1]`` lists ``(g, a)`` pairs building ``B(n, j)``.
    """

    seeds: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[tuple[tuple[int, int], ...], ...], ...]
    stationary_from: int | None = None

    def __post_init__(self):
        if not self.seeds:
            raise DiagramError("recursion table has no seed blocks")
        expected = 0
        for j, word in enumerate(self.seeds, start=1):
            if not word:
                raise DiagramError(f"seed {j} is empty")
            if tuple(word) != tuple(range(expected, expected + len(word))):
                raise DiagramError(
                    f"seed {j} must continue the canonical labeling at symbol {expected}"
                )
            expected += len(word)
        prev_K = len(self.seeds)
        for idx, level_rows in enumerate(self.rows):
            n = idx + 2
            if not level_rows:
                raise DiagramError(f"level {n}: no blocks")
            for j, row in enumerate(level_rows, start=1):
                if not row:
                    raise DiagramError(f"level {n} block {j}: q must be positive")
                for g, a in row:
                    if not 1 <= g <= prev_K or a < 0:
                        raise DiagramError(f"level {n} block {j}: bad entry ({g},{a})")
            prev_K = len(level_rows)
        m = self.stationary_from
        if m is not None and not 2 <= m <= len(self.rows) + 1:
            raise DiagramError(f"stationary-from {m} outside recursion levels")

    @property
    def depth(self) -> int:
        return len(self.rows) + 1


def to_recursion(diagram: OrderedDiagram) -> RecursionTable:
    level1 = diagram.level(1)
    seeds, acc = [], 0
    for j in range(1, level1.K + 1):
        d = len(level1.inputs[j - 1])
        seeds.append(tuple(range(acc, acc + d)))
        acc += d
    if level1.inputs[-1] != (1,):
        raise DiagramError("level 1 spacer must have exactly one root edge")
    rows = []
    for n in range(2, diagram.explicit_depth + 1):
        spacer_in = diagram.inputs(n, diagram.spacer(n))
        if spacer_in != (diagram.spacer(n - 1),):
            raise DiagramError(f"level {n}: spacer vertex violates the single-spacer-edge condition")
        rows.append(tuple(diagram.recursion_row(n, j) for j in range(1, diagram.K(n) + 1)))
    if diagram.stationary_from == 1:
        raise DiagramError("level 1 cannot repeat in recursion form")
    return RecursionTable(tuple(seeds), tuple(rows), diagram.stationary_from)


def from_recursion(table: RecursionTable) -> OrderedDiagram:
    levels = [LevelSpec(len(table.seeds), tuple((1,) * len(w) for w in table.seeds) + ((1,),))]
    prev_K = len(table.seeds)
    for level_rows in table.rows:
        inputs = []
        for row in level_rows:
            srcs: list[int] = []
            for g, a in row:
                srcs.append(g)
                srcs.extend([prev_K + 1] * a)
            inputs.append(tuple(srcs))
        inputs.append((prev_K + 1,))
        levels.append(LevelSpec(len(level_rows), tuple(inputs)))
        prev_K = len(level_rows)
    return OrderedDiagram(tuple(levels), table.stationary_from)


def diagram_from_rows(seed_sizes: Sequence[int], rows: Sequence[Sequence[Sequence[tuple[int, int]]]],
                      stationary_from: int | None = None) -> OrderedDiagram:
    """Convenience: build from seed block lengths and recursion rows."""
    seeds, acc = [], 0
    for size in seed_sizes:
        seeds.append(tuple(range(acc, acc + size)))
        acc += size
    table = RecursionTable(
        tuple(seeds),
        tuple(tuple(tuple((int(g), int(a)) for g, a in row) for row in level) for level in rows),
        stationary_from,
    )
    return from_recursion(table)
