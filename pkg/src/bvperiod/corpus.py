"""Named fixtures for the diagrams and recursions worked out in the literature,
plus seeded generators for property tests.

Every fixture carries executable facts: ``(op, args, expected, tag)`` with a
provenance tag of PAPER, TRIVIAL or DERIVED.  ``evaluate`` runs one fact.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Any, Callable

from .diagram import (ContractError, LevelSpec, OrderedDiagram, RecursionTable, diagram_from_rows,
                      pseudo_complete, to_recursion, validate)
from .words import format_word

PAPER, TRIVIAL, DERIVED = "PAPER", "TRIVIAL", "DERIVED"


@dataclass(frozen=True)
class Fact:
    op: str
    args: tuple
    expected: Any
    tag: str
    note: str = ""


@dataclass(frozen=True)
class Fixture:
    name: str
    diagram: OrderedDiagram
    description: str
    facts: tuple[Fact, ...] = field(default=())

    @property
    def recursion(self) -> RecursionTable:
        return to_recursion(self.diagram)


# --- fixture definitions ------------------------------------------------------------
# Rows are recursion rows: B(n, j) = B(n-1, g0) s^a0 B(n-1, g1) s^a1 ...

def _fig1b() -> Fixture:
    d = diagram_from_rows([1], [[[(1, 1)]], [[(1, 1), (1, 0)]]], stationary_from=3)
    facts = (
        Fact("block", (3, 1, 1), "0ss0s", PAPER),
        Fact("block", (4, 1, 1), "0ss0ss0ss0s", PAPER),
        Fact("dim", (3, 1), 5, PAPER),
        Fact("dim", (4, 1), 11, PAPER),
        Fact("explicit_positions", (3, 1, 4, 1, 1), [0, 6], PAPER),
        Fact("occurrences", (4, 1, 1, "0ss0s"), [0, 3, 6], PAPER),
        Fact("occurrences", (3, 1, 1, "s"), [1, 2, 4], DERIVED),
        Fact("expand", (4, 1, 1, 3, 5), "0ss0s", DERIVED, "zero-based window of 0ss0ss0ss0s"),
        Fact("orbit", (4, 1, 1, 11), "0ss0ss0ss0s", PAPER),
        Fact("validate", (), True, DERIVED),
        Fact("min_length", (4,), 11, DERIVED),
    )
    return Fixture("fig1b-rank1", d, "Rank-one recursion B(2)=Bs, B(n+1)=B(n) s B(n); stationary from level 3.",
                   facts)


def _fig1a() -> Fixture:
    # Level 2 follows the printed recursion; the later ordering is one valid reading of the figure.
    d = diagram_from_rows(
        [3, 2],
        [
            [[(1, 2), (2, 1)], [(2, 1), (1, 2)]],
            [[(1, 1), (2, 0)], [(2, 1), (1, 0)]],
        ],
        stationary_from=3,
    )
    facts = (
        Fact("row", (2, 1), ((1, 2), (2, 1)), PAPER),
        Fact("roundtrip", (), True, DERIVED),
        Fact("validate", (), True, DERIVED),
    )
    return Fixture("fig1a", d, "Two seed blocks of lengths 3 and 2; B(2,1)=B(1,1)s^2B(1,2)s.", facts)


def _sec4() -> Fixture:
    d = diagram_from_rows(
        [1, 1],
        [
            [[(1, 1), (2, 0)], [(1, 1), (2, 0)], [(2, 1), (1, 0)]],
            [[(1, 1), (3, 2), (2, 1), (3, 0)], [(2, 1), (3, 2), (1, 1), (3, 1)]],
        ],
    )
    facts = (
        Fact("semi", (3, 1), ("0s1s1s0", 2, (1, 1), (0, 1)), PAPER),
        Fact("semi", (2, 1), None, PAPER),
        Fact("semi", (3, 2), None, PAPER),
        Fact("ldc", (2, 1), False, PAPER),
        Fact("ldc_equiv", (2, 1), False, PAPER),
        Fact("uniformly_ordered", (3, 1), False, PAPER),
        Fact("vertex_coding", (3, 1, 2), (1, 4, 3, 4, 4, 2, 4, 3), DERIVED,
             "s^2 contributes two spacer vertices"),
        Fact("block", (2, 1, 1), "0s1", PAPER),
        Fact("block", (2, 3, 1), "1s0", PAPER),
    )
    return Fixture("sec4-U3", d, "Finite three-level recursion with U_3 = 0s1s1s0.", facts)


def _semi_k() -> Fixture:
    d = diagram_from_rows(
        [1, 1],
        [[[(2, 3), (1, 4), (2, 3), (1, 4), (2, 3), (1, 2)], [(2, 3), (1, 4), (2, 3), (1, 2)]]],
    )
    facts = (
        Fact("semi", (2, 1), ("1sss0", 4, (2, 1), (2, 2)), DERIVED, "seeds instantiated as 0 and 1"),
        Fact("decomposition_unique", (1,), True, DERIVED),
        Fact("pseudo_complete", (2,), True, DERIVED),
    )
    return Fixture("ex-semi-k", d, "Level k+1 semi k-periodic with U = 1s^3 0 and c = 4.", facts)


def _fig2a() -> Fixture:
    d = diagram_from_rows(
        [1, 1],
        [
            [[(1, 0), (2, 2), (1, 0)], [(2, 2), (1, 0), (2, 1)]],
            [[(1, 0), (2, 1), (1, 0)], [(2, 1), (1, 0), (2, 0)]],
        ],
        stationary_from=3,
    )
    facts = (
        Fact("census", (), 2, PAPER),
        Fact("spacer_branching_everywhere", (), True, DERIVED),
        Fact("validate", (), True, DERIVED),
    )
    return Fixture("fig2a-two-minimal", d, "Stationary diagram with two minimal forward transitive paths.", facts)


def _someper() -> Fixture:
    d = diagram_from_rows(
        [1, 1],
        [
            [[(1, 0), (2, 1)], [(1, 0), (2, 1)]],
            [[(1, 1), (2, 0)], [(2, 1), (1, 0)]],
        ],
        stationary_from=3,
    )
    facts = (
        Fact("period", (1,), ("periodic", "01ss"), PAPER),
        Fact("period", (2,), ("aperiodic", None), PAPER),
        Fact("orbit", (2, 1, 1, 12), "01ss01ss01ss", PAPER),
        Fact("factor", (3, 1, 2, 1), "01ss01s", DERIVED),
        Fact("ldc", (3, 2), False, DERIVED),
        Fact("ldc", (4, 2), False, DERIVED),
        Fact("ldc", (5, 2), False, DERIVED),
    )
    return Fixture("ex-someper", d, "Periodic 1-coding with least period 01ss and aperiodic 2-coding.", facts)


def _all_ldc() -> Fixture:
    # The printed "s1s" is read as a literal seed symbol 1 (D_1 = 0, D_2 = 1).
    d = diagram_from_rows(
        [1, 1],
        [
            [[(1, 1), (2, 3), (1, 1), (2, 1)], [(1, 1), (2, 3), (1, 1), (2, 2)]],
            [[(1, 2), (1, 2), (2, 1)], [(1, 2), (1, 2), (2, 1), (1, 2), (1, 2), (2, 0)]],
            [[(1, 0), (2, 1), (1, 0), (2, 1)], [(1, 0), (2, 1), (1, 0), (2, 0)]],
        ],
        stationary_from=4,
    )
    facts = (
        Fact("block", (2, 1, 1), "0s1sss0s1s", DERIVED),
        Fact("semi", (2, 1), ("0s1", 3, (1, 1), (1, 2)), DERIVED),
        Fact("ldc", (2, 1), True, DERIVED),
        Fact("ldc_equiv", (3, 1), True, DERIVED),
        Fact("period", (1,), ("periodic", "0s1sss"), DERIVED),
        Fact("period", (2,), ("periodic", None), DERIVED),
    )
    return Fixture("ex-all-ldc", d,
                   "Local deficit condition at every level for k = 1 and from level 5 for k <= 4; "
                   "stationary from level 4.", facts)


def _chacon() -> Fixture:
    d = diagram_from_rows([1], [[[(1, 0), (1, 1), (1, 0)]]], stationary_from=2)
    facts = (
        Fact("validate", (), True, PAPER),
        Fact("pseudo_complete", (2,), True, DERIVED),
        Fact("census", (), 1, DERIVED),
        Fact("orbit", (3, 1, 1, 9), "00s000s0s", DERIVED),
        Fact("roundtrip", (), True, DERIVED),
        Fact("odometer", (), "clause-a-fails", DERIVED),
        Fact("spacer_branching_everywhere", (), True, DERIVED),
    )
    return Fixture("chacon", d, "Chacon system: B(n+1) = B(n) B(n) s B(n).", facts)


def _parallel() -> Fixture:
    level1 = LevelSpec(2, ((1, 1, 1), (1, 1), (1,)))
    column = LevelSpec(2, ((1,), (2,), (3,)))
    d = OrderedDiagram((level1, column), stationary_from=2)
    facts = (
        Fact("census", (), 2, DERIVED),
        Fact("pseudo_complete", (2,), False, PAPER),
        Fact("odometer_finite", (), True, PAPER),
    )
    return Fixture("parallel-columns", d, "Parallel columns: every k-factor is finite.", facts)


_BUILDERS: dict[str, Callable[[], Fixture]] = {
    "fig1a": _fig1a,
    "fig1b-rank1": _fig1b,
    "sec4-U3": _sec4,
    "ex-semi-k": _semi_k,
    "fig2a-two-minimal": _fig2a,
    "ex-someper": _someper,
    "ex-all-ldc": _all_ldc,
    "chacon": _chacon,
    "parallel-columns": _parallel,
}

ALIASES = {"fig2a": "fig2a-two-minimal", "fig2b": "ex-someper", "fig3a": "parallel-columns",
           "fig3b": "chacon", "fig1b": "fig1b-rank1"}


def names() -> list[str]:
    return list(_BUILDERS)


def fixture(name: str) -> Fixture:
    key = ALIASES.get(name, name)
    if key not in _BUILDERS:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(_BUILDERS)}")
    return _BUILDERS[key]()


# --- executing facts -------------------------------------------------------------------

def evaluate(fx: Fixture, fact: Fact) -> Any:
    """Compute the actual value of ``fact`` on ``fx``."""
    from . import analysis, blocks, coding
    from .diagram import from_recursion

    d = fx.diagram
    a = fact.args
    op = fact.op
    if op == "block":
        n, j, k = a
        return format_word(blocks.expand(blocks.basic_block(d, n, j, k)), d.alphabet_size(k))
    if op == "expand":
        n, j, k, off, ln = a
        return format_word(blocks.expand(blocks.basic_block(d, n, j, k), off, ln), d.alphabet_size(k))
    if op == "dim":
        return d.dims(a[0])[a[1] - 1]
    if op == "min_length":
        return min(d.dims(a[0])[:-1])
    if op == "row":
        return d.recursion_row(*a)
    if op == "explicit_positions":
        return blocks.explicit_positions(d, *a)
    if op == "occurrences":
        m, i, k, word = a
        from .words import Word
        return blocks.all_occurrences(blocks.basic_block(d, m, i, k), Word.parse(word))
    if op == "vertex_coding":
        return blocks.vertex_coding(d, *a)
    if op == "factor":
        n, j, k, kp = a
        w = blocks.factor_map(d, blocks.expand(blocks.basic_block(d, n, j, k)), k, kp)
        return format_word(w, d.alphabet_size(kp))
    if op == "orbit":
        n, j, k, L = a
        return format_word(coding.code_orbit(d, coding.minimal_prefix(d, n, j), k, L).word,
                           d.alphabet_size(k))
    if op == "validate":
        return validate(d).ok
    if op == "roundtrip":
        return from_recursion(to_recursion(d)) == d
    if op == "pseudo_complete":
        return pseudo_complete(d, a[0])
    if op == "census":
        return coding.minimal_path_census(d).count
    if op == "spacer_branching_everywhere":
        rep = coding.transitive_conditions(d, 6)
        return rep.spacer_infinitely_often and len(rep.spacer_branching_levels) == rep.horizon
    if op == "semi":
        n, k = a
        cert = analysis.semi_k_periodic(d, n, k)
        if not cert:
            return None
        return (format_word(cert.U, d.alphabet_size(k)), cert.c, cert.t, cert.l)
    if op == "ldc":
        return analysis.ldc(d, *a).passed
    if op == "ldc_equiv":
        return analysis.ldc_via_equivalence(d, *a)
    if op == "uniformly_ordered":
        n, k = a
        return analysis.uniformly_ordered(d, n, k)
    if op == "decomposition_unique":
        return analysis.decomposition_unique(d, a[0])
    if op == "period":
        v = analysis.k_coding_periodicity(d, a[0])
        shown = None if v.period is None else format_word(v.period, v.alphabet_size)
        if fact.expected is not None and fact.expected[1] is None:
            shown = None
        return (v.kind, shown)
    if op == "odometer":
        return analysis.odometer_verdict(d).kind
    if op == "odometer_finite":
        v = analysis.odometer_verdict(d)
        return v.finite and v.kind == "odometer-plus-fixed-point"
    raise KeyError(f"unknown fact operation {op!r}")


# --- generators ------------------------------------------------------------------------

def random_stationary(seed: int, K: int, max_edges: int = 4, spacer_policy: str = "branching") -> OrderedDiagram:
    """Random diagram with a repeating level 2 that satisfies C1-C4.

    Every non-spacer vertex of the repeating level gets at least two
    non-spacer incoming edges and every vertex feeds the next level.
    ``branching`` lets the spacer feed some non-spacer vertices;
    ``isolated`` never does.
    """
    if K < 1 or max_edges < 2:
        raise ContractError("need K >= 1 and max_edges >= 2")
    if spacer_policy not in ("isolated", "branching"):
        raise ContractError(f"unknown spacer policy {spacer_policy!r}")
    rng = random.Random(seed)
    level1 = LevelSpec(K, tuple((1,) * rng.randint(1, 2) for _ in range(K)) + ((1,),))
    spacer = K + 1
    counts = [rng.randint(2, max_edges) for _ in range(K)]
    pool = list(range(1, K + 1))
    rng.shuffle(pool)
    sources: list[list[int]] = [[rng.randint(1, K) for _ in range(c)] for c in counts]
    # spread every source over the rows so each vertex feeds the next level
    slots = [(j, i) for j in range(K) for i in range(counts[j])]
    rng.shuffle(slots)
    for src, (j, i) in zip(pool, slots):
        sources[j][i] = src
    inputs = []
    for j in range(K):
        srcs = list(sources[j])
        if spacer_policy == "branching":
            room = max(0, max_edges - len(srcs))
            extra = rng.randint(0, room) if room else 0
            if j == 0 and room and extra == 0:
                extra = 1
            for _ in range(extra):
                srcs.insert(rng.randint(1, len(srcs)), spacer)
        inputs.append(tuple(srcs))
    inputs.append((spacer,))
    return OrderedDiagram((level1, LevelSpec(K, tuple(inputs))), stationary_from=2)


def _ldc_parts(rng: random.Random, K: int):
    c = rng.randint(0, 3)
    l = [rng.randint(0, c) for _ in range(K)]
    tokens = list(range(1, K + 1))
    rng.shuffle(tokens)
    tokens += [rng.randint(1, K) for _ in range(rng.randint(0, 2))]
    if tokens[0] != 1:
        tokens.remove(1)
        tokens.insert(0, 1)
    gaps = [rng.randint(0, 2) for _ in tokens[:-1]]
    return c, l, tokens, gaps


def random_ldc_stationary(seed: int, K: int, perturb: bool = False) -> OrderedDiagram:
    """Stationary diagram whose level-2 blocks are (U s^c)^t U s^l with spacer runs matching the deficits.

    The repeating level keeps ``l`` fixed, so LDC holds at every level
    from 2 on.  With ``perturb`` one interior run in the row of vertex 1
    (the vertex carrying the unique minimal path) gets one spacer too many;
    that row is first padded to three entries so another interior run
    keeps the exact deficit.
    """
    if K < 1:
        raise ContractError("need K >= 1")
    rng = random.Random(seed)
    c, l, tokens, gaps = _ldc_parts(rng, K)
    u_row = [(g, a) for g, a in zip(tokens, gaps + [None])]

    def block_row(t: int, tail: int):
        row = []
        for rep in range(t + 1):
            for idx, (g, a) in enumerate(u_row):
                if a is None:
                    a = c if rep < t else tail
                row.append((g, a))
        return row

    level2 = [block_row(rng.randint(1, 2), l[j]) for j in range(K)]
    level3 = []
    for j in range(1, K + 1):
        extra = [rng.randint(1, K) for _ in range(rng.randint(0, 2))]
        last = rng.choice([g for g in range(1, K + 1) if l[g - 1] <= l[j - 1]])
        gs = [1] + extra + [last]
        level3.append([(g, c - l[g - 1]) for g in gs[:-1]] + [(last, l[j - 1] - l[last - 1])])
    used = {g for row in level3 for g, _ in row}
    for g in range(1, K + 1):
        if g not in used:
            level3[g - 1].insert(1, (g, c - l[g - 1]))
    if perturb:
        # keep an untouched interior run beside the bumped one so the top-ups
        # disagree at every level
        row = level3[0]
        while len(row) < 3:
            row.insert(1, (1, c - l[0]))
        g, a = row[0]
        row[0] = (g, a + 1)
    return diagram_from_rows([1] * K, [level2, level3], stationary_from=3)


def random_rank_one(seed: int, periodic: bool, levels: int = 10) -> RecursionTable:
    """Rank-one recursion, either eventually of shape (B s^a)^m B or with unequal interior runs at every level."""
    rng = random.Random(seed)
    rows = []
    if periodic:
        start = rng.randint(2, 4)
        a = rng.randint(0, 2)
        for n in range(2, levels + 1):
            q = rng.randint(2, 3)
            if n < start:
                row = [(1, rng.randint(0, 2)) for _ in range(q)]
            else:
                row = [(1, a)] * (q - 1) + [(1, 0)]
            rows.append((tuple(row),))
    else:
        for n in range(2, levels + 1):
            # a1 < a0 rules out the square B s^a0 B s^a0 at the head of every level
            a0 = rng.randint(1, 3)
            a1 = rng.randint(0, a0 - 1)
            rows.append((((1, a0), (1, a1), (1, rng.randint(0, 2))),))
    return RecursionTable(((0,),), tuple(rows))


__all__ = ["Fact", "Fixture", "fixture", "names", "evaluate", "random_stationary",
           "random_ldc_stationary", "random_rank_one", "PAPER", "TRIVIAL", "DERIVED", "ALIASES"]
