"""Decision procedures for periodic codings.

Semi k-periodicity, the local deficit condition, the Prop.-4.8 style
equivalence, the rank-one structure extraction and the verdicts for
k-codings and odometers all live here.  Every exact claim is made through
the recursion table; finite prefixes are only ever used as evidence or as a
cross-check.
"""
from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .blocks import alphabet, basic_block, expand_packed, level_blocks
from .coding import MinimalCensus, Thread, minimal_orbit_prefix, minimal_path_census
from .diagram import (ContractError, OrderedDiagram, RecursionTable, from_recursion, growth,
                      pseudo_complete, telescope)
from .words import (PACKED_SPACER, SPACER, Word, certifies_period, commute, failure_function,
                    first_break, format_word, least_period, pack, primitive_root, unpack)

DEFAULT_MAX_LEN = 10**6
_RUNS = re.compile(PACKED_SPACER + "+")


class ResourceLimitError(RuntimeError):
    """A block needed for an exact answer is longer than the configured ceiling."""


def max_block_len() -> int:
    raw = os.environ.get("BV_MAX_BLOCK_LEN")
    if raw is None:
        return DEFAULT_MAX_LEN
    try:
        value = int(raw)
    except ValueError:
        raise ResourceLimitError(f"BV_MAX_BLOCK_LEN is not an integer: {raw!r}") from None
    if value < 1:
        raise ResourceLimitError("BV_MAX_BLOCK_LEN must be positive")
    return value


# --- semi k-periodicity ----------------------------------------------------------

@dataclass(frozen=True)
class SemiPeriodicCertificate:
    n: int
    k: int
    U: Word
    c: int
    t: tuple[int, ...]
    l: tuple[int, ...]

    @property
    def period(self) -> Word:
        return self.U + Word((SPACER,) * self.c)

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class NotSemiPeriodic:
    n: int
    k: int
    pair: tuple[int, int]
    reason: str

    def __bool__(self) -> bool:
        return False


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _candidates(ref: str, r_ref: int) -> list[tuple[int, int]]:
    """``(|U|, c)`` pairs under which ``ref + s^r_ref`` factors as (U s^c)^t U s^l."""
    L = len(ref)
    if L == 0 or ref[0] == PACKED_SPACER:
        return []
    runs = {m.start(): m.end() - m.start() for m in _RUNS.finditer(ref)}
    cand = set(runs)
    cand.update(d for d in _divisors(L) if d < L)
    out = []
    for u in sorted(cand):
        if u == 0 or ref[u - 1] == PACKED_SPACER:
            continue
        c = runs.get(u, 0)
        p = u + c
        if L - u < p or (L - u) % p or r_ref > c:
            continue
        if ref[p:] != ref[:-p]:
            continue
        out.append((u, c))
    return out


def _fits(word: str, r: int, ref: str, u: int, c: int) -> bool:
    p = u + c
    L = len(word)
    return (
        r <= c and L - u >= p and (L - u) % p == 0
        and word[:p] == ref[:p] and word[p:] == word[:-p]
    )


def factor_words(words: Sequence[str]) -> tuple[int, int, tuple[int, ...], tuple[int, ...]] | tuple[int, int]:
    """Shared semi-periodic factorization of packed words.

    Returns ``(|U|, c, t, l)`` or, on failure, the 1-based pair of word
    indices that first leaves no common candidate.
    """
    stripped = [w.rstrip(PACKED_SPACER) for w in words]
    trailing = [len(w) - len(s) for w, s in zip(words, stripped)]
    ref = stripped[0]
    live = _candidates(ref, trailing[0])
    if not live:
        return (1, 1)
    for idx in range(1, len(words)):
        live = [(u, c) for u, c in live if _fits(stripped[idx], trailing[idx], ref, u, c)]
        if not live:
            return (1, idx + 1)
    u, c = live[0]
    p = u + c
    ts = tuple((len(s) - u) // p for s in stripped)
    return u, c, ts, tuple(trailing)


def _check_len(diagram: OrderedDiagram, n: int, limit: int | None) -> None:
    limit = max_block_len() if limit is None else limit
    longest = max(diagram.dims(n)[:-1])
    if longest > limit:
        raise ResourceLimitError(
            f"level {n} blocks reach length {longest} > {limit}; telescope first "
            f"or raise BV_MAX_BLOCK_LEN"
        )


def semi_k_periodic(diagram: OrderedDiagram, n: int, k: int,
                    max_len: int | None = None) -> SemiPeriodicCertificate | NotSemiPeriodic:
    """Factor every non-spacer block of level ``n`` as (U s^c)^t U s^l with one shortest U."""
    if not 1 <= k <= n:
        raise ContractError(f"need 1 <= k <= n, got k={k}, n={n}")
    _check_len(diagram, n, max_len)
    words = [expand_packed(h) for h in level_blocks(diagram, n, k)]
    found = factor_words(words)
    if len(found) == 2:
        i, j = found
        reason = (f"vertex {j} admits no factorization" if i == j
                  else f"vertices {i} and {j} share no (U, c)")
        return NotSemiPeriodic(n, k, (i, j), reason)
    u, c, ts, ls = found
    return SemiPeriodicCertificate(n, k, unpack(words[0][:u]), c, ts, ls)


def level_token_semi_periodic(diagram: OrderedDiagram, n: int) -> bool:
    """Is level ``n`` semi (n-1)-periodic?

    Seed blocks of level ``n-1`` use pairwise disjoint symbols, so the
    question reduces to the same one on the words of vertex tokens read
    off the recursion rows.
    """
    if n < 2:
        return False
    words = []
    for j in range(1, diagram.K(n) + 1):
        words.append("".join(chr(g) + PACKED_SPACER * a for g, a in diagram.recursion_row(n, j)))
    return len(factor_words(words)) == 4


# --- the local deficit condition ---------------------------------------------------

@dataclass(frozen=True)
class DeficitBreak:
    target: int     # vertex i at level n+1
    index: int      # position of the appearance in the row
    source: int     # vertex g at level n
    spacers: int    # a(n, i, index)
    allowed: int    # c - l(g)
    final: bool

    def __str__(self) -> str:
        rel = "<=" if self.final else "=="
        where = "final" if self.final else "interior"
        return (f"B(n+1,{self.target}) {where} appearance {self.index} of B(n,{self.source}): "
                f"{self.spacers} spacers, need {rel} {self.allowed}")


@dataclass(frozen=True)
class LdcReport:
    n: int
    k: int
    certificate: SemiPeriodicCertificate | NotSemiPeriodic
    breaks: tuple[DeficitBreak, ...] = ()
    next_l: tuple[int, ...] | None = None

    @property
    def passed(self) -> bool:
        return bool(self.certificate) and not self.breaks

    @property
    def first_break(self) -> DeficitBreak | None:
        return self.breaks[0] if self.breaks else None

    def records(self) -> list[tuple[str, str]]:
        out = [("n", str(self.n)), ("k", str(self.k)), ("ldc", "pass" if self.passed else "fail")]
        cert = self.certificate
        if cert:
            out += [("U", format_word(cert.U)), ("c", str(cert.c)),
                    ("l", ",".join(map(str, cert.l)))]
        else:
            out.append(("semi", f"fail {cert.pair[0]},{cert.pair[1]}"))
        if self.breaks:
            out.append(("break", str(self.breaks[0])))
        return out


def _deficit_check(diagram: OrderedDiagram, n: int, c: int, l: Sequence[int]):
    """Check the spacer runs of level ``n+1`` rows against ``(c, l)``; also return the next l."""
    breaks = []
    next_l = []
    for i in range(1, diagram.K(n + 1) + 1):
        row = diagram.recursion_row(n + 1, i)
        last = len(row) - 1
        for idx, (g, a) in enumerate(row):
            allowed = c - l[g - 1]
            if idx < last and a != allowed:
                breaks.append(DeficitBreak(i, idx, g, a, allowed, False))
            elif idx == last and a > allowed:
                breaks.append(DeficitBreak(i, idx, g, a, allowed, True))
        g_last, a_last = row[-1]
        next_l.append(l[g_last - 1] + a_last)
    return tuple(breaks), tuple(next_l)


def ldc(diagram: OrderedDiagram, n: int, k: int, max_len: int | None = None) -> LdcReport:
    """LDC(n, k), read off the recursion rows of level ``n + 1``."""
    if not diagram.has_level(n + 1):
        raise ContractError(f"LDC at level {n} needs level {n + 1}")
    cert = semi_k_periodic(diagram, n, k, max_len)
    if not cert:
        return LdcReport(n, k, cert)
    breaks, next_l = _deficit_check(diagram, n, cert.c, cert.l)
    return LdcReport(n, k, cert, breaks, next_l)


def ldc_via_equivalence(diagram: OrderedDiagram, n: int, k: int, cross_check: bool = True,
                        max_len: int | None = None) -> bool:
    """Levels n and n+1 both semi k-periodic with the same U.

    With ``cross_check`` the answer is asserted equal to ``ldc(n, k).passed``.
    """
    if not diagram.has_level(n + 1):
        raise ContractError(f"LDC at level {n} needs level {n + 1}")
    a = semi_k_periodic(diagram, n, k, max_len)
    result = False
    if a:
        b = semi_k_periodic(diagram, n + 1, k, max_len)
        result = bool(b) and a.U == b.U
    if cross_check:
        direct = ldc(diagram, n, k, max_len).passed
        assert direct == result, f"equivalence broken at n={n}, k={k}: ldc={direct}, semi={result}"
    return result


@dataclass(frozen=True)
class EventualLdc:
    start: int
    holds: bool
    first_failure: int | None
    checked_through: int
    exact: bool
    certificate: SemiPeriodicCertificate | NotSemiPeriodic


def ldc_from(diagram: OrderedDiagram, N: int, k: int, horizon: int | None = None,
             max_len: int | None = None) -> EventualLdc:
    """Does LDC(n, k) hold for every n >= N?

    The certificate at ``N`` comes from expansion.  Afterwards only the
    deficit vector ``l`` changes from level to level, so the remaining
    levels are checked on the recursion rows alone.  For stationary
    diagrams the pair (phase, l) must eventually repeat, which makes the
    answer exact.
    """
    cert = semi_k_periodic(diagram, N, k, max_len)
    if not cert:
        return EventualLdc(N, False, N, N, True, cert)
    c, l = cert.c, cert.l
    seen = set()
    n = N
    while True:
        if not diagram.has_level(n + 1):
            return EventualLdc(N, True, None, n, False, cert)
        if horizon is not None and not diagram.is_stationary and n > horizon:
            return EventualLdc(N, True, None, n, False, cert)
        breaks, l = _deficit_check(diagram, n, c, l)
        if breaks:
            return EventualLdc(N, False, n, n, True, cert)
        n += 1
        if diagram.is_stationary and n >= diagram.stationary_from:
            key = (diagram.resolve(n), l)
            if key in seen:
                return EventualLdc(N, True, None, n, True, cert)
            seen.add(key)


def uniformly_ordered(diagram: OrderedDiagram, n: int, k: int) -> bool:
    """Every non-spacer block of level ``n`` is a positive power of one word W."""
    if not 1 <= k < n:
        raise ContractError(f"need 1 <= k < n, got k={k}, n={n}")
    cert = semi_k_periodic(diagram, n, k)
    return bool(cert) and all(x == cert.c for x in cert.l)


class _NotApplicable:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self) -> str:
        return "NOT_APPLICABLE"

    def __bool__(self) -> bool:
        return False


NOT_APPLICABLE = _NotApplicable()


def parse_count(diagram: OrderedDiagram, word: Sequence[int], k: int) -> int:
    """Number of ways to write ``word`` as seed blocks of level ``k`` and spacers."""
    seeds = [tuple(range(o, o + d)) for o, d in zip(diagram.label_offsets(k), diagram.dims(k)[:-1])]
    ways = [0] * (len(word) + 1)
    ways[0] = 1
    for i in range(len(word)):
        if not ways[i]:
            continue
        if word[i] == SPACER:
            ways[i + 1] += ways[i]
        for s in seeds:
            if tuple(word[i:i + len(s)]) == s:
                ways[i + len(s)] += ways[i]
    return ways[-1]


def decomposition_unique(diagram: OrderedDiagram, k: int):
    """U_{k+1} splits uniquely into level-k seed blocks and spacers, and level k+1 is pseudo-complete.

    Returns ``NOT_APPLICABLE`` when level k+1 is not semi k-periodic.
    """
    cert = semi_k_periodic(diagram, k + 1, k)
    if not cert:
        return NOT_APPLICABLE
    return parse_count(diagram, cert.U, k) == 1 and pseudo_complete(diagram, k + 1)


def semi_tokens(diagram: OrderedDiagram, n: int, k: int) -> tuple[int, ...] | None:
    """Shortest U of level ``n`` as level-``k`` vertex tokens, or None if not semi k-periodic."""
    from .blocks import vertex_coding

    spacer = diagram.spacer(k)
    words = [
        "".join(PACKED_SPACER if v == spacer else chr(v) for v in vertex_coding(diagram, n, j, k))
        for j in range(1, diagram.K(n) + 1)
    ]
    found = factor_words(words)
    if len(found) == 2:
        return None
    return tuple(ord(ch) for ch in words[0][: found[0]])


# --- rank one ----------------------------------------------------------------------

@dataclass(frozen=True)
class SpacerMass:
    terms: tuple[Fraction, ...]
    partial_sums: tuple[Fraction, ...]
    converges: bool
    epsilon: float


def _rank_one(recursion: RecursionTable | OrderedDiagram) -> OrderedDiagram:
    d = from_recursion(recursion) if isinstance(recursion, RecursionTable) else recursion
    if any(spec.K != 1 for spec in d.levels):
        raise ContractError("rank-one analysis needs exactly one non-spacer vertex per level")
    return d


def spacer_mass_partial_sums(recursion: RecursionTable | OrderedDiagram, N: int,
                             epsilon: float = 0.05) -> SpacerMass:
    """Partial sums of sum_n (sum_i a(n, i)) / (q_n |B_n|), with B_0 the level-1 block.

    The convergence flag is a heuristic: every ratio of consecutive terms
    among the last ten stays below ``1 - epsilon`` (zero terms count as
    shrinking).
    """
    d = _rank_one(recursion)
    terms = []
    for n in range(1, N):
        if not d.has_level(n + 1):
            break
        row = d.recursion_row(n + 1, 1)
        terms.append(Fraction(sum(a for _, a in row), len(row) * d.dims(n)[0]))
    sums, acc = [], Fraction(0)
    for t in terms:
        acc += t
        sums.append(acc)
    tail = terms[-11:]
    bound = Fraction(1) - Fraction(epsilon).limit_denominator(10**6)
    converges = len(tail) >= 2 and all(
        b == 0 or (a > 0 and b / a < bound) for a, b in zip(tail, tail[1:])
    )
    return SpacerMass(tuple(terms), tuple(sums), converges, epsilon)


@dataclass(frozen=True)
class RankOneStructure:
    """Eventual shape B(n) = (B(n-1) s^a)^{m_n} B(n-1) for diagram levels n >= N."""

    N: int
    a: int
    m: dict = field(hash=False)
    period: Word
    horizon: int
    spacer_mass: SpacerMass

    trailing_zero = True

    def __bool__(self) -> bool:
        return True


@dataclass(frozen=True)
class RankOneRefutation:
    reason: str
    prefix_len: int
    breaks: dict = field(hash=False, default_factory=dict)
    spacer_mass: SpacerMass | None = None

    def __bool__(self) -> bool:
        return False


def rank_one_structure(recursion: RecursionTable | OrderedDiagram, horizon: int = 10,
                       prefix_len: int | None = None):
    d = _rank_one(recursion)
    H = horizon if d.is_stationary else min(horizon, d.explicit_depth)
    if H < 2:
        raise ContractError("rank-one analysis needs at least two levels")
    if prefix_len is None:
        prefix_len = min(4 * d.dims(H - 1)[0], 10**6)
    thread = Thread((1,), 1) if d.is_stationary else Thread((1,) * d.explicit_depth)
    packed, _ = minimal_orbit_prefix(d, thread, 1, prefix_len)
    mass = spacer_mass_partial_sums(d, H)
    P = least_period(packed)
    if not certifies_period(packed, P):
        breaks = {p: first_break(packed, p) for p in range(1, len(packed) // 2 + 1)}
        return RankOneRefutation("aperiodic prefix", len(packed), breaks, mass)
    rows = {n: [a for _, a in d.recursion_row(n, 1)] for n in range(2, H + 1)}
    for N in range(2, H + 1):
        interior = {a for n in range(N, H + 1) for a in rows[n][:-1]}
        if all(rows[n][-1] == 0 for n in range(N, H + 1)) and len(interior) <= 1:
            a = interior.pop() if interior else 0
            m = {n: len(rows[n]) - 1 for n in range(N, H + 1)}
            return RankOneStructure(N, a, m, unpack(packed[:P]), H, mass)
    return RankOneRefutation(f"prefix has period {P} but no level <= {H} starts the eventual shape",
                             len(packed), {}, mass)


# --- verdicts ------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodVerdict:
    """``kind`` is one of periodic, aperiodic, multi-minimal, periodic-through,
    aperiodic-evidence, inconclusive."""

    kind: str
    k: int
    alphabet_size: int
    minimal_paths: int
    period: Word | None = None
    N: int | None = None
    certificate: SemiPeriodicCertificate | None = None
    prefix_len: int = 0
    prefix_period: int | None = None
    prefix_agrees: bool | None = None
    refutation: str | None = None

    @property
    def horizon_limited(self) -> bool:
        return self.kind in ("periodic-through", "aperiodic-evidence", "inconclusive", "multi-minimal")

    @property
    def exit_code(self) -> int:
        return {"periodic": 0, "aperiodic": 1}.get(self.kind, 3)

    def records(self) -> list[tuple[str, str]]:
        out = [("verdict", self.kind), ("k", str(self.k)), ("minimal_paths", str(self.minimal_paths))]
        if self.period is not None:
            out.append(("period", format_word(self.period, self.alphabet_size)))
        if self.N is not None:
            out.append(("N", str(self.N)))
        if self.certificate is not None:
            out.append(("c", str(self.certificate.c)))
        if self.prefix_len:
            out.append(("prefix_len", str(self.prefix_len)))
        if self.prefix_period is not None:
            out.append(("prefix_period", str(self.prefix_period)))
        if self.prefix_agrees is not None:
            out.append(("prefix_agrees", "yes" if self.prefix_agrees else "no"))
        if self.refutation:
            out.append(("refutation", self.refutation))
        return out


def _prefix_period(packed: str) -> int | None:
    p = least_period(packed)
    return p if certifies_period(packed, p) else None


def k_coding_periodicity(diagram: OrderedDiagram, k: int = 1, horizon: int = 10,
                         prefix_len: int = 10**4, max_len: int | None = None) -> PeriodVerdict:
    """Is the k-coding of the minimal path periodic?

    The diagram is telescoped so that its first level carries the
    k-coding.  For stationary diagrams the answer is exact whenever some
    level N admits LDC for all later levels; levels are tried while their
    blocks stay under ``max_len``.  Level numbers in the verdict refer to
    the original diagram.
    """
    if k < 1:
        raise ContractError("k must be positive")
    D = diagram if k == 1 else telescope(diagram, [0, k])
    shift = k - 1
    limit = max_block_len() if max_len is None else max_len
    census = minimal_path_census(D, max(horizon, 2))
    size = diagram.alphabet_size(k)
    base = dict(k=k, alphabet_size=size, minimal_paths=census.count)

    def prefixes() -> list[str]:
        return [minimal_orbit_prefix(D, th, 1, prefix_len)[0] for th in census.threads]

    def finite_orbit(pref: list[str]) -> PeriodVerdict | None:
        short = min(len(w) for w in pref)
        if short == prefix_len:
            return None
        return PeriodVerdict("inconclusive", prefix_len=short,
                             refutation=f"a minimal orbit ends after {short} symbols", **base)

    if D.is_stationary:
        reps = D.explicit_depth - D.stationary_from + 1
        cap = max(horizon, D.explicit_depth + 2 * reps)
        N, failure = 2, None
        while N <= cap and max(D.dims(N)[:-1]) <= limit:
            ev = ldc_from(D, N, 1, max_len=limit)
            if ev.holds:
                cert = ev.certificate
                period = cert.period
                pref = prefixes()
                agrees = all(w == _repeat(pack(period), len(w)) for w in pref)
                return PeriodVerdict("periodic", period=period, N=N + shift, certificate=cert,
                                     prefix_len=len(pref[0]), prefix_period=_prefix_period(pref[0]),
                                     prefix_agrees=agrees, **base)
            failure = ev
            N += 1
        reason = _describe_failure(failure, shift) if failure else "no level fits under the length ceiling"
        pref = prefixes()
        finite = finite_orbit(pref)
        if finite is not None:
            return finite
        periods = [_prefix_period(w) for w in pref]
        if all(p is None for p in periods):
            return PeriodVerdict("aperiodic", prefix_len=len(pref[0]), refutation=reason, **base)
        kind = "multi-minimal" if census.count > 1 else "inconclusive"
        found = next(p for p in periods if p is not None)
        return PeriodVerdict(kind, prefix_len=len(pref[0]), prefix_period=found,
                             refutation=reason, **base)

    H = min(horizon, D.explicit_depth - 1)
    passes: list[tuple[int, LdcReport]] = []
    for n in range(2, H + 1):
        try:
            passes.append((n, ldc(D, n, 1, limit)))
        except ResourceLimitError:
            break
    run_start = None
    for n, rep in reversed(passes):
        if not rep.passed:
            break
        run_start = n
    pref = [minimal_orbit_prefix(D, th, 1, prefix_len)[0] for th in census.threads]
    pp = _prefix_period(pref[0]) if pref else None
    if census.count > 1:
        return PeriodVerdict("multi-minimal", prefix_len=len(pref[0]), prefix_period=pp, **base)
    if run_start is not None:
        cert = dict(passes)[run_start].certificate
        return PeriodVerdict("periodic-through", period=cert.period, N=run_start + shift,
                             certificate=cert, prefix_len=len(pref[0]), prefix_period=pp, **base)
    last = next((rep for _, rep in reversed(passes)), None)
    reason = None
    if last is not None:
        reason = f"LDC fails at level {last.n + shift}"
    return PeriodVerdict("aperiodic-evidence", prefix_len=len(pref[0]), prefix_period=pp,
                         refutation=reason, **base)


def _repeat(block: str, length: int) -> str:
    return (block * (length // len(block) + 1))[:length]


def _describe_failure(ev: EventualLdc, shift: int) -> str:
    if not ev.certificate:
        return f"level {ev.start + shift} not semi-periodic ({ev.certificate.reason})"
    return f"LDC from level {ev.start + shift} breaks at level {ev.first_failure + shift}"


@dataclass(frozen=True)
class OdometerVerdict:
    kind: str  # odometer-plus-fixed-point | clause-a-fails | clause-b-fails
    clause_a: bool
    clause_b: bool
    cuts: tuple[int, ...]
    finite: bool
    horizon: int
    detail: str = ""

    @property
    def exit_code(self) -> int:
        return 0 if self.kind == "odometer-plus-fixed-point" else 1

    def records(self) -> list[tuple[str, str]]:
        return [("verdict", self.kind), ("clause_a", "pass" if self.clause_a else "fail"),
                ("clause_b", "pass" if self.clause_b else "fail"),
                ("cuts", ",".join(map(str, self.cuts))), ("finite", "yes" if self.finite else "no"),
                ("horizon", str(self.horizon))] + ([("detail", self.detail)] if self.detail else [])


def _spacer_settles(diagram: OrderedDiagram, H: int) -> bool:
    if diagram.is_stationary:
        m, L = diagram.stationary_from, diagram.explicit_depth
        return all(diagram.out_degree(n, diagram.spacer(n)) == 1 for n in range(m, L + 1))
    last = min(H, diagram.explicit_depth - 1)
    return last >= 1 and diagram.out_degree(last, diagram.spacer(last)) == 1


def odometer_verdict(diagram: OrderedDiagram, horizon: int = 10) -> OdometerVerdict:
    """Odometer plus one isolated fixed path, searched for by greedy telescoping.

    Cut ``c_{i+1}`` is the first level after ``c_i`` that is semi
    ``c_{i-1}``-periodic with the same U as ``c_i`` and is itself semi
    ``c_i``-periodic, which makes telescoped level ``i`` satisfy LDC.  The
    chain is accepted when it keeps up with the horizon.
    """
    H = horizon if diagram.is_stationary else min(horizon, diagram.explicit_depth)
    clause_b = _spacer_settles(diagram, H)
    if not growth(diagram, H).passed:
        kind = "odometer-plus-fixed-point" if clause_b else "clause-b-fails"
        return OdometerVerdict(kind, True, clause_b, (0,), True, H,
                               "blocks stop growing: finitely many paths per level")
    cuts = [0, 1]
    U = None
    for n in range(2, H + 1):
        U = semi_tokens(diagram, n, 1)
        if U is not None:
            cuts.append(n)
            break
    gap = 1
    if U is not None:
        while True:
            k_prev, cur = cuts[-2], cuts[-1]
            step = None
            for nxt in range(cur + 1, H + 1):
                same = semi_tokens(diagram, nxt, k_prev)
                if same == U:
                    fresh = semi_tokens(diagram, nxt, cur)
                    if fresh is not None:
                        step = (nxt, fresh)
                        break
            if step is None:
                break
            gap = max(gap, step[0] - cur)
            cuts.append(step[0])
            U = step[1]
    clause_a = len(cuts) >= 4 and H - cuts[-1] <= gap
    if not clause_a:
        detail = ("no level is semi 1-periodic" if len(cuts) == 2
                  else f"telescoping search stalls after level {cuts[-1]}")
        return OdometerVerdict("clause-a-fails", False, clause_b, tuple(cuts), False, H, detail)
    if not clause_b:
        return OdometerVerdict("clause-b-fails", True, False, tuple(cuts), False, H,
                               "spacer vertex keeps feeding other vertices")
    return OdometerVerdict("odometer-plus-fixed-point", True, True, tuple(cuts), False, H)


__all__ = [
    "ResourceLimitError", "SemiPeriodicCertificate", "NotSemiPeriodic", "LdcReport", "DeficitBreak",
    "EventualLdc", "RankOneStructure", "RankOneRefutation", "SpacerMass", "PeriodVerdict",
    "OdometerVerdict", "NOT_APPLICABLE", "semi_k_periodic", "ldc", "ldc_via_equivalence", "ldc_from",
    "uniformly_ordered", "decomposition_unique", "rank_one_structure", "spacer_mass_partial_sums",
    "k_coding_periodicity", "odometer_verdict", "least_period", "primitive_root", "commute",
    "failure_function", "max_block_len", "level_token_semi_periodic", "semi_tokens", "factor_words",
]
