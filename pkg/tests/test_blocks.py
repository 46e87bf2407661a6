import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvperiod import blocks, corpus
from bvperiod.diagram import ContractError, to_recursion
from bvperiod.words import SPACER, Word, pack
from oracles import naive_block, naive_explicit, naive_occurrences, unroll

FIXTURES = corpus.names()


def small_cases(d, max_n=4):
    top = max_n if d.is_stationary else min(max_n, d.explicit_depth)
    for n in range(1, top + 1):
        for j in range(1, d.K(n) + 2):
            for k in range(1, n + 1):
                yield n, j, k


@pytest.mark.parametrize("name", FIXTURES)
def test_blocks_match_path_enumeration(name):
    d = corpus.fixture(name).diagram
    for n, j, k in small_cases(d):
        h = blocks.basic_block(d, n, j, k)
        assert blocks.expand(h) == naive_block(d, n, j, k), (n, j, k)
        assert h.length == d.dims(n)[j - 1]


@pytest.mark.parametrize("name", ["fig1b-rank1", "sec4-U3", "ex-all-ldc", "chacon", "ex-someper"])
def test_blocks_match_unrolled_recursion(name):
    d = corpus.fixture(name).diagram
    table = to_recursion(d)
    top = 9 if d.is_stationary else d.explicit_depth
    rows = [tuple(d.recursion_row(n, j) for j in range(1, d.K(n) + 1)) for n in range(2, top + 1)]
    levels = unroll(table.seeds, rows)
    for n, words in enumerate(levels, start=1):
        for j, w in enumerate(words, start=1):
            if len(w) <= 10**4:
                assert blocks.expand(blocks.basic_block(d, n, j)) == w


def test_seed_blocks_are_consecutive_and_disjoint():
    d = corpus.fixture("fig1a").diagram
    for k in (1, 2, 3):
        seen = set()
        for j in range(1, d.K(k) + 1):
            w = blocks.expand(blocks.basic_block(d, k, j, k))
            assert list(w) == list(range(w[0], w[0] + len(w)))
            assert not seen & set(w)
            seen |= set(w)


def test_spacer_block_is_single_spacer():
    d = corpus.fixture("chacon").diagram
    h = blocks.basic_block(d, 5, 2, 3)
    assert blocks.expand(h, 0, 1) == (SPACER,)


def test_expand_windows():
    d = corpus.fixture("fig1b-rank1").diagram
    h = blocks.basic_block(d, 4, 1)
    assert str(blocks.expand(h, 3, 5)) == "0ss0s"
    assert blocks.expand(h, 0, 0) == ()
    with pytest.raises(ContractError):
        blocks.expand(h, 8, 5)
    with pytest.raises(ContractError):
        blocks.expand(h, -1, 2)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 9840), st.integers(0, 600))
def test_lazy_windows_match_flat_string(offset, length):
    d = corpus.fixture("chacon").diagram
    h = blocks.basic_block(d, 9, 1)
    assert h.flat is None
    full = _chacon_flat(9)
    length = min(length, h.length - offset)
    assert blocks.expand_packed(h, offset, length) == full[offset:offset + length]


_CHACON = {}


def _chacon_flat(n):
    if n not in _CHACON:
        w = "\x01"
        for _ in range(n - 1):
            w = w + w + "\x00" + w
        _CHACON[n] = w
    return _CHACON[n]


def test_long_spacer_runs_stream_whole():
    # one level with a spacer run longer than the flat cut-off
    from bvperiod.diagram import diagram_from_rows
    d = diagram_from_rows([1], [[[(1, 5000), (1, 0)]], [[(1, 0), (1, 0)]]])
    h = blocks.basic_block(d, 3, 1)
    w = blocks.expand(h)
    assert len(w) == h.length == 10004
    assert w.runs()[1] == (SPACER, 5000)


def test_contract_errors():
    d = corpus.fixture("chacon").diagram
    with pytest.raises(ContractError):
        blocks.basic_block(d, 2, 1, 3)
    with pytest.raises(ContractError):
        blocks.basic_block(d, 2, 3)
    with pytest.raises(ContractError):
        blocks.all_occurrences(blocks.basic_block(d, 2, 1), ())


def test_paper_occurrences():
    d = corpus.fixture("fig1b-rank1").diagram
    outer = blocks.basic_block(d, 4, 1)
    assert blocks.all_occurrences(outer, Word.parse("0ss0s")) == [0, 3, 6]
    assert blocks.explicit_positions(d, 3, 1, 4, 1) == [0, 6]
    assert blocks.explicit_positions(d, 3, 1, 3, 1) == [0]


@pytest.mark.parametrize("name", FIXTURES)
def test_explicit_positions_match_enumeration(name):
    d = corpus.fixture(name).diagram
    top = 4 if d.is_stationary else d.explicit_depth
    for m in range(2, top + 1):
        for i in range(1, d.K(m) + 2):
            for n in range(1, m + 1):
                for j in range(1, d.K(n) + 2):
                    got = blocks.explicit_positions(d, n, j, m, i)
                    assert got == naive_explicit(d, n, j, m, i), (n, j, m, i)


@pytest.mark.parametrize("name", FIXTURES)
def test_explicit_subset_of_occurrences(name):
    d = corpus.fixture(name).diagram
    top = 5 if d.is_stationary else d.explicit_depth
    for m in range(2, top + 1):
        for n in range(1, m):
            for k in range(1, n + 1):
                for i in range(1, d.K(m) + 1):
                    outer = blocks.basic_block(d, m, i, k)
                    for j in range(1, d.K(n) + 1):
                        inner = blocks.expand_packed(blocks.basic_block(d, n, j, k))
                        hits = set(blocks.all_occurrences(outer, inner))
                        explicit = blocks.explicit_positions(d, n, j, m, i, k)
                        assert set(explicit) <= hits
                        text = blocks.expand_packed(outer)
                        assert all(text[p:p + len(inner)] == inner for p in explicit)


def test_occurrences_match_naive_scan():
    d = corpus.fixture("chacon").diagram
    outer = blocks.basic_block(d, 8, 1)
    text = blocks.expand_packed(outer)
    for pat in ["\x01\x00\x01", "\x00\x00", "\x01\x01\x01\x01"]:
        assert blocks.all_occurrences(outer, pat) == naive_occurrences(text, pat)


def test_vertex_coding_example():
    d = corpus.fixture("sec4-U3").diagram
    assert blocks.vertex_coding(d, 3, 1, 2) == (1, 4, 3, 4, 4, 2, 4, 3)
    assert blocks.vertex_coding(d, 3, 3, 2) == (4,)


@pytest.mark.parametrize("name", FIXTURES)
def test_vertex_coding_expands_back(name):
    d = corpus.fixture(name).diagram
    top = 5 if d.is_stationary else d.explicit_depth
    for n in range(1, top + 1):
        for k in range(1, n + 1):
            for j in range(1, d.K(n) + 2):
                word = "".join(blocks.expand_packed(blocks.basic_block(d, k, v, k))
                               for v in blocks.vertex_coding(d, n, j, k))
                assert word == blocks.expand_packed(blocks.basic_block(d, n, j, k))


@pytest.mark.parametrize("name", FIXTURES)
def test_factor_map_is_natural(name):
    d = corpus.fixture(name).diagram
    top = 5 if d.is_stationary else d.explicit_depth
    rng = random.Random(name)
    for n in range(1, top + 1):
        for k in range(1, n + 1):
            for kp in range(1, k + 1):
                for j in range(1, d.K(n) + 2):
                    big = blocks.expand(blocks.basic_block(d, n, j, k))
                    assert blocks.factor_map(d, big, k, kp) == blocks.expand(blocks.basic_block(d, n, j, kp))
                for kpp in range(1, kp + 1):
                    size = d.alphabet_size(k) - 1
                    w = [rng.choice([SPACER] + list(range(size))) for _ in range(50)]
                    two_step = blocks.factor_map(d, blocks.factor_map(d, w, k, kp), kp, kpp)
                    assert two_step == blocks.factor_map(d, w, k, kpp)
                    assert blocks.factor_map_packed(d, pack(w), k, kpp) == pack(blocks.factor_map(d, w, k, kpp))


def test_factor_map_example():
    d = corpus.fixture("ex-someper").diagram
    w = blocks.expand(blocks.basic_block(d, 3, 1, 2))
    assert str(blocks.factor_map(d, w, 2, 1)) == "01ss01s"
    assert blocks.factor_map(d, w, 2, 2) == w
    with pytest.raises(ContractError):
        blocks.factor_map(d, w, 1, 2)


def test_alphabet_locate_inverts_symbols():
    d = corpus.fixture("fig1a").diagram
    alpha = blocks.alphabet(d, 2)
    for j in range(1, d.K(2) + 1):
        for r, sym in enumerate(alpha.symbols(j)):
            assert alpha.locate(sym) == (j, r)
    assert alpha.locate(SPACER) == (d.K(2) + 1, 0)
    with pytest.raises(ValueError):
        alpha.locate(alpha.size)


def test_deep_handles_are_not_materialized():
    d = corpus.fixture("chacon").diagram
    h = blocks.basic_block(d, 40, 1)
    assert h.length == (3 ** 40 - 1) // 2
    assert h.flat is None
    assert blocks.expand_packed(h, 0, 13) == _chacon_flat(4)[:13]
