import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bvperiod.words import (SPACER, StreamMatcher, Word, certifies_period, commute, failure_function,
                            find_all, first_break, format_word, least_period, longest_run, pack,
                            primitive_root, unpack)
from oracles import naive_commute, naive_occurrences, naive_period, naive_root

symbols = st.integers(min_value=-1, max_value=3)
words = st.lists(symbols, min_size=1, max_size=60).map(tuple)


def test_parse_compact_and_comma():
    assert Word.parse("0ss1") == (0, SPACER, SPACER, 1)
    assert Word.parse("0,12,s") == (0, 12, SPACER)
    assert Word.parse("") == ()


def test_format_switches_to_commas_for_big_alphabets():
    assert format_word((0, SPACER, 1)) == "0s1"
    assert format_word((0, SPACER, 11)) == "0,s,11"
    assert format_word((0, 1), alphabet_size=11) == "0,1"


def test_runs_round_trip():
    w = Word.parse("0sss1s")
    assert w.runs() == [(0, 1), (SPACER, 3), (1, 1), (SPACER, 1)]
    assert Word.from_runs(w.runs()) == w


def test_slicing_and_concat_keep_type():
    w = Word.parse("0s1")
    assert isinstance(w[1:], Word)
    assert isinstance(w + w, Word)
    assert str(w * 2) == "0s10s1"


@given(words)
def test_pack_round_trip(w):
    assert unpack(pack(w)) == w


@given(words)
def test_least_period_matches_scan(w):
    assert least_period(w) == naive_period(w)


@given(words)
def test_failure_function_borders(w):
    f = failure_function(w)
    for i in range(1, len(w) + 1):
        b = f[i]
        assert w[:b] == w[i - b:i]
        assert all(w[:x] != w[i - x:i] for x in range(b + 1, i))


@given(words)
def test_primitive_root_matches_brute_force(w):
    root, e = primitive_root(w)
    assert (tuple(root), e) == naive_root(w)


@given(words, words)
def test_commute_matches_brute_force(u, v):
    assert commute(u, v) == naive_commute(u, v)


def test_commute_with_empty():
    assert commute((), (1, 2))
    assert commute((0,), ())


def test_empty_word_rejected():
    with pytest.raises(ValueError):
        least_period(())
    with pytest.raises(ValueError):
        primitive_root(())
    with pytest.raises(ValueError):
        StreamMatcher(())


def test_certification_needs_two_copies():
    assert certifies_period("abab", 2)
    assert not certifies_period("aba", 2)


def test_first_break():
    assert first_break("abcabd", 3) == 2
    assert first_break("abab", 2) is None


@settings(max_examples=200)
@given(st.lists(st.integers(0, 2), max_size=80).map(tuple),
       st.lists(st.integers(0, 2), min_size=1, max_size=4).map(tuple),
       st.integers(1, 9))
def test_streaming_matcher_ignores_chunk_boundaries(text, pattern, chunk):
    pieces = [text[i:i + chunk] for i in range(0, len(text), chunk)]
    assert find_all(pattern, pieces) == naive_occurrences(text, pattern)


def test_overlapping_matches():
    assert find_all("aa", ["aaa", "a"]) == [0, 1, 2]


def test_longest_run():
    assert longest_run(Word.parse("0ss0sss"), SPACER) == 3
    assert longest_run((), 0) == 0


def test_periodic_words_found_at_random():
    rng = random.Random(7)
    for _ in range(200):
        base = tuple(rng.randint(0, 1) for _ in range(rng.randint(1, 9)))
        w = (base * 40)[: rng.randint(len(base), 300)]
        p = least_period(w)
        assert len(base) % p == 0 or p <= len(base)
        assert p == naive_period(w)
