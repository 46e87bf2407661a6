import pytest

from bvperiod import corpus
from bvperiod.diagram import to_recursion
from bvperiod.formats import FormatError, dump_diagram, dump_recursion, load_diagram, load_recursion


@pytest.mark.parametrize("name", corpus.names())
def test_diagram_text_round_trip(name):
    d = corpus.fixture(name).diagram
    text = dump_diagram(d)
    assert text.startswith("bv 1\n")
    assert load_diagram(text) == d
    assert dump_diagram(load_diagram(text)) == text


@pytest.mark.parametrize("name", ["fig1b-rank1", "sec4-U3", "ex-all-ldc", "chacon"])
def test_recursion_text_round_trip(name):
    table = to_recursion(corpus.fixture(name).diagram)
    assert load_recursion(dump_recursion(table)) == table


def test_comments_and_blank_lines_ignored():
    text = "# chacon\nbv 1\n\nlevels 1  # one level\nlevel 1 K 1\nedge 1 1 1 1\n"
    assert load_diagram(text).dims(1) == (1, 1)


@pytest.mark.parametrize("text, needle", [
    ("", "header"),
    ("bv 1\nlevel 1 K 1\n", "levels"),
    ("bv 1\nlevels 1\nlevel 1 K x\n", "integer"),
    ("bv 1\nlevels 1\nlevel 1 K 1\nedge 1 1 2 1\n", "order values"),
    ("bv 1\nlevels 1\nlevel 1 K 1\nedge 1 1 1 1\nedge 1 1 1 1\n", "duplicate"),
    ("bv 1\nlevels 1\nlevel 1 K 1\nedge 1 1 1 1\nedge 1 7 1 1\n", "nonexistent"),
    ("bv 1\nlevels 1\nlevel 1 K 1\nbogus\n", "unrecognized"),
    ("bv 1\nlevels 2\nlevel 1 K 1\nedge 1 1 1 1\n", "level 2"),
])
def test_malformed_diagram_files(text, needle):
    with pytest.raises(FormatError, match=needle):
        load_diagram(text)


@pytest.mark.parametrize("text", [
    "bv 1\n",
    "bvrec 1\nseed 2 0\n",
    "bvrec 1\nseed 1 0,s\n",
    "bvrec 1\nseed 1 0\nblock 2 2 : 1,0\n",
    "bvrec 1\nseed 1 0\nblock 2 1 1,0\n",
])
def test_malformed_recursion_files(text):
    with pytest.raises(FormatError):
        load_recursion(text)
