import io
import re
import subprocess
import sys

import pytest

from bvperiod import corpus
from bvperiod.cli import export_dot, run
from bvperiod.formats import load_diagram


def bv(*argv):
    out = io.StringIO()
    code = run(list(argv), out)
    return code, out.getvalue()


def records(text):
    return dict(line.split("\t", 1) for line in text.splitlines())


def test_period_periodic():
    code, text = bv("period", "--fixture", "ex-someper", "--k", "1")
    assert code == 0
    assert "verdict periodic" in text.splitlines()
    assert "period 01ss" in text.splitlines()


def test_period_aperiodic_records():
    code, text = bv("period", "--fixture", "ex-someper", "--k", "2", "--records")
    assert code == 1
    assert records(text)["verdict"] == "aperiodic"


def test_horizon_limited_exit_code():
    code, text = bv("period", "--fixture", "fig2a-two-minimal", "--records")
    assert code == 3
    assert records(text)["verdict"] == "multi-minimal"


def test_blocks():
    code, text = bv("blocks", "--fixture", "fig1b-rank1", "--level", "4", "--vertex", "1", "--k", "1")
    assert (code, text) == (0, "0ss0ss0ss0s\n")
    code, text = bv("blocks", "--fixture", "fig1b", "--level", "4", "--vertex", "1",
                    "--offset", "3", "--length", "5", "--records")
    assert records(text) == {"length": "11", "block": "0ss0s"}


def test_blocks_length_ceiling():
    code, _ = bv("blocks", "--fixture", "chacon", "--level", "12", "--vertex", "1")
    assert code == 70
    code, text = bv("blocks", "--fixture", "chacon", "--level", "12", "--vertex", "1", "--length", "9")
    assert (code, text) == (0, "00s000s0s\n")


def test_coding_and_carry_exhaustion():
    code, text = bv("coding", "--fixture", "chacon", "--start", "min:1,1", "--len", "9")
    assert (code, text) == (0, "00s000s0s\n")
    code, text = bv("coding", "--fixture", "sec4-U3", "--start", "min:3,1", "--len", "100", "--records")
    assert code == 2
    assert records(text)["reason"] == "carry-overflow"
    code, text = bv("coding", "--fixture", "chacon", "--start", "spacer", "--len", "3")
    assert (code, text) == (0, "sss\n")


def test_semi_and_ldc():
    code, text = bv("semi", "--fixture", "sec4-U3", "--level", "3", "--records")
    assert code == 0
    assert records(text) == {"semi": "pass", "U": "0s1s1s0", "c": "2", "t": "1,1", "l": "0,1"}
    code, _ = bv("semi", "--fixture", "sec4-U3", "--level", "2")
    assert code == 1
    code, text = bv("ldc", "--fixture", "ex-all-ldc", "--level", "2", "--records")
    assert code == 0 and records(text)["ldc"] == "pass"
    code, text = bv("ldc", "--fixture", "sec4-U3", "--level", "2", "--records")
    assert code == 1 and records(text)["ldc"] == "fail"


def test_validate():
    code, text = bv("validate", "--fixture", "chacon", "--records")
    assert code == 0
    assert records(text)["c4"] == "pass"


def test_verdict_sweep_is_ordered_and_thread_independent():
    one = bv("verdict", "--fixture", "ex-all-ldc", "--sweep", "--horizon", "6", "--records")
    many = bv("verdict", "--fixture", "ex-all-ldc", "--sweep", "--horizon", "6", "--threads", "4", "--records")
    assert one == many
    keys = [line.split("\t")[0] for line in one[1].splitlines()]
    pairs = [tuple(map(int, key.split(".")[1:])) for key in keys]
    assert pairs == sorted(pairs)


def test_verdict_odometer():
    code, text = bv("verdict", "--fixture", "chacon", "--odometer", "--records")
    assert code == 1 and records(text)["verdict"] == "clause-a-fails"
    code, text = bv("verdict", "--fixture", "parallel-columns", "--odometer", "--records")
    assert code == 0 and records(text)["finite"] == "yes"


def test_telescope_output_loads(tmp_path):
    code, text = bv("telescope", "--fixture", "chacon", "--cuts", "0,2")
    assert code == 0
    d = load_diagram(text)
    assert d.dims(1)[0] == 4
    path = tmp_path / "t.bv"
    path.write_text(text)
    assert bv("blocks", "--file", str(path), "--level", "1", "--vertex", "1")[1] == "0123\n"


@pytest.mark.parametrize("name", corpus.names())
def test_fixture_files_round_trip(tmp_path, name):
    for extra in ([], ["--recursion"]):
        code, text = bv("fixtures", "--emit", name, *extra)
        if code != 0:
            assert extra
            continue
        path = tmp_path / f"{name}.txt"
        path.write_text(text)
        assert bv("validate", "--file", str(path), "--records") == bv("validate", "--fixture", name, "--records")


def test_fixture_listing():
    code, text = bv("fixtures", "--records")
    assert code == 0
    assert [line.split("\t")[0] for line in text.splitlines()] == corpus.names()


def test_generated_fixtures_are_seeded():
    a = bv("fixtures", "--generate", "ldc", "--seed", "9", "--K", "3")
    b = bv("fixtures", "--generate", "ldc", "--seed", "9", "--K", "3")
    c = bv("fixtures", "--generate", "ldc", "--seed", "10", "--K", "3")
    assert a == b and a != c


def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as exc:
        run(["period"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        run(["nonsense"])
    assert exc.value.code == 64
    assert bv("period", "--fixture", "nope")[0] == 64
    assert bv("semi", "--fixture", "chacon", "--level", "2", "--k", "3")[0] == 64
    assert bv("coding", "--fixture", "chacon", "--start", "max:1", "--len", "3")[0] == 64
    assert bv("telescope", "--fixture", "chacon", "--cuts", "0,x")[0] == 64
    assert "usage" in capsys.readouterr().err


def test_file_errors_exit_66(tmp_path):
    assert bv("validate", "--file", str(tmp_path / "missing.bv"))[0] == 66
    bad = tmp_path / "bad.bv"
    bad.write_text("bv 1\nlevels 1\n")
    assert bv("validate", "--file", str(bad))[0] == 66


def test_resource_limit_exit_70(monkeypatch, capsys):
    monkeypatch.setenv("BV_MAX_BLOCK_LEN", "50")
    assert bv("semi", "--fixture", "chacon", "--level", "6")[0] == 70
    assert "advisory" in capsys.readouterr().err


def test_dot_structure():
    d = corpus.fixture("chacon").diagram
    text = export_dot(d, 3)
    assert 'v_1_1 -> v_2_1 [label="1"];' in text
    assert text.count("rank=same") == 3
    assert text == export_dot(d, 3)
    nodes = set(re.findall(r"v_\d+_\d+", text))
    assert len(nodes) == 1 + sum(d.K(n) + 1 for n in range(1, 4))
    edges = re.findall(r"(v_\d+_\d+) -> (v_\d+_\d+) \[label=\"(\d+)\"\]", text)
    assert len(edges) == sum(len(s) for n in range(1, 4) for s in d.level(n).inputs)
    assert "v_2_2 [shape=box];" in text


def test_dot_depth_one():
    text = export_dot(corpus.fixture("fig1a").diagram, 1)
    assert text.count("rank=same") == 1
    assert "v_2_" not in text
    assert bv("dot", "--fixture", "fig1a", "--depth", "1") == (0, text)
    assert bv("dot", "--fixture", "fig1a", "--depth", "0")[0] == 64


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bvperiod.cli", "period", "--fixture", "ex-someper",
                           "--k", "1", "--records"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert records(proc.stdout)["period"] == "01ss"
