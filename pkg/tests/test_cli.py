import json
import subprocess
import sys
from pathlib import Path

import pytest

from lmda.cli import main
from lmda.fixtures import FIG1_S1
from lmda.graph import read_graph
from lmda.kernel import Kind, is_locally_minimal

DATA = Path(__file__).resolve().parent.parent / "data"
KEYS = {"algorithm", "params", "result", "seed", "wall_ms", "assertions"}


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    report = json.loads(out.out) if out.out.strip() else None
    return code, report, out.err


def test_tree_dp_fig5(capsys):
    code, rep, _ = run(capsys, "tree-dp", DATA / "fig5.txt")
    assert code == 0 and set(rep) == KEYS
    assert rep["result"]["size"] == 3
    assert rep["result"]["witness"] in ([1, 3, 4], [1, 3, 5])
    assert rep["assertions"] == {"alliance": True, "connected": True, "locally_minimal": True}


def test_oracle_p4(capsys):
    code, rep, _ = run(capsys, "oracle", DATA / "p4.txt", "--kind", "ordinary")
    assert code == 0 and rep["result"]["size"] == 2


def test_check_fig1(capsys):
    ids = ",".join(str(v + 1) for v in sorted(FIG1_S1))
    code, rep, _ = run(capsys, "check", DATA / "fig1.txt", "--set", "7,2,9,3,11,4,13,5,15,6", "--locally-minimal")
    assert code == 0 and rep["result"]["verdict"] is True
    assert rep["result"]["set"] == [int(x) for x in ids.split(",")]


def test_check_false_exits_one(capsys):
    code, rep, _ = run(capsys, "check", DATA / "p4.txt", "--set", "1,2", "--locally-minimal")
    assert code == 1 and rep["result"]["verdict"] is False


def test_schema_is_shared(capsys):
    runs = [
        ("check", DATA / "p4.txt", "--set", "2,3"),
        ("oracle", DATA / "k4.txt"),
        ("tree-dp", DATA / "fig5.txt"),
        ("color-coding", DATA / "k4.txt", "--k", "2"),
        ("nd-ilp", DATA / "k4.txt"),
        ("tw-dp", DATA / "fig1.txt"),
        ("reduce", "mmm", DATA / "k4.txt", "--k", "2"),
    ]
    for argv in runs:
        code, rep, _ = run(capsys, *argv)
        assert code == 0, argv
        assert set(rep) == KEYS
        assert rep["algorithm"] == argv[0]
        assert isinstance(rep["wall_ms"], float)


def test_witnesses_are_one_based_and_valid(capsys):
    g = read_graph(DATA / "fig1.txt")
    code, rep, _ = run(capsys, "tw-dp", DATA / "fig1.txt")
    assert code == 0 and rep["result"]["size"] == 10
    w = {v - 1 for v in rep["result"]["witness"]}
    assert min(rep["result"]["witness"]) >= 1
    assert is_locally_minimal(g, w, Kind.ORDINARY)


def test_deterministic_except_wall_time(capsys):
    argv = ("color-coding", DATA / "fig1.txt", "--k", "2", "--seed", "5")
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--threads", "4")
    a.pop("wall_ms"), b.pop("wall_ms")
    a["params"].pop("threads"), b["params"].pop("threads")
    assert a == b


def test_color_coding_miss_is_not_absence(capsys):
    code, rep, _ = run(capsys, "color-coding", DATA / "k4.txt", "--k", "4", "--max-trials", "50")
    assert code == 0 and rep["result"]["found"] is False


def test_proven_absence_exits_one(capsys):
    code, rep, _ = run(capsys, "oracle", DATA / "k4.txt", "--exact", "--k", "4", "--connected")
    assert code == 1 and rep["result"]["witness"] is None


def test_input_errors_exit_two(capsys, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 1\n1 1\n")
    code, rep, err = run(capsys, "oracle", bad)
    assert code == 2 and rep is None and "line 2" in err
    code, _, err = run(capsys, "tree-dp", DATA / "k4.txt")
    assert code == 2 and "not a tree" in err
    code, _, _ = run(capsys, "check", DATA / "p4.txt", "--set", "9")
    assert code == 2
    code, _, _ = run(capsys, "nd-ilp", DATA / "fig1.txt")
    assert code == 2
    code, _, _ = run(capsys, "oracle", tmp_path / "missing.txt")
    assert code == 2


def test_unknown_flag_exits_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["oracle", str(DATA / "p4.txt"), "--bogus"])
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_tw_dp_with_decomposition_file(capsys, tmp_path):
    td = tmp_path / "p4.td"
    td.write_text("1: 1 2\n2: 2 3\n3: 3 4\n1 2\n2 3\n")
    code, rep, _ = run(capsys, "tw-dp", DATA / "p4.txt", "--td", td)
    assert code == 0 and rep["result"]["width_used"] == 1 and rep["result"]["size"] == 2
    td.write_text("1: 1 2\n")
    code, _, err = run(capsys, "tw-dp", DATA / "p4.txt", "--td", td)
    assert code == 2 and "decomposition" in err


def test_reduce_chain_through_files(capsys, tmp_path):
    fn = tmp_path / "fn.txt"
    code, rep, _ = run(capsys, "reduce", "mmo", DATA / "single_edge_mmo.txt", "--r", "1", "--out", fn)
    assert code == 0 and rep["result"]["k"] == 8 and rep["result"]["closed_form_k"] == 7
    side = json.loads(Path(str(fn) + ".json").read_text())
    assert side["n"] == 19 and side["variant"] == "FN"
    cfn = tmp_path / "cfn.txt"
    code, rep, _ = run(capsys, "reduce", "fn2cfn", fn, "--out", cfn)
    assert code == 0 and rep["result"]["k"] == 8 + 4 * 19 + 1 and rep["result"]["connected"]
    f = tmp_path / "f.txt"
    code, rep, _ = run(capsys, "reduce", "fn2f", cfn, "--out", f)
    assert code == 0 and rep["result"]["variant"] == "F"
    ex = tmp_path / "ex.txt"
    code, rep, _ = run(capsys, "reduce", "f2exact", f, "--out", ex)
    assert code == 0 and rep["result"]["variant"] == "exact"
    side = json.loads(Path(str(ex) + ".json").read_text())
    assert side["pendants_virtual"] is True and side["forbidden"] == []


def test_reduce_without_out_embeds_edge_list(capsys):
    code, rep, _ = run(capsys, "reduce", "mmm", DATA / "k4.txt", "--k", "2")
    assert rep["result"]["k"] == 648 and rep["result"]["n"] == 986
    assert rep["result"]["edge_list"].startswith("986 ")


def test_console_script_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "lmda.cli", "oracle", str(DATA / "p4.txt")],
        capture_output=True, text=True, check=False,
    )
    assert out.returncode == 0 and json.loads(out.stdout)["result"]["size"] == 2
