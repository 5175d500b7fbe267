import json
import subprocess
import sys

import pytest

from emso_lab import experiments as ex
from emso_lab.cli import main
from emso_lab.constructions import build_W, complete_graph, empty_graph
from emso_lab.graph import sample_gnp
from emso_lab.graphio import load_graph, read_graph6


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sample_prints_graph6_lines(capsys):
    code, out, _ = run(capsys, "sample", "--n", "10", "--p", "0.5", "--seed", "1", "--samples", "3")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3
    assert [read_graph6(s) for s in lines] == [sample_gnp(10, 0.5, 1, stream=i) for i in range(3)]


def test_sample_to_edge_list_file(tmp_path, capsys):
    path = tmp_path / "g.txt"
    code, out, _ = run(capsys, "sample", "--n", "8", "--seed", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert load_graph(path) == sample_gnp(8, 0.5, 2, stream=0)
    assert path.read_text().split()[0] == "8"


def test_decide(tmp_graph_file, capsys):
    path = tmp_graph_file(complete_graph(4))
    code, out, _ = run(capsys, "decide", path, "--target", "phiC1", "--target", "phiI1")
    meta, rows = ex.read_csv(out)
    assert code == 0 and meta["targets"] == ["phiC1", "phiI1"]
    assert [(r["target"], r["value"]) for r in rows] == [("phiC1", "false"), ("phiI1", "true")]


def test_classify_files_and_json(tmp_graph_file, capsys):
    a = tmp_graph_file(complete_graph(4), "a.txt")
    b = tmp_graph_file(empty_graph(3), "b.txt")
    code, out, _ = run(capsys, "classify", a, b, "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == ex.SCHEMA
    assert [r["graph"] for r in doc["rows"]] == [a, b]
    assert doc["rows"][0] == {"graph": a, **ex.classify_graph(complete_graph(4))}


def test_classify_sampled(capsys):
    code, out, _ = run(capsys, "classify", "--n", "9", "--samples", "4", "--seed", "3")
    meta, rows = ex.read_csv(out)
    assert code == 0 and len(rows) == 4 and meta["seed"] == 3


def test_game(tmp_graph_file, capsys):
    a = tmp_graph_file(complete_graph(2), "a.txt")
    b = tmp_graph_file(empty_graph(2), "b.txt")
    code, out, _ = run(capsys, "game", "solve", "--a", a, "--b", b, "--trace")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "Spoiler" and len(lines) == 7
    assert lines[1].startswith("round 1: Spoiler plays")
    code, out, _ = run(capsys, "game", "solve", "--a", a, "--b", a)
    assert out == "Duplicator\n"


def test_moments_columns(capsys):
    code, out, _ = run(capsys, "moments", "--n", "1000", "--p", "0.5", "--k", "3:5")
    meta, rows = ex.read_csv(out)
    assert code == 0
    assert list(rows[0]) == ["k", "log_n", "log_EX1", "log_EX2", "log_var_bound", "k_star", "best_k"]
    assert [r["k"] for r in rows] == ["3", "4", "5"]


def test_moments_oscillation(capsys):
    code, out, _ = run(capsys, "moments", "--oscillation", "--p", "0.381966", "--k", "30,40")
    _, rows = ex.read_csv(out)
    assert code == 0 and [r["k"] for r in rows] == ["30", "40"]


def test_moments_needs_one_size(capsys):
    with pytest.raises(SystemExit):
        main(["moments", "--p", "0.5"])


def test_witness_search_and_check(tmp_graph_file, capsys):
    path = tmp_graph_file(build_W(2))
    code, out, _ = run(capsys, "witness", "search", "--graph", path, "--a", "2")
    assert code == 0 and out == "X " + " ".join(map(str, range(7))) + "\n"
    path = tmp_graph_file(empty_graph(3), "e.txt")
    code, out, _ = run(capsys, "witness", "search", "--graph", path, "--a", "2")
    assert out == "none\n"
    code, out, _ = run(capsys, "witness", "check", "--a", "4", "--repaired")
    assert code == 0 and "fail" not in out and out.count("pass") == 7 + 21


def test_sweep_thread_invariance(tmp_path, capsys):
    args = ["sweep", "--target", "phiI1", "--n-grid", "8,12", "--p-grid", "0.3,0.7", "--samples", "30",
            "--seed", "5"]
    outs = []
    for threads in ("1", "2"):
        path = tmp_path / f"s{threads}.csv"
        assert main(args + ["--threads", threads, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]
    meta, rows = ex.read_csv(outs[0].decode())
    assert len(rows) == 4 and "threads" not in meta


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "run.ini"
    cfg.write_text("target = phiC3\nn = 12\np-grid = 0.2,0.4\nsamples = 7\n")
    code, out, _ = run(capsys, "sweep", "--config", str(cfg), "--seed", "9")
    meta, rows = ex.read_csv(out)
    assert code == 0 and meta["target"] == "phiC3" and meta["seed"] == 9 and meta["p_grid"] == [0.2, 0.4]
    code, out, _ = run(capsys, "sweep", "--config", str(cfg), "--samples", "3")
    assert ex.read_csv(out)[0]["samples"] == 3
    cfg.write_text("colour = blue\n")
    with pytest.raises(SystemExit):
        main(["sweep", "--config", str(cfg)])


def test_errors_exit_with_status_two(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--target", "bogus")
    assert code == 2 and "unknown target" in err
    code, _, err = run(capsys, "decide", str(tmp_path / "missing.txt"))
    assert code == 2


def test_console_script_entry_point():
    out = subprocess.run([sys.executable, "-m", "emso_lab.cli", "sample", "--n", "5", "--seed", "0"],
                         capture_output=True, text=True, check=True)
    assert read_graph6(out.stdout.strip()) == sample_gnp(5, 0.5, 0)
