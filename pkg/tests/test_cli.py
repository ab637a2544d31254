import json

import pytest

from localcoloring.cli import main


def call(argv):
    try:
        return main([str(a) for a in argv])
    except SystemExit as exc:
        return exc.code


@pytest.fixture
def cycle_file(tmp_path):
    path = tmp_path / "c.txt"
    assert call(["generate", "--family", "cycle", "--n", 30, "--out", path]) == 0
    return path


def test_generate_format(cycle_file):
    lines = cycle_file.read_text().splitlines()
    assert lines[0].split()[:2] == ["30", "30"]
    assert len(lines) == 31


def test_run_verify_roundtrip(tmp_path, cycle_file):
    run = tmp_path / "run.json"
    assert call(["run", "--graph", cycle_file, "--alg", "greedy-vertex", "--seed", 2,
                 "--out", run]) == 0
    data = json.loads(run.read_text())
    assert data["rounds_used"] == data["info"]["rounds"] and len(data["outputs"]) == 30
    assert call(["verify", "--run", run]) == 0
    data["outputs"][1] = data["outputs"][0]
    run.write_text(json.dumps(data))
    assert call(["verify", "--run", run]) == 1


def test_verify_graph_and_coloring(tmp_path, cycle_file):
    col = tmp_path / "col.json"
    col.write_text(json.dumps([1, 2] * 15))
    assert call(["verify", "--graph", cycle_file, "--coloring", col, "--k", 2]) == 0
    assert call(["verify", "--graph", cycle_file, "--coloring", col, "--k", 1]) == 1


def test_manifest_rerun_identical(tmp_path, cycle_file):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert call(["run", "--graph", cycle_file, "--alg", "greedy-vertex", "--ids", "bfs",
                 "--out", a]) == 0
    assert call(["run", "--manifest", a, "--out", b]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_usage_errors(tmp_path):
    assert call(["run", "--graph", tmp_path / "missing.txt"]) == 2
    assert call(["run", "--family", "cycle", "--n", 10, "--alg", "nope"]) == 2
    assert call(["frobnicate"]) == 2


def test_bench_header_only(capsys):
    assert call(["bench", "--suite", "greedy_logstar", "--sizes", ""]) == 0
    out = capsys.readouterr().out.strip().splitlines()
    assert out == ["n,seed,rounds,palette,wall_ms,verified,sweep_rounds,total_rounds,family"]


def test_bench_rows_sorted(capsys):
    assert call(["bench", "--suite", "greedy_logstar", "--sizes", "200,100",
                 "--seeds", "1,0", "--format", "json"]) == 0
    rows = json.loads(capsys.readouterr().out)["rows"]
    assert [(r["n"], r["seed"]) for r in rows] == [(100, 0), (100, 1), (200, 0), (200, 1)]
    assert all(r["verified"] for r in rows)


def test_game_output(capsys):
    assert call(["game", "--family", "cycle", "--n", 5, "--delta", 3, "--r", 1,
                 "--alg", "glocal"]) == 0
    data = json.loads(capsys.readouterr().out)
    col = data["coloring"]
    assert all(col[v] != col[(v + 1) % 5] for v in range(5))
    assert all(row.count("II") >= 1 for row in data["winners"])


def test_idgraph_output(capsys):
    assert call(["idgraph", "--n", 6, "--d", 2, "--delta", 1, "--girth-min", 5, "--seed", 0]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["found"] and data["girth"] == 6 and not data["chi_el_le_labels"]


@pytest.mark.parametrize("cmd", [
    ["vizing", "--family", "petersen"],
    ["brooks", "--family", "torus", "--w", 12, "--h", 12],
    ["match", "--family", "bipartite_regular", "--n", 40, "--d", 3],
])
def test_other_subcommands(cmd, capsys):
    assert call(cmd) == 0
    assert capsys.readouterr().out
