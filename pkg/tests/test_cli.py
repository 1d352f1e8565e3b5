import json
import subprocess
import sys
import time

import pytest

from roadmatch import pipeline
from roadmatch.cli import main
from roadmatch.io import load_instance

PATH_INSTANCE = {
    "vertices": ["u", "v", "w"],
    "roads": [
        {"id": "r1", "tail": "u", "head": "v", "length": 1.0},
        {"id": "r2", "tail": "v", "head": "w", "length": 1.0},
    ],
    "S": [{"road": "r1", "y": 0.5}],
    "T": [{"road": "r2", "y": 0.5}],
}


@pytest.fixture
def write_json(tmp_path):
    def write(obj, name="inst.json"):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    return write


def run_solve(capsys, *argv):
    code = main(["solve", *argv])
    return code, capsys.readouterr()


def test_solve_path_instance(write_json, capsys):
    code, out = run_solve(capsys, write_json(PATH_INSTANCE), "--audit", "--oracle")
    assert code == 0
    report = json.loads(out.out)
    assert report["cost"] == pytest.approx(1.0)
    assert report["matches"] == [{"s": 0, "t": 0, "distance": pytest.approx(1.0)}]
    assert report["flow"] == {"r1": 0, "r2": 1}
    assert set(report["stats"]) == {"phases", "sp_calls", "ms_transcribe", "ms_solve", "ms_construct"}


def test_solve_empty(write_json, capsys):
    code, out = run_solve(capsys, write_json(dict(PATH_INSTANCE, S=[], T=[])))
    assert code == 0
    report = json.loads(out.out)
    assert report["cost"] == 0.0 and report["matches"] == []


def test_solve_cardinality_mismatch(write_json, capsys):
    code, out = run_solve(capsys, write_json(dict(PATH_INSTANCE, T=[])))
    assert code == 1
    assert "CardinalityMismatch" in out.err


def test_solve_parse_error(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, out = run_solve(capsys, str(p))
    assert code == 1 and "ParseError" in out.err


def test_solve_missing_file(tmp_path, capsys):
    code, _ = run_solve(capsys, str(tmp_path / "absent.json"))
    assert code == 1


def test_oracle_mismatch_exit_code(write_json, capsys, monkeypatch):
    monkeypatch.setattr(pipeline, "hungarian_min_cost", lambda c: ([0], 99.0))
    code, out = run_solve(capsys, write_json(PATH_INSTANCE), "--oracle")
    assert code == 2
    assert "99.0" in out.err and "1.0" in out.err


def test_solve_output_file(write_json, tmp_path, capsys):
    out_path = tmp_path / "report.json"
    code, out = run_solve(capsys, write_json(PATH_INSTANCE), "--output", str(out_path))
    assert code == 0 and out.out == ""
    assert json.loads(out_path.read_text())["cost"] == pytest.approx(1.0)


def generate(tmp_path, name, *args):
    p = tmp_path / name
    assert main(["generate", *args, "--output", str(p)]) == 0
    return p


def test_generate_loop_instance(tmp_path):
    p = generate(tmp_path, "g.json", "--seed", "1", "--vertices", "1", "--roads", "1", "--points", "10")
    inst = load_instance(p)
    road = inst.roadmap.roads[0]
    assert road.tail == road.head
    assert len(inst.S) + len(inst.T) == 20


def test_generate_connected(tmp_path):
    p = generate(tmp_path, "g.json", "--seed", "7", "--vertices", "5", "--roads", "8", "--points", "100")
    inst = load_instance(p)  # validation rejects disconnected roadmaps
    assert inst.roadmap.n_vertices == 5 and inst.roadmap.n_roads == 8
    assert inst.M == 100


def test_generate_deterministic(tmp_path):
    args = ("--seed", "7", "--vertices", "5", "--roads", "8", "--points", "30")
    a = generate(tmp_path, "a.json", *args)
    b = generate(tmp_path, "b.json", *args)
    assert a.read_bytes() == b.read_bytes()
    # one list element per line
    assert len(a.read_text().splitlines()) > 30


def test_generate_invalid_params(tmp_path, capsys):
    code = main(["generate", "--seed", "1", "--vertices", "5", "--roads", "2", "--points", "3"])
    assert code == 1
    assert "InvalidParams" in capsys.readouterr().err


@pytest.mark.parametrize("seed", range(20))
def test_generate_solve_roundtrip(tmp_path, capsys, seed):
    n = 1 + seed % 5
    p = generate(
        tmp_path, "g.json", "--seed", str(seed), "--vertices", str(n),
        "--roads", str(n + seed % 4), "--points", str(seed % 11),
    )
    capsys.readouterr()
    t0 = time.perf_counter()
    code, out = run_solve(capsys, str(p), "--audit", "--oracle")
    wall = (time.perf_counter() - t0) * 1e3
    assert code == 0
    report = json.loads(out.out)
    stats = report["stats"]
    stage = [stats["ms_transcribe"], stats["ms_solve"], stats["ms_construct"]]
    assert min(stage) >= 0 and sum(stage) <= wall
    total = sum(m["distance"] for m in report["matches"])
    assert report["cost"] == pytest.approx(total, rel=1e-9, abs=1e-12)


def test_bench_csv(tmp_path, capsys):
    p = generate(tmp_path, "g.json", "--seed", "3", "--vertices", "4", "--roads", "10", "--points", "0")
    capsys.readouterr()
    assert main(["bench", "--roadmap", str(p), "--points", "10,100", "--seed", "0"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "M,ms_total,ms_solve"
    assert [int(l.split(",")[0]) for l in lines[1:]] == [10, 100]


def test_module_entry_point(write_json):
    proc = subprocess.run(
        [sys.executable, "-m", "roadmatch.cli", "solve", write_json(PATH_INSTANCE)],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["cost"] == pytest.approx(1.0)
