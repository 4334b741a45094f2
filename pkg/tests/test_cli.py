# Standard Library
import json

# Third-Party Library
import pytest

# My Library
from tools.hgrid import main
from utils.io import parse_address, read_embedding


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_grid_info(capsys):
    code, out, _ = run(capsys, "grid", "info", "--q", "7", "--a", "1", "--b", "0", "--radius", "3", "--quiet")
    assert code == 0
    info = json.loads(out)
    assert info["ring_sizes"] == [1, 7, 21, 56]
    assert info["d_bound"] == 2
    assert info["type_count"] == 3
    assert info["gamma"] == pytest.approx(2.6180339, abs=1e-5)


def test_grid_distance(capsys):
    code, out, _ = run(capsys, "grid", "distance", "--q", "7", "--a", "1", "--b", "0", "", "0/0", "--quiet")
    assert code == 0 and out.strip() == "2"


def test_grid_distance_trace(capsys):
    code, out, _ = run(capsys, "grid", "distance", "--trace", "0/1", "3/0/1", "--quiet")
    records = json.loads(out)
    assert code == 0 and records[-1]["level"] == 0


def test_grid_export_round_trip(capsys, grid710):
    code, out, _ = run(capsys, "grid", "export", "--radius", "2", "--quiet")
    assert code == 0
    edges = set()
    for line in out.splitlines():
        first, second = line.split(" ")
        edges.add(frozenset((grid710.vertex_at(parse_address(first)), grid710.vertex_at(parse_address(second)))))
    expected = {frozenset((v, w)) for v in grid710.ball(2) for w in grid710.neighbors(v) if grid710.depth[w] <= 2}
    assert edges == expected

    code, out, _ = run(capsys, "grid", "export", "--radius", "1", "--format", "dot", "--quiet")
    assert out.startswith("graph G {") and out.count("--") == 14


def test_binary_distance(capsys):
    code, out, _ = run(capsys, "binary", "distance", "--dims", "2", "0,6", "9,6", "--quiet")
    assert code == 0 and int(out) <= 9


def test_dhrg_round_trip(capsys, tmp_path):
    outputs = []
    for name in ("a", "b"):
        args = ["dhrg", "generate", "--n", "10", "--radius", "5", "--seed", "1",
                "--edges-out", str(tmp_path / f"{name}.edges"), "--emb-out", str(tmp_path / f"{name}.emb"), "--quiet"]
        code, out, _ = run(capsys, *args)
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]
    assert (tmp_path / "a.edges").read_bytes() == (tmp_path / "b.edges").read_bytes()
    assert (tmp_path / "a.emb").read_bytes() == (tmp_path / "b.emb").read_bytes()
    assert len(read_embedding(tmp_path / "a.emb")) == 10

    code, out, _ = run(capsys, "dhrg", "loglik", "--radius", "5", "--edges", str(tmp_path / "a.edges"),
                       "--emb", str(tmp_path / "a.emb"), "--quiet")
    assert code == 0
    assert json.loads(out)["loglik"] == pytest.approx(json.loads(outputs[0])["loglik"], rel=1e-12)

    code, out, _ = run(capsys, "dhrg", "embed", "--radius", "5", "--iters", "20", "--edges", str(tmp_path / "a.edges"),
                       "--emb", str(tmp_path / "a.emb"), "--emb-out", str(tmp_path / "c.emb"), "--quiet")
    result = json.loads(out)
    assert code == 0 and result["final"] >= result["initial"]

    code, out, _ = run(capsys, "betweenness", "--emb", str(tmp_path / "a.emb"), "--gamma", "0.5", "--quiet")
    lines = out.splitlines()
    assert code == 0 and lines[0] == "id,score" and len(lines) == 11


def test_dhrg_stats(capsys):
    code, out, _ = run(capsys, "dhrg", "stats", "--n", "50", "--radius", "3", "--quiet")
    stats = json.loads(out)
    assert code == 0 and stats["avg_degree"] > 0 and len(stats["degree_by_radius"]) == 4


def test_usage_errors_exit_with_one(capsys):
    assert run(capsys, "nonsense")[0] == 1
    assert run(capsys, "grid", "info", "--opts", "grid.q")[0] == 1
    code, _, err = run(capsys, "grid", "distance", "a/b", "0", "--quiet")
    assert code == 1 and "a/b" in err
    assert run(capsys, "binary", "distance", "x,1", "0,0", "--quiet")[0] == 1


def test_runtime_errors_exit_with_two(capsys, tmp_path):
    code, _, err = run(capsys, "grid", "distance", "", "0/9", "--quiet")
    assert code == 2 and "out of range" in err
    code, _, _ = run(capsys, "dhrg", "loglik", "--edges", str(tmp_path / "none"), "--emb", str(tmp_path / "none"))
    assert code == 2
    assert run(capsys, "grid", "info", "--q", "6", "--quiet")[0] == 2


def test_selftest(capsys):
    code, out, _ = run(capsys, "selftest", "--suite", "grid", "--num-proc", "1", "--quiet")
    report = json.loads(out)
    assert code == 0
    assert report["grid"]["passed"] == report["grid"]["checked"] > 0
