# Standard Library
import json
import argparse

# Third-Party Library
import pytest

# My Library
from utils.config import ConfigNode, merge_cmd_config, parse_yaml_config, to_value
from utils.errors import HyperGridError, InvalidAddress, UsageError
from utils.io import (dump_json, format_address, parse_address, read_edges, read_embedding, scores_to_csv,
                      write_edges, write_embedding)


def test_defaults_and_variables():
    config = parse_yaml_config()
    assert config.grid.q == 7 and config.grid.radius == 3
    assert config.dhrg.alpha is None
    assert config.dhrg.edges_out == "./runs/edges.txt"
    assert config.metrics.gamma_tol == pytest.approx(1e-7)


def test_layering(tmp_path):
    extra = tmp_path / "run.json"
    extra.write_text(json.dumps({"radius": 5, "seed": 3, "dhrg.T": 2.0}))
    args = argparse.Namespace(config_json=str(extra), radius=None, seed=4, opts=["dhrg.n", "12"], command="dhrg")
    config = merge_cmd_config(args, parse_yaml_config(), "dhrg")
    assert config.dhrg.radius == 5
    assert config.dhrg.seed == 4
    assert config.dhrg.T == 2.0
    assert config.dhrg.n == 12


def test_bad_opts():
    args = argparse.Namespace(opts=["dhrg.n"])
    with pytest.raises(UsageError):
        merge_cmd_config(args, parse_yaml_config(), "dhrg")
    args = argparse.Namespace(opts=["nowhere.n", "1"])
    with pytest.raises(UsageError):
        merge_cmd_config(args, parse_yaml_config(), "dhrg")


def test_config_node():
    node = ConfigNode(init_dict={"a": {"b": 1}})
    assert node.a.b == 1
    assert "b: 1" in str(node)
    assert to_value("1e-4") == 1e-4 and to_value("abc") == "abc"


def test_error_details_and_exit_codes():
    e = InvalidAddress("child index out of range", index=7)
    assert "index=" in str(e) and e.exit_code == 2
    assert UsageError().exit_code == 1
    assert isinstance(e, HyperGridError)


def test_addresses():
    assert format_address(()) == ""
    assert parse_address("") == ()
    assert parse_address("0/2/1") == (0, 2, 1)
    assert format_address((0, 2, 1)) == "0/2/1"


def test_edge_and_embedding_files(tmp_path):
    edges = {(1, 2), (2, 5)}
    write_edges(tmp_path / "e.txt", edges)
    assert sorted(read_edges(tmp_path / "e.txt")) == sorted(edges)

    emb = {1: (), 2: (0, 3), 3: (6,)}
    write_embedding(tmp_path / "m.txt", emb)
    assert (tmp_path / "m.txt").read_text().splitlines()[0].rstrip() == "1 0"
    assert read_embedding(tmp_path / "m.txt") == {1: (0, ()), 2: (2, (0, 3)), 3: (1, (6,))}


def test_embedding_root_without_trailing_separator(tmp_path):
    (tmp_path / "m.txt").write_text("# id depth addr\n1 0\n2 2 0/3\n4 0 \n")
    assert read_embedding(tmp_path / "m.txt") == {1: (0, ()), 2: (2, (0, 3)), 4: (0, ())}


def test_empty_edge_file(tmp_path):
    (tmp_path / "e.txt").write_text("")
    assert read_edges(tmp_path / "e.txt") == []


def test_json_and_csv():
    assert dump_json({"b": 0.1, "a": 1}) == '{"a": 1, "b": 0.1}'
    assert scores_to_csv({2: 0.5, 1: 1.0}).splitlines() == ["id,score", "1,1", "2,0.5"]
