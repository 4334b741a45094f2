# Standard Library
import io
import json
from pathlib import Path
from typing import Any, Iterable

# Third-Party Library
import yaml
import pandas as pd


def load_json(file_path: Path) -> Any:
    with file_path.open(mode="r") as f:
        return json.load(f)


def load_yaml(file_path: Path) -> dict[str, Any]:
    with file_path.open(mode="r") as f:
        return yaml.safe_load(f)


def dump_json(obj: Any) -> str:
    # json writes floats with repr, i.e. the shortest string that round-trips a double
    return json.dumps(obj, sort_keys=True, allow_nan=True)


def format_address(address: Iterable[int]) -> str:
    return "/".join(str(i) for i in address)


def parse_address(text: str) -> tuple[int, ...]:
    text = text.strip()
    if text == "":
        return ()
    return tuple(int(part) for part in text.split("/"))


def read_edges(file_path: Path) -> list[tuple[int, int]]:
    try:
        frame = pd.read_csv(file_path, sep=r"\s+", header=None, names=["u", "v"],
                            dtype=int, comment="#", engine="python")
    except pd.errors.EmptyDataError:
        return []
    return [(int(u), int(v)) for u, v in zip(frame["u"], frame["v"])]


def write_edges(file_path: Path, edges: Iterable[tuple[int, int]]) -> None:
    frame = pd.DataFrame(sorted(edges), columns=["u", "v"])
    file_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(file_path, sep=" ", header=False, index=False)


def read_embedding(file_path: Path) -> dict[int, tuple[int, tuple[int, ...]]]:
    """
    Reads `ID DEPTH ADDR` lines. ADDR is empty for the root, with or without the trailing separator.

    Returns:
        id -> (depth, address)
    """
    try:
        frame = pd.read_csv(file_path, sep=" ", header=None, names=["id", "depth", "addr"],
                            dtype={"id": int, "depth": int, "addr": str}, keep_default_na=False,
                            comment="#")
    except pd.errors.EmptyDataError:
        return {}
    frame["addr"] = frame["addr"].fillna("")
    return {int(i): (int(d), parse_address(a)) for i, d, a in zip(frame["id"], frame["depth"], frame["addr"])}


def write_embedding(file_path: Path, embedding: dict[int, tuple[int, ...]]) -> None:
    frame = pd.DataFrame(
        [(i, len(addr), format_address(addr)) for i, addr in sorted(embedding.items())],
        columns=["id", "depth", "addr"])
    file_path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(file_path, sep=" ", header=False, index=False)


def scores_to_csv(scores: dict[int, float]) -> str:
    frame = pd.DataFrame(sorted(scores.items()), columns=["id", "score"])
    buffer = io.StringIO()
    frame.to_csv(buffer, index=False, float_format="%.17g")
    return buffer.getvalue()
