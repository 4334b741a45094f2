"""
Command-line tool for regularly generated hyperbolic grids: grid queries, distances on the binary
grid, DHRG generation / likelihood / embedding / statistics, pseudo-betweenness and self tests.

    python -m tools.hgrid grid info --q 7 --a 1 --b 0 --radius 3
    python -m tools.hgrid dhrg generate --n 10 --radius 5 --seed 1 --edges-out e.txt --emb-out m.txt
"""

# Standard Library
import sys
import argparse
from pathlib import Path
from typing import Callable, Sequence

# My Library
from utils.color import error, info, green, report, set_quiet
from utils.config import ConfigNode, get_config
from utils.errors import HyperGridError, OutOfBall, UsageError
from utils.io import (dump_json, format_address, load_json, parse_address, read_edges, read_embedding,
                      scores_to_csv, write_edges, write_embedding)
from tessellation.rght import Grid, GridParams
from tessellation.goldberg import derive_type_table
from tessellation.metrics import compute_d_bound, growth_constant
from stg.rght_stg import rght_stg
from stg.binary import binary_stg
from stg.distance import stg_distance, stg_distance_trace
from dhrg.model import DhrgModel, default_alpha, make_model
from dhrg.instance import DhrgInstance, dhrg_from_embedding, dhrg_generate
from dhrg.search import dhrg_local_search
from dhrg.stats import dhrg_expected_stats, dhrg_monte_carlo
from centrality.betweenness import pseudo_betweenness

from .selftest import SUITES, run_suites


# helpers


def build_grid(config: ConfigNode, section: str) -> Grid:
    node = config[section]
    params = GridParams(int(node.q), int(node.a), int(node.b)).canonical()
    if (params.a, params.b) == (1, 0):
        return Grid(params)
    g = config.goldberg
    table = derive_type_table(params.q, params.a, params.b, start_radius=int(g.start_radius),
                              max_radius=int(g.max_radius), margin=int(g.margin))
    return Grid(params, table)


def build_model(config: ConfigNode, grid: Grid, n: int | None = None, radius: int | None = None) -> DhrgModel:
    node = config.dhrg
    n = int(node.n) if n is None else n
    radius = int(node.radius) if radius is None else radius
    alpha = node.get("alpha")
    if alpha is None:
        alpha = default_alpha(grid, float(node.alpha_ratio))
    conn = None
    if node.get("conn_json"):
        conn = load_json(Path(node.conn_json))
        if not isinstance(conn, list):
            raise UsageError("--conn-json must hold a JSON list", file=node.conn_json)
    return make_model(n, radius, alpha=float(alpha), T=float(node.T), Rprime=float(node.Rprime), conn=conn)


def load_instance(config: ConfigNode, grid: Grid) -> DhrgInstance:
    node = config.dhrg
    if not node.get("edges") or not node.get("emb"):
        raise UsageError("--edges and --emb are required")
    rows = read_embedding(Path(node.emb))
    emb = {v: grid.vertex_at(address) for v, (_, address) in rows.items()}
    depth = max((len(address) for _, address in rows.values()), default=0)
    radius = int(node.radius)
    if depth > radius:
        raise OutOfBall("embedding reaches beyond --radius", depth=depth, radius=radius)
    model = build_model(config, grid, n=len(emb), radius=radius)
    return dhrg_from_embedding(model, grid, emb, read_edges(Path(node.edges)))


def parse_point(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError("points are written x1,...,x_{d-1},t", point=text)


def parse_vertex(text: str) -> tuple[int, ...]:
    try:
        return parse_address(text)
    except ValueError:
        raise UsageError("addresses are written c1/c2/.../cn", address=text)


# grid


def grid_info(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    radius = int(config.grid.radius)
    return dump_json({
        "ring_sizes": [grid.ring_size(k) for k in range(radius + 1)],
        "type_count": grid.table.num_types,
        "d_bound": compute_d_bound(grid, int(config.metrics.overflow_factor)),
        "gamma": growth_constant(grid, float(config.metrics.gamma_tol), int(config.metrics.max_power_iterations)),
    })


def grid_export(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    radius = int(config.grid.radius)
    edges = set()
    for v in grid.ball(radius):
        for w in grid.neighbors(v):
            if grid.depth[w] <= radius:
                a, b = grid.address_of(v), grid.address_of(w)
                edges.add((min(a, b), max(a, b)))
    fmt = config.grid.format
    if fmt == "edgelist":
        return "\n".join(f"{format_address(a)} {format_address(b)}" for a, b in sorted(edges))
    if fmt == "dot":
        lines = [f'  "{format_address(a)}" -- "{format_address(b)}";' for a, b in sorted(edges)]
        return "\n".join(["graph G {", *lines, "}"])
    raise UsageError("unknown export format", format=fmt)


def grid_distance(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    stg = rght_stg(grid)
    s1 = stg.node_of(grid.vertex_at(parse_vertex(config.grid.first)))
    s2 = stg.node_of(grid.vertex_at(parse_vertex(config.grid.second)))
    if config.grid.get("trace"):
        return dump_json([
            {"level": r.level, "first": format_address(grid.address_of(r.first[0])), "first_length": r.first[1],
             "second": format_address(grid.address_of(r.second[0])), "second_length": r.second[1],
             "near_distance": r.near_distance, "candidate": r.candidate}
            for r in stg_distance_trace(stg, s1, s2)])
    return str(stg_distance(stg, s1, s2))


def binary_distance(config: ConfigNode) -> str:
    dims = int(config.binary.dims)
    stg = binary_stg(dims)
    p1, p2 = parse_point(config.binary.first), parse_point(config.binary.second)
    for p in (p1, p2):
        if len(p) != dims or not stg.contains(p):
            raise UsageError("point is not a descendant of 0", point=",".join(map(str, p)), dims=dims)
    return str(stg_distance(stg, p1, p2))


# dhrg


def dhrg_generate_cmd(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    model = build_model(config, grid)
    inst = dhrg_generate(model, grid, int(config.dhrg.seed))
    write_edges(Path(config.dhrg.edges_out), inst.edges)
    write_embedding(Path(config.dhrg.emb_out), inst.embedding_addresses())
    report(info(f"wrote {green(len(inst.edges))} edges to {green(config.dhrg.edges_out)}"))
    return dump_json({"n": model.n, "m": len(inst.edges), "loglik": inst.loglik()})


def dhrg_loglik_cmd(config: ConfigNode) -> str:
    inst = load_instance(config, build_grid(config, "grid"))
    return dump_json({"loglik": inst.loglik()})


def dhrg_embed_cmd(config: ConfigNode) -> str:
    inst = load_instance(config, build_grid(config, "grid"))
    initial = inst.loglik()
    log = dhrg_local_search(inst, int(config.dhrg.iters), int(config.dhrg.seed))
    write_embedding(Path(config.dhrg.emb_out), inst.embedding_addresses())
    return dump_json({"initial": initial, "final": inst.loglik(), "accepted": len(log.accepted)})


def dhrg_stats_cmd(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    model = build_model(config, grid)
    out = dict(dhrg_expected_stats(model, grid))
    samples = config.dhrg.get("monte_carlo")
    if samples:
        out["monte_carlo"] = dict(dhrg_monte_carlo(model, grid, int(samples), int(config.dhrg.seed)))
    return dump_json(out)


# centrality and tests


def betweenness_cmd(config: ConfigNode) -> str:
    grid = build_grid(config, "grid")
    node = config.centrality
    if not node.get("emb"):
        raise UsageError("--emb is required")
    rows = read_embedding(Path(node.emb))
    if node.get("edges"):
        read_edges(Path(node.edges))
    emb = {v: grid.vertex_at(address) for v, (_, address) in rows.items()}
    radius = max((len(address) for _, address in rows.values()), default=0)
    result = pseudo_betweenness(rght_stg(grid), radius, emb, float(node.gamma),
                                exclude_degenerate=bool(node.exclude_degenerate))
    return scores_to_csv(result.scores).rstrip("\n")


def selftest_cmd(config: ConfigNode) -> str:
    node = config.selftest
    names = list(SUITES) if node.suite in (None, "all") else [node.suite]
    for name in names:
        if name not in SUITES:
            raise UsageError("unknown selftest suite", suite=name, known=",".join(SUITES))
    num_proc = int(node.num_proc) if node.get("num_proc") else None
    return dump_json(run_suites(names, int(node.seed), num_proc))


def count_selftest_cmd(config: ConfigNode) -> str:
    return dump_json(run_suites(["counter"], int(config.selftest.seed), 1))


# argument parsing


def add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config-json", type=str, default=None, help="JSON object mirroring the flags")
    parser.add_argument("--opts", nargs="+", default=None, help="section.key value pairs overriding the config")
    parser.add_argument("--quiet", action="store_true", default=None, help="silence status lines")


def add_grid_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--q", type=int, default=None, help="degree of the underlying {3,q} tessellation")
    parser.add_argument("--a", type=int, default=None, help="Goldberg-Coxeter parameter a")
    parser.add_argument("--b", type=int, default=None, help="Goldberg-Coxeter parameter b")


def add_model_params(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int, default=None, help="number of vertices")
    parser.add_argument("--radius", type=int, default=None, help="vertices are placed in B_radius")
    parser.add_argument("--alpha", type=float, default=None, help="radial density exp(alpha * r)")
    parser.add_argument("--T", type=float, default=None, help="logistic temperature")
    parser.add_argument("--Rprime", type=float, default=None, help="logistic offset")
    parser.add_argument("--conn-json", type=str, default=None, help="explicit connection table")
    parser.add_argument("--seed", type=int, default=None, help="random seed")


def get_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(description="Command-Line tool for regularly generated hyperbolic grids")
    commands = parser.add_subparsers(dest="command", required=True)

    def leaf(group, name: str, handler: Callable[[ConfigNode], str], section: str, help_text: str):
        sub = group.add_parser(name, help=help_text)
        sub.set_defaults(handler=handler, section=section)
        add_common(sub)
        return sub

    grid = commands.add_parser("grid", help="grid structure queries").add_subparsers(dest="action", required=True)
    sub = leaf(grid, "info", grid_info, "grid", "ring sizes, type count, D and gamma")
    add_grid_params(sub)
    sub.add_argument("--radius", type=int, default=None)
    sub = leaf(grid, "export", grid_export, "grid", "edges of B_radius")
    add_grid_params(sub)
    sub.add_argument("--radius", type=int, default=None)
    sub.add_argument("--format", type=str, default=None, choices=["edgelist", "dot"])
    sub = leaf(grid, "distance", grid_distance, "grid", "distance of two addresses")
    add_grid_params(sub)
    sub.add_argument("--trace", action="store_true", default=None, help="per-level records as JSON")
    sub.add_argument("first", type=str, help="slash-joined child indices, empty for the root")
    sub.add_argument("second", type=str)

    binary = commands.add_parser("binary", help="d-dimensional binary grid").add_subparsers(dest="action", required=True)
    sub = leaf(binary, "distance", binary_distance, "binary", "distance of two points")
    sub.add_argument("--dims", type=int, default=2)
    sub.add_argument("first", type=str, help="x1,...,x_{d-1},t")
    sub.add_argument("second", type=str)

    dhrg = commands.add_parser("dhrg", help="discrete hyperbolic random graphs").add_subparsers(dest="action", required=True)
    sub = leaf(dhrg, "generate", dhrg_generate_cmd, "dhrg", "sample a graph and its embedding")
    add_grid_params(sub)
    add_model_params(sub)
    sub.add_argument("--edges-out", type=str, default=None)
    sub.add_argument("--emb-out", type=str, default=None)
    for name, handler, help_text in (("loglik", dhrg_loglik_cmd, "log-likelihood of an embedding"),
                                     ("embed", dhrg_embed_cmd, "improve an embedding by local search")):
        sub = leaf(dhrg, name, handler, "dhrg", help_text)
        add_grid_params(sub)
        add_model_params(sub)
        sub.add_argument("--edges", type=str, default=None)
        sub.add_argument("--emb", type=str, default=None)
        if name == "embed":
            sub.add_argument("--iters", type=int, default=None)
            sub.add_argument("--emb-out", type=str, default=None)
    sub = leaf(dhrg, "stats", dhrg_stats_cmd, "dhrg", "expected average degree, degrees by radius, clustering")
    add_grid_params(sub)
    add_model_params(sub)
    sub.add_argument("--monte-carlo", type=int, default=None, help="also sample this many instances")

    sub = leaf(commands, "betweenness", betweenness_cmd, "centrality", "pseudo-betweenness as id,score CSV")
    add_grid_params(sub)
    sub.add_argument("--edges", type=str, default=None)
    sub.add_argument("--emb", type=str, default=None)
    sub.add_argument("--gamma", type=float, default=None)
    sub.add_argument("--exclude-degenerate", action="store_true", default=None)

    count = commands.add_parser("count", help="template counting").add_subparsers(dest="action", required=True)
    leaf(count, "selftest", count_selftest_cmd, "selftest", "counter against brute force")

    sub = leaf(commands, "selftest", selftest_cmd, "selftest", "oracle checks")
    sub.add_argument("--suite", type=str, default=None, help="|".join(["all", *SUITES]))
    sub.add_argument("--num-proc", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)

    return parser.parse_args(argv)


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = get_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 1

    handler, section = args.handler, args.section
    try:
        config = get_config(args, section)
        # grid flags of dhrg / betweenness commands are read from the grid section
        for key in ("q", "a", "b"):
            if getattr(args, key, None) is not None:
                config.grid[key] = getattr(args, key)
        set_quiet(bool(config.console.quiet))
        output = handler(config)
    except HyperGridError as e:
        report(error(str(e)), force=True)
        return e.exit_code
    except OSError as e:
        report(error(f"{e.__class__.__name__}: {e}"), force=True)
        return 2
    print(output)
    return 0


if __name__ == "__main__":
    sys.exit(main())
