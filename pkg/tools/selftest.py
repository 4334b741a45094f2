"""
Seeded, reduced-size oracle checks bundled with the command line tool. Each suite returns
(passed, checked); `run_suites` shards the suites over a process pool.
"""

# Standard Library
import math
import time
import multiprocessing
from multiprocessing import Pool
from typing import Callable

# Third-Party Library
import numpy as np
import networkx as nx
from tqdm import tqdm

# My Library
from utils.color import is_quiet, set_quiet
from tessellation.rght import Grid, grid_create
from tessellation.metrics import compute_d_bound, growth_constant
from stg.rght_stg import rght_stg
from stg.distance import stg_distance
from counting.counter import Counter
from counting.paircount import PairCounter
from counting.template import edge_template, path_template
from dhrg.model import make_model
from dhrg.instance import dhrg_generate
from centrality.betweenness import pseudo_betweenness
from oracle.brute import ball_graph, brute_betweenness, brute_count_table, brute_loglik, brute_pair_histogram


def random_vertex(grid: Grid, radius: int, rng: np.random.Generator) -> int:
    r = int(rng.integers(radius + 1))
    return grid.ring_vertex(r, int(rng.integers(grid.ring_size(r))))


def suite_grid(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    checks = [[grid.ring_size(k) for k in range(4)] == [1, 7, 21, 56]]
    for k in range(1, 4):
        checks.append(all(grid.ring_index(grid.ring_vertex(k, i)) == i for i in range(grid.ring_size(k))))
    for v in grid.ball(3):
        checks.append(all(v in grid.neighbors(w) for w in grid.neighbors(v)))
    return sum(checks), len(checks)


def suite_metrics(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    checks = [compute_d_bound(grid) == 2, abs(growth_constant(grid) - 2.6180339) < 1e-6]
    return sum(checks), len(checks)


def suite_stg(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    stg = rght_stg(grid, 2)
    graph = ball_graph(grid, 3)
    vertices = list(grid.ball(3))
    rng = np.random.default_rng(seed)
    passed = checked = 0
    for _ in range(200):
        v, w = (vertices[int(i)] for i in rng.integers(len(vertices), size=2))
        expected = nx.shortest_path_length(graph, v, w)
        passed += stg_distance(stg, stg.node_of(v), stg.node_of(w)) == expected
        checked += 1
    return passed, checked


def suite_counter(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    stg = rght_stg(grid, 2)
    graph = ball_graph(grid, 3)
    rng = np.random.default_rng(seed)
    passed = checked = 0
    for template in (edge_template(), path_template()):
        counter = Counter(stg, template, 3)
        coloring: dict[int, dict[int, float]] = {0: {}}
        for _ in range(6):
            v = random_vertex(grid, 3, rng)
            x = float(rng.integers(1, 3))
            counter.add(0, v, x)
            coloring[0][v] = coloring[0].get(v, 0.0) + x
        expected = brute_count_table(graph, template, coloring)
        passed += counter.root_table() == expected
        checked += 1
    return passed, checked


def suite_paircount(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    stg = rght_stg(grid, 2)
    graph = ball_graph(grid, 4)
    rng = np.random.default_rng(seed)
    counter = PairCounter(stg, 4)
    val: dict[int, float] = {}
    passed = checked = 0
    for _ in range(30):
        v = random_vertex(grid, 4, rng)
        x = float(rng.integers(-1, 3))
        counter.add(v, x)
        val[v] = val.get(v, 0.0) + x
        passed += bool(np.array_equal(counter.hist, brute_pair_histogram(graph, val, 4)))
        checked += 1
    return passed, checked


def suite_dhrg(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    stg = rght_stg(grid, 2)
    model = make_model(20, 3, grid=grid)
    inst = dhrg_generate(model, grid, seed, stg=stg)
    graph = ball_graph(grid, 3)
    expected = brute_loglik(graph, inst.emb, inst.edges, model.conn)
    checks = [math.isclose(inst.loglik(), expected, rel_tol=1e-9)]
    rng = np.random.default_rng(seed)
    for _ in range(5):
        v = int(rng.integers(1, model.n + 1))
        before = inst.loglik()
        delta = inst.move(v, random_vertex(grid, 3, rng))
        after = brute_loglik(graph, inst.emb, inst.edges, model.conn)
        checks.append(math.isclose(before + delta, after, rel_tol=1e-9, abs_tol=1e-9))
    return sum(checks), len(checks)


def suite_centrality(seed: int) -> tuple[int, int]:
    grid = grid_create((7, 1, 0))
    stg = rght_stg(grid, 2)
    graph = ball_graph(grid, 3)
    rng = np.random.default_rng(seed)
    emb = {i: random_vertex(grid, 3, rng) for i in range(1, 6)}
    checks = []
    for gamma in (0.0, 0.5):
        scores = pseudo_betweenness(stg, 3, emb, gamma).scores
        expected = brute_betweenness(graph, emb, gamma)
        checks.extend(math.isclose(scores[v], expected[v], rel_tol=1e-9, abs_tol=1e-12) for v in emb)
    return sum(checks), len(checks)


SUITES: dict[str, Callable[[int], tuple[int, int]]] = {
    "grid": suite_grid,
    "metrics": suite_metrics,
    "stg": suite_stg,
    "counter": suite_counter,
    "paircount": suite_paircount,
    "dhrg": suite_dhrg,
    "centrality": suite_centrality,
}


def run_suite(task: tuple[str, int, bool]) -> tuple[str, dict]:
    name, seed, quiet = task
    set_quiet(quiet)
    start = time.perf_counter()
    passed, checked = SUITES[name](seed)
    return name, {"passed": passed, "checked": checked, "seconds": time.perf_counter() - start}


def run_suites(names: list[str], seed: int, num_proc: int | None = None) -> dict[str, dict]:
    num_proc = num_proc or max(1, multiprocessing.cpu_count() // 2)
    tasks = [(name, seed, is_quiet()) for name in names]
    results = {}
    if num_proc == 1 or len(tasks) == 1:
        for task in tqdm(tasks, desc="selftest", disable=is_quiet()):
            name, result = run_suite(task)
            results[name] = result
        return results
    with Pool(min(num_proc, len(tasks))) as pool:
        for name, result in tqdm(pool.imap_unordered(run_suite, tasks), total=len(tasks),
                                 desc="selftest", disable=is_quiet()):
            results[name] = result
    return results
