# Standard Library
import math
from typing import TypedDict

# Third-Party Library
import numpy as np
import networkx as nx
from tqdm import tqdm

# My Library
from utils.color import is_quiet
from tessellation.rght import Grid
from stg.rght_stg import RghtStg, rght_stg
from counting.counter import Counter
from counting.template import edge_template, path_template, triangle_template

from .model import DhrgModel, cell_weights
from .instance import dhrg_generate


class ExpectedStats(TypedDict):
    avg_degree: float
    # expected degree of a vertex placed on ring r
    degree_by_radius: list[float]
    # NaN when no path c1 - c2 - c3 can be linked
    clustering: float
    path_probability: float


class MonteCarloStats(TypedDict):
    samples: int
    avg_degree: float
    avg_degree_stderr: float
    clustering: float
    clustering_stderr: float


def _weighted_table(stg: RghtStg, template, model: DhrgModel) -> dict:
    counter = Counter(stg, template, model.radius, mode="weighted",
                      edge_weight=lambda e, d: float(model.conn[d]))
    counter.init_regular(0)
    return counter.root_table()


def dhrg_expected_stats(model: DhrgModel, grid: Grid, stg: RghtStg | None = None) -> ExpectedStats:
    """
    Expectations over independent placements of n vertices, each cell c drawn with probability
    a(d(c)). Pair and triple sums over cells come from regularly initialized counters whose
    edges are weighted by p(delta).
    """
    stg = stg if stg is not None else rght_stg(grid)
    a = cell_weights(model, grid)
    others = model.n - 1

    pair = _weighted_table(stg, edge_template(), model)
    avg_degree = 0.0
    by_radius = np.zeros(model.radius + 1, dtype=np.float64)
    for ((d1, d2), _), value in pair.items():
        avg_degree += value * a[d1] * a[d2]
        by_radius[d1] += value * a[d2]
    sizes = np.array([grid.ring_size(r) for r in range(model.radius + 1)], dtype=np.float64)
    by_radius = others * by_radius / sizes

    path = _weighted_table(stg, path_template(), model)
    closed = _weighted_table(stg, triangle_template(), model)
    p_path = sum(value * a[d0] * a[d1] * a[d2] for ((d0, d1, d2), _), value in path.items())
    p_closed = sum(value * a[d0] * a[d1] * a[d2] for ((d0, d1, d2), _), value in closed.items())
    clustering = p_closed / p_path if p_path > 0 else math.nan

    return ExpectedStats(avg_degree=others * avg_degree, degree_by_radius=by_radius.tolist(),
                         clustering=clustering, path_probability=p_path)


def dhrg_monte_carlo(model: DhrgModel, grid: Grid, samples: int, seed: int,
                     stg: RghtStg | None = None) -> MonteCarloStats:
    """ average degree 2m / n and global clustering over generated instances seeded seed, seed + 1, ... """
    stg = stg if stg is not None else rght_stg(grid)
    degrees, clusterings = [], []
    for i in tqdm(range(samples), desc="sampling", leave=False, disable=is_quiet()):
        inst = dhrg_generate(model, grid, seed + i, stg=stg)
        graph = nx.Graph()
        graph.add_nodes_from(inst.emb)
        graph.add_edges_from(inst.edges)
        degrees.append(2 * len(inst.edges) / model.n)
        clusterings.append(nx.transitivity(graph))

    def mean_err(xs: list[float]) -> tuple[float, float]:
        arr = np.asarray(xs, dtype=np.float64)
        if len(arr) < 2:
            return float(arr.mean()), math.nan
        return float(arr.mean()), float(arr.std(ddof=1) / math.sqrt(len(arr)))

    avg, avg_err = mean_err(degrees)
    cl, cl_err = mean_err(clusterings)
    return MonteCarloStats(samples=samples, avg_degree=avg, avg_degree_stderr=avg_err,
                           clustering=cl, clustering_stderr=cl_err)
