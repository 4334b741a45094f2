"""
Brute-force references. Everything here works on explicitly materialized graphs through networkx
and never touches segment trees or counting state.
"""

# Standard Library
import math
import itertools
from typing import Any, Hashable, Mapping, Sequence

# Third-Party Library
import numpy as np
import networkx as nx

# My Library
from utils.color import red
from utils.errors import OracleTooLarge
from tessellation.rght import Grid, VertexId
from stg.binary import BinaryStg
from counting.template import TemplateGraph


# enumerate_embeddings refuses to visit more maps than this
MAX_MAPS = 10 ** 8


def ball_graph(grid: Grid, radius: int) -> nx.Graph:
    """
    B_radius as a networkx graph with a `depth` attribute. Distances inside the ball equal the
    distances in the whole grid, because a shortest path never has to go deeper than its ends.
    """
    graph = nx.Graph()
    for v in grid.ball(radius):
        graph.add_node(v, depth=grid.depth[v])
    for v in list(graph.nodes):
        for w in grid.neighbors(v):
            if grid.depth[w] <= radius:
                graph.add_edge(v, w)
    return graph


def binary_box_graph(stg: BinaryStg, max_level: int) -> nx.Graph:
    """ the descendants of 0 up to depth max_level, which again keep their distances """
    graph = nx.Graph()
    for t in range(max_level + 1):
        for x in itertools.product(range(1 << t), repeat=stg.dims - 1):
            graph.add_node(x + (t,), depth=t)
    for p in list(graph.nodes):
        for q in stg.graph_neighbors(p):
            if q[-1] <= max_level:
                graph.add_edge(p, q)
    return graph


def brute_ring_witness_bound(grid: Grid, graph: nx.Graph, max_ring: int, max_offset: int) -> int:
    """
    Largest ring offset d <= max_offset on rings 1..max_ring such that some pair (x, x + d) is
    strictly closer along the ring than through the rings below it. Lower ring distances come
    from all-pairs BFS on the subgraph induced by the smaller depths.
    """
    best = 0
    for k in range(1, max_ring + 1):
        lower = graph.subgraph(v for v, depth in graph.nodes(data="depth") if depth < k)
        below = dict(nx.all_pairs_shortest_path_length(lower))
        ring = grid.ring(k)
        for i, v in enumerate(ring):
            pv = [p for p in graph[v] if graph.nodes[p]["depth"] == k - 1]
            for d in range(best + 1, min(max_offset, len(ring) - 1) + 1):
                w = ring[(i + d) % len(ring)]
                pw = [p for p in graph[w] if graph.nodes[p]["depth"] == k - 1]
                through = min(below[p][r] for p in pv for r in pw) + 2
                if d < through:
                    best = d
    return best


def bfs_distance(graph: nx.Graph, v: Hashable, w: Hashable, cap: int) -> int | None:
    """ exact distance, None if it exceeds cap """
    lengths = nx.single_source_shortest_path_length(graph, v, cutoff=cap)
    return lengths.get(w)


def distance_table(graph: nx.Graph, sources: Sequence[Hashable]) -> dict[Hashable, dict[Hashable, int]]:
    return {s: nx.single_source_shortest_path_length(graph, s) for s in set(sources)}


def brute_count_table(graph: nx.Graph, template: TemplateGraph,
                      coloring: Mapping[Any, Mapping[Hashable, float]]) -> dict[tuple, float]:
    """
    Sum over all maps m of the template vertices into the colored support of
    prod_w val_{k(w)}(m(w)), keyed by (depths of m(w), distances along the template edges).

    Raises:
        OracleTooLarge: more than MAX_MAPS maps.
    """
    supports = [sorted((v for v, x in coloring.get(k, {}).items() if x != 0), key=repr) for k in template.colors]
    total = math.prod(len(s) for s in supports)
    if total > MAX_MAPS:
        raise OracleTooLarge("too many maps to enumerate", maps=total, limit=MAX_MAPS)
    dist = distance_table(graph, [v for s in supports for v in s])
    out: dict[tuple, float] = {}
    for image in itertools.product(*supports):
        weight = 1.0
        for k, v in zip(template.colors, image):
            weight *= coloring[k][v]
        key = (tuple(graph.nodes[v]["depth"] for v in image),
               tuple(dist[image[a]][image[b]] for a, b in template.edges))
        out[key] = out.get(key, 0.0) + weight
    return out


def enumerate_embeddings(graph: nx.Graph, template: TemplateGraph,
                         coloring: Mapping[Any, Mapping[Hashable, float]],
                         query: tuple[Sequence[int], Sequence[int]]) -> float:
    d_vertex, d_edge = query
    return brute_count_table(graph, template, coloring).get((tuple(d_vertex), tuple(d_edge)), 0.0)


def brute_pair_histogram(graph: nx.Graph, val: Mapping[Hashable, float], radius: int) -> np.ndarray:
    """ ordered pairs, the pair (v, v) at distance 0 """
    hist = np.zeros(2 * radius + 1, dtype=np.float64)
    support = [v for v, x in val.items() if x != 0]
    dist = distance_table(graph, support)
    for v in support:
        for w in support:
            hist[dist[v][w]] += val[v] * val[w]
    return hist


def brute_loglik(graph: nx.Graph, emb: Mapping[int, Hashable], edges: set[tuple[int, int]],
                 conn: Sequence[float]) -> float:
    """ sum over unordered pairs of distinct vertices of log p or log(1 - p) """
    dist = distance_table(graph, list(emb.values()))
    linked = {(min(u, v), max(u, v)) for u, v in edges}
    total = 0.0
    for u, v in itertools.combinations(sorted(emb), 2):
        p = conn[dist[emb[u]][emb[v]]]
        q = p if (u, v) in linked else 1.0 - p
        if q <= 0.0:
            return -math.inf
        total += math.log(q)
    return total


def brute_betweenness(graph: nx.Graph, emb: Mapping[int, Hashable], gamma: float,
                      exclude_degenerate: bool = False) -> dict[int, float]:
    assert 0 <= gamma < 1, red(f"gamma must lie in [0, 1), got: {gamma}")
    dist = distance_table(graph, list(emb.values()))
    ids = sorted(emb)
    scores = {}
    for v in ids:
        score = 0.0
        for v1 in ids:
            for v2 in ids:
                if exclude_degenerate and (v1 == v2 or v1 == v or v2 == v):
                    continue
                a, b, c = emb[v1], emb[v], emb[v2]
                score += gamma ** (dist[a][b] + dist[b][c] - dist[a][c])
        scores[v] = score
    return scores


def brute_edge_moments(graph: nx.Graph, emb: Mapping[int, VertexId], conn: Sequence[float]) -> tuple[float, float]:
    """ mean and variance of the number of edges given the positions """
    dist = distance_table(graph, list(emb.values()))
    probs = np.array([conn[dist[emb[u]][emb[v]]] for u, v in itertools.combinations(sorted(emb), 2)])
    return float(probs.sum()), float((probs * (1 - probs)).sum())
