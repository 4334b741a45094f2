# Standard Library
import math
from collections import defaultdict
from typing import Iterable, Sequence

# Third-Party Library
import numpy as np
from tqdm import tqdm

# My Library
from utils.color import red, is_quiet
from utils.errors import OutOfBall
from tessellation.rght import Grid, VertexId
from stg.rght_stg import RghtStg, rght_stg
from stg.distance import stg_distance
from counting.paircount import PairCounter

from .model import DhrgModel


def loglik_from_counts(pairs: Sequence[float], edges: Sequence[float], conn: Sequence[float]) -> float:
    """
    sum_d E(d) log p(d) + (P(d) - E(d)) log(1 - p(d)), with 0 log 0 = 0 and -inf whenever an
    observed pair has probability 0.
    """
    total = 0.0
    for P, E, p in zip(pairs, edges, conn):
        if E > 0:
            if p <= 0.0:
                return -math.inf
            total += E * math.log(p)
        missing = P - E
        if missing > 0:
            if p >= 1.0:
                return -math.inf
            total += missing * math.log1p(-p)
    return total


def sample_position(grid: Grid, model: DhrgModel, rng: np.random.Generator) -> VertexId:
    """ r ~ X, then a uniform position on ring r drawn with exact integer arithmetic """
    r = int(rng.choice(model.radius + 1, p=model.radial))
    size = grid.ring_size(r)
    bits = size.bit_length()
    while True:
        index = int.from_bytes(rng.bytes((bits + 7) // 8), "big") & ((1 << bits) - 1)
        if index < size:
            return grid.ring_vertex(r, index)


class DhrgInstance:
    """
    A graph with an embedding mu into B_R of an RGHT, plus the histograms the log-likelihood is
    read from: the pair counter over the multiset of positions and the edge count per distance.
    """

    def __init__(self, model: DhrgModel, grid: Grid, stg: RghtStg, emb: dict[int, VertexId],
                 edges: Iterable[tuple[int, int]] = ()) -> None:
        self.model = model
        self.grid = grid
        self.stg = stg
        self.emb: dict[int, VertexId] = {}
        self.cells: dict[VertexId, list[int]] = defaultdict(list)
        self.pairs = PairCounter(stg, model.radius)
        self.adj: dict[int, set[int]] = {v: set() for v in emb}
        self.edges: set[tuple[int, int]] = set()
        self.edge_hist = np.zeros(2 * model.radius + 1, dtype=np.float64)

        for v, pos in sorted(emb.items()):
            self._place(v, pos)
        for u, v in edges:
            self.add_edge(u, v)

    def __repr__(self) -> str:
        return f"DhrgInstance(n={len(self.emb)}, m={len(self.edges)}, radius={self.model.radius})"

    def _place(self, v: int, pos: VertexId) -> None:
        if self.grid.depth[pos] > self.model.radius:
            raise OutOfBall("position lies outside the ball", vertex=v, depth=self.grid.depth[pos],
                            radius=self.model.radius)
        self.emb[v] = pos
        self.cells[pos].append(v)
        self.pairs.add(pos, 1)

    def _unplace(self, v: int) -> VertexId:
        pos = self.emb.pop(v)
        self.cells[pos].remove(v)
        if not self.cells[pos]:
            del self.cells[pos]
        self.pairs.add(pos, -1)
        return pos

    def distance(self, a: VertexId, b: VertexId) -> int:
        return stg_distance(self.stg, self.stg.node_of(a), self.stg.node_of(b))

    def add_edge(self, u: int, v: int) -> None:
        assert u != v, red(f"self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in self.edges:
            return
        self.edges.add(key)
        self.adj.setdefault(u, set()).add(v)
        self.adj.setdefault(v, set()).add(u)
        self.edge_hist[self.distance(self.emb[u], self.emb[v])] += 1

    def pair_counts(self) -> np.ndarray:
        """ unordered pairs of distinct vertices per distance """
        counts = self.pairs.hist / 2
        counts[0] = (self.pairs.hist[0] - len(self.emb)) / 2
        return counts

    def loglik(self) -> float:
        return loglik_from_counts(self.pair_counts(), self.edge_hist, self.model.conn)

    def move(self, v: int, newpos: VertexId) -> float:
        """
        Moves mu(v) to newpos, returning the change in log-likelihood.

        Raises:
            OutOfBall: newpos lies outside B_R; the instance is left unchanged.
        """
        old = self.emb[v]
        if newpos == old:
            return 0.0
        if self.grid.depth[newpos] > self.model.radius:
            raise OutOfBall("position lies outside the ball", vertex=v, depth=self.grid.depth[newpos],
                            radius=self.model.radius)
        before = self.loglik()
        for w in self.adj[v]:
            self.edge_hist[self.distance(old, self.emb[w])] -= 1
        self._unplace(v)
        self._place(v, newpos)
        for w in self.adj[v]:
            self.edge_hist[self.distance(newpos, self.emb[w])] += 1
        return self.loglik() - before

    def embedding_addresses(self) -> dict[int, tuple[int, ...]]:
        return {v: self.grid.address_of(pos) for v, pos in self.emb.items()}


def dhrg_from_embedding(model: DhrgModel, grid: Grid, emb: dict[int, VertexId],
                        edges: Iterable[tuple[int, int]] = (), stg: RghtStg | None = None) -> DhrgInstance:
    return DhrgInstance(model, grid, stg if stg is not None else rght_stg(grid), emb, edges)


def dhrg_generate(model: DhrgModel, grid: Grid, seed: int, stg: RghtStg | None = None) -> DhrgInstance:
    """
    Samples positions, then inserts the vertices 1 .. n in order. For the new vertex v and every
    distance d, the q earlier vertices at distance d are indexed by the pair counter and the linked
    ones are picked by geometric skipping, each index X_1, X_1 + X_2, ... with X_i ~ Geometric(p(d)).
    """
    rng = np.random.default_rng(seed)
    stg = stg if stg is not None else rght_stg(grid)
    positions = {v: sample_position(grid, model, rng) for v in range(1, model.n + 1)}
    inst = DhrgInstance(model, grid, stg, {})
    found = []
    for v in tqdm(range(1, model.n + 1), desc="generating", leave=False, disable=is_quiet()):
        pos = positions[v]
        profile = inst.pairs.distance_profile(pos)
        for d, p in enumerate(model.conn):
            q = int(round(profile[d]))
            if q == 0 or p <= 0.0:
                continue
            idx = 0
            while True:
                idx += int(rng.geometric(p))
                if idx > q:
                    break
                cell, offset = inst.pairs.select_at_distance(pos, d, idx)
                found.append((inst.cells[cell][offset], v))
        inst.adj[v] = set()
        inst._place(v, pos)
    for u, v in found:
        inst.add_edge(u, v)
    return inst
