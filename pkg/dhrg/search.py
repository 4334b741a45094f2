# Standard Library
from typing import NamedTuple

# Third-Party Library
import numpy as np
from tqdm import tqdm

# My Library
from utils.color import is_quiet
from tessellation.rght import Grid, VertexId

from .instance import DhrgInstance


class MoveRecord(NamedTuple):
    # iteration the move was proposed in
    step: int
    vertex: int
    old: VertexId
    new: VertexId
    delta: float


class SearchLog(NamedTuple):
    # accepted moves in order
    accepted: list[MoveRecord]
    # log-likelihood before the first iteration and after every iteration
    trace: list[float]


def candidate_moves(grid: Grid, pos: VertexId, radius: int) -> list[VertexId]:
    """ grid neighbours of pos inside B_radius """
    return [w for w in grid.neighbors(pos) if grid.depth[w] <= radius]


def dhrg_local_search(inst: DhrgInstance, iters: int, seed: int) -> SearchLog:
    """ hill climbing: move a random vertex to a random neighbour cell, keep the move iff it helps """
    rng = np.random.default_rng(seed)
    ids = sorted(inst.emb)
    current = inst.loglik()
    log = SearchLog([], [current])
    for step in tqdm(range(iters), desc="local search", leave=False, disable=is_quiet()):
        v = ids[int(rng.integers(len(ids)))]
        old = inst.emb[v]
        options = candidate_moves(inst.grid, old, inst.model.radius)
        new = options[int(rng.integers(len(options)))]
        delta = inst.move(v, new)
        if delta > 0:
            current += delta
            log.accepted.append(MoveRecord(step, v, old, new, delta))
        else:
            inst.move(v, old)
        log.trace.append(current)
    return log


def perturb_embedding(grid: Grid, emb: dict[int, VertexId], radius: int, steps: int,
                      seed: int) -> dict[int, VertexId]:
    """ every vertex takes a random walk of the given length inside B_radius """
    rng = np.random.default_rng(seed)
    out = {}
    for v, pos in sorted(emb.items()):
        for _ in range(steps):
            options = candidate_moves(grid, pos, radius)
            pos = options[int(rng.integers(len(options)))]
        out[v] = pos
    return out
