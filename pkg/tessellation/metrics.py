# Standard Library
from typing import NamedTuple

# Third-Party Library
import numpy as np

# My Library
from utils.color import red
from utils.errors import BoundSearchOverflow

from .rght import Grid, VertexId


class SegmentSignature(NamedTuple):
    # types of the vertices v1..v2
    word: tuple[int, ...]
    # delta(v1, v2 - 1), -1 when v1 == v2
    dist_prev: int
    # delta(v1, v2)
    dist_last: int


def segment(grid: Grid, v1: VertexId, v2: VertexId) -> list[VertexId]:
    """ v1, succ(v1), ..., v2 """
    members = [v1]
    while members[-1] != v2:
        members.append(grid.succ(members[-1]))
    return members


def segment_children(grid: Grid, members: list[VertexId]) -> tuple[list[VertexId], list[int]]:
    """ children of a segment left to right and the position of each member's leftmost child """
    kids, starts = [], []
    for v in members:
        starts.append(len(kids))
        kids.extend(grid.child(v, i) for i in range(len(grid.word(v))))
    kids.append(grid.child(grid.succ(members[-1]), 0))
    return kids, starts


def lower_ring_length(grid: Grid, v1: VertexId, v2: VertexId, cap: int) -> int:
    """
    Length of the shortest v1 - v2 path through lower rings, i.e. min over parents p1 of v1 and
    p2 of v2 of delta(p1, p2) + 2, or cap when every such path is at least cap long.
    """
    best = cap
    if cap < 2:
        return best
    for p1 in grid.parents(v1):
        for p2 in grid.parents(v2):
            d = grid.distance(p1, p2, best - 3)
            if d is not None:
                best = d + 2
    return best


def compute_d_bound(grid: Grid, overflow_factor: int = 10) -> int:
    """
    Computes D(G): the largest ring offset d for which some pair (x, x + d) on one ring is closer
    along the ring than through lower rings, so that delta(x, x + d) = d with no tie below.

    Every pair on ring 1 is checked, then pairs of descendants (a non-rightmost child of v1, a
    non-leftmost child of v2) recursively. A pair is not expanded when a vertex strictly inside
    it produces an extra child in every generation, or when its signature was expanded before.

    Raises:
        BoundSearchOverflow: a branch grew beyond overflow_factor * (2a + b + q) levels.
    """
    q, a, b = grid.params
    cap = overflow_factor * (2 * a + b + q)
    seen: set[SegmentSignature] = set()
    best = 0

    def expand(v1: VertexId, v2: VertexId, offset: int, level: int) -> None:
        nonlocal best
        if level > cap:
            raise BoundSearchOverflow("descent below ring 1 did not terminate", q=q, a=a, b=b, levels=level)

        # strictly shorter than every path through lower rings; ties are not witnesses
        if offset > best and offset < lower_ring_length(grid, v1, v2, offset + 1):
            best = offset

        dist_last = offset if offset == 0 else grid.distance(v1, v2, offset - 1)
        if dist_last is None:
            dist_last = offset

        members = segment(grid, v1, v2)
        if any(grid.extra_child(v) for v in members[1:-1]):
            return
        dist_prev = -1 if offset == 0 else grid.distance(v1, members[-2], offset - 1)
        signature = SegmentSignature(tuple(grid.vtype[v] for v in members), dist_prev, dist_last)
        if signature in seen:
            return
        seen.add(signature)

        kids, starts = segment_children(grid, members)
        left_count = len(grid.word(v1))
        last = starts[-1]
        right_count = len(grid.word(v2))
        for i in range(left_count):
            for j in range(last + 1, last + right_count + 1):
                if j >= i:
                    expand(kids[i], kids[j], j - i, level + 1)

    ring1 = grid.ring(1)
    for v1 in ring1:
        for offset in range(len(ring1)):
            expand(v1, grid.step(v1, offset), offset, 1)
    return best


def growth_constant(grid: Grid, tol: float = 1e-7, max_iterations: int = 100000) -> float:
    """
    Dominant eigenvalue of the type transition matrix by power iteration.

    Iterates until two successive Rayleigh quotients differ by less than tol.
    """
    assert tol > 0, red(f"tolerance must be positive, got: {tol}")
    matrix = np.array(grid.table.transition_matrix(), dtype=np.float64)
    x = np.ones(matrix.shape[0], dtype=np.float64)
    x /= np.linalg.norm(x)
    estimate = 0.0
    for _ in range(max_iterations):
        y = matrix @ x
        quotient = float(x @ y)
        norm = np.linalg.norm(y)
        x = y / norm
        if abs(quotient - estimate) < tol:
            return quotient
        estimate = quotient
    return estimate


def ring_growth(grid: Grid, k: int) -> float:
    """ |R_{k+1}| / |R_k|, which tends to the growth constant """
    return grid.ring_size(k + 1) / grid.ring_size(k)
