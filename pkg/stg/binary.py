# Standard Library
import itertools
from collections import deque

# My Library
from utils.color import red
from utils.errors import RootHasNoParent

from .base import SegmentTreeGraph


# (x_1, ..., x_{d-1}, t): lattice point with its depth as the last coordinate
Point = tuple[int, ...]

# coordinates of near nodes differ by at most this much
NEAR_RADIUS = 4


class BinaryStg(SegmentTreeGraph):
    """
    The d-dimensional binary grid G_d restricted to the descendants of 0.

    (x, t) is joined to (x +- e_i, t) and to its parent (floor(x / 2), t - 1); the descendants of
    0 are the points with t >= 0 and 0 <= x_i < 2^t. Every node is a vertex.
    """

    def __init__(self, dims: int) -> None:
        assert dims >= 2, red(f"binary grid needs at least 2 dimensions, got: {dims}")
        self.dims = dims
        self.root: Point = (0,) * dims
        self._near_distance: dict[tuple[Point, Point], int] = {}

    def __repr__(self) -> str:
        return f"BinaryStg(dims={self.dims})"

    def contains(self, p: Point) -> bool:
        t = p[-1]
        return t >= 0 and all(0 <= x < (1 << t) for x in p[:-1])

    def depth(self, s: Point) -> int:
        return s[-1]

    def is_vertex(self, s: Point) -> bool:
        return True

    def vertex_of(self, s: Point) -> Point:
        return s

    def node_of(self, v: Point) -> Point:
        assert self.contains(tuple(v)), red(f"{v} is not a descendant of 0")
        return tuple(v)

    def parent(self, s: Point) -> Point:
        if s[-1] == 0:
            raise RootHasNoParent("the origin has no parent")
        return tuple(x >> 1 for x in s[:-1]) + (s[-1] - 1,)

    def child_segments(self, s: Point) -> list[Point]:
        t = s[-1] + 1
        return [tuple(2 * x + bit for x, bit in zip(s[:-1], bits)) + (t,)
                for bits in itertools.product((0, 1), repeat=self.dims - 1)]

    def graph_neighbors(self, p: Point) -> list[Point]:
        out = []
        if p[-1] > 0:
            out.append(self.parent(p))
        for i in range(self.dims - 1):
            for step in (-1, 1):
                q = list(p)
                q[i] += step
                if self.contains(tuple(q)):
                    out.append(tuple(q))
        out.extend(self.child_segments(p))
        return out

    def near(self, s: Point, t: Point) -> bool:
        return s[-1] == t[-1] and all(abs(x - y) <= NEAR_RADIUS for x, y in zip(s[:-1], t[:-1]))

    def near_distance(self, s: Point, t: Point) -> int:
        if s == t:
            return 0
        key = (s, t) if s <= t else (t, s)
        cached = self._near_distance.get(key)
        if cached is not None:
            return cached
        assert self.near(s, t), red(f"delta_N asked for points that are not near: {s}, {t}")
        # the sideways path is an upper bound, and no shortest path goes below the common depth
        cap = min(self.max_near_distance, sum(abs(x - y) for x, y in zip(s[:-1], t[:-1])))
        level = s[-1]
        dist, queue = {s: 0}, deque([s])
        while queue:
            p = queue.popleft()
            if dist[p] == cap:
                continue
            for q in self.graph_neighbors(p):
                if q[-1] > level or q in dist:
                    continue
                dist[q] = dist[p] + 1
                if q == t:
                    queue.clear()
                    break
                queue.append(q)
        self._near_distance[key] = dist.get(t, cap)
        return self._near_distance[key]

    def near_nodes(self, s: Point) -> list[Point]:
        out = []
        for delta in itertools.product(range(-NEAR_RADIUS, NEAR_RADIUS + 1), repeat=self.dims - 1):
            p = tuple(x + dx for x, dx in zip(s[:-1], delta)) + (s[-1],)
            if self.contains(p):
                out.append(p)
        return out

    @property
    def max_near(self) -> int:
        return (2 * NEAR_RADIUS + 1) ** (self.dims - 1)

    @property
    def max_near_distance(self) -> int:
        return 9 * self.dims


def binary_stg(dims: int) -> BinaryStg:
    return BinaryStg(dims)
