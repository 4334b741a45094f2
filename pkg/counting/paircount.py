# Standard Library
from collections import defaultdict
from typing import Any

# Third-Party Library
import numpy as np

# My Library
from utils.color import red
from utils.errors import IndexOutOfRange, OutOfBall
from stg.base import Node, SegmentTreeGraph


class PairCounter:
    """
    Distance histogram of ordered vertex pairs weighted by a single coloring val.

    c(s)[d] holds the sum of val over the vertices below s (s included) at depth d, and
    hist[d] = sum over ordered pairs (v1, v2) of val(v1) * val(v2) * [delta(v1, v2) = d], the pair
    (v, v) counting at d = 0.

    A pair is accounted for at the deepest level where the ancestors of its two ends are near.
    Summing c(t) over the near nodes t of an ancestor would also count pairs that are near one level
    lower, so the children of t that are near the next ancestor of v are subtracted.
    """

    def __init__(self, stg: SegmentTreeGraph, radius: int) -> None:
        assert radius >= 0, red(f"radius must be nonnegative, got: {radius}")
        self.stg = stg
        self.radius = radius
        self.val: dict[Node, float] = {}
        self.c: dict[Node, np.ndarray] = {}
        self.kids: dict[Node, set[Node]] = defaultdict(set)
        self.hist = np.zeros(2 * radius + 1, dtype=np.float64)

    def __repr__(self) -> str:
        return f"PairCounter(radius={self.radius}, colored={len(self.val)}, total={self.total()})"

    def _locate(self, v: Any) -> tuple[Node, int]:
        node = self.stg.node_of(v)
        depth = self.stg.depth(node)
        if depth > self.radius:
            raise OutOfBall("vertex lies outside the ball", depth=depth, radius=self.radius)
        return node, depth

    def _level_terms(self, chain: list[Node], depth: int, h: int) -> list[tuple[Node, int, list[Node]]]:
        """ (near node, delta_N, excluded children) for the ancestor of v at level h """
        stg = self.stg
        anchor = chain[depth - h]
        below = chain[depth - h - 1] if h < depth else None
        out = []
        for t in stg.near_nodes(anchor):
            if t not in self.c:
                continue
            excluded = []
            if below is not None:
                excluded = sorted(k for k in self.kids.get(t, ()) if stg.near(k, below))
            out.append((t, stg.near_distance(anchor, t), excluded))
        return out

    def distance_profile(self, v: Any) -> np.ndarray:
        """
        profile[d] = sum of val(w) over the vertices w at distance d from v, w = v included.
        """
        node, depth = self._locate(v)
        chain = self.stg.ancestors(node)
        profile = np.zeros(2 * self.radius + 1, dtype=np.float64)
        for h in range(depth + 1):
            for t, near, excluded in self._level_terms(chain, depth, h):
                mass = self.c[t].copy()
                for k in excluded:
                    mass -= self.c[k]
                # a vertex at depth dw >= h below t sits at distance depth - 2h + near + dw
                dws = np.arange(h, self.radius + 1)
                at = depth - 2 * h + near + dws
                keep = at < len(profile)
                profile[at[keep]] += mass[dws[keep]]
        return profile

    def add(self, v: Any, x: float) -> None:
        """
        val(v) += x.

        Raises:
            OutOfBall: v lies deeper than the radius.
        """
        node, depth = self._locate(v)
        profile = self.distance_profile(v)
        self.hist += 2 * x * profile
        self.hist[0] += x * x

        self.val[node] = self.val.get(node, 0.0) + x
        chain = self.stg.ancestors(node)
        for j, s in enumerate(chain):
            if s not in self.c:
                self.c[s] = np.zeros(self.radius + 1, dtype=np.float64)
            self.c[s][depth] += x
            if j > 0:
                self.kids[s].add(chain[j - 1])

    def count(self, d: int) -> float:
        if 0 <= d < len(self.hist):
            return float(self.hist[d])
        return 0.0

    def total(self) -> float:
        return float(sum(self.val.values()))

    def select_at_distance(self, v: Any, d: int, idx: int) -> tuple[Any, int]:
        """
        The idx-th (1-based) colored vertex at distance d from v, vertices of multiplicity m
        occupying m consecutive indices. Order: ancestor level from the root down, then near nodes
        in sorted order, then children in sorted order.

        Returns:
            (vertex, offset inside its multiplicity)

        Raises:
            IndexOutOfRange: idx is not in 1 .. profile[d].
        """
        node, depth = self._locate(v)
        if idx < 1:
            raise IndexOutOfRange("index must be positive", idx=idx)
        chain = self.stg.ancestors(node)
        remaining = idx
        for h in range(depth + 1):
            for t, near, excluded in self._level_terms(chain, depth, h):
                dw = d - (depth - 2 * h + near)
                if not 0 <= dw <= self.radius:
                    continue
                mass = self.c[t][dw] - sum(self.c[k][dw] for k in excluded)
                if remaining > mass:
                    remaining -= int(round(mass))
                    continue
                return self._descend(t, dw, remaining, set(excluded))
        raise IndexOutOfRange("fewer colored vertices at this distance", idx=idx, distance=d,
                              available=idx - remaining)

    def _descend(self, s: Node, dw: int, remaining: int, excluded: set[Node]) -> tuple[Any, int]:
        stg = self.stg
        while stg.depth(s) < dw:
            for k in sorted(self.kids.get(s, ())):
                if k in excluded:
                    continue
                mass = self.c[k][dw]
                if remaining > mass:
                    remaining -= int(round(mass))
                    continue
                s = k
                break
            else:
                raise AssertionError(red(f"partial sums below {s} do not add up"))
            excluded = set()
        assert stg.is_vertex(s), red(f"{s} carries weight but is not a vertex")
        return stg.vertex_of(s), remaining - 1


def pc_init(stg: SegmentTreeGraph, radius: int) -> PairCounter:
    return PairCounter(stg, radius)


def brute_force_c(counter: PairCounter, s: Node) -> np.ndarray:
    """ c(s) rederived from val, for consistency checks """
    out = np.zeros(counter.radius + 1, dtype=np.float64)
    stg = counter.stg
    for node, value in counter.val.items():
        if s in stg.ancestors(node):
            out[stg.depth(node)] += value
    return out
