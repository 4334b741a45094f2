# Standard Library
from collections import deque
from typing import Hashable, Sequence

# My Library
from utils.color import red
from utils.errors import RootHasNoParent
from tessellation.rght import Grid, VertexId
from tessellation.metrics import compute_d_bound

from .base import SegmentTreeGraph


# (leftmost vertex, number of vertices)
Segment = tuple[VertexId, int]


class RghtStg(SegmentTreeGraph):
    """
    Ancestor segments of an RGHT as a regular segment tree graph.

    The nodes are the valid segments, i.e. the segments [s_L, s_R] equal to P^k(v) for some vertex
    v; parent([s_L, s_R]) = [p_L(s_L), p_R(s_R)]. Two segments on one ring are near when they
    intersect or are at most D positions apart, D being the tree-likeness bound of the grid.
    """

    regular = True

    def __init__(self, grid: Grid, d_bound: int) -> None:
        assert d_bound >= 1, red(f"tree-likeness bound must be positive, got: {d_bound}")
        self.grid = grid
        self.d_bound = d_bound
        self.root: Segment = (grid.root, 1)

        self._parent: dict[Segment, Segment] = {}
        self._near: dict[tuple[Segment, Segment], bool] = {}
        self._near_distance: dict[tuple[Segment, Segment], int] = {}
        self._near_nodes: dict[Segment, list[Segment]] = {}
        self._children: dict[Segment, list[Segment]] = {}
        self._valid_words: dict[tuple[int, ...], bool] = {}

    def __repr__(self) -> str:
        return f"RghtStg({self.grid!r}, D={self.d_bound})"

    # nodes

    def depth(self, s: Segment) -> int:
        return self.grid.depth[s[0]]

    def is_vertex(self, s: Segment) -> bool:
        return s[1] == 1

    def vertex_of(self, s: Segment) -> VertexId:
        assert s[1] == 1, red(f"segment of length {s[1]} is not a vertex")
        return s[0]

    def node_of(self, v: VertexId) -> Segment:
        return (v, 1)

    def members(self, s: Segment) -> list[VertexId]:
        v, length = s
        if v == self.grid.root:
            return [v]
        out = [v]
        for _ in range(length - 1):
            out.append(self.grid.succ(out[-1]))
        return out

    def word(self, s: Segment) -> tuple[int, ...]:
        return tuple(self.grid.vtype[v] for v in self.members(s))

    def parent(self, s: Segment) -> Segment:
        if s == self.root:
            raise RootHasNoParent("the root segment has no parent")
        cached = self._parent.get(s)
        if cached is not None:
            return cached
        grid = self.grid
        members = self.members(s)
        left, right = grid.parents(members[0])[0], grid.parents(members[-1])[-1]
        if left == grid.root:
            p = self.root
        else:
            length, v = 1, left
            while v != right:
                v = grid.succ(v)
                length += 1
                assert length <= self.d_bound + 2, red(f"parent of {s} is wider than D + 2")
            p = (left, length)
        self._parent[s] = p
        return p

    # validity

    def _candidate_words(self, word: tuple[int, ...]) -> list[tuple[int, ...]]:
        """ type words of the segments whose parent has the given type word """
        words = self.grid.table.child_word
        kids = [t for member in word for t in words[member]]
        first = len(words[word[0]])
        lefts = range(1, first + 1) if len(word) > 1 else range(1, first)
        rights = range(len(kids) - len(words[word[-1]]), len(kids))
        return [tuple(kids[x:y + 1]) for x in lefts for y in rights
                if x <= y and y - x + 1 <= self.d_bound + 1]

    def valid_word(self, word: tuple[int, ...]) -> bool:
        """ least fixed point: a single vertex is valid, so is a segment with a valid child """
        if len(word) == 1:
            return True
        known = self._valid_words.get(word)
        if known is not None:
            return known
        seen, queue, found = {word}, deque([word]), False
        while queue and not found:
            for child in self._candidate_words(queue.popleft()):
                if len(child) == 1 or self._valid_words.get(child):
                    found = True
                    break
                if child not in seen:
                    seen.add(child)
                    queue.append(child)
        self._valid_words[word] = found
        if not found:
            # nothing reachable from word reaches a single vertex either
            for w in seen:
                self._valid_words[w] = False
        return found

    def is_valid(self, s: Segment) -> bool:
        return s == self.root or self.valid_word(self.word(s))

    def child_segments(self, s: Segment) -> list[Segment]:
        cached = self._children.get(s)
        if cached is not None:
            return cached
        grid, limit = self.grid, self.d_bound + 1
        out = []
        if s == self.root:
            ring = grid.children(grid.root)
            for i, x in enumerate(ring):
                for length in range(1, min(limit, len(ring) - 1) + 1):
                    word = tuple(grid.vtype[ring[(i + j) % len(ring)]] for j in range(length))
                    if self.valid_word(word):
                        out.append((x, length))
        else:
            members = self.members(s)
            kids = [grid.child(v, i) for v in members for i in range(len(grid.word(v)))]
            types = [grid.vtype[v] for v in kids]
            first = len(grid.word(members[0]))
            lefts = range(1, first + 1) if len(members) > 1 else range(1, first)
            rights = range(len(kids) - len(grid.word(members[-1])), len(kids))
            for x in lefts:
                for y in rights:
                    if x <= y and y - x + 1 <= limit and self.valid_word(tuple(types[x:y + 1])):
                        out.append((kids[x], y - x + 1))
        self._children[s] = out
        return out

    # near relation

    @staticmethod
    def _pair(s: Segment, t: Segment) -> tuple[Segment, Segment]:
        return (s, t) if s <= t else (t, s)

    def _reaches(self, s: Segment, t: Segment) -> bool:
        """ whether t starts inside s or at most D positions after its end """
        v, target = s[0], t[0]
        for _ in range(s[1] - 1 + self.d_bound + 1):
            if v == target:
                return True
            v = self.grid.succ(v)
        return False

    def near(self, s: Segment, t: Segment) -> bool:
        if self.depth(s) != self.depth(t):
            return False
        if s == t:
            return True
        key = self._pair(s, t)
        cached = self._near.get(key)
        if cached is None:
            cached = self._near[key] = self._reaches(s, t) or self._reaches(t, s)
        return cached

    def near_distance(self, s: Segment, t: Segment) -> int:
        if s == t:
            return 0
        key = self._pair(s, t)
        cached = self._near_distance.get(key)
        if cached is not None:
            return cached
        assert self.near(s, t), red(f"delta_N asked for segments that are not near: {s}, {t}")
        targets = self.members(t)
        dist = self.grid.distances(self.members(s), self.d_bound, max_depth=self.depth(s))
        found = [dist[w] for w in targets if w in dist]
        assert found, red(f"no path of length <= D between near segments {s} and {t}")
        value = self._near_distance[key] = min(found)
        return value

    def near_nodes(self, s: Segment) -> list[Segment]:
        cached = self._near_nodes.get(s)
        if cached is not None:
            return cached
        if s == self.root:
            self._near_nodes[s] = [s]
            return self._near_nodes[s]
        grid, limit = self.grid, self.d_bound + 1
        span = s[1] - 1 + self.d_bound
        start = grid.step(s[0], -(self.d_bound + limit - 1))
        found, v = set(), start
        for _ in range(span + self.d_bound + limit):
            for length in range(1, limit + 1):
                t = (v, length)
                if t not in found and self.is_valid(t) and self.near(s, t):
                    found.add(t)
            v = grid.succ(v)
        self._near_nodes[s] = sorted(found)
        return self._near_nodes[s]

    @property
    def max_near(self) -> int:
        return (3 * self.d_bound + 2) * (self.d_bound + 1)

    @property
    def max_near_distance(self) -> int:
        return self.d_bound

    # regularity

    def type_key(self, nodes: Sequence[Segment]) -> Hashable:
        """
        Class of a tuple of equal-depth segments under which counting values coincide.

        Everything a counting state reads below the tuple (subtree shapes, near relations and
        delta_N of descendants) lives inside the cone of a window of the ring floor(D / 2) levels
        up, widened by D + 1 positions on both sides, so the window's type word together with
        the positions of the segments below it determine the class. Windows that could wrap
        around their ring fall back to the segments themselves.
        """
        grid = self.grid
        h = self.depth(nodes[0])
        g = h - self.d_bound // 2
        margin = self.d_bound + 1
        exact = ("exact", h, tuple(nodes))
        if g < 1:
            return exact

        lefts = [self.ancestor(s, g) for s in nodes]
        anchor = min(lefts, key=lambda s: grid.ring_index(s[0]))
        # positions relative to the anchor, walking at most across the tuple's spread
        reach = (len(nodes) + 1) * (self.d_bound + 2) + 2
        offsets, v = {}, anchor[0]
        for i in range(reach + margin):
            offsets.setdefault(v, i)
            v = grid.succ(v)
        if any(s[0] not in offsets for s in lefts):
            return exact
        width = max(offsets[s[0]] + s[1] - 1 for s in lefts) + 1
        if width + 2 * margin >= grid.ring_size(g):
            return exact

        window_start = grid.step(anchor[0], -margin)
        window = [window_start]
        for _ in range(width + 2 * margin - 1):
            window.append(grid.succ(window[-1]))
        # leftmost descendant of the window at depth h, then offsets of the tuple below it
        base = window[0]
        for _ in range(h - g):
            base = grid.child(base, 0)
        fanout = max(len(w) for t, w in enumerate(grid.table.child_word) if t != grid.table.root_type)
        spread = len(window) * fanout ** (h - g)
        positions, v = {}, base
        targets = {s[0] for s in nodes}
        for i in range(spread + 1):
            if v in targets:
                positions[v] = i
                if len(positions) == len(targets):
                    break
            v = grid.succ(v)
        if len(positions) != len(targets):
            return exact
        return (h, tuple(grid.vtype[w] for w in window), tuple((positions[s[0]], s[1]) for s in nodes))


def rght_stg(grid: Grid, d_bound: int | None = None) -> RghtStg:
    return RghtStg(grid, compute_d_bound(grid) if d_bound is None else d_bound)
