# Standard Library
from functools import lru_cache
from typing import NamedTuple, Iterable, Iterator, Sequence

# My Library
from utils.color import red
from utils.errors import InvalidParams, RootHasNoRing, RootHasNoParent, InvalidAddress


VertexId = int
VertexAddress = tuple[int, ...]


class GridParams(NamedTuple):
    # degree of the original {3,q} vertices
    q: int
    # Goldberg-Coxeter parameters
    a: int = 1
    b: int = 0

    def canonical(self) -> "GridParams":
        """ validated copy with a >= b (G_{q,b,a} is the mirror image of G_{q,a,b}) """
        if self.q < 7:
            raise InvalidParams("q must be at least 7 for a hyperbolic triangulation", q=self.q)
        if self.a < 0 or self.b < 0 or (self.a == 0 and self.b == 0):
            raise InvalidParams("Goldberg-Coxeter parameters must be nonnegative and not both zero",
                                a=self.a, b=self.b)
        a, b = max(self.a, self.b), min(self.a, self.b)
        if a < 1:
            raise InvalidParams("a must be at least 1", a=self.a)
        return GridParams(self.q, a, b)


class TypeTable(NamedTuple):
    # types of the non-rightmost children of each type, left to right
    child_word: tuple[tuple[int, ...], ...]
    # type of the root v0
    root_type: int
    # degree of the vertices of each type
    degree: tuple[int, ...]
    # number of parents of each type, 0 for the root type
    num_parents: tuple[int, ...]

    @property
    def num_types(self) -> int:
        return len(self.child_word)

    def transition_matrix(self) -> list[list[int]]:
        """ M[t'][t] = multiplicity of t' in child_word(t) """
        n = self.num_types
        matrix = [[0] * n for _ in range(n)]
        for t, word in enumerate(self.child_word):
            for child in word:
                matrix[child][t] += 1
        return matrix


def regular_table(q: int) -> TypeTable:
    """ {3,q}: type 0 is the root, type 1 has one parent, type 2 has two """
    return TypeTable(
        child_word=((1,) * q, (2,) + (1,) * (q - 5), (2,) + (1,) * (q - 6)),
        root_type=0,
        degree=(q, q, q),
        num_parents=(0, 1, 2),
    )


@lru_cache(maxsize=None)
def type_table(params: GridParams) -> TypeTable:
    params = params.canonical()
    if (params.a, params.b) == (1, 0):
        return regular_table(params.q)
    from .goldberg import derive_type_table
    return derive_type_table(params.q, params.a, params.b)


class Grid:
    """
    Lazily generated regularly generated hyperbolic triangulation G_{q,a,b}.

    Vertices live in an arena of parallel lists indexed by creation order. Every non-root vertex
    is the non-rightmost child of exactly one vertex, its tree parent; this underlying tree gives
    each vertex its address. The rightmost child of v is the leftmost child of succ(v).
    """

    def __init__(self, params: GridParams, table: TypeTable | None = None) -> None:
        self.params = GridParams(*params).canonical()
        self.table = table if table is not None else type_table(self.params)
        self.root: VertexId = 0

        self.depth: list[int] = [0]
        self.vtype: list[int] = [self.table.root_type]
        self.tree_parent: list[VertexId] = [-1]
        self.tree_index: list[int] = [-1]
        self._succ: list[VertexId] = [-1]
        self._pred: list[VertexId] = [-1]
        self._kids: list[list[VertexId] | None] = [None]

        # type counts per ring and per-type subtree sizes, both exact integers
        self._ring_counts: list[list[int]] = [self._unit(self.table.root_type)]
        self._subtree: list[list[int]] = [[1] * self.table.num_types]

    def __repr__(self) -> str:
        q, a, b = self.params
        return f"Grid(q={q}, a={a}, b={b}, vertices={self.created})"

    def _unit(self, t: int) -> list[int]:
        counts = [0] * self.table.num_types
        counts[t] = 1
        return counts

    @property
    def created(self) -> int:
        """ number of vertex records allocated so far """
        return len(self.depth)

    def word(self, v: VertexId) -> tuple[int, ...]:
        return self.table.child_word[self.vtype[v]]

    def _new_vertex(self, parent: VertexId, index: int) -> VertexId:
        v = len(self.depth)
        self.depth.append(self.depth[parent] + 1)
        self.vtype.append(self.word(parent)[index])
        self.tree_parent.append(parent)
        self.tree_index.append(index)
        self._succ.append(-1)
        self._pred.append(-1)
        self._kids.append(None)
        return v

    def child(self, v: VertexId, i: int) -> VertexId:
        """ i-th non-rightmost child of v (all children for the root) """
        kids = self._kids[v]
        if kids is None:
            kids = self._kids[v] = [-1] * len(self.word(v))
        c = kids[i]
        if c < 0:
            c = kids[i] = self._new_vertex(v, i)
        return c

    def succ(self, v: VertexId) -> VertexId:
        if v == self.root:
            raise RootHasNoRing("the root is alone on ring 0")
        s = self._succ[v]
        if s >= 0:
            return s
        p, i = self.tree_parent[v], self.tree_index[v]
        if i + 1 < len(self.word(p)):
            s = self.child(p, i + 1)
        elif p == self.root:
            s = self.child(p, 0)
        else:
            # the rightmost child of p is the leftmost child of succ(p)
            s = self.child(self.succ(p), 0)
        self._succ[v], self._pred[s] = s, v
        return s

    def pred(self, v: VertexId) -> VertexId:
        if v == self.root:
            raise RootHasNoRing("the root is alone on ring 0")
        s = self._pred[v]
        if s >= 0:
            return s
        p, i = self.tree_parent[v], self.tree_index[v]
        if i > 0:
            s = self.child(p, i - 1)
        elif p == self.root:
            s = self.child(p, len(self.word(p)) - 1)
        else:
            pp = self.pred(p)
            s = self.child(pp, len(self.word(pp)) - 1)
        self._pred[v], self._succ[s] = s, v
        return s

    def step(self, v: VertexId, offset: int) -> VertexId:
        """ move offset places clockwise (negative: counterclockwise) along the ring """
        for _ in range(abs(offset)):
            v = self.succ(v) if offset > 0 else self.pred(v)
        return v

    def parents(self, v: VertexId) -> tuple[VertexId, ...]:
        """ (p_L, p_R), or a single parent """
        if v == self.root:
            raise RootHasNoParent("the root has no parents")
        p, i = self.tree_parent[v], self.tree_index[v]
        if i > 0 or p == self.root:
            return (p,)
        return (self.pred(p), p)

    def children(self, v: VertexId) -> list[VertexId]:
        """ all children left to right """
        kids = [self.child(v, i) for i in range(len(self.word(v)))]
        if v != self.root:
            kids.append(self.child(self.succ(v), 0))
        return kids

    def neighbors(self, v: VertexId) -> list[VertexId]:
        """ rotation around v: pred, parents, succ, then the children from right to left """
        if v == self.root:
            return self.children(v)[::-1]
        return [self.pred(v), *self.parents(v), self.succ(v), *self.children(v)[::-1]]

    def degree(self, v: VertexId) -> int:
        return self.table.degree[self.vtype[v]]

    def distances(self, sources: Iterable[VertexId], cap: int, target: VertexId | None = None,
                  max_depth: int | None = None) -> dict[VertexId, int]:
        """
        Multi-source BFS up to distance cap, stopping as soon as target is labelled.

        Vertices deeper than max_depth are not entered. Mapping every vertex to its ancestor at
        depth k sends edges to edges or single vertices, so distances between vertices of depth
        at most k are unchanged by the restriction.
        """
        dist = {s: 0 for s in sources}
        frontier = list(dist)
        if target in dist:
            return dist
        for d in range(1, cap + 1):
            reached = []
            for v in frontier:
                if max_depth is not None and self.depth[v] >= max_depth and v != self.root:
                    around = [self.pred(v), *self.parents(v), self.succ(v)]
                else:
                    around = self.neighbors(v)
                for w in around:
                    if w in dist or (max_depth is not None and self.depth[w] > max_depth):
                        continue
                    dist[w] = d
                    if w == target:
                        return dist
                    reached.append(w)
            frontier = reached
        return dist

    def distance(self, v: VertexId, w: VertexId, cap: int) -> int | None:
        """ exact graph distance, or None if it exceeds cap """
        limit = max(self.depth[v], self.depth[w])
        return self.distances((v,), cap, target=w, max_depth=limit).get(w)

    def address_of(self, v: VertexId) -> VertexAddress:
        address = []
        while v != self.root:
            address.append(self.tree_index[v])
            v = self.tree_parent[v]
        return tuple(reversed(address))

    def vertex_at(self, address: Sequence[int]) -> VertexId:
        v = self.root
        for depth, i in enumerate(address):
            word = self.word(v)
            if not 0 <= i < len(word):
                raise InvalidAddress("child index out of range",
                                     address="/".join(map(str, address)), depth=depth,
                                     index=i, children=len(word))
            v = self.child(v, i)
        return v

    # ring sizes and positions

    def _extend_counts(self, k: int) -> None:
        n = self.table.num_types
        while len(self._ring_counts) <= k:
            last = self._ring_counts[-1]
            counts = [0] * n
            for t, c in enumerate(last):
                if c:
                    for child in self.table.child_word[t]:
                        counts[child] += c
            self._ring_counts.append(counts)
        while len(self._subtree) <= k:
            last = self._subtree[-1]
            self._subtree.append([sum(last[c] for c in word) for word in self.table.child_word])

    def ring_type_counts(self, k: int) -> list[int]:
        assert k >= 0, red(f"ring index must be nonnegative, got: {k}")
        self._extend_counts(k)
        return list(self._ring_counts[k])

    def ring_size(self, k: int) -> int:
        return sum(self.ring_type_counts(k))

    def ball_size(self, radius: int) -> int:
        return sum(self.ring_size(k) for k in range(radius + 1))

    def subtree_size(self, t: int, k: int) -> int:
        """ number of depth-k descendants in the underlying tree of a type-t vertex """
        self._extend_counts(k)
        return self._subtree[k][t]

    def ring_index(self, v: VertexId) -> int:
        """ clockwise position of v on its ring, counted from ring_vertex(k, 0) """
        k, u, position = self.depth[v], self.root, 0
        for j, i in enumerate(self.address_of(v), start=1):
            word = self.word(u)
            position += sum(self.subtree_size(t, k - j) for t in word[:i])
            u = self.child(u, i)
        return position

    def ring_vertex(self, k: int, index: int) -> VertexId:
        size = self.ring_size(k)
        if not 0 <= index < size:
            raise InvalidAddress("ring position out of range", ring=k, index=index, size=size)
        u = self.root
        for j in range(1, k + 1):
            for i, t in enumerate(self.word(u)):
                below = self.subtree_size(t, k - j)
                if index < below:
                    u = self.child(u, i)
                    break
                index -= below
        return u

    def ring(self, k: int) -> list[VertexId]:
        """ ring k in clockwise order, materializing it through the underlying tree """
        level = [self.root]
        for _ in range(k):
            level = [self.child(u, i) for u in level for i in range(len(self.word(u)))]
        return level

    def ball(self, radius: int) -> Iterator[VertexId]:
        level = [self.root]
        for k in range(radius + 1):
            yield from level
            if k < radius:
                level = [self.child(u, i) for u in level for i in range(len(self.word(u)))]

    def extra_child(self, v: VertexId) -> bool:
        """ vertices producing an extra child in every generation """
        t = self.vtype[v]
        degree, parents = self.table.degree[t], self.table.num_parents[t]
        return degree == self.params.q or (degree == 6 and parents == 1)


def grid_create(params: GridParams | Sequence[int]) -> Grid:
    return Grid(GridParams(*params))


if __name__ == "__main__":
    grid = grid_create((7, 1, 0))
    print(grid, [grid.ring_size(k) for k in range(6)])
