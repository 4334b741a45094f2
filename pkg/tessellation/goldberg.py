"""
Type tables of the Goldberg-Coxeter grids G_{q,a,b}.

Each triangle of a finite {3,q} patch is replaced by the master triangle of the Eisenstein
lattice with corners 0, z = a + b*w and z*w (w = exp(i*pi/3)); lattice points are glued across
triangle edges and the resulting triangulation is explored from the coarse root. Its BFS rings
are ordered, the vertices are partitioned by (degree, parent count) and the partition is refined
by the classes of the non-rightmost children until it is stable. The stable classes are the types.
"""

# Standard Library
from typing import NamedTuple

# Third-Party Library
import networkx as nx
from networkx.utils import UnionFind

# My Library
from utils.color import red, report, info, green
from utils.errors import PatchTooSmall

from .rght import Grid, GridParams, TypeTable, regular_table


Point = tuple[int, int]

# unit steps of the Eisenstein lattice in counterclockwise order: 1, w, w^2, -1, -w, -w^2
UNITS: tuple[Point, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


def det(u: Point, v: Point) -> int:
    return u[0] * v[1] - u[1] * v[0]


def rotate_back(p: Point) -> Point:
    """ multiplication by w^-2 """
    return (p[1], -p[0] - p[1])


def rotate_forth(p: Point) -> Point:
    """ multiplication by w^2 """
    return (-p[0] - p[1], p[0])


class MasterTriangle:
    """ closed triangle 0, z, z*w with frame changes between its three corner labellings """

    def __init__(self, a: int, b: int) -> None:
        self.z: Point = (a, b)
        self.corners: tuple[Point, Point, Point] = ((0, 0), (a, b), (-b, a + b))
        self.points: list[Point] = [
            (x, y) for y in range(0, a + b + 1) for x in range(-b, a + 1) if self.inside((x, y))
        ]

    def side(self, k: int, p: Point) -> int:
        """ >= 0 on the inner side of edge k (corner k to corner k+1) """
        c0, c1 = self.corners[k], self.corners[(k + 1) % 3]
        return det((c1[0] - c0[0], c1[1] - c0[1]), (p[0] - c0[0], p[1] - c0[1]))

    def inside(self, p: Point) -> bool:
        return all(self.side(k, p) >= 0 for k in range(3))

    def to_frame(self, k: int, p: Point) -> Point:
        """ coordinates of p in the labelling that puts corner k at 0 and corner k+1 at z """
        for _ in range(k):
            p = rotate_back((p[0] - self.z[0], p[1] - self.z[1]))
        return p

    def from_frame(self, k: int, p: Point) -> Point:
        for _ in range(k):
            p = rotate_forth(p)
            p = (p[0] + self.z[0], p[1] + self.z[1])
        return p

    def across(self, k: int, j: int, p: Point) -> Point:
        """ p seen from the neighbouring triangle that shares our edge k as its edge j """
        x, y = self.to_frame(k, p)
        return self.from_frame(j, (self.z[0] - x, self.z[1] - y))


class _Unstable(Exception):
    pass


class Patch(NamedTuple):
    # the subdivided triangulation, vertices numbered 0..n-1
    graph: nx.Graph
    # BFS depth from the root
    depth: dict[int, int]
    # vertices at depth <= reliable have complete neighbourhoods
    reliable: int
    root: int


def coarse_triangles(q: int, radius: int) -> tuple[list[tuple[int, int, int]], list[int]]:
    """ consistently oriented faces of the {3,q} patch seen from vertices of depth < radius """
    grid = Grid(GridParams(q, 1, 0), regular_table(q))
    faces = set()
    for v in grid.ball(radius - 1):
        rotation = grid.neighbors(v)
        for i, x in enumerate(rotation):
            face = (v, x, rotation[(i + 1) % len(rotation)])
            m = face.index(min(face))
            faces.add(face[m:] + face[:m])
    return sorted(faces), grid.depth


def build_patch(q: int, a: int, b: int, radius: int) -> Patch:
    triangles, coarse_depth = coarse_triangles(q, radius)
    master = MasterTriangle(a, b)

    across: dict[tuple[int, int], tuple[int, int]] = {}
    edge_owner = {}
    for t, face in enumerate(triangles):
        for k in range(3):
            edge_owner[(face[k], face[(k + 1) % 3])] = (t, k)
    for (u, v), (t, k) in edge_owner.items():
        if (v, u) in edge_owner:
            across[(t, k)] = edge_owner[(v, u)]

    # lattice points (triangle, point), glued across shared edges
    keys = [(t, p) for t in range(len(triangles)) for p in master.points]
    sets = UnionFind(keys)
    for t, p in keys:
        for k in range(3):
            if master.side(k, p) == 0 and (t, k) in across:
                t2, j = across[(t, k)]
                p2 = master.across(k, j, p)
                assert master.inside(p2), red(f"glued point leaves the master triangle, got: {p2}")
                sets.union((t, p), (t2, p2))

    # classes numbered densely by first appearance
    index: dict[tuple[int, Point], int] = {}
    for key in keys:
        index.setdefault(sets[key], len(index))

    graph = nx.Graph()
    graph.add_nodes_from(range(len(index)))
    for t, p in keys:
        x = index[sets[(t, p)]]
        for du, dv in UNITS:
            r = (p[0] + du, p[1] + dv)
            if master.inside(r):
                y = index[sets[(t, r)]]
            else:
                outside = [k for k in range(3) if master.side(k, r) < 0]
                if len(outside) != 1 or (t, outside[0]) not in across:
                    continue
                t2, j = across[(t, outside[0])]
                r2 = master.across(outside[0], j, r)
                if not master.inside(r2):
                    continue
                y = index[sets[(t2, r2)]]
            if x != y:
                graph.add_edge(x, y)

    complete = {index[sets[(t, p)]] for t, p in keys
                if max(coarse_depth[c] for c in triangles[t]) <= radius - 2}

    t0 = next(t for t, face in enumerate(triangles) if 0 in face)
    root = index[sets[(t0, master.corners[triangles[t0].index(0)])]]

    depth = nx.single_source_shortest_path_length(graph, root)
    incomplete = [d for v, d in depth.items() if v not in complete]
    reliable = (min(incomplete) if incomplete else max(depth.values())) - 1
    return Patch(graph, depth, reliable, root)


def order_rings(patch: Patch, last: int) -> tuple[list[list[int]], dict[int, list[int]]]:
    """
    Orders rings 0..last+1 clockwise and lists the children of every vertex of depth 1..last
    left to right (leftmost child shared with pred, rightmost with succ).
    """
    graph, depth = patch.graph, patch.depth

    def ring_neighbours(v: int) -> list[int]:
        return sorted(w for w in graph[v] if depth[w] == depth[v])

    ring1 = sorted(graph[patch.root])
    order, prev = [ring1[0]], None
    while True:
        cur = order[-1]
        nxt = [w for w in ring_neighbours(cur) if w != prev]
        prev, cur = cur, nxt[0]
        if cur == order[0]:
            break
        order.append(cur)
    assert len(order) == len(ring1), red(f"ring 1 is not a cycle, got: {len(order)} of {len(ring1)}")

    rings, children = [[patch.root], order], {}
    for k in range(1, last + 1):
        ring, below = rings[k], []
        kids = {v: {w for w in graph[v] if depth[w] == k + 1} for v in ring}
        n = len(ring)
        for i, v in enumerate(ring):
            left = kids[ring[i - 1]] & kids[v]
            right = kids[v] & kids[ring[(i + 1) % n]]
            assert len(left) == 1 and len(right) == 1, red(
                f"neighbouring vertices must share exactly one child, got: {len(left)}, {len(right)}")
            seq, prev = [left.pop()], None
            target = right.pop()
            while seq[-1] != target:
                step = [w for w in ring_neighbours(seq[-1]) if w in kids[v] and w != prev]
                assert len(step) == 1, red(f"children do not form a path on the ring, got: {step}")
                prev = seq[-1]
                seq.append(step[0])
            children[v] = seq
            below.extend(seq[:-1])
        expected = sum(1 for d in depth.values() if d == k + 1)
        assert len(below) == expected, red(f"ring {k + 1} has {expected} vertices, ordered {len(below)}")
        rings.append(below)
    return rings, children


def refine_types(patch: Patch, margin: int) -> TypeTable:
    last = patch.reliable - 1
    if last < 2:
        raise _Unstable()
    rings, children = order_rings(patch, last)
    graph, depth = patch.graph, patch.depth

    def parents(v: int) -> int:
        return sum(1 for w in graph[v] if depth[w] == depth[v] - 1)

    # class_0 is known down to the reliable depth, each refinement loses one level
    region = [v for k in range(1, last + 2) for v in rings[k]]
    cls = {v: (graph.degree[v], parents(v)) for v in region}
    shape = dict(cls)
    limit = last + 1
    while True:
        limit -= 1
        if limit - margin < 1:
            raise _Unstable()
        inner = [v for k in range(1, limit + 1) for v in rings[k]]
        signature = {v: (cls[v], tuple(cls[c] for c in children[v][:-1])) for v in inner}
        if len(set(signature.values())) == len({cls[v] for v in inner}):
            break
        names: dict = {}
        cls = {v: names.setdefault(signature[v], len(names)) for v in inner}

    # types are the stable classes, numbered by first appearance in ring order; 0 is the root
    number: dict = {}
    first_depth: dict = {}
    for v in inner:
        if cls[v] not in number:
            number[cls[v]] = len(number) + 1
            first_depth[cls[v]] = depth[v]
    if max(first_depth.values()) > limit - margin:
        raise _Unstable()

    words: dict[int, tuple[int, ...]] = {}
    degree, num_parents = [graph.degree[patch.root]], [0]
    for v in inner:
        t = number[cls[v]]
        kids = children[v][:-1]
        if any(cls[c] not in number for c in kids):
            raise _Unstable()
        word = tuple(number[cls[c]] for c in kids)
        assert words.setdefault(t, word) == word, red(f"type {t} has two child words")
        if t == len(degree):
            degree.append(shape[v][0])
            num_parents.append(shape[v][1])
    if any(cls[c] not in number for c in rings[1]):
        raise _Unstable()

    child_word = [tuple(number[cls[c]] for c in rings[1])]
    child_word += [words[t] for t in range(1, len(number) + 1)]
    table = TypeTable(tuple(child_word), 0, tuple(degree), tuple(num_parents))

    # the table has to reproduce the BFS ring sizes of the patch
    grid = Grid(GridParams(graph.degree[patch.root], 1, 0), table)
    for k in range(patch.reliable + 1):
        observed = sum(1 for d in depth.values() if d == k)
        if grid.ring_size(k) != observed:
            raise _Unstable()
    return table


def derive_type_table(q: int, a: int, b: int, start_radius: int = 3, max_radius: int = 10,
                      margin: int = 2) -> TypeTable:
    """
    Derives the type table of G_{q,a,b} from growing {3,q} patches.

    Raises:
        PatchTooSmall: no patch up to max_radius produced a stable table.
    """
    for radius in range(start_radius, max_radius + 1):
        patch = build_patch(q, a, b, radius)
        try:
            table = refine_types(patch, margin)
        except _Unstable:
            continue
        report(info(f"G_{{{q},{a},{b}}}: {green(table.num_types)} types from a patch of radius {radius}"))
        return table
    raise PatchTooSmall("type refinement did not stabilise", q=q, a=a, b=b, max_radius=max_radius)
