"""
Dynamic counting of colored template graphs over a segment tree graph.

For a connected induced subgraph S of the template and a tuple u of equal-depth nodes (one per
vertex of S), c_S(u) maps a key to the total weight of the maps m: S -> vertices with m(w) a
descendant of u(w), the key holding the depth of every m(w) and the distances along those edges
of S whose ends are still near in u (alive edges). An edge is settled at the deepest level where
its ends are near, where its distance is d(a) + d(b) - 2h + delta_N(u(a), u(b)).
"""

# Standard Library
import itertools
from collections import defaultdict
from typing import Any, Callable, Hashable, Literal, NamedTuple, Sequence

# My Library
from utils.color import red
from utils.errors import NotRegular, OutOfBall
from stg.base import Node, SegmentTreeGraph

from .template import Color, Subgraph, TemplateGraph, connected_subgraphs


EdgeMode = Literal["exact", "linear", "weighted"]

# (depth of every subgraph vertex, edge part); the edge part depends on the mode
Key = tuple[tuple[int, ...], Any]
Table = dict[Key, float]


class DistanceQuery(NamedTuple):
    # depth of the image of every template vertex
    d_vertex: tuple[int, ...]
    # distance along every template edge, in template edge order
    d_edge: tuple[int, ...]


class Counter:
    """
    Counting state for one template over the ball of a given radius.

    Edge modes:
        exact: keys keep every edge distance, count(query) answers DistanceQuery lookups.
        linear: keys keep sum_e coefficients[e] * d(e) only.
        weighted: every edge multiplies the value by edge_weight(e, d(e)), keys keep depths only.
    """

    def __init__(self, stg: SegmentTreeGraph, template: TemplateGraph, radius: int,
                 mode: EdgeMode = "exact", coefficients: Sequence[int] | None = None,
                 edge_weight: Callable[[int, int], float] | None = None) -> None:
        assert radius >= 0, red(f"radius must be nonnegative, got: {radius}")
        assert mode in ("exact", "linear", "weighted"), red(f"unknown edge mode: {mode}")
        if mode == "linear":
            assert coefficients is not None and len(coefficients) == len(template.edges), \
                red("linear mode needs one coefficient per template edge")
        if mode == "weighted":
            assert edge_weight is not None, red("weighted mode needs an edge weight")

        self.stg = stg
        self.template = template
        self.radius = radius
        self.mode = mode
        self.coefficients = tuple(coefficients) if coefficients is not None else None
        self.edge_weight = edge_weight

        self.subgraphs: list[Subgraph] = connected_subgraphs(template)
        self._by_vertices: dict[tuple[int, ...], Subgraph] = {s.vertices: s for s in self.subgraphs}
        self._full = self.subgraphs[-1]
        self._neighbours: dict[int, set[int]] = defaultdict(set)
        for a, b in template.edges:
            self._neighbours[a].add(b)
            self._neighbours[b].add(a)

        self.values: dict[tuple[Color, Node], float] = {}
        self.partials: dict[tuple[int, ...], dict[tuple[Node, ...], Table]] = {
            s.vertices: {} for s in self.subgraphs}
        self._touched: dict[Color, set[Node]] = defaultdict(set)
        self._touched_children: dict[Color, dict[Node, set[Node]]] = defaultdict(lambda: defaultdict(set))
        self._component_cache: dict[tuple, list[tuple[int, ...]]] = {}
        self.frozen = False

    def __repr__(self) -> str:
        return (f"Counter(template={self.template}, radius={self.radius}, mode={self.mode}, "
                f"values={len(self.values)})")

    # the recurrence

    def _components(self, vertices: tuple[int, ...], edges: tuple[int, ...]) -> list[tuple[int, ...]]:
        cached = self._component_cache.get((vertices, edges))
        if cached is not None:
            return cached
        root = {w: w for w in vertices}

        def find(w: int) -> int:
            while root[w] != w:
                w = root[w]
            return w

        for e in edges:
            a, b = self.template.edges[e]
            root[find(a)] = find(b)
        groups: dict[int, list[int]] = defaultdict(list)
        for w in vertices:
            groups[find(w)].append(w)
        cached = self._component_cache[(vertices, edges)] = [tuple(sorted(g)) for g in groups.values()]
        return cached

    def _alive(self, sub: Subgraph, u: Sequence[Node]) -> tuple[int, ...]:
        slot = {w: i for i, w in enumerate(sub.vertices)}
        edges = self.template.edges
        return tuple(e for e in sub.edges if self.stg.near(u[slot[edges[e][0]]], u[slot[edges[e][1]]]))

    def _evaluate(self, sub: Subgraph, u: tuple[Node, ...], h: int,
                  children_of: Callable[[Color, Node], Sequence[Node]],
                  value_of: Callable[[Color, Node], float],
                  lookup: Callable[[tuple[int, ...], tuple[Node, ...]], Table]) -> Table:
        stg, template = self.stg, self.template
        vertices, colors, edges = sub.vertices, template.colors, template.edges
        slot = {w: i for i, w in enumerate(vertices)}
        alive = self._alive(sub, u)
        out: Table = defaultdict(float)

        for mask in range(1 << len(vertices)):
            down = [w for i, w in enumerate(vertices) if mask >> i & 1]
            # vertices not going down are mapped to u(w) itself
            base = 1.0
            for i, w in enumerate(vertices):
                if not mask >> i & 1:
                    base = base * value_of(colors[w], u[i]) if stg.is_vertex(u[i]) else 0.0
                    if base == 0.0:
                        break
            if base == 0.0:
                continue
            options = [children_of(colors[w], u[slot[w]]) for w in down]
            if any(len(o) == 0 for o in options):
                continue

            # picks whose component tables coincide contribute identically, so they are combined once
            groups: dict[tuple, list] = {}
            for picks in itertools.product(*options):
                child = dict(zip(down, picks))
                inner = tuple(e for e in alive
                              if edges[e][0] in child and edges[e][1] in child
                              and stg.near(child[edges[e][0]], child[edges[e][1]]))
                tables = []
                for comp in self._components(tuple(down), inner):
                    table = lookup(comp, tuple(child[w] for w in comp))
                    if not table:
                        break
                    tables.append((self._by_vertices[comp], table))
                else:
                    signature = (inner, tuple(id(table) for _, table in tables))
                    if signature in groups:
                        groups[signature][0] += 1
                    else:
                        groups[signature] = [1, tables, inner]
            for count, tables, inner in groups.values():
                separated = [e for e in alive if e not in inner]
                self._combine(out, sub, u, h, base * count, tables, separated, slot)
        return {k: v for k, v in out.items() if v != 0.0}

    def _combine(self, out: Table, sub: Subgraph, u: tuple[Node, ...], h: int, base: float,
                 tables: list[tuple[Subgraph, Table]], separated: list[int], slot: dict[int, int]) -> None:
        edges = self.template.edges
        settled = [(e, edges[e][0], edges[e][1], self.stg.near_distance(u[slot[edges[e][0]]], u[slot[edges[e][1]]]))
                   for e in separated]
        for items in itertools.product(*(table.items() for _, table in tables)):
            depth = dict.fromkeys(sub.vertices, h)
            value = base
            exact: dict[int, int] = {}
            linear = 0
            for (comp, _), ((depths, part), weight) in zip(tables, items):
                depth.update(zip(comp.vertices, depths))
                value *= weight
                if self.mode == "exact":
                    exact.update((e, d) for e, d in zip(comp.edges, part) if d >= 0)
                elif self.mode == "linear":
                    linear += part
            for e, a, b, near in settled:
                dist = depth[a] + depth[b] - 2 * h + near
                if self.mode == "exact":
                    exact[e] = dist
                elif self.mode == "linear":
                    linear += self.coefficients[e] * dist
                else:
                    value *= self.edge_weight(e, dist)
            if self.mode == "exact":
                part = tuple(exact.get(e, -1) for e in sub.edges)
            elif self.mode == "linear":
                part = linear
            else:
                part = ()
            out[(tuple(depth[w] for w in sub.vertices), part)] += value

    # dynamic updates

    def _tuples(self, sub: Subgraph, w0: int, anchor: Node) -> set[tuple[Node, ...]]:
        """ tuples with u(w0) = anchor whose alive edges connect sub, over touched nodes """
        colors = self.template.colors
        others = [w for w in sub.vertices if w != w0]
        found: set[tuple[Node, ...]] = set()

        def extend(order: tuple[int, ...], i: int, assign: dict[int, Node]) -> None:
            if i == len(order):
                found.add(tuple(assign[w] for w in sub.vertices))
                return
            w = order[i]
            touched = self._touched[colors[w]]
            candidates = set()
            for x in self._neighbours[w]:
                if x in assign:
                    candidates.update(t for t in self.stg.near_nodes(assign[x]) if t in touched)
            for t in candidates:
                assign[w] = t
                extend(order, i + 1, assign)
                del assign[w]

        for order in itertools.permutations(others):
            placed, ok = {w0}, True
            for w in order:
                if not (self._neighbours[w] & placed):
                    ok = False
                    break
                placed.add(w)
            if ok:
                extend(order, 0, {w0: anchor})
        return {u for u in found if len(self._components(sub.vertices, self._alive(sub, u))) == 1}

    def add(self, color: Color, v: Any, x: float) -> None:
        """
        val_color(v) += x, then recomputes bottom-up every state whose tuple holds an ancestor
        segment of v at a template vertex of that color.

        Raises:
            NotRegular: the state was bulk-initialized.
            OutOfBall: v lies deeper than the radius.
        """
        if self.frozen:
            raise NotRegular("a regularly initialized counter cannot be updated")
        stg = self.stg
        node = stg.node_of(v)
        depth = stg.depth(node)
        if depth > self.radius:
            raise OutOfBall("vertex lies outside the ball", depth=depth, radius=self.radius)

        key = (color, node)
        self.values[key] = self.values.get(key, 0.0) + x
        chain = stg.ancestors(node)
        for j, s in enumerate(chain):
            self._touched[color].add(s)
            if j > 0:
                self._touched_children[color][s].add(chain[j - 1])

        def children_of(c: Color, s: Node) -> Sequence[Node]:
            return sorted(self._touched_children[c].get(s, ()))

        def value_of(c: Color, s: Node) -> float:
            return self.values.get((c, s), 0.0)

        def lookup(comp: tuple[int, ...], uk: tuple[Node, ...]) -> Table:
            return self.partials[comp].get(uk, {})

        colors = self.template.colors
        for j, anchor in enumerate(chain):
            h = depth - j
            for sub in self.subgraphs:
                tuples: set[tuple[Node, ...]] = set()
                for w0 in sub.vertices:
                    if colors[w0] == color:
                        tuples |= self._tuples(sub, w0, anchor)
                store = self.partials[sub.vertices]
                for u in tuples:
                    table = self._evaluate(sub, u, h, children_of, value_of, lookup)
                    if table:
                        store[u] = table
                    else:
                        store.pop(u, None)

    def init_regular(self, color: Color) -> None:
        """
        Same result as adding 1 with the given color at every vertex of the ball, evaluating each
        state once per type class of its tuple. The state is frozen afterwards.

        Raises:
            NotRegular: the segment tree graph has no type classes, or the state was used.
        """
        stg, radius = self.stg, self.radius
        if not stg.regular:
            raise NotRegular(f"{stg!r} has no type classes")
        if self.values or self.frozen:
            raise NotRegular("regular initialization needs a fresh counter")
        memo: dict[Hashable, Table] = {}

        def children_of(c: Color, s: Node) -> Sequence[Node]:
            if c != color or stg.depth(s) >= radius:
                return ()
            return stg.child_segments(s)

        def value_of(c: Color, s: Node) -> float:
            return 1.0 if c == color else 0.0

        def table(comp: tuple[int, ...], uk: tuple[Node, ...]) -> Table:
            key = (comp, stg.type_key(uk))
            cached = memo.get(key)
            if cached is None:
                h = stg.depth(uk[0])
                cached = memo[key] = self._evaluate(self._by_vertices[comp], uk, h, children_of, value_of, table)
            return cached

        full = self._full.vertices
        roots = (stg.root,) * len(full)
        self.partials[full][roots] = table(full, roots)
        self.frozen = True

    # queries

    def root_table(self) -> Table:
        full = self._full.vertices
        return self.partials[full].get((self.stg.root,) * len(full), {})

    def count(self, query: DistanceQuery | tuple[Sequence[int], Sequence[int]]) -> float:
        """ exact-mode lookup of one distance query, 0 for anything out of range """
        assert self.mode == "exact", red("count needs the exact edge mode, use count_aggregate")
        d_vertex, d_edge = query
        return self.root_table().get((tuple(d_vertex), tuple(d_edge)), 0.0)

    def count_aggregate(self, weight: Callable[[tuple[int, ...], Any], float] | None = None) -> float:
        """ sum over stored keys of weight(depths, edge part) * Count """
        table = self.root_table()
        if weight is None:
            return float(sum(table.values()))
        return float(sum(weight(depths, part) * value for (depths, part), value in table.items()))

    def items(self) -> list[tuple[Key, float]]:
        return sorted(self.root_table().items(), key=lambda kv: repr(kv[0]))


def counter_init(stg: SegmentTreeGraph, template: TemplateGraph, radius: int, **kwargs) -> Counter:
    return Counter(stg, template, radius, **kwargs)
