# Standard Library
import itertools
from typing import Hashable, NamedTuple, Sequence

# Third-Party Library
import networkx as nx

# My Library
from utils.color import red
from utils.errors import TemplateTooLarge


Color = Hashable

# templates with more vertices make the state tables explode
MAX_TEMPLATE_VERTICES = 4


class TemplateGraph(NamedTuple):
    # color k_C(w) of every template vertex w = 0, 1, ...
    colors: tuple[Color, ...]
    # undirected edges (a, b) with a < b, in the order queries list their distances
    edges: tuple[tuple[int, int], ...]

    @property
    def num_vertices(self) -> int:
        return len(self.colors)

    def edges_within(self, subset: Sequence[int]) -> tuple[int, ...]:
        """ indices of the edges with both ends in subset """
        inside = set(subset)
        return tuple(i for i, (a, b) in enumerate(self.edges) if a in inside and b in inside)

    def to_graph(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_vertices))
        graph.add_edges_from(self.edges)
        return graph


class Subgraph(NamedTuple):
    # sorted template vertices
    vertices: tuple[int, ...]
    # indices into TemplateGraph.edges of the induced edges
    edges: tuple[int, ...]


def make_template(colors: Sequence[Color], edges: Sequence[tuple[int, int]]) -> TemplateGraph:
    """
    Raises:
        TemplateTooLarge: more than MAX_TEMPLATE_VERTICES vertices.
    """
    if len(colors) > MAX_TEMPLATE_VERTICES:
        raise TemplateTooLarge("template has too many vertices", vertices=len(colors),
                               limit=MAX_TEMPLATE_VERTICES)
    # edge order is kept, queries and edge coefficients refer to it
    normalized = tuple(dict.fromkeys((min(a, b), max(a, b)) for a, b in edges))
    for a, b in normalized:
        assert a != b, red(f"template edges must not be loops, got: {(a, b)}")
        assert 0 <= a and b < len(colors), red(f"edge {(a, b)} leaves the template")
    template = TemplateGraph(tuple(colors), normalized)
    assert len(colors) > 0 and nx.is_connected(template.to_graph()), red("template must be connected")
    return template


def connected_subgraphs(template: TemplateGraph) -> list[Subgraph]:
    """ induced connected subgraphs, smaller vertex sets first """
    graph = template.to_graph()
    out = []
    for size in range(1, template.num_vertices + 1):
        for subset in itertools.combinations(range(template.num_vertices), size):
            if nx.is_connected(graph.subgraph(subset)):
                out.append(Subgraph(subset, template.edges_within(subset)))
    return out


def single_vertex(color: Color = 0) -> TemplateGraph:
    return make_template((color,), ())


def edge_template(first: Color = 0, second: Color = 0) -> TemplateGraph:
    return make_template((first, second), ((0, 1),))


def path_template(color: Color = 0) -> TemplateGraph:
    """ c0 - c1 - c2 """
    return make_template((color,) * 3, ((0, 1), (1, 2)))


def triangle_template(colors: Sequence[Color] = (0, 0, 0)) -> TemplateGraph:
    return make_template(tuple(colors), ((0, 1), (1, 2), (0, 2)))
