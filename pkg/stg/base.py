# Standard Library
import abc
from typing import Any, Hashable, Sequence

# My Library
from utils.errors import NotRegular


Node = Hashable


class SegmentTreeGraph(abc.ABC):
    """
    A tree of segments over a graph plus a bounded same-depth "near" relation N, such that the
    distance of two vertices is min over levels h with N-related ancestors of
    (depth1 - h) + (depth2 - h) + delta_N(ancestors at h).

    Vertices are the nodes for which is_vertex holds; vertex_of / node_of convert between the
    graph's own vertex handles and nodes.
    """

    # whether type_key is available, i.e. counter_init_regular may be used
    regular: bool = False
    root: Node

    @abc.abstractmethod
    def parent(self, s: Node) -> Node:
        pass

    @abc.abstractmethod
    def depth(self, s: Node) -> int:
        pass

    @abc.abstractmethod
    def is_vertex(self, s: Node) -> bool:
        pass

    @abc.abstractmethod
    def vertex_of(self, s: Node) -> Any:
        pass

    @abc.abstractmethod
    def node_of(self, v: Any) -> Node:
        pass

    @abc.abstractmethod
    def near(self, s: Node, t: Node) -> bool:
        pass

    @abc.abstractmethod
    def near_distance(self, s: Node, t: Node) -> int:
        """ delta_N, only defined for near pairs """
        pass

    @abc.abstractmethod
    def near_nodes(self, s: Node) -> list[Node]:
        """ every node t with (s, t) in N, s included """
        pass

    @abc.abstractmethod
    def child_segments(self, s: Node) -> list[Node]:
        """ the nodes whose parent is s, left to right """
        pass

    @property
    @abc.abstractmethod
    def max_near(self) -> int:
        """ m_N, bound on |near_nodes(s)| """
        pass

    @property
    @abc.abstractmethod
    def max_near_distance(self) -> int:
        """ m_d, bound on delta_N """
        pass

    def neighbors(self, s: Node) -> list[tuple[Node, int]]:
        return [(t, self.near_distance(s, t)) for t in self.near_nodes(s)]

    def ancestor(self, s: Node, depth: int) -> Node:
        while self.depth(s) > depth:
            s = self.parent(s)
        return s

    def ancestors(self, s: Node) -> list[Node]:
        """ s, parent(s), ..., root, i.e. index j holds the ancestor j levels up """
        chain = [s]
        while chain[-1] != self.root:
            chain.append(self.parent(chain[-1]))
        return chain

    def type_key(self, nodes: Sequence[Node]) -> Hashable:
        raise NotRegular(f"{self.__class__.__name__} has no type classes")
