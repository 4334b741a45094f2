# Standard Library
from typing import NamedTuple

# My Library
from .base import Node, SegmentTreeGraph


class LevelRecord(NamedTuple):
    # depth of the compared ancestors
    level: int
    first: Node
    second: Node
    # delta_N of the two ancestors
    near_distance: int
    # (depth1 - level) + (depth2 - level) + near_distance
    candidate: int


def stg_distance_trace(stg: SegmentTreeGraph, s1: Node, s2: Node) -> list[LevelRecord]:
    """ one record per level at which the ancestors of s1 and s2 are near, deepest first """
    d1, d2 = stg.depth(s1), stg.depth(s2)
    a, b = stg.ancestor(s1, min(d1, d2)), stg.ancestor(s2, min(d1, d2))
    records = []
    while True:
        h = stg.depth(a)
        if stg.near(a, b):
            near = stg.near_distance(a, b)
            records.append(LevelRecord(h, a, b, near, (d1 - h) + (d2 - h) + near))
        if h == 0:
            return records
        a, b = stg.parent(a), stg.parent(b)


def stg_distance(stg: SegmentTreeGraph, s1: Node, s2: Node) -> int:
    """
    Distance of two nodes: the best candidate over every level where their ancestors are near.
    All levels down to the root are scanned.
    """
    return min(record.candidate for record in stg_distance_trace(stg, s1, s2))


def first_near_level(stg: SegmentTreeGraph, s1: Node, s2: Node) -> LevelRecord:
    """ the deepest level with near ancestors """
    return stg_distance_trace(stg, s1, s2)[0]
