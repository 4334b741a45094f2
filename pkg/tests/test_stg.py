# Third-Party Library
import pytest
import networkx as nx

# My Library
from utils.errors import NotRegular, RootHasNoParent
from stg.rght_stg import rght_stg
from stg.distance import first_near_level, stg_distance, stg_distance_trace
from oracle.brute import ball_graph, bfs_distance, binary_box_graph


def test_vertices_are_unit_segments(grid710, stg710):
    v = grid710.vertex_at((2, 1))
    assert stg710.is_vertex((v, 1))
    assert not stg710.is_vertex((v, 2))
    assert stg710.vertex_of(stg710.node_of(v)) == v
    assert stg710.near_distance((v, 1), (v, 1)) == 0


def test_parent_chain_reaches_root(grid710, stg710):
    for v in grid710.ring(3):
        chain = stg710.ancestors(stg710.node_of(v))
        assert chain[-1] == stg710.root
        assert [stg710.depth(s) for s in chain] == [3, 2, 1, 0]
        for s in chain:
            assert stg710.is_valid(s)
            assert s[1] <= stg710.d_bound + 1
    with pytest.raises(RootHasNoParent):
        stg710.parent(stg710.root)


def test_children_invert_parent(grid710, stg710):
    for s in {stg710.parent(stg710.node_of(v)) for v in grid710.ring(3)}:
        for child in stg710.child_segments(s):
            assert stg710.parent(child) == s
    for v in grid710.ring(3):
        node = stg710.node_of(v)
        assert node in stg710.child_segments(stg710.parent(node))


def test_near_relation_is_bounded(grid710, stg710):
    for v in grid710.ring(3)[:10]:
        s = stg710.node_of(v)
        near = stg710.near_nodes(s)
        assert s in near
        assert len(near) <= stg710.max_near
        for t, delta in stg710.neighbors(s):
            assert stg710.near(t, s)
            assert 0 <= delta <= stg710.max_near_distance


def test_near_is_closed_upwards(grid710, stg710):
    for v in grid710.ring(3):
        s = stg710.node_of(v)
        for t in stg710.near_nodes(s):
            assert stg710.near(stg710.parent(s), stg710.parent(t))


def test_distance_from_root(grid710, stg710):
    for v in grid710.ring(3):
        assert stg_distance(stg710, stg710.root, stg710.node_of(v)) == 3


def test_distance_along_ring(grid710, stg710):
    for v in grid710.ring(2):
        assert stg_distance(stg710, stg710.node_of(v), stg710.node_of(grid710.succ(v))) == 1


def test_distance_matches_bfs_on_regular_grid(grid710, stg710, ball710):
    vertices = list(grid710.ball(4))
    for v in vertices[::7]:
        lengths = nx.single_source_shortest_path_length(ball710, v)
        for w in vertices:
            assert stg_distance(stg710, stg710.node_of(v), stg710.node_of(w)) == lengths[w]


def test_distance_matches_bfs_on_goldberg_grid(grid711, stg711):
    graph = ball_graph(grid711, 5)
    vertices = list(grid711.ball(5))
    for v in vertices[::11]:
        lengths = nx.single_source_shortest_path_length(graph, v)
        for w in vertices[::3]:
            assert stg_distance(stg711, stg711.node_of(v), stg711.node_of(w)) == lengths[w]


def test_trace_of_a_cross_level_pair(grid711, stg711):
    """ depths 7 and 8 whose ancestors first meet at depth 6 with delta_N = 2: 1 + 2 + 2 = 5 """
    found = 0
    for y in grid711.ring(6)[:30]:
        w6 = grid711.step(y, 2)
        for a in grid711.children(y):
            for c in grid711.children(w6):
                for b in grid711.children(c):
                    s1, s2 = stg711.node_of(a), stg711.node_of(b)
                    record = first_near_level(stg711, s1, s2)
                    if record.level == 6 and record.near_distance == 2:
                        assert stg_distance(stg711, s1, s2) == 5
                        assert grid711.distance(a, b, 8) == 5
                        found += 1
    assert found > 0


def test_trace_lists_every_level(grid710, stg710):
    v, w = grid710.vertex_at((0, 1, 2)), grid710.vertex_at((4, 0))
    records = stg_distance_trace(stg710, stg710.node_of(v), stg710.node_of(w))
    assert records[-1].level == 0
    assert [r.level for r in records] == sorted((r.level for r in records), reverse=True)
    assert min(r.candidate for r in records) == records[0].candidate


def test_rght_type_key_classes(grid710, stg710):
    # the ring is invariant under the 7-fold rotation, so every class holds at least 7 vertices
    ring = grid710.ring(4)
    keys = {stg710.type_key((stg710.node_of(v),)) for v in ring}
    assert len(keys) * 7 <= len(ring)
    first = grid710.ring_vertex(4, 0)
    rotated = grid710.ring_vertex(4, len(ring) // 7)
    assert stg710.type_key((stg710.node_of(first),)) == stg710.type_key((stg710.node_of(rotated),))


def test_binary_parent_and_children(binary2):
    from stg.binary import binary_stg
    stg3 = binary_stg(3)
    assert stg3.parent((5, 3, 2)) == (2, 1, 1)
    assert stg3.parent((3, 2, 2)) == (1, 1, 1)
    assert len(stg3.child_segments((1, 1, 1))) == 4
    with pytest.raises(RootHasNoParent):
        binary2.parent((0, 0))
    for child in binary2.child_segments((1, 1)):
        assert binary2.parent(child) == (1, 1)


def test_binary_near_distance(binary2):
    for k in range(1, 5):
        assert binary2.near_distance((0, k), (1, k)) == 1


def test_binary_distance_matches_bfs(binary2):
    graph = binary_box_graph(binary2, 6)
    assert stg_distance(binary2, (0, 6), (9, 6)) == bfs_distance(graph, (0, 6), (9, 6), 100)
    nodes = sorted(graph.nodes)
    for p in nodes[::9]:
        lengths = nx.single_source_shortest_path_length(graph, p)
        for q in nodes[::4]:
            assert stg_distance(binary2, p, q) == lengths[q]


def test_binary_is_not_regular(binary2):
    assert not binary2.regular
    with pytest.raises(NotRegular):
        binary2.type_key(((0, 1),))


def test_binary_three_dims_matches_bfs():
    from stg.binary import binary_stg
    stg3 = binary_stg(3)
    graph = binary_box_graph(stg3, 3)
    nodes = sorted(graph.nodes)
    for p in nodes[::5]:
        lengths = nx.single_source_shortest_path_length(graph, p)
        for q in nodes[::3]:
            assert stg_distance(stg3, p, q) == lengths[q]


@pytest.mark.parametrize("radius, step", [(4, 5), pytest.param(6, 1, marks=pytest.mark.slow)])
def test_distance_matches_bfs_on_811_grid(grid811, radius, step):
    stg = rght_stg(grid811)
    assert stg.d_bound == 3
    graph = ball_graph(grid811, radius)
    vertices = list(grid811.ball(radius))
    for v in vertices[::step * 3]:
        lengths = nx.single_source_shortest_path_length(graph, v)
        for w in vertices[::step]:
            assert stg_distance(stg, stg.node_of(v), stg.node_of(w)) == lengths[w]
