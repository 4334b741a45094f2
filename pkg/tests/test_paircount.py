# Third-Party Library
import pytest
import numpy as np
import networkx as nx

# My Library
from utils.errors import IndexOutOfRange, OutOfBall
from counting.paircount import PairCounter, brute_force_c
from oracle.brute import ball_graph, binary_box_graph, brute_pair_histogram
from tools.selftest import random_vertex


def test_single_self_pair(grid710, stg710):
    counter = PairCounter(stg710, 4)
    counter.add(grid710.vertex_at((2, 1)), 1)
    assert counter.count(0) == 1
    assert sum(counter.count(d) for d in range(1, 9)) == 0
    assert counter.count(9) == 0
    assert counter.count(-1) == 0


def test_neighbouring_pair(grid710, stg710):
    counter = PairCounter(stg710, 4)
    v = grid710.vertex_at((2, 1))
    counter.add(v, 1)
    counter.add(grid710.succ(v), 1)
    assert counter.count(0) == 2
    assert counter.count(1) == 2


def test_out_of_ball(grid710, stg710):
    counter = PairCounter(stg710, 2)
    with pytest.raises(OutOfBall):
        counter.add(grid710.vertex_at((0, 0, 0)), 1)


def test_random_adds_match_brute_force(grid710, stg710, ball710, rng):
    counter = PairCounter(stg710, 4)
    val = {}
    for _ in range(60):
        v = random_vertex(grid710, 4, rng)
        x = float(rng.integers(-1, 3))
        counter.add(v, x)
        val[v] = val.get(v, 0.0) + x
        np.testing.assert_array_equal(counter.hist, brute_pair_histogram(ball710, val, 4))
    assert counter.hist.sum() == sum(val.values()) ** 2


def test_goldberg_grid_matches_brute_force(grid711, stg711, rng):
    graph = ball_graph(grid711, 5)
    counter = PairCounter(stg711, 5)
    val = {}
    for _ in range(40):
        v = random_vertex(grid711, 5, rng)
        counter.add(v, 1.0)
        val[v] = val.get(v, 0.0) + 1.0
    np.testing.assert_array_equal(counter.hist, brute_pair_histogram(graph, val, 5))


@pytest.mark.slow
@pytest.mark.parametrize("params", [(7, 1, 0), (7, 1, 1)])
def test_radius_six_matches_brute_force(params, rng):
    from tessellation.rght import grid_create
    from stg.rght_stg import rght_stg
    grid = grid_create(params)
    stg = rght_stg(grid)
    graph = ball_graph(grid, 6)
    counter = PairCounter(stg, 6)
    val = {}
    for _ in range(100):
        v = random_vertex(grid, 6, rng)
        counter.add(v, 1.0)
        val[v] = val.get(v, 0.0) + 1.0
        np.testing.assert_array_equal(counter.hist, brute_pair_histogram(graph, val, 6))


def test_binary_grid_matches_brute_force(binary2, rng):
    graph = binary_box_graph(binary2, 5)
    nodes = sorted(graph.nodes)
    counter = PairCounter(binary2, 5)
    val = {}
    for i in rng.integers(len(nodes), size=30):
        p = nodes[int(i)]
        counter.add(p, 1.0)
        val[p] = val.get(p, 0.0) + 1.0
    np.testing.assert_array_equal(counter.hist, brute_pair_histogram(graph, val, 5))


def test_order_does_not_matter(grid710, stg710, rng):
    vertices = [random_vertex(grid710, 4, rng) for _ in range(20)]
    forward, backward = PairCounter(stg710, 4), PairCounter(stg710, 4)
    for v in vertices:
        forward.add(v, 1.0)
    for v in reversed(vertices):
        backward.add(v, 1.0)
    np.testing.assert_array_equal(forward.hist, backward.hist)


def test_subtree_sums_are_consistent(grid710, stg710, rng):
    counter = PairCounter(stg710, 4)
    for _ in range(25):
        counter.add(random_vertex(grid710, 4, rng), 1.0)
    for s, c in counter.c.items():
        if stg710.depth(s) <= 3:
            np.testing.assert_array_equal(c, brute_force_c(counter, s))


def test_select_enumerates_the_distance_class(grid710, stg710, ball710, rng):
    counter = PairCounter(stg710, 4)
    colored = sorted({random_vertex(grid710, 4, rng) for _ in range(40)})
    for w in colored:
        counter.add(w, 1)
    for v in colored[:6]:
        lengths = nx.single_source_shortest_path_length(ball710, v)
        profile = counter.distance_profile(v)
        for d in range(9):
            want = {w for w in colored if lengths[w] == d}
            assert profile[d] == len(want)
            got = [counter.select_at_distance(v, d, i) for i in range(1, len(want) + 1)]
            assert all(offset == 0 for _, offset in got)
            assert {w for w, _ in got} == want
            assert len(got) == len(want)
            with pytest.raises(IndexOutOfRange):
                counter.select_at_distance(v, d, len(want) + 1)


def test_select_with_multiplicities(grid710, stg710):
    counter = PairCounter(stg710, 3)
    v = grid710.vertex_at((0, 0))
    w = grid710.succ(v)
    counter.add(w, 3)
    assert [counter.select_at_distance(v, 1, i) for i in (1, 2, 3)] == [(w, 0), (w, 1), (w, 2)]
    with pytest.raises(IndexOutOfRange):
        counter.select_at_distance(v, 1, 0)


def test_select_single_target(grid710, stg710):
    counter = PairCounter(stg710, 4)
    v, w = grid710.vertex_at((1, 2)), grid710.vertex_at((4, 0, 1))
    counter.add(w, 1)
    d = grid710.distance(v, w, 10)
    assert counter.select_at_distance(v, d, 1) == (w, 0)
