# Standard Library
import time

# Third-Party Library
import pytest
import numpy as np

# My Library
from utils.errors import NotRegular, OutOfBall, TemplateTooLarge
from counting.counter import Counter, DistanceQuery
from counting.template import (connected_subgraphs, edge_template, make_template, path_template,
                               single_vertex, triangle_template)
from oracle.brute import ball_graph, brute_count_table, binary_box_graph
from tools.selftest import random_vertex


def test_subgraph_enumeration():
    assert len(connected_subgraphs(edge_template())) == 3
    assert len(connected_subgraphs(triangle_template())) == 7
    assert len(connected_subgraphs(path_template())) == 6


def test_template_limits():
    with pytest.raises(TemplateTooLarge):
        make_template((0,) * 5, ((0, 1), (1, 2), (2, 3), (3, 4)))
    with pytest.raises(AssertionError):
        make_template((0, 0, 0), ((0, 1),))


def test_template_keeps_edge_order():
    template = make_template(("x", "y", "x"), ((1, 0), (1, 2), (0, 2)))
    assert template.edges == ((0, 1), (1, 2), (0, 2))


def test_empty_state_counts_nothing(stg710):
    counter = Counter(stg710, triangle_template(), 3)
    assert counter.count(((0, 0, 0), (0, 0, 0))) == 0
    assert counter.count_aggregate() == 0


def test_root_pairs(grid710, stg710):
    counter = Counter(stg710, edge_template("A", "A"), 3)
    counter.add("A", grid710.root, 1)
    assert counter.count(DistanceQuery((0, 0), (0,))) == 1
    fresh = Counter(stg710, edge_template("A", "A"), 3)
    fresh.add("A", grid710.root, 2)
    assert fresh.count(((0, 0), (0,))) == 4


def test_root_and_depth_two(grid710, stg710):
    counter = Counter(stg710, edge_template("A", "A"), 3)
    w = grid710.vertex_at((3, 1))
    counter.add("A", grid710.root, 1)
    counter.add("A", w, 1)
    assert counter.count(((0, 2), (2,))) == 1
    assert counter.count(((2, 0), (2,))) == 1
    assert counter.count(((2, 2), (0,))) == 1
    assert counter.count(((0, 2), (1,))) == 0
    # beyond the ball
    assert counter.count(((0, 9), (9,))) == 0


def test_singleton_template(grid710, stg710):
    counter = Counter(stg710, single_vertex("A"), 3)
    v = grid710.vertex_at((1, 2, 1))
    counter.add("A", v, 2.5)
    assert counter.count(((3,), ())) == 2.5
    assert counter.count(((2,), ())) == 0


def test_out_of_ball(grid710, stg710):
    counter = Counter(stg710, edge_template(), 2)
    with pytest.raises(OutOfBall):
        counter.add(0, grid710.vertex_at((0, 0, 0)), 1)


@pytest.mark.parametrize("template", [edge_template(), path_template(), triangle_template()],
                         ids=["edge", "path", "triangle"])
def test_matches_enumeration(grid710, stg710, ball710, rng, template):
    counter = Counter(stg710, template, 4)
    coloring = {0: {}}
    for _ in range(10):
        v = random_vertex(grid710, 4, rng)
        x = float(rng.integers(-2, 4))
        counter.add(0, v, x)
        coloring[0][v] = coloring[0].get(v, 0.0) + x
    expected = {k: x for k, x in brute_count_table(ball710, template, coloring).items() if x != 0}
    assert counter.root_table() == expected


def test_two_colors_match_enumeration(grid710, stg710, ball710, rng):
    template = make_template(("a", "b", "a"), ((0, 1), (1, 2), (0, 2)))
    counter = Counter(stg710, template, 3)
    coloring = {"a": {}, "b": {}}
    for i in range(9):
        color = "a" if i % 3 else "b"
        v = random_vertex(grid710, 3, rng)
        counter.add(color, v, 1.0)
        coloring[color][v] = coloring[color].get(v, 0.0) + 1.0
    expected = brute_count_table(ball710, template, coloring)
    assert counter.root_table() == expected


def test_negative_add_undoes(grid710, stg710, rng):
    counter = Counter(stg710, triangle_template(), 3)
    for _ in range(5):
        counter.add(0, random_vertex(grid710, 3, rng), 1.0)
    before = dict(counter.root_table())
    v = random_vertex(grid710, 3, rng)
    counter.add(0, v, 1.0)
    counter.add(0, v, -1.0)
    assert counter.root_table() == before


def test_linear_mode_matches_exact(grid710, stg710, rng):
    template = triangle_template()
    exact = Counter(stg710, template, 3)
    linear = Counter(stg710, template, 3, mode="linear", coefficients=(1, 1, -1))
    for _ in range(6):
        v = random_vertex(grid710, 3, rng)
        exact.add(0, v, 1.0)
        linear.add(0, v, 1.0)
    gamma = 0.5
    want = exact.count_aggregate(lambda depths, d: gamma ** (d[0] + d[1] - d[2]))
    assert linear.count_aggregate(lambda depths, e: gamma ** e) == pytest.approx(want, rel=1e-12)


def test_weighted_mode_matches_exact(grid710, stg710, rng):
    weights = np.linspace(1.0, 0.1, 7)
    exact = Counter(stg710, edge_template(), 3)
    weighted = Counter(stg710, edge_template(), 3, mode="weighted", edge_weight=lambda e, d: weights[d])
    for _ in range(8):
        v = random_vertex(grid710, 3, rng)
        exact.add(0, v, 1.0)
        weighted.add(0, v, 1.0)
    want = exact.count_aggregate(lambda depths, d: weights[d[0]])
    assert weighted.count_aggregate() == pytest.approx(want, rel=1e-12)


def test_aggregate_marginalizes(grid710, stg710, rng):
    counter = Counter(stg710, edge_template(), 3)
    for _ in range(8):
        counter.add(0, random_vertex(grid710, 3, rng), 1.0)
    for d in range(7):
        by_query = sum(counter.count(((d1, d2), (d,))) for d1 in range(4) for d2 in range(4))
        assert counter.count_aggregate(lambda depths, e: float(e[0] == d)) == by_query


def test_init_regular_singleton(stg710):
    counter = Counter(stg710, single_vertex(), 2)
    counter.init_regular(0)
    assert counter.count(((2,), ())) == 21
    assert counter.count_aggregate() == 29
    with pytest.raises(NotRegular):
        counter.add(0, 0, 1)

    root_only = Counter(stg710, single_vertex(), 0)
    root_only.init_regular(0)
    assert root_only.count(((0,), ())) == 1


def test_init_regular_matches_adds(grid710, stg710):
    regular = Counter(stg710, edge_template(), 3)
    regular.init_regular(0)
    explicit = Counter(stg710, edge_template(), 3)
    for v in grid710.ball(3):
        explicit.add(0, v, 1.0)
    assert regular.root_table() == explicit.root_table()


@pytest.mark.slow
def test_init_regular_triangle_matches_adds(grid710, stg710):
    regular = Counter(stg710, triangle_template(), 3)
    regular.init_regular(0)
    explicit = Counter(stg710, triangle_template(), 3)
    for v in grid710.ball(3):
        explicit.add(0, v, 1.0)
    assert regular.root_table() == explicit.root_table()


def test_init_regular_needs_regular_graph(binary2):
    counter = Counter(binary2, edge_template(), 3)
    with pytest.raises(NotRegular):
        counter.init_regular(0)


def test_binary_counting_matches_enumeration(binary2, rng):
    graph = binary_box_graph(binary2, 4)
    nodes = sorted(graph.nodes)
    counter = Counter(binary2, path_template(), 4)
    coloring = {0: {}}
    for i in rng.integers(len(nodes), size=8):
        p = nodes[int(i)]
        counter.add(0, p, 1.0)
        coloring[0][p] = coloring[0].get(p, 0.0) + 1.0
    assert counter.root_table() == brute_count_table(graph, path_template(), coloring)


@pytest.mark.parametrize("template", [edge_template(), path_template()], ids=["edge", "path"])
def test_711_matches_enumeration(grid711, stg711, rng, template):
    graph = ball_graph(grid711, 4)
    counter = Counter(stg711, template, 4)
    coloring = {0: {}}
    for _ in range(10):
        v = random_vertex(grid711, 4, rng)
        x = float(rng.integers(-2, 4))
        counter.add(0, v, x)
        coloring[0][v] = coloring[0].get(v, 0.0) + x
    expected = {k: x for k, x in brute_count_table(graph, template, coloring).items() if x != 0}
    assert counter.root_table() == expected


@pytest.mark.parametrize("template", [edge_template(), path_template()], ids=["edge", "path"])
def test_711_init_regular_matches_adds(grid711, stg711, template):
    regular = Counter(stg711, template, 3)
    regular.init_regular(0)
    explicit = Counter(stg711, template, 3)
    for v in grid711.ball(3):
        explicit.add(0, v, 1.0)
    assert regular.root_table() == explicit.root_table()


def test_weighted_init_regular_matches_adds(grid710, stg710):
    weights = np.linspace(0.9, 0.1, 7)
    kwargs = dict(mode="weighted", edge_weight=lambda e, d: weights[d])
    regular = Counter(stg710, path_template(), 3, **kwargs)
    regular.init_regular(0)
    explicit = Counter(stg710, path_template(), 3, **kwargs)
    for v in grid710.ball(3):
        explicit.add(0, v, 1.0)
    want = explicit.root_table()
    got = regular.root_table()
    assert set(got) == set(want)
    for key, value in want.items():
        assert got[key] == pytest.approx(value, rel=1e-12)


@pytest.mark.slow
def test_regular_path_count_is_fast(grid710, stg710):
    counter = Counter(stg710, path_template(), 6, mode="weighted", edge_weight=lambda e, d: 0.5 ** d)
    start = time.perf_counter()
    counter.init_regular(0)
    assert time.perf_counter() - start < 30
    n = sum(grid710.ring_size(r) for r in range(7))
    # every map of the path has weight <= 1
    assert 0 < counter.count_aggregate() <= n ** 3
