import random

import pytest

from optmech.components import Component, connected_components
from optmech.errors import InconsistencyError
from optmech.graphs import (SOURCE, PriceGraph, build_allocation_graph, build_component_graph,
                            enumerate_paths_oracle, shortest_paths, to_dot)
from optmech.mechanisms import wt_level
from optmech.model import BoxPiece, TypeSpace
from optmech.numerics import INF, Rat
from optmech.randomgen import random_space
from optmech.welfare import ExternalityContext

FIG1_B = BoxPiece.make([0, "0.5", 4], [0, 1, 6])


def fig1_space(upper_b_of_a):
    return TypeSpace((BoxPiece.make([0, 4, 1], [0, 6, upper_b_of_a]), FIG1_B))


def costs(g):
    lab = dict(zip(g.keys, range(g.n)))
    return lab, g.source_cost, g.cost


def test_two_boxes_allocation_graph(ctx1):
    g = build_allocation_graph(fig1_space(3), ctx1)
    assert g.keys == [1, 2]
    assert g.source_cost == [7, 5]
    assert g.cost[1][0] == 3   # cost(B, A)
    assert g.cost[0][1] == 1   # cost(A, B)
    sp = shortest_paths(g)
    assert sp.h == (7, 5) and sp.pred == (SOURCE, SOURCE)


def test_two_boxes_undercut_allocation_graph(ctx1):
    g = build_allocation_graph(fig1_space(5), ctx1)
    assert g.source_cost == [7, 5]
    assert g.cost[1][0] == 1 and g.cost[0][1] == 1
    sp = shortest_paths(g)
    assert sp.h == (6, 5)
    assert sp.pred == (1, SOURCE)


def test_single_allocation(ctx1):
    ctx = ExternalityContext(0, (Rat(2),))
    ts = TypeSpace((BoxPiece.make([1], [None]), BoxPiece.make([3], [4])))
    g = build_allocation_graph(ts, ctx)
    assert g.n == 1 and g.source_cost == [wt_level(ts, ctx)] == [3]


def test_component_graph_matches_allocation_graph_on_two_item_example(two_rays, ctx1):
    ts = two_rays.spaces[0]
    ga = build_allocation_graph(ts, ctx1)
    gc = build_component_graph(connected_components(ts), ctx1)
    assert ga.source_cost == gc.source_cost
    assert ga.cost == gc.cost
    ts = fig1_space(3)
    gc = build_component_graph(connected_components(ts), ctx1)
    assert gc.source_cost == [7, 5] and gc.cost[1][0] == 3 and gc.cost[0][1] == 1


def test_single_component(ctx1):
    ts = TypeSpace((BoxPiece.make([0, 0, 0], [0, 5, 5]),))
    g = build_component_graph(connected_components(ts), ctx1)
    assert g.n == 1 and g.source_cost == [wt_level(ts, ctx1)]


def test_duplicate_components_have_zero_edges(ctx1):
    box = BoxPiece.make([0, 2, 1], [0, 6, 5])
    comps = [Component(0, (box,), ((0, None),)), Component(1, (box,), ((1, None),))]
    g = build_component_graph(comps, ctx1)
    assert g.cost[0][1] == 0 and g.cost[1][0] == 0


def test_only_direct_edges():
    g = PriceGraph("allocation", [0, 1, 2], ["a", "b", "c"], [Rat(3), Rat(1), Rat(2)],
                   [[INF] * 3 for _ in range(3)])
    assert shortest_paths(g).h == (3, 1, 2)
    assert enumerate_paths_oracle(g).h == (3, 1, 2)


def test_two_vertex_oracle():
    g = PriceGraph("allocation", [0, 1], ["a", "b"], [Rat(7), Rat(5)],
                   [[INF, Rat(1)], [Rat(1), INF]])
    assert enumerate_paths_oracle(g).h == (6, 5)


def test_negative_cycle_is_an_inconsistency():
    g = PriceGraph("allocation", [0, 1], ["a", "b"], [Rat(1), Rat(1)],
                   [[INF, Rat(-2)], [Rat(1), INF]])
    with pytest.raises(InconsistencyError):
        shortest_paths(g)


def test_oracle_cap():
    n = 11
    g = PriceGraph("allocation", list(range(n)), [str(k) for k in range(n)], [Rat(1)] * n,
                   [[INF] * n for _ in range(n)])
    with pytest.raises(ValueError):
        enumerate_paths_oracle(g)
    assert enumerate_paths_oracle(g, cap=11).h == (1,) * n


def test_zero_cycles_keep_a_tree():
    z = Rat(0)
    g = PriceGraph("allocation", [0, 1, 2], list("abc"), [Rat(9), Rat(9), Rat(4)],
                   [[INF, z, INF], [z, INF, INF], [Rat(1), Rat(2), INF]])
    sp = shortest_paths(g)
    assert sp.h == (5, 5, 4)
    assert sp.pred == (2, 0, SOURCE)


def random_graphs(seed, n):
    rng = random.Random(seed)
    for _ in range(n):
        m = rng.randint(2, 5)
        ctx = ExternalityContext(0, tuple(Rat(rng.randint(0, 10), rng.choice((1, 2))) for _ in range(m)))
        ts = random_space(rng, m, rng.randint(1, 5))
        yield build_allocation_graph(ts, ctx)
        yield build_component_graph(connected_components(ts), ctx)


def test_bellman_ford_matches_path_enumeration():
    for g in random_graphs(21, 300):
        if g.n > 7:
            continue
        assert all(c >= 0 for c in g.source_cost)
        assert all(c >= 0 for _, _, c in g.edges())
        assert shortest_paths(g) == enumerate_paths_oracle(g)


def test_labels_solve_the_lp():
    eps = Rat(1, 1000)
    for g in random_graphs(22, 300):
        h = shortest_paths(g).h

        def feasible(h):
            if any(h[v] > g.source_cost[v] for v in range(g.n)):
                return False
            return all(h[v] - h[u] <= c for u, v, c in g.edges())

        assert feasible(h)
        for v in range(g.n):
            bumped = list(h)
            bumped[v] += eps
            assert not feasible(bumped)


def test_dot_output(ctx1):
    g = build_allocation_graph(fig1_space(5), ctx1, ["none", "A", "B"])
    dot = to_dot(g)
    assert dot == to_dot(g)
    assert 's -> v0 [label="7", style=dashed];' in dot
    assert 's -> v1 [label="5", style=solid];' in dot
    assert 'v1 -> v0 [label="1", style=solid];' in dot
    assert 'v0 -> v1 [label="1", style=dashed];' in dot
    single = PriceGraph("allocation", [0], ["only"], [Rat(2)], [[INF]])
    assert to_dot(single).count("style=solid") == 1
