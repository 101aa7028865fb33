import pytest

from corpus import random_corpus
from theta_miner.decomposition import distance_decomposition
from theta_miner.generators import clique, cycle_graph, path_graph, random_regular, theta_graph
from theta_miner.graph import GraphError, Multigraph, verify_theta_certificate
from theta_miner.oracles import brute_theta_girth
from theta_miner.partitioner import grouped_partition, partition_from_regions
from theta_miner.theta import (
    exact_theta,
    first_region_pair,
    run_theorem4,
    run_theorem5,
    shortest_cycle,
    theorem4_bound,
    theorem5_bound,
    theta_at_node,
    theta_from_big_bag,
    theta_from_bundle,
    theta_from_heavy_node,
    theta_from_region_pair,
    verify_outcome,
)

TWO_TRIANGLES = Multigraph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3), (1, 4)])


@pytest.mark.parametrize(
    "r, w, z, expected",
    [(2, 1, 10, 1), (2, 1, 11, 2), (2, 1, 34, 2), (2, 1, 35, 3), (3, 1, 51, 1), (2, 1, 5, 0), (3, 2, 20, 0)],
)
def test_theorem5_bound(r, w, z, expected):
    assert theorem5_bound(r, w, z) == expected


def test_theorem4_bound_is_exact_integer():
    # d = 10, base = floor(12/1 - 1) = 11
    assert theorem4_bound(2, 12, 82) == 11 * 11 ** 10


def test_heavy_node_sample9(sample9_graph):
    dd = distance_decomposition(sample9_graph, 5)
    c = theta_at_node(sample9_graph, dd, 2, 2)
    assert c.branch_a == (6, 7, 8) and c.branch_b == (5,)
    assert sorted(sample9_graph.edges[e] for e in c.cross_edges) == [(5, 6), (7, 5)]
    assert c.total_edges == 4 <= 2 * 2 * dd.height
    # BFS order reaches {u3, u4} first; it is heavy as well
    first = theta_from_heavy_node(sample9_graph, dd, 2)
    assert first.total_edges == 3 and verify_theta_certificate(sample9_graph, first, 2, 8)[0]


def test_heavy_node_absent_on_path():
    g = path_graph(5)
    for origin in (0, 4):
        assert theta_from_heavy_node(g, distance_decomposition(g, origin), 2) is None


def test_heavy_node_subdivided_theta3():
    g = Multigraph(3, [(0, 1), (0, 1), (0, 2), (2, 1)])
    dd = distance_decomposition(g, 0)
    c = theta_from_heavy_node(g, dd, 3)
    assert verify_theta_certificate(g, c, 3, 2 * 3 * dd.height)[0]


def test_big_bag_examples(c6):
    c = theta_from_big_bag(c6, distance_decomposition(c6, 0), 2)
    assert c.total_edges == 6 and verify_theta_certificate(c6, c, 2, 12)[0]
    tree = Multigraph(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (5, 6)])
    assert theta_from_big_bag(tree, distance_decomposition(tree, 0), 2) is None
    spider = Multigraph(9, [(0, i) for i in range(1, 5)] + [(i, i + 4) for i in range(1, 5)])
    dd = distance_decomposition(spider, 0)
    assert all(len(b) == 1 for b in dd.bags)
    assert theta_from_big_bag(spider, dd, 4) is None


def test_heavy_node_exclusivity():
    for g in random_corpus(80):
        dd = distance_decomposition(g, 0)
        for r in (2, 3):
            if theta_from_heavy_node(g, dd, r) is None:
                assert all(len(dd.parent_edges[t]) <= r - 1 for t in range(1, len(dd)))


def test_region_pair_two_triangles():
    gp = partition_from_regions(TWO_TRIANGLES, [[0, 1, 2], [3, 4, 5]], [0, 5], 1)
    c = theta_from_region_pair(TWO_TRIANGLES, gp, 0, 1, 2)
    assert c.total_edges <= 10 and verify_theta_certificate(TWO_TRIANGLES, c, 2, 10)[0]
    c = theta_from_region_pair(TWO_TRIANGLES, gp, 0, 1, 1)
    assert len(c.cross_edges) == 1 and verify_theta_certificate(TWO_TRIANGLES, c, 1, 5)[0]
    with pytest.raises(GraphError):
        theta_from_region_pair(TWO_TRIANGLES, gp, 1, 1, 2)


def test_region_pair_absent_on_p9(p9):
    assert first_region_pair(p9, grouped_partition(p9, 1), 2) is None


def test_bundle_and_shortest_cycle(theta5):
    assert theta_from_bundle(theta5, 5).total_edges == 5
    assert theta_from_bundle(theta5, 6) is None
    verts, eids = shortest_cycle(cycle_graph(7))
    assert len(eids) == 7 and sorted(verts) == list(range(7))
    assert shortest_cycle(path_graph(4)) is None


def test_exact_theta_matches_oracle():
    for g in random_corpus(40):
        if g.n > 10:
            continue
        for r in (2, 3):
            c = exact_theta(g, r)
            girth = brute_theta_girth(g, r)
            assert (c is None and girth == float("inf")) or c.total_edges == girth


def test_theorem4_examples():
    out = run_theorem4(cycle_graph(5), 2, 6, 5)
    assert out.kind == "low_degree_vertex" and out.degree == 2
    out = run_theorem4(clique(7), 2, 6, 3)
    assert out.kind == "theta" and out.certificate.total_edges == 3
    assert run_theorem4(random_regular(20, 3, seed=4), 2, 6, 9).kind == "low_degree_vertex"


def test_theorem4_parameter_errors():
    with pytest.raises(GraphError, match="3r"):
        run_theorem4(clique(7), 2, 5, 4)
    with pytest.raises(GraphError):
        run_theorem4(clique(7), 2, 6, 1)
    with pytest.raises(GraphError):
        run_theorem4(Multigraph(4, [(0, 1), (2, 3)]), 2, 6, 4)


@pytest.mark.parametrize("n", [8, 9, 12])
def test_theorem5_cycles(n):
    g = cycle_graph(n)
    out = run_theorem5(g, 2, 1, n - 1)
    assert out.kind in ("protrusion", "minor_model")
    assert verify_outcome(g, out, 2, n - 1, 1)[0]


def test_theorem5_bundle_with_pendant_path():
    g = Multigraph(5, [(0, 1)] * 5 + [(1, 2), (2, 3), (3, 4)])
    out = run_theorem5(g, 5, 1, 6)
    assert out.kind == "theta" and out.stage == "bundle" and out.certificate.total_edges == 5
    with pytest.raises(GraphError, match="r < z"):
        run_theorem5(g, 5, 1, 5)


def test_theorem5_random_4_regular():
    g = random_regular(50, 4, seed=11)
    out = run_theorem5(g, 2, 2, 8)
    assert verify_outcome(g, out, 2, 8, 2)[0]


def test_theorem5_bound_met_on_corpus():
    for g in random_corpus(60):
        for r in (2, 3):
            for z in (r + 1, 5 * r, 9 * r + 5, g.m):
                if not r < z <= g.m:
                    continue
                out = run_theorem5(g, r, 1, z)
                ok, bad = verify_outcome(g, out, r, z, 1)
                assert ok, bad
                if out.kind == "minor_model":
                    assert out.bound_met


def test_theorem5_theta_is_not_smaller_than_oracle():
    for g in random_corpus(60):
        if g.n > 10:
            continue
        for z in range(3, g.m + 1):
            out = run_theorem5(g, 2, 1, z)
            if out.kind == "theta":
                assert brute_theta_girth(g, 2) <= out.certificate.total_edges <= z


def test_theorem5_rejects_negative_w():
    with pytest.raises(GraphError):
        run_theorem5(theta_graph(3), 2, -1, 3)
