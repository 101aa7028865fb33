import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from theta_miner.generators import clique, cycle_graph, path_graph, theta_graph
from theta_miner.graph import (
    GraphError,
    LoopError,
    MinorModelCertificate,
    Multigraph,
    ParseError,
    ThetaCertificate,
    contract_partition,
    degree,
    from_edge_list,
    to_edge_list,
    verify_minor_model,
    verify_theta_certificate,
)


def test_parse_path():
    g = from_edge_list(b"3\n0 1\n1 2\n")
    assert (g.n, g.m) == (3, 2)


def test_parse_keeps_parallel_edges():
    g = from_edge_list("2\n0 1\n0 1\n")
    assert g.edges == ((0, 1), (0, 1))
    assert degree(g, 0) == 1


def test_parse_sample9(sample9_graph):
    text = to_edge_list(sample9_graph)
    assert from_edge_list(text).m == 11


def test_parse_comments_and_blank_lines():
    g = from_edge_list("# header\n\n4\n# edge\n0 3\n")
    assert g.n == 4 and g.edges == ((0, 3),)


@pytest.mark.parametrize(
    "text, line",
    [("3\n0 1 2\n", 2), ("x\n", 1), ("3\n0 7\n", 2), ("3\n0 a\n", 2)],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        from_edge_list(text)
    assert exc.value.line == line


def test_parse_rejects_loops():
    with pytest.raises(LoopError):
        from_edge_list("2\n1 1\n")


def test_missing_count():
    with pytest.raises(ParseError):
        from_edge_list("# nothing\n")


def test_degrees(theta5, k4, sample9_graph):
    assert degree(theta5, 0) == degree(theta5, 1) == 1
    assert all(degree(k4, v) == 3 for v in range(4))
    assert degree(sample9_graph, 3) == 5
    with pytest.raises(GraphError):
        degree(k4, 4)


def test_contract_c4():
    q = contract_partition(cycle_graph(4), [[0, 1], [2, 3]])
    assert q.n == 2 and q.m == 2


def test_contract_sample9(sample9_graph):
    # u1 only touches u3, so {u0, u1, u2} cannot be a branch set
    with pytest.raises(GraphError, match="part 2"):
        contract_partition(sample9_graph, [[5, 6, 7, 8], [3, 4], [0, 1, 2]])
    q = contract_partition(sample9_graph, [[5, 6, 7, 8], [3, 4], [0, 2], [1]])
    pairs = sorted(tuple(sorted(e)) for e in q.edges)
    assert pairs == [(0, 1), (0, 1), (1, 2), (1, 2), (1, 3)]


def test_contract_singletons_is_identity(sample9_graph):
    q = contract_partition(sample9_graph, [[v] for v in range(9)])
    assert q == sample9_graph


def test_contract_rejects_disconnected_part():
    with pytest.raises(GraphError, match="part"):
        contract_partition(path_graph(3), [[0, 2], [1]])


def test_theta_certificate_on_theta5(theta5):
    c = ThetaCertificate.build([0], [1], [], [], range(5), 5)
    assert verify_theta_certificate(theta5, c, 5, 5)[0]
    ok, bad = verify_theta_certificate(theta5, c, 5, 4)
    assert not ok and "budget" in bad[0]


def test_theta_certificate_on_c5():
    g = cycle_graph(5)  # edge i joins i and i+1
    c = ThetaCertificate.build([0, 1], [2, 3, 4], [0], [2, 3], [1, 4], 2)
    assert verify_theta_certificate(g, c, 2, 5) == (True, [])


def test_theta_certificate_violations():
    g = cycle_graph(5)
    c = ThetaCertificate.build([0, 1], [1, 2, 3, 4], [0], [2, 3], [1, 4], 2)
    ok, bad = verify_theta_certificate(g, c, 2, 5)
    assert not ok and any("share" in b for b in bad)
    c = ThetaCertificate.build([0, 1], [2, 3, 4], [0], [2], [1, 4], 2)
    assert not verify_theta_certificate(g, c, 2, 5)[0]


def test_minor_model_examples(k4, c6):
    assert verify_minor_model(k4, MinorModelCertificate(((0,), (1,), (2,), (3,)), 3)) == (True, 3)
    parts = ((0, 1), (2, 3), (4, 5))
    assert verify_minor_model(c6, MinorModelCertificate(parts, 2)) == (True, 2)
    assert verify_minor_model(c6, MinorModelCertificate(parts, 3)) == (False, 2)
    assert verify_minor_model(c6, MinorModelCertificate(((0, 2), (1, 3, 4, 5)), 0))[0] is False


edge_lists = st.integers(2, 8).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1]), max_size=20),
    )
)


@given(edge_lists)
@settings(max_examples=200, deadline=None)
def test_round_trip_and_degree(data):
    n, edges = data
    g = Multigraph(n, edges)
    h = from_edge_list(to_edge_list(g))
    assert h.edges == g.edges
    for v in range(n):
        assert degree(g, v) <= g.incident_count(v)
        parallel = len(set(g.neighbors(v))) != g.incident_count(v)
        assert (degree(g, v) == g.incident_count(v)) == (not parallel)


def test_accepted_theta_contracts_to_bundle():
    from theta_miner.theta import exact_theta

    g = clique(5)
    c = exact_theta(g, 3)
    used = sorted(c.vertices())
    idx = {v: i for i, v in enumerate(used)}
    sub = Multigraph(len(used), [(idx[g.edges[e][0]], idx[g.edges[e][1]]) for e in sorted(c.edge_ids())])
    q = contract_partition(sub, [[idx[v] for v in c.branch_a], [idx[v] for v in c.branch_b]])
    assert q.n == 2 and sorted(tuple(sorted(e)) for e in q.edges) == list(theta_graph(3).edges)
