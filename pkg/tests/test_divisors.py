import itertools

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from divlambda import linalg
from divlambda.divisors import (
    Graph,
    PreconditionError,
    class_representative,
    compositions,
    degree,
    jac_coords,
    jacobian,
    laplacian,
    linearly_equivalent,
    oracle_lambda,
    ord_q,
    orders,
    q_reduced,
)

from graph_family import small_graphs


def test_graph_validation():
    with pytest.raises(PreconditionError):
        Graph(3, ((0, 1),), 2)  # disconnected
    with pytest.raises(PreconditionError):
        Graph(2, ((0, 1),), 5)
    with pytest.raises(PreconditionError):
        Graph(2, ((0, 3),), 0)


def test_loops_do_not_change_laplacian():
    G = Graph(3, ((0, 1), (1, 2), (1, 1)), 2)
    H = Graph(3, ((0, 1), (1, 2)), 2)
    assert laplacian(G) == laplacian(H)


def test_multi_edges():
    G = Graph(2, ((0, 1), (0, 1), (1, 0)), 1)
    assert laplacian(G) == [[3, -3], [-3, 3]]
    assert jacobian(G).invariant_factors == (3,)


def test_diamond_jacobian_and_orders():
    G = Graph.diamond()
    assert jacobian(G).invariant_factors == (8,)
    assert orders(G) == (8, 8, 2, 1)
    assert jac_coords(G, (1, 0, 0, -1)) == (1,)


def test_cycle_jacobian():
    for n in range(2, 9):
        C = Graph.cycle(n)
        assert jacobian(C).invariant_factors == (n,)
        # v_j - q has class j; vertices v_1..v_n sit at indices 0..n-1
        for j in range(1, n):
            D = [0] * n
            D[j - 1] += 1
            D[n - 1] -= 1
            assert jac_coords(C, D) == (j % n,)
            assert ord_q(C, j - 1) == n // __import__("math").gcd(j, n)


def test_complete_graph_jacobian():
    assert jacobian(Graph.complete(5)).invariant_factors == (5, 5, 5)
    assert jacobian(Graph.complete(4)).invariant_factors == (4, 4)


def test_tree_count_matches_jacobian_order():
    for G in small_graphs():
        H = nx.MultiGraph()
        H.add_nodes_from(range(G.n))
        H.add_edges_from(G.edges)
        assert jacobian(G).order == round(nx.number_of_spanning_trees(H))


def test_lifts_are_degree_zero_unit_classes():
    for G in small_graphs():
        jac = jacobian(G)
        k = len(jac.invariant_factors)
        for i, lift in enumerate(jac.lifts):
            assert degree(G, lift) == 0
            assert jac_coords(G, lift) == tuple(int(i == j) for j in range(k))


def test_class_representative_round_trip():
    G = Graph.diamond()
    for c in jacobian(G).classes():
        D = class_representative(G, c)
        assert degree(G, D) == 0
        assert jac_coords(G, D) == c


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(small_graphs()), st.data())
def test_q_reduced_properties(G, data):
    D = data.draw(st.lists(st.integers(-5, 5), min_size=G.n, max_size=G.n))
    R = q_reduced(G, D)
    assert linearly_equivalent(G, D, R)
    assert all(R[v] >= 0 for v in G.others)
    assert q_reduced(G, R) == R
    # firing any nonempty set avoiding q breaks effectivity away from q
    others = G.others
    for size in range(1, len(others) + 1):
        for W in itertools.combinations(others, size):
            W = set(W)
            out = [sum(1 for a, b in G.edges for x, y in ((a, b), (b, a)) if x == v and y not in W and a != b) for v in W]
            assert any(R[v] < o for v, o in zip(sorted(W), out))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(small_graphs()), st.data())
def test_equivalent_divisors_share_reduction(G, data):
    D = data.draw(st.lists(st.integers(-4, 4), min_size=G.n, max_size=G.n))
    f = data.draw(st.lists(st.integers(-3, 3), min_size=G.n, max_size=G.n))
    E = [d - x for d, x in zip(D, linalg.matvec(G.matrix, f))]
    assert linearly_equivalent(G, D, E)
    assert q_reduced(G, D) == q_reduced(G, E)


def parking_functions(length):
    out = set()
    for p in itertools.product(range(1, length + 2), repeat=length):
        if all(sum(1 for x in p if x <= j) >= j for j in range(1, length + 1)):
            out.add(p)
    return out


def test_parking_functions_on_k4():
    G = Graph.complete(4)
    reduced = {q_reduced(G, class_representative(G, c)) for c in jacobian(G).classes()}
    shifted = {tuple(R[v] + 1 for v in G.others) for R in reduced}
    assert len(reduced) == 16
    assert shifted == parking_functions(3)


def test_compositions():
    assert sorted(compositions(2, (1, 1))) == [(0, 2), (1, 1), (2, 0)]
    assert sorted(compositions(4, (1, 2))) == [(0, 2), (2, 1), (4, 0)]
    assert list(compositions(3, ())) == []
    assert list(compositions(0, ())) == [()]


def test_oracle_diamond():
    G = Graph.diamond()
    assert [oracle_lambda(G, (0,), k) for k in range(6)] == [1, 1, 3, 3, 6, 8]


def test_wrong_length_rejected():
    with pytest.raises(PreconditionError):
        jac_coords(Graph.diamond(), (1, 0, -1))
