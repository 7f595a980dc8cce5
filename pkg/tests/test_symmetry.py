import numpy as np
import pytest

from praegerxu import group as grp, symmetry
from praegerxu.graph import Vertex, build
from praegerxu.symmetry import BudgetExhausted, SearchBudget

V = Vertex.parse


def vs(*labels):
    return [V(s) for s in labels]


def test_is_determining_examples(graphs):
    G = graphs(5, 2)
    assert symmetry.is_determining(G, grp.full_aut(5, 2), vs("0:00", "2:00", "4:00"))
    H = graphs(6, 3)
    assert not symmetry.is_determining(H, grp.full_aut(6, 3), vs("0:000", "3:000"))
    assert symmetry.is_determining(H, grp.full_aut(6, 3), range(H.order))


def test_is_distinguishing_examples(graphs):
    G = graphs(3, 2)
    A = grp.full_aut(3, 2)
    # the red class from the PX(3,2) cost argument is preserved by tau_2 mu
    red = vs("0:00", "1:01", "2:00")
    assert not symmetry.is_distinguishing(G, A, symmetry.two_coloring(G, red))
    swap = grp.compose(grp.tau(3, 2, 2), grp.mu(3, 2))
    assert grp.apply(swap, V("0:00")) == V("0:00")
    assert grp.apply(swap, V("1:01")) == V("2:00")
    assert grp.apply(swap, V("2:00")) == V("1:01")
    for a in range(G.order):
        for b in range(a + 1, G.order):
            assert not symmetry.is_distinguishing(G, A, symmetry.two_coloring(G, [a, b]))
    assert not symmetry.is_distinguishing(G, A, np.zeros(G.order, dtype=int))
    with pytest.raises(ValueError):
        symmetry.is_distinguishing(G, A, np.zeros(3, dtype=int))


def test_dict_coloring(graphs):
    G = graphs(5, 2)
    A = grp.full_aut(5, 2)
    cols = {v: 1 for v in G.vertices()}
    for v in vs("0:00", "2:00", "4:00", "1:11"):
        cols[v] = 0
    assert symmetry.is_distinguishing(G, A, cols)


@pytest.mark.parametrize("n, k, d", [(3, 2, 2), (4, 1, 6), (6, 3, 3), (4, 2, 3), (4, 3, 2)])
def test_det_bruteforce(n, k, d, graphs):
    G = graphs(n, k)
    value, S = symmetry.det_bruteforce(G, grp.full_aut(n, k))
    assert value == d and len(S) == d
    assert symmetry.is_determining(G, grp.full_aut(n, k), S)


@pytest.mark.parametrize("n, k, d", [(4, 1, 5), (6, 1, 3), (5, 2, 2), (3, 1, 3)])
def test_dist_bruteforce(n, k, d, graphs):
    assert symmetry.dist_bruteforce(graphs(n, k), grp.full_aut(n, k)) == d


@pytest.mark.parametrize("n, k, c", [(3, 2, 3), (4, 2, 5), (4, 3, 3)])
def test_cost2_bruteforce(n, k, c, graphs):
    G = graphs(n, k)
    value, R = symmetry.cost2_bruteforce(G, grp.full_aut(n, k), SearchBudget(max_subset_size=8))
    assert value == c
    assert symmetry.is_distinguishing(G, grp.full_aut(n, k), symmetry.two_coloring(G, R))


def test_cost2_not_2_distinguishable(graphs):
    with pytest.raises(ValueError):
        symmetry.cost2_bruteforce(graphs(4, 1), grp.full_aut(4, 1), SearchBudget(max_subset_size=8))


def test_budget(graphs):
    G = graphs(7, 1)
    with pytest.raises(BudgetExhausted) as err:
        symmetry.det_bruteforce(G, grp.full_aut(7, 1))
    assert err.value.partial == {"lower_bound": 7}
    with pytest.raises(BudgetExhausted):
        symmetry.det_bruteforce(graphs(6, 2), grp.full_aut(6, 2), SearchBudget(node_limit=3))
    with pytest.raises(ValueError):
        SearchBudget(max_subset_size=0)


def test_budget_from_env(monkeypatch):
    monkeypatch.setenv("PX_BUDGET_MS", "250")
    assert SearchBudget.from_env().time_limit_s == pytest.approx(0.25)
    monkeypatch.delenv("PX_BUDGET_MS")
    assert SearchBudget.from_env().time_limit_s is None


def test_workers_do_not_change_witnesses(graphs):
    G = graphs(6, 2)
    A = grp.full_aut(6, 2)
    base = symmetry.det_bruteforce(G, A, workers=1)
    cost = symmetry.cost2_bruteforce(G, A, workers=1)
    for w in (2, 3, 8):
        assert symmetry.det_bruteforce(G, A, workers=w) == base
        assert symmetry.cost2_bruteforce(G, A, workers=w) == cost


def test_witness_is_lexicographically_least(graphs):
    from itertools import combinations
    G = graphs(5, 2)
    A = grp.full_aut(5, 2)
    d, S = symmetry.det_bruteforce(G, A)
    ids = G.ids(S)
    first = next(c for c in combinations(range(G.order), d) if symmetry.is_determining(G, A, c))
    assert tuple(ids) == first


def test_generic_automorphisms():
    assert len(symmetry.generic_automorphisms(build(3, 2))) == 48
    assert len(symmetry.generic_automorphisms(build(4, 3))) == 256
    assert len(symmetry.generic_automorphisms([[1, 5], [0, 2], [1, 3], [2, 4], [3, 5], [4, 0]])) == 12
    petersen_outer = [[1, 4, 5], [0, 2, 6], [1, 3, 7], [2, 4, 8], [3, 0, 9]]
    petersen_inner = [[0, 7, 8], [1, 8, 9], [2, 9, 5], [3, 5, 6], [4, 6, 7]]
    assert len(symmetry.generic_automorphisms(petersen_outer + petersen_inner)) == 120
    with pytest.raises(BudgetExhausted):
        symmetry.generic_automorphisms(build(5, 5 - 1), SearchBudget(max_generic_vertices=10))


@pytest.mark.parametrize("n, k", [(3, 2), (3, 1), (4, 1), (4, 2), (5, 1), (5, 2), (6, 1), (6, 2), (5, 3), (6, 3)])
def test_generic_equals_full(n, k):
    generic = symmetry.generic_automorphisms(build(n, k))
    assert np.array_equal(generic, grp.full_aut(n, k))


def test_generic_closed_under_composition():
    g = symmetry.generic_automorphisms(build(4, 2)).astype(np.int64)
    rows = {r.tobytes() for r in g}
    for a in range(0, len(g), 17):
        for b in range(0, len(g), 19):
            assert g[a][g[b]].tobytes() in rows


def test_interchangeable_bruteforce(graphs):
    G = graphs(5, 3)
    A = grp.A_perm_tables(5, 3)
    assert symmetry.interchangeable_bruteforce(G, A, V("0:101"), V("1:001")) is None
    H = build(10, 3)
    elems = grp.enumerate_A(10, 3)
    a, b = H.vertex_id(V("0:000")), H.vertex_id(V("5:000"))
    kinds = {alpha.delta.reflect for alpha in elems
             if grp.apply_ids(alpha, a) == b and grp.apply_ids(alpha, b) == a}
    assert kinds == {False, True}
    with pytest.raises(ValueError):
        symmetry.interchangeable_bruteforce(G, A, V("0:101"), V("0:101"))


def test_algebraic_group_agrees_with_tables(graphs):
    for n, k in [(5, 2), (6, 3), (7, 2)]:
        G = graphs(n, k)
        A = grp.A_perm_tables(n, k)
        alg = grp.AlgebraicGroup(n, k)
        rng = np.random.default_rng(n * 10 + k)
        for _ in range(30):
            S = rng.choice(G.order, size=rng.integers(1, 4), replace=False)
            assert symmetry.stabilizer_order(G, alg, S) == symmetry.stabilizer_order(G, A, S)
            colors = rng.integers(0, 2, size=G.order)
            assert symmetry.is_distinguishing(G, alg, colors) == symmetry.is_distinguishing(G, A, colors)
