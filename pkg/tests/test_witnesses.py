from itertools import combinations

import numpy as np
import pytest

from praegerxu import formulas, group as grp, symmetry, witnesses as W
from praegerxu.graph import Vertex, build
from conftest import GRID, TWIN_FREE

V = Vertex.parse


def labels(vertices):
    return [str(v) for v in vertices]


def test_det_witness_examples():
    assert labels(W.det_witness(7, 3)) == ["0:000", "3:000", "6:000"]
    assert labels(W.det_witness(6, 3)) == ["0:000", "1:000", "3:000"]
    assert labels(W.det_witness(4, 3)) == ["0:000", "3:001"]
    assert len(W.det_witness(4, 2)) == 3
    assert labels(W.det_witness(5, 1)) == ["0:0", "1:0", "2:0", "3:0", "4:0"]
    assert len(W.det_witness(4, 1)) == 6


@pytest.mark.parametrize("n, k", GRID)
def test_det_witness_valid(n, k, graphs):
    G = graphs(n, k)
    S = W.det_witness(n, k)
    assert symmetry.is_determining(G, grp.full_aut(n, k), S)
    assert len(S) == formulas.det_formula(n, k)


def test_cost_witness_examples():
    assert labels(W.cost_witness(6, 4)) == ["0:0000", "2:0111"]
    assert labels(W.cost_witness(7, 3)) == ["0:000", "3:000", "6:001"]
    assert len(W.cost_witness(6, 2)) == 4
    assert labels(W.cost_witness(4, 3)) == ["0:000", "2:000", "3:001"]
    assert len(W.cost_witness(4, 2)) == 5
    with pytest.raises(W.NotApplicable):
        W.cost_witness(5, 1)


@pytest.mark.parametrize("n, k", TWIN_FREE)
def test_cost_witness_distinguishing(n, k, graphs):
    G = graphs(n, k)
    R = W.cost_witness(n, k)
    assert symmetry.is_distinguishing(G, grp.full_aut(n, k), symmetry.two_coloring(G, R))


@pytest.mark.parametrize("n, k", TWIN_FREE)
def test_cost_witness_size(n, k):
    # red at n = 2k - 1: no size-2 red class exists there (see test_pair_construction_fails_at_2k_minus_1)
    assert len(W.cost_witness(n, k)) == formulas.cost_formula(n, k)


def test_pair_construction_fails_at_2k_minus_1():
    # the size-2 pair leaves k empty fibres on one side; tau_{n-1} then fixes both red vertices
    for n, k in [(5, 3), (7, 4)]:
        G = build(n, k)
        pair = [Vertex(0, W._zero(k)), Vertex(n // 2 - 1, W._w("0" + "1" * (k - 1)))]
        assert not symmetry.is_distinguishing(G, grp.full_aut(n, k), symmetry.two_coloring(G, pair))
        A = grp.full_aut(n, k)
        assert not any(symmetry.is_distinguishing(G, A, symmetry.two_coloring(G, c))
                       for c in combinations(range(G.order), 2))


def test_plus_one_witness():
    assert labels(W.plus_one_witness(13, 4)) == ["0:0000", "4:0000", "8:0000", "12:0000", "1:1111"]
    assert labels(W.plus_one_witness(6, 2)) == ["0:11", "2:00", "4:00", "1:00"]
    for n in range(5, 9):
        for k in range(2, n):
            if n << k > 600:
                continue
            G = build(n, k)
            R = W.plus_one_witness(n, k)
            assert len(R) == formulas.ceil_div(n, k) + 1
            assert symmetry.is_distinguishing(G, grp.full_aut(n, k), symmetry.two_coloring(G, R))


@pytest.mark.parametrize("n, k", GRID)
def test_dist_witness_valid(n, k, graphs):
    G = graphs(n, k)
    colors = W.dist_witness(n, k)
    assert colors.shape == (G.order,)
    assert colors.max() + 1 == formulas.dist_formula(n, k)
    assert symmetry.is_distinguishing(G, grp.full_aut(n, k), colors)


def test_dist_witness_examples():
    G = build(4, 3)
    red = [G.vertex_from_id(v) for v in np.flatnonzero(W.dist_witness(4, 3) == 0)]
    assert labels(red) == ["0:000", "2:000", "3:001"]
    H = build(13, 4)
    colors = W.dist_witness(13, 4)
    assert (colors == 0).sum() == 5
    assert symmetry.is_distinguishing(H, grp.AlgebraicGroup(13, 4), colors)


def test_interchange_point_cases():
    assert not W.interchangeable_predicate(5, 3, V("0:101"), V("1:001"))
    assert W.interchangeable_clauses(10, 3, V("0:000"), V("5:000")) == {2, 3}
    for clause in (2, 3):
        alpha = W.interchange_witness(10, 3, V("0:000"), V("5:000"), clause=clause)
        assert grp.apply(alpha, V("0:000")) == V("5:000")
        assert grp.apply(alpha, V("5:000")) == V("0:000")
    alpha = W.interchange_witness(10, 3, V("0:000"), V("5:000"))
    assert alpha.tau == (0,) * 10 and alpha.delta == grp.rotation(10, 5)
    beta = W.interchange_witness(3, 2, V("0:00"), V("0:11"))
    assert beta.tau[:2] == (1, 1) and beta.delta == grp.rotation(3, 0)
    with pytest.raises(W.NoWitness):
        W.interchange_witness(5, 3, V("0:101"), V("1:001"))
    with pytest.raises(W.NoWitness):
        W.interchange_witness(10, 3, V("0:000"), V("5:000"), clause=1)
    with pytest.raises(ValueError):
        W.interchangeable_predicate(5, 3, V("0:101"), V("0:101"))


def test_px32_all_pairs_interchangeable():
    G = build(3, 2)
    for u, v in combinations(G.vertices(), 2):
        assert W.interchangeable_predicate(3, 2, u, v)
        alpha = W.interchange_witness(3, 2, u, v)
        assert grp.apply(alpha, u) == v and grp.apply(alpha, v) == u


@pytest.mark.parametrize("n, k", [(5, 2), (5, 3), (6, 2), (6, 3), (7, 2), (3, 2), (6, 4), (8, 3)])
def test_predicate_matches_bruteforce(n, k):
    G = build(n, k)
    A = grp.A_perm_tables(n, k).astype(np.int64)
    swaps = np.zeros((G.order, G.order), dtype=bool)
    for row in A:
        moved = np.flatnonzero(row[row] == np.arange(G.order))
        swaps[moved, row[moved]] = True
    for a, b in combinations(range(G.order), 2):
        u, v = G.vertex_from_id(a), G.vertex_from_id(b)
        pred = W.interchangeable_predicate(n, k, u, v)
        assert pred == swaps[a, b], (u, v)
        if pred:
            alpha = W.interchange_witness(n, k, u, v)
            assert grp.apply(alpha, u) == v and grp.apply(alpha, v) == u


STAR = ["1:010", "1:011", "1:100", "1:101", "3:010", "3:110", "3:001", "3:101"]


def test_z_interchangeable():
    assert not W.z_interchangeable(4, 3, V("1:010"))
    assert W.z_interchangeable(4, 3, V("2:110"))
    with pytest.raises(ValueError):
        W.z_interchangeable(4, 3, V("0:000"))
    for n, k in [(4, 3), (5, 2), (6, 3), (7, 3)]:
        z = Vertex(0, W._zero(k))
        for v in build(n, k).vertices():
            if v != z:
                assert W.z_interchangeable(n, k, v) == W.interchangeable_predicate(n, k, z, v)


def test_star_list_on_px43():
    G = build(4, 3)
    full = grp.full_aut(4, 3)
    A = grp.A_perm_tables(4, 3)
    z = V("0:000")
    fails = [str(v) for v in G.vertices() if v != z and not W.z_interchangeable(4, 3, v)]
    assert sorted(fails) == sorted(STAR)
    for v in STAR:
        assert symmetry.interchangeable_bruteforce(G, A, z, V(v)) is None
        assert symmetry.interchangeable_bruteforce(G, full, z, V(v)) is not None


def test_window():
    assert W.window(5, 3, 0, 1) == {1, 2}
    assert W.window(10, 3, 0, 5) == set()
    assert W.window(5, 3, 4, 0) == {0, 1}
