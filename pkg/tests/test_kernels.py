import os
import subprocess
import sys

import numpy as np
import pytest

from praegerxu import _kernels as K
from praegerxu import group as grp, witnesses
from praegerxu.bitstring import reversal_table
from praegerxu.graph import build

needs_numba = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")
BIG = 1 << 62
CASES = [(3, 2), (4, 1), (4, 3), (5, 1), (5, 2), (6, 3)]


def both(name):
    return K.implementation(name, "numpy"), K.implementation(name, "numba")


@needs_numba
@pytest.mark.parametrize("n, k", CASES)
def test_table_kernels_agree(n, k, rng):
    perms = grp.full_aut(n, k).astype(np.int64)
    inv = K.inverse_tables(perms)
    N = perms.shape[1]
    for name, args in [
        ("count_fixers", lambda: (perms, np.sort(rng.choice(N, size=2, replace=False)))),
        ("count_preservers", lambda: (perms, rng.integers(0, 2, size=N))),
    ]:
        f_np, f_nb = both(name)
        for _ in range(20):
            a = args()
            assert f_np(*a) == f_nb(*a)
    for s in (1, 2, 3):
        f_np, f_nb = both("first_determining_subset")
        r_np, r_nb = f_np(perms, s, 0, N, 10**9), f_nb(perms, s, 0, N, 10**9)
        assert r_np[0] == r_nb[0]
        if r_np[0] == K.FOUND:
            assert list(r_np[1]) == list(r_nb[1])
        f_np, f_nb = both("first_distinguishing_subset")
        r_np, r_nb = f_np(perms, inv, s, 0, N, 10**9), f_nb(perms, inv, s, 0, N, 10**9)
        assert r_np[0] == r_nb[0]
        if r_np[0] == K.FOUND:
            assert list(r_np[1]) == list(r_nb[1])
    if N > 32:
        return  # the numpy coloring search is too slow beyond this; it only runs for k = 1 in practice
    f_np, f_nb = both("first_distinguishing_coloring")
    for c in (2, 3):
        r_np, r_nb = f_np(perms, inv, c, 10**7), f_nb(perms, inv, c, 10**7)
        assert r_np[0] == r_nb[0]
        if r_np[0] == K.FOUND:
            assert list(r_np[1]) == list(r_nb[1])


@needs_numba
def test_subset_chunks_agree():
    perms = grp.full_aut(5, 2).astype(np.int64)
    inv = K.inverse_tables(perms)
    for lo, hi in [(0, 5), (3, 9), (9, 38)]:
        r_np = K.np_first_distinguishing_subset(perms, inv, 4, lo, hi, 10**9)
        r_nb = K.nb_first_distinguishing_subset(perms, inv, 4, lo, hi, 10**9)
        assert r_np[0] == r_nb[0]
        if r_np[0] == K.FOUND:
            assert list(r_np[1]) == list(r_nb[1])


@needs_numba
@pytest.mark.parametrize("n, k", [(5, 2), (6, 3), (7, 3), (8, 2)])
def test_algebraic_kernels_agree(n, k, rng):
    G = build(n, k)
    rev = reversal_table(k).astype(np.int64)
    tables = grp.A_perm_tables(n, k).astype(np.int64)
    for _ in range(10):
        S = np.sort(rng.choice(G.order, size=rng.integers(1, 4), replace=False))
        exact = int(np.all(tables[:, S] == S, axis=1).sum())
        assert K.np_algebraic_count_fixers(n, k, S, rev, BIG) == exact
        assert K.nb_algebraic_count_fixers(n, k, S, rev, BIG) == exact
    colors = np.ones(G.order, dtype=np.int64)
    colors[G.ids(witnesses.plus_one_witness(n, k))] = 0
    exact = int(np.all(colors[tables] == colors, axis=1).sum())
    assert K.np_algebraic_count_preservers(n, k, colors, rev, BIG) == exact
    assert K.nb_algebraic_count_preservers(n, k, colors, rev, BIG) == exact


def test_node_limit_reported():
    perms = grp.full_aut(5, 2).astype(np.int64)
    status, _, nodes = K.np_first_determining_subset(perms, 3, 0, 40, 2)
    assert status == K.OUT_OF_NODES and nodes > 2
    if K.HAVE_NUMBA:
        assert K.nb_first_determining_subset(perms, 3, 0, 40, 2)[0] == K.OUT_OF_NODES


def test_numpy_backend_end_to_end():
    code = ("from praegerxu import _kernels, group, symmetry; from praegerxu.graph import build;"
            "assert _kernels.BACKEND == 'numpy';"
            "print(symmetry.det_bruteforce(build(4,3), group.full_aut(4,3))[0],"
            " symmetry.dist_bruteforce(build(4,1), group.full_aut(4,1)))")
    env = dict(os.environ, PX_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["2", "5"]


def test_bad_backend():
    env = dict(os.environ, PX_BACKEND="fortran")
    out = subprocess.run([sys.executable, "-c", "import praegerxu._kernels"], env=env, capture_output=True)
    assert out.returncode != 0
