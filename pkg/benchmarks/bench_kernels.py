"""Time the numba and numpy kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3]

The numba column excludes compilation (one warm-up call per kernel).
"""
import argparse
import time

import numpy as np

from praegerxu import _kernels as K
from praegerxu import group as grp
from praegerxu import witnesses
from praegerxu.bitstring import reversal_table
from praegerxu.graph import build
from praegerxu.symmetry import two_coloring

NO_STOP = 1 << 62


def cases():
    G = build(6, 3)
    perms = grp.full_aut(6, 3).astype(np.int64)
    inv = K.inverse_tables(perms)
    S = np.array(G.ids(witnesses.det_witness(6, 3)), dtype=np.int64)
    colors = two_coloring(G, witnesses.cost_witness(6, 3)).astype(np.int64)
    yield "count_fixers PX(6,3)", "count_fixers", (perms, S)
    yield "count_preservers PX(6,3)", "count_preservers", (perms, colors)
    yield "det subset s=3 PX(6,3)", "first_determining_subset", (perms, 3, 0, G.order, 10**9)
    yield "dist subset s=4 PX(6,3)", "first_distinguishing_subset", (perms, inv, 4, 0, G.order, 10**9)
    G4 = build(4, 1)
    p4 = grp.full_aut(4, 1).astype(np.int64)
    yield "5-coloring PX(4,1)", "first_distinguishing_coloring", (p4, K.inverse_tables(p4), 5, 10**9)
    n, k = 13, 4
    H = build(n, k)
    red = two_coloring(H, witnesses.cost_witness(n, k)).astype(np.int64)
    rev = reversal_table(k).astype(np.int64)
    yield "streamed preservers A(13,4)", "algebraic_count_preservers", (n, k, red, rev, NO_STOP)
    S = np.array(build(20, 5).ids(witnesses.det_witness(20, 5)), dtype=np.int64)
    yield "streamed fixers A(20,5)", "algebraic_count_fixers", (20, 5, S, reversal_table(5).astype(np.int64), NO_STOP)


def best_of(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn(*args)
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    if not K.HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")
    print(f"{'kernel':32s} {'numpy s':>10s} {'numba s':>10s} {'speedup':>8s}")
    for label, name, call in cases():
        nb = K.implementation(name, "numba")
        nb(*call)  # compile
        t_nb, r_nb = best_of(nb, call, args.repeat)
        t_np, r_np = best_of(K.implementation(name, "numpy"), call, args.repeat)
        same = np.array_equal(np.asarray(r_nb, dtype=object), np.asarray(r_np, dtype=object)) \
            if not isinstance(r_nb, tuple) else all(np.array_equal(a, b) for a, b in zip(r_nb, r_np))
        print(f"{label:32s} {t_np:10.4f} {t_nb:10.4f} {t_np / max(t_nb, 1e-9):8.1f}" + ("" if same else "  MISMATCH"))


if __name__ == "__main__":
    main()
