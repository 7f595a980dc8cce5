"""Hot loops for the exhaustive searches.

Every kernel exists twice: a numba ``@njit`` loop and a vectorized numpy
version.  ``PX_BACKEND=numpy`` (or a missing numba) selects the numpy path;
the module-level names bound at the bottom are what the rest of the package
calls.  Both implementations stay importable for the benchmark and the
cross-backend tests.

Algebraic elements of K x| D_n are indexed ``e = d * 2**n + U`` where ``d < n``
is the rotation by ``d``, ``d >= n`` the reflection ``i -> (d - n) - i``, and
bit ``m`` of ``U`` is the exponent of tau_m.  Index 0 is the identity.

Status codes returned by the searches: 1 found, 0 exhausted, -1 node budget hit.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None

HAVE_NUMBA = numba is not None
BACKEND = os.environ.get("PX_BACKEND", "numba" if HAVE_NUMBA else "numpy").lower()
if BACKEND not in ("numba", "numpy"):
    raise ImportError(f"PX_BACKEND must be 'numba' or 'numpy', got {BACKEND!r}")
if BACKEND == "numba" and not HAVE_NUMBA:
    BACKEND = "numpy"

FOUND, EXHAUSTED, OUT_OF_NODES = 1, 0, -1


def inverse_tables(perms: np.ndarray) -> np.ndarray:
    inv = np.empty_like(perms)
    rows = np.arange(perms.shape[0])[:, None]
    inv[rows, perms] = np.arange(perms.shape[1], dtype=perms.dtype)[None, :]
    return inv


# ---------------------------------------------------------------- numpy path

def np_algebraic_images(n, k, d, U, vids, revtab):
    """Images of ``vids`` under the elements ``(d, U)`` for every ``U``: shape (len(U), len(vids))."""
    kmask = (1 << k) - 1
    full = (1 << n) - 1
    vids = np.asarray(vids, dtype=np.int64)
    i, x = vids >> k, vids & kmask
    if d >= n:
        m, y = (d - n - i) % n, revtab[x]
    else:
        m, y = (d + i) % n, x
    U = np.asarray(U, dtype=np.int64)[:, None]
    m = m[None, :]
    rot = ((U >> m) | (U << (n - m))) & full
    return (m << k) | (y[None, :] ^ revtab[rot & kmask])


def np_algebraic_count_fixers(n, k, S, revtab, stop_after):
    S = np.asarray(S, dtype=np.int64)
    all_U = np.arange(1 << n, dtype=np.int64)
    count = 0
    for d in range(2 * n):
        fib = S >> k
        m = (d - n - fib) % n if d >= n else (d + fib) % n
        if np.any(m != fib):
            continue
        images = np_algebraic_images(n, k, d, all_U, S, revtab)
        count += int(np.all(images == S[None, :], axis=1).sum())
        if count >= stop_after:
            return count
    return count


def np_algebraic_count_preservers(n, k, colors, revtab, stop_after, chunk=1 << 12):
    colors = np.asarray(colors)
    vids = np.arange(len(colors), dtype=np.int64)
    count = 0
    for d in range(2 * n):
        for lo in range(0, 1 << n, chunk):
            U = np.arange(lo, min(lo + chunk, 1 << n), dtype=np.int64)
            images = np_algebraic_images(n, k, d, U, vids, revtab)
            count += int(np.all(colors[images] == colors[None, :], axis=1).sum())
            if count >= stop_after:
                return count
    return count


def np_count_fixers(perms, S):
    S = np.asarray(S, dtype=np.int64)
    return int(np.all(perms[:, S] == S[None, :], axis=1).sum())


def np_count_preservers(perms, colors):
    colors = np.asarray(colors)
    return int(np.all(colors[perms] == colors[None, :], axis=1).sum())


def np_first_determining_subset(perms, s, lo, hi, max_nodes):
    G, N = perms.shape
    out = np.full(s, -1, dtype=np.int64)
    nodes = 0
    comb = []

    def rec(surv, start, stop):
        nonlocal nodes
        d = len(comb)
        for v in range(start, min(stop, N - (s - d) + 1)):
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES
            nxt = surv[perms[surv, v] == v]
            comb.append(v)
            if len(nxt) == 1:
                out[:d + 1] = comb
                out[d + 1:] = np.arange(v + 1, v + s - d)
                return FOUND
            if d + 1 < s:
                status = rec(nxt, v + 1, N)
                if status != EXHAUSTED:
                    return status
            comb.pop()
        return EXHAUSTED

    status = rec(np.arange(G), lo, hi)
    return status, out, nodes


def np_first_distinguishing_subset(perms, inv, s, lo, hi, max_nodes):
    G, N = perms.shape
    out = np.full(s, -1, dtype=np.int64)
    nodes = 0
    comb = []

    def rec(surv, start, stop):
        nonlocal nodes
        d = len(comb)
        for v in range(start, min(stop, N - (s - d) + 1)):
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES
            comb.append(v)
            prefix = np.array(comb)
            leaf = d + 1 == s
            img = perms[np.ix_(surv, prefix)]
            pre = inv[np.ix_(surv, prefix)]
            ok_img = np.isin(img, prefix) | ((img > v) & (not leaf))
            ok_pre = np.isin(pre, prefix) | ((pre > v) & (not leaf))
            nxt = surv[np.all(ok_img & ok_pre, axis=1)]
            if len(nxt) == 1:
                out[:d + 1] = comb
                out[d + 1:] = np.arange(v + 1, v + s - d)
                return FOUND
            if not leaf:
                status = rec(nxt, v + 1, N)
                if status != EXHAUSTED:
                    return status
            comb.pop()
        return EXHAUSTED

    status = rec(np.arange(G), lo, hi)
    return status, out, nodes


def np_first_distinguishing_coloring(perms, inv, c, max_nodes):
    G, N = perms.shape
    col = np.full(N, -1, dtype=np.int64)
    nodes = 0

    def rec(surv, t, top):
        nonlocal nodes
        for color in range(min(c, top + 2)):
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES
            col[t] = color
            p, q = perms[surv, t], inv[surv, t]
            keep = ((p > t) | (col[np.minimum(p, t)] == color)) & ((q > t) | (col[np.minimum(q, t)] == color))
            nxt = surv[keep]
            if len(nxt) == 1:
                col[t + 1:] = 0
                return FOUND
            if t + 1 < N:
                status = rec(nxt, t + 1, max(top, color))
                if status != EXHAUSTED:
                    return status
        col[t] = -1
        return EXHAUSTED

    status = rec(np.arange(G), 0, -1) if N else EXHAUSTED
    return status, col, nodes


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def _image(n, k, kmask, full, d, U, v, revtab):
        i = v >> k
        x = v & kmask
        if d >= n:
            m = (d - n - i) % n
            y = revtab[x]
        else:
            m = (d + i) % n
            y = x
        rot = ((U >> m) | (U << (n - m))) & full
        return (m << k) | (y ^ revtab[rot & kmask])

    @njit(cache=True, nogil=True)
    def nb_algebraic_count_fixers(n, k, S, revtab, stop_after):
        kmask = (1 << k) - 1
        full = (1 << n) - 1
        count = 0
        for d in range(2 * n):
            moves = False
            for t in range(S.shape[0]):
                i = S[t] >> k
                m = (d - n - i) % n if d >= n else (d + i) % n
                if m != i:
                    moves = True
                    break
            if moves:
                continue
            for U in range(1 << n):
                good = True
                for t in range(S.shape[0]):
                    if _image(n, k, kmask, full, d, U, S[t], revtab) != S[t]:
                        good = False
                        break
                if good:
                    count += 1
                    if count >= stop_after:
                        return count
        return count

    @njit(cache=True, nogil=True)
    def nb_algebraic_count_preservers(n, k, colors, revtab, stop_after):
        kmask = (1 << k) - 1
        full = (1 << n) - 1
        N = colors.shape[0]
        count = 0
        for d in range(2 * n):
            for U in range(1 << n):
                good = True
                for v in range(N):
                    if colors[_image(n, k, kmask, full, d, U, v, revtab)] != colors[v]:
                        good = False
                        break
                if good:
                    count += 1
                    if count >= stop_after:
                        return count
        return count

    @njit(cache=True, nogil=True)
    def nb_count_fixers(perms, S):
        count = 0
        for g in range(perms.shape[0]):
            good = True
            for t in range(S.shape[0]):
                if perms[g, S[t]] != S[t]:
                    good = False
                    break
            if good:
                count += 1
        return count

    @njit(cache=True, nogil=True)
    def nb_count_preservers(perms, colors):
        count = 0
        for g in range(perms.shape[0]):
            good = True
            for v in range(perms.shape[1]):
                if colors[perms[g, v]] != colors[v]:
                    good = False
                    break
            if good:
                count += 1
        return count

    @njit(cache=True, nogil=True)
    def nb_first_determining_subset(perms, s, lo, hi, max_nodes):
        G, N = perms.shape
        out = np.full(s, -1, dtype=np.int64)
        surv = np.empty((s + 1, G), dtype=np.int64)
        cnt = np.zeros(s + 1, dtype=np.int64)
        for g in range(G):
            surv[0, g] = g
        cnt[0] = G
        comb = np.empty(s, dtype=np.int64)
        comb[0] = lo
        d = 0
        nodes = 0
        while True:
            v = comb[d]
            if (d == 0 and v >= hi) or v > N - (s - d):
                if d == 0:
                    return EXHAUSTED, out, nodes
                d -= 1
                comb[d] += 1
                continue
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES, out, nodes
            c = 0
            for t in range(cnt[d]):
                g = surv[d, t]
                if perms[g, v] == v:
                    surv[d + 1, c] = g
                    c += 1
            cnt[d + 1] = c
            if c == 1:
                for e in range(d + 1):
                    out[e] = comb[e]
                for e in range(d + 1, s):
                    out[e] = v + e - d
                return FOUND, out, nodes
            if d + 1 == s:
                comb[d] += 1
            else:
                comb[d + 1] = v + 1
                d += 1

    @njit(cache=True, nogil=True)
    def _in_prefix(comb, d, w):
        for e in range(d + 1):
            if comb[e] == w:
                return True
        return False

    @njit(cache=True, nogil=True)
    def nb_first_distinguishing_subset(perms, inv, s, lo, hi, max_nodes):
        G, N = perms.shape
        out = np.full(s, -1, dtype=np.int64)
        surv = np.empty((s + 1, G), dtype=np.int64)
        cnt = np.zeros(s + 1, dtype=np.int64)
        for g in range(G):
            surv[0, g] = g
        cnt[0] = G
        comb = np.empty(s, dtype=np.int64)
        comb[0] = lo
        d = 0
        nodes = 0
        while True:
            v = comb[d]
            if (d == 0 and v >= hi) or v > N - (s - d):
                if d == 0:
                    return EXHAUSTED, out, nodes
                d -= 1
                comb[d] += 1
                continue
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES, out, nodes
            leaf = d + 1 == s
            c = 0
            for t in range(cnt[d]):
                g = surv[d, t]
                good = True
                for e in range(d + 1):
                    w = perms[g, comb[e]]
                    if not ((w > v and not leaf) or _in_prefix(comb, d, w)):
                        good = False
                        break
                    w = inv[g, comb[e]]
                    if not ((w > v and not leaf) or _in_prefix(comb, d, w)):
                        good = False
                        break
                if good:
                    surv[d + 1, c] = g
                    c += 1
            cnt[d + 1] = c
            if c == 1:
                for e in range(d + 1):
                    out[e] = comb[e]
                for e in range(d + 1, s):
                    out[e] = v + e - d
                return FOUND, out, nodes
            if leaf:
                comb[d] += 1
            else:
                comb[d + 1] = v + 1
                d += 1

    @njit(cache=True, nogil=True)
    def nb_first_distinguishing_coloring(perms, inv, c, max_nodes):
        G, N = perms.shape
        col = np.full(N, -1, dtype=np.int64)
        top = np.full(N + 1, -1, dtype=np.int64)  # top[t]: largest color among col[:t]
        surv = np.empty((N + 1, G), dtype=np.int64)
        cnt = np.zeros(N + 1, dtype=np.int64)
        for g in range(G):
            surv[0, g] = g
        cnt[0] = G
        nodes = 0
        t = 0
        col[0] = 0
        while True:
            color = col[t]
            if color >= c or color > top[t] + 1:
                col[t] = -1
                if t == 0:
                    return EXHAUSTED, col, nodes
                t -= 1
                col[t] += 1
                continue
            nodes += 1
            if nodes > max_nodes:
                return OUT_OF_NODES, col, nodes
            n_keep = 0
            for r in range(cnt[t]):
                g = surv[t, r]
                p = perms[g, t]
                q = inv[g, t]
                if (p > t or col[p] == color) and (q > t or col[q] == color):
                    surv[t + 1, n_keep] = g
                    n_keep += 1
            cnt[t + 1] = n_keep
            if n_keep == 1:
                for w in range(t + 1, N):
                    col[w] = 0
                return FOUND, col, nodes
            if t + 1 == N:
                col[t] += 1
            else:
                top[t + 1] = max(top[t], color)
                t += 1
                col[t] = 0


KERNELS = ("algebraic_count_fixers", "algebraic_count_preservers", "count_fixers",
           "count_preservers", "first_determining_subset", "first_distinguishing_subset",
           "first_distinguishing_coloring")


def implementation(name: str, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not installed")
    return globals()[("nb_" if backend == "numba" else "np_") + name]


algebraic_count_fixers = implementation("algebraic_count_fixers")
algebraic_count_preservers = implementation("algebraic_count_preservers")
count_fixers = implementation("count_fixers")
count_preservers = implementation("count_preservers")
first_determining_subset = implementation("first_determining_subset")
first_distinguishing_subset = implementation("first_distinguishing_subset")
first_distinguishing_coloring = implementation("first_distinguishing_coloring")
