"""Explicit determining sets, distinguishing colorings, cost-achieving red
classes and vertex swaps for PX(n, k)."""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .bitstring import BitWord
from .formulas import ceil_div
from .graph import Vertex, build, check_params
from .group import Automorphism, Dihedral, apply, full_aut, mu_s, rotation
from .twins import cycle_distinguishing_coloring, cycle_dist, dist_from_quotient, \
    lift_quotient_coloring, twin_classes, twin_quotient


class NotApplicable(ValueError):
    pass


class NoWitness(ValueError):
    pass


def _w(text: str) -> BitWord:
    return BitWord.parse(text)


def _zero(k: int) -> BitWord:
    return BitWord.zeros(k)


@lru_cache(maxsize=None)
def _searched_43_42(kind: str) -> tuple[Vertex, ...]:
    from .symmetry import SearchBudget, cost2_bruteforce, det_bruteforce

    G = build(4, 2)
    group = full_aut(4, 2)
    if kind == "det":
        return tuple(det_bruteforce(G, group)[1])
    return tuple(cost2_bruteforce(G, group, SearchBudget(max_subset_size=8))[1])


def det_witness(n: int, k: int) -> list[Vertex]:
    check_params(n, k)
    if k == 1:
        if n == 4:
            return [Vertex(i, _w(b)) for i, b in [(0, "0"), (0, "1"), (2, "0"), (1, "0"), (1, "1"), (3, "0")]]
        return [Vertex(i, _w("0")) for i in range(n)]
    if (n, k) == (4, 3):
        return [Vertex(0, _w("000")), Vertex(3, _w("001"))]
    if (n, k) == (4, 2):
        return list(_searched_43_42("det"))
    if 2 * k == n:
        return [Vertex(i, _zero(k)) for i in (0, 1, k)]
    return [Vertex(i * k, _zero(k)) for i in range(ceil_div(n, k))]


def cost_witness(n: int, k: int) -> list[Vertex]:
    """Red class of a distinguishing 2-coloring of minimum size."""
    check_params(n, k)
    if k == 1:
        raise NotApplicable("PX(n,1) is not 2-distinguishable; cost is undefined")
    if (n, k) == (3, 2):
        # one red vertex per fibre never works here: tau_2 mu fixes fibre 0 and swaps the others
        return [Vertex(0, _w("00")), Vertex(0, _w("01")), Vertex(1, _w("00"))]
    if (n, k) == (4, 3):
        return [Vertex(0, _w("000")), Vertex(2, _w("000")), Vertex(3, _w("001"))]
    if (n, k) == (4, 2):
        return list(_searched_43_42("cost"))
    c = ceil_div(n, k)
    # n = 2k - 1 is excluded: there the far gap has k fibres and a single tau fixes both vertices
    if 5 <= n < 2 * k - 1:
        return [Vertex(0, _zero(k)), Vertex(n // 2 - 1, BitWord((0,) + (1,) * (k - 1)))]
    if n > 2 * k and n % k not in (0, k - 1):
        last = BitWord((0,) * (k - 1) + (1,))
        return [Vertex(i * k, _zero(k)) for i in range(c - 1)] + [Vertex((c - 1) * k, last)]
    return plus_one_witness(n, k)


def plus_one_witness(n: int, k: int) -> list[Vertex]:
    """The ceil(n/k) + 1 red class: zeros on fibres 0, k, 2k, ... plus (1, 1..1).

    For k = 2 and even n that set is preserved by a reflection, so fibre 0
    takes the all-ones word and fibre 1 the all-zeros word instead.
    """
    check_params(n, k)
    c = ceil_div(n, k)
    ones, zeros = BitWord.ones(k), _zero(k)
    if k == 2 and n % 2 == 0:
        return [Vertex(0, ones)] + [Vertex(i * k, zeros) for i in range(1, c)] + [Vertex(1, zeros)]
    return [Vertex(i * k, zeros) for i in range(c)] + [Vertex(1, ones)]


def dist_witness(n: int, k: int) -> np.ndarray:
    """A distinguishing coloring as an array of colors indexed by vertex id."""
    check_params(n, k)
    G = build(n, k)
    if k >= 2:
        # the generic ceil(n/k)+1 class for n >= 5; the small cases have their own sets
        red = plus_one_witness(n, k) if n >= 5 else cost_witness(n, k)
        colors = np.ones(G.order, dtype=np.int64)
        colors[G.ids(red)] = 0
        return colors
    part = twin_classes(G)
    quotient = twin_quotient(G)
    if n == 4:
        q_colors, d_q = [0, 1], 2
    else:
        q_colors, d_q = cycle_distinguishing_coloring(len(quotient.nodes)), cycle_dist(n)
    d = dist_from_quotient(part.sizes[0], d_q)
    return lift_quotient_coloring(part, q_colors, d)


# ------------------------------------------------------------ interchangeability

def window(n: int, k: int, i: int, j: int) -> set[int]:
    """Residues covered by the tau-windows of both fibre ``i`` and fibre ``j``."""
    return {(i + t) % n for t in range(k)} & {(j + t) % n for t in range(k)}


def _vertex_pair(u: Vertex, v: Vertex, n: int, k: int):
    if u == v:
        raise ValueError("interchangeability is defined for distinct vertices")
    for w in (u, v):
        if w.x.k != k or not 0 <= w.i < n:
            raise ValueError(f"{w} is not a vertex of PX({n},{k})")
    return u.i % n, u.x.bits, v.i % n, v.x.bits


def interchangeable_clauses(n: int, k: int, u: Vertex, v: Vertex) -> set[int]:
    """Which of the three swap criteria (same fibre / reflection / half-turn) hold."""
    i, x, j, y = _vertex_pair(u, v, n, k)
    xr, yr = x[::-1], y[::-1]
    M = window(n, k, i, j)
    held = set()
    if i == j:
        held.add(1)
    else:
        if all((xr[(m - j) % n] == y[(m - j) % n]) == (yr[(m - i) % n] == x[(m - i) % n]) for m in M):
            held.add(2)
        if n % 2 == 0 and j == (i + n // 2) % n and \
                all((x[(m - j) % n] == y[(m - j) % n]) == (y[(m - i) % n] == x[(m - i) % n]) for m in M):
            held.add(3)
    return held


def interchangeable_predicate(n: int, k: int, u: Vertex, v: Vertex) -> bool:
    return bool(interchangeable_clauses(n, k, u, v))


def z_interchangeable(n: int, k: int, v: Vertex) -> bool:
    """The predicate specialised to ``z = (0, 0..0)``."""
    j, y = v.i % n, v.x.bits
    if v.x.k != k:
        raise ValueError(f"{v} is not a vertex of PX({n},{k})")
    if j == 0:
        if v.x == _zero(k):
            raise ValueError("v must differ from (0, 0..0)")
        return True
    M = window(n, k, 0, j)
    if all(y[(m - j) % n] == y[k - 1 - m] for m in M):
        return True
    return n % 2 == 0 and j == n // 2 and all(y[(m - j) % n] == y[m] for m in M)


def interchange_witness(n: int, k: int, u: Vertex, v: Vertex, clause: int | None = None) -> Automorphism:
    """An element of K x| D_n swapping ``u`` and ``v``.

    ``clause`` picks the construction; by default the first that applies in
    the order same-fibre, half-turn, reflection.
    """
    held = interchangeable_clauses(n, k, u, v)
    if clause is None:
        clause = next((c for c in (1, 3, 2) if c in held), None)
    if clause not in held:
        raise NoWitness(f"{u} and {v} are not interchangeable via clause {clause}")
    i, x, j, y = _vertex_pair(u, v, n, k)
    word = [0] * n
    if clause == 1:
        for t in range(k):
            word[(i + t) % n] = int(x[t] != y[t])
        delta = rotation(n, 0)
    elif clause == 2:
        xr, yr = x[::-1], y[::-1]
        for s in range(n):
            in_j, in_i = (s - j) % n < k, (s - i) % n < k
            if not (in_i or in_j):
                continue
            flip_j = not in_j or xr[(s - j) % n] != y[(s - j) % n]
            flip_i = not in_i or yr[(s - i) % n] != x[(s - i) % n]
            word[s] = int(flip_i and flip_j)
        delta = mu_s(n, k, i + j + k - 1)
    else:
        for s in range(n):
            if (s - j) % n < k and x[(s - j) % n] != y[(s - j) % n]:
                word[s] = 1
            if (s - i) % n < k and y[(s - i) % n] != x[(s - i) % n]:
                word[s] = 1
        delta = rotation(n, n // 2)
    alpha = Automorphism(n, k, tuple(word), delta)
    if apply(alpha, u) != v or apply(alpha, v) != u:
        raise AssertionError(f"constructed element {alpha} does not swap {u} and {v}")
    return alpha
