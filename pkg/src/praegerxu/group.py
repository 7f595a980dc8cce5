"""The automorphism group of PX(n, k) as a semidirect product K x| D_n.

An element is stored as ``tau * delta`` (optionally ``* xi`` on PX(4,3)) and
acts by applying ``delta`` first.  ``tau_s`` flips bit ``s - i`` of every word
in fibre ``i`` when ``0 <= s - i < k`` (indices mod n), so bit ``j`` of fibre
``m`` is flipped exactly when the exponent of ``tau_{m+j}`` is 1.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from . import _kernels
from .bitstring import BitWord, reversal_table
from .graph import PxGraph, Vertex, build, check_params

MAX_ENUM_N = 26
MAX_TABLE_ENTRIES = 60_000_000


class CapacityError(RuntimeError):
    pass


@dataclass(frozen=True)
class Dihedral:
    """``i -> offset + i`` (rotation) or ``i -> offset - i`` (reflection) on Z_n."""

    n: int
    reflect: bool
    offset: int

    def __post_init__(self):
        object.__setattr__(self, "offset", self.offset % self.n)

    def __call__(self, i: int) -> int:
        return (self.offset - i if self.reflect else self.offset + i) % self.n

    def compose(self, other: "Dihedral") -> "Dihedral":
        """``self`` after ``other``."""
        a, b = self.offset, other.offset
        if not self.reflect:
            return Dihedral(self.n, other.reflect, a + b)
        return Dihedral(self.n, not other.reflect, a - b)

    def inverse(self) -> "Dihedral":
        return self if self.reflect else Dihedral(self.n, False, -self.offset)

    @property
    def index(self) -> int:
        return self.n + self.offset if self.reflect else self.offset


def rotation(n: int, s: int = 1) -> Dihedral:
    return Dihedral(n, False, s)


def mu_s(n: int, k: int, s: int) -> Dihedral:
    """The reflection ``(i, x) -> (s + 1 - k - i, reverse(x))``."""
    return Dihedral(n, True, s + 1 - k)


def fixed_fibres(n: int, k: int, s: int) -> set[int]:
    d = mu_s(n, k, s)
    return {i for i in range(n) if d(i) == i}


@dataclass(frozen=True)
class Automorphism:
    n: int
    k: int
    tau: tuple[int, ...]
    delta: Dihedral
    xi: bool = False

    def __post_init__(self):
        if len(self.tau) != self.n or any(b not in (0, 1) for b in self.tau):
            raise ValueError(f"tau word must be {self.n} bits: {self.tau!r}")
        if self.delta.n != self.n:
            raise ValueError("dihedral part acts on the wrong cycle")
        if self.xi and (self.n, self.k) != (4, 3):
            raise ValueError("the xi factor only exists on PX(4,3)")

    @property
    def tau_mask(self) -> int:
        return sum(b << m for m, b in enumerate(self.tau))

    @property
    def index(self) -> int:
        """Position in :func:`enumerate_A` (xi-free elements only)."""
        return (self.delta.index << self.n) | self.tau_mask

    def __str__(self) -> str:
        d = self.delta
        tag = f"m{(d.offset + self.k - 1) % self.n}" if d.reflect else f"r{d.offset}"
        return f"tau={''.join(map(str, self.tau))} delta={tag} xi={int(self.xi)}"

    def __call__(self, v: Vertex) -> Vertex:
        return apply(self, v)


def identity(n: int, k: int) -> Automorphism:
    return Automorphism(n, k, (0,) * n, rotation(n, 0))


def tau(n: int, k: int, *indices: int) -> Automorphism:
    """The product of the listed ``tau_s``."""
    u = [0] * n
    for s in indices:
        u[s % n] ^= 1
    return Automorphism(n, k, tuple(u), rotation(n, 0))


def element(n: int, k: int, delta: Dihedral, tau_indices=(), xi: bool = False) -> Automorphism:
    u = [0] * n
    for s in tau_indices:
        u[s % n] ^= 1
    return Automorphism(n, k, tuple(u), delta, xi)


def rho(n: int, k: int, s: int = 1) -> Automorphism:
    return element(n, k, rotation(n, s))


def mu(n: int, k: int, s: int | None = None) -> Automorphism:
    """``mu_s``; with no ``s`` this is the plain reflection ``mu = mu_{k-1}``."""
    return element(n, k, mu_s(n, k, k - 1 if s is None else s))


def parse_automorphism(n: int, k: int, text: str) -> Automorphism:
    m = re.fullmatch(r"\s*tau=([01]+)\s+delta=([rm])(-?\d+)\s+xi=([01])\s*", text)
    if not m:
        raise ValueError(f"bad automorphism literal {text!r}")
    word, kind, s, x = m.groups()
    delta = rotation(n, int(s)) if kind == "r" else mu_s(n, k, int(s))
    return Automorphism(n, k, tuple(int(c) for c in word), delta, x == "1")


def _flip_mask(u: tuple[int, ...], m: int, k: int) -> int:
    n = len(u)
    mask = 0
    for j in range(k):
        mask = (mask << 1) | u[(m + j) % n]
    return mask


def apply_ids(alpha: Automorphism, vid: int) -> int:
    n, k = alpha.n, alpha.k
    if alpha.xi:
        vid = int(xi_table()[vid])
    i, x = vid >> k, vid & ((1 << k) - 1)
    m = alpha.delta(i)
    y = int(reversal_table(k)[x]) if alpha.delta.reflect else x
    return (m << k) | (y ^ _flip_mask(alpha.tau, m, k))


def apply(alpha: Automorphism, v: Vertex) -> Vertex:
    if v.x.k != alpha.k or not 0 <= v.i < alpha.n:
        raise ValueError(f"{v} is not a vertex of PX({alpha.n},{alpha.k})")
    vid = apply_ids(alpha, (v.i << alpha.k) | int(v.x))
    return Vertex(vid >> alpha.k, BitWord.from_int(vid & ((1 << alpha.k) - 1), alpha.k))


def _conjugate_tau(delta: Dihedral, u: tuple[int, ...], k: int) -> tuple[int, ...]:
    """Exponent word of ``delta * tau_u * delta^-1``."""
    n = len(u)
    out = [0] * n
    for s, b in enumerate(u):
        if b:
            t = delta.offset + k - 1 - s if delta.reflect else delta.offset + s
            out[t % n] = 1
    return tuple(out)


def _check_same(alpha: Automorphism, beta: Automorphism) -> None:
    if (alpha.n, alpha.k) != (beta.n, beta.k):
        raise ValueError(f"elements of PX({alpha.n},{alpha.k}) and PX({beta.n},{beta.k}) do not compose")


def compose(alpha: Automorphism, beta: Automorphism) -> Automorphism:
    """``alpha`` after ``beta``."""
    _check_same(alpha, beta)
    if alpha.xi or beta.xi:
        table = perm_table(alpha)[perm_table(beta)]
        return _lookup_43(table)
    conj = _conjugate_tau(alpha.delta, beta.tau, alpha.k)
    word = tuple(a ^ b for a, b in zip(alpha.tau, conj))
    return Automorphism(alpha.n, alpha.k, word, alpha.delta.compose(beta.delta))


def inverse(alpha: Automorphism) -> Automorphism:
    if alpha.xi:
        table = perm_table(alpha)
        inv = np.empty_like(table)
        inv[table] = np.arange(len(table))
        return _lookup_43(inv)
    d_inv = alpha.delta.inverse()
    return Automorphism(alpha.n, alpha.k, _conjugate_tau(d_inv, alpha.tau, alpha.k), d_inv)


def induced_fibre_action(alpha: Automorphism) -> Dihedral:
    if alpha.xi:
        raise ValueError("fibres are not a block system for xi; no induced fibre action")
    return alpha.delta


def perm_table(alpha: Automorphism) -> np.ndarray:
    n, k = alpha.n, alpha.k
    vids = np.arange(n << k, dtype=np.int64)
    if alpha.xi:
        vids = xi_table().astype(np.int64)
    return _kernels.np_algebraic_images(n, k, alpha.delta.index, [alpha.tau_mask], vids,
                                        reversal_table(k))[0]


def group_order_A(n: int) -> int:
    return (1 << n) * 2 * n


def enumerate_A(n: int, k: int) -> Iterator[Automorphism]:
    """All ``2**n * 2n`` elements of K x| D_n; the identity comes first."""
    check_params(n, k)
    if n > MAX_ENUM_N:
        raise CapacityError(f"n={n} exceeds the enumeration limit {MAX_ENUM_N}")
    for d in range(2 * n):
        delta = Dihedral(n, d >= n, d % n)
        for U in range(1 << n):
            yield Automorphism(n, k, tuple((U >> m) & 1 for m in range(n)), delta)


def A_perm_tables(n: int, k: int) -> np.ndarray:
    """Permutation tables of :func:`enumerate_A`, row ``e`` for element index ``e``."""
    check_params(n, k)
    N = n << k
    if group_order_A(n) * N > MAX_TABLE_ENTRIES:
        raise CapacityError(f"tables for PX({n},{k}) need {group_order_A(n) * N} entries")
    revtab = reversal_table(k)
    U = np.arange(1 << n, dtype=np.int64)
    vids = np.arange(N, dtype=np.int64)
    dtype = np.int16 if N < 2**15 else np.int32
    return np.concatenate([
        _kernels.np_algebraic_images(n, k, d, U, vids, revtab).astype(dtype)
        for d in range(2 * n)
    ])


class AlgebraicGroup:
    """K x| D_n acting on PX(n, k), never materialized.

    Stands in for a list of permutation tables when the group is too large to
    tabulate; the checkers in :mod:`praegerxu.symmetry` accept either.
    """

    def __init__(self, n: int, k: int):
        check_params(n, k)
        if n > MAX_ENUM_N:
            raise CapacityError(f"n={n} exceeds the enumeration limit {MAX_ENUM_N}")
        self.n, self.k = n, k

    def __len__(self) -> int:
        return group_order_A(self.n)

    def count_fixers(self, S, stop_after: int | None = None) -> int:
        S = np.asarray(sorted(set(int(s) for s in S)), dtype=np.int64)
        return _kernels.algebraic_count_fixers(self.n, self.k, S, reversal_table(self.k),
                                               stop_after or len(self))

    def count_preservers(self, colors, stop_after: int | None = None) -> int:
        colors = np.asarray(colors, dtype=np.int64)
        return _kernels.algebraic_count_preservers(self.n, self.k, colors, reversal_table(self.k),
                                                   stop_after or len(self))

    def tables(self) -> np.ndarray:
        return A_perm_tables(self.n, self.k)


# ------------------------------------------------------------ PX(4,3) and xi

XI_TWO_CYCLES = [
    ("0:010", "0:101"),
    ("2:001", "2:110"),
    ("0:001", "2:000"), ("0:100", "2:010"), ("0:011", "2:101"), ("0:110", "2:111"),
    ("1:100", "1:011"),
    ("3:010", "3:101"),
    ("1:000", "3:100"), ("1:010", "3:001"), ("1:101", "3:110"), ("1:111", "3:011"),
]


@lru_cache(maxsize=None)
def xi_table() -> np.ndarray:
    G = build(4, 3)
    table = np.arange(G.order)
    for a, b in XI_TWO_CYCLES:
        u, v = G.vertex_id(Vertex.parse(a)), G.vertex_id(Vertex.parse(b))
        table[u], table[v] = v, u
    table.setflags(write=False)
    return table


def xi() -> Automorphism:
    return Automorphism(4, 3, (0, 0, 0, 0), rotation(4, 0), True)


def xi_fixed_points() -> list[Vertex]:
    G = build(4, 3)
    table = xi_table()
    return [G.vertex_from_id(v) for v in range(G.order) if table[v] == v]


def palindromic_blocks() -> list[frozenset[int]]:
    """Fibres of PX(4,3) split into palindromic and non-palindromic words."""
    G = build(4, 3)
    blocks = []
    for i in range(4):
        for pal in (True, False):
            blocks.append(frozenset(
                G.vertex_id(v) for v in sorted(G.fibre(i))
                if (str(v.x) == str(v.x)[::-1]) == pal))
    return blocks


@lru_cache(maxsize=None)
def _group_43() -> dict[bytes, Automorphism]:
    lookup = {}
    base = list(enumerate_A(4, 3))
    for alpha in base:
        lookup[perm_table(alpha).astype(np.int64).tobytes()] = alpha
    for alpha in base:
        beta = Automorphism(4, 3, alpha.tau, alpha.delta, True)
        lookup[perm_table(beta).astype(np.int64).tobytes()] = beta
    return lookup


def _lookup_43(table: np.ndarray) -> Automorphism:
    try:
        return _group_43()[np.asarray(table, dtype=np.int64).tobytes()]
    except KeyError:
        raise ValueError("permutation is not in Aut(PX(4,3))") from None


# ------------------------------------------------------------- phi: Q4 -> PX(4,2)

def phi(q: str | int) -> Vertex:
    """Isomorphism from the 4-cube (vertices as 4-bit words) onto PX(4,2)."""
    if isinstance(q, int):
        q = format(q, "04b")
    if len(q) != 4 or set(q) - {"0", "1"}:
        raise ValueError(f"not a 4-cube vertex: {q!r}")
    x = [int(c) for c in q]
    left_odd = (x[0] + x[1]) % 2 == 1
    right_odd = (x[2] + x[3]) % 2 == 1
    j = {(True, True): 0, (True, False): 1, (False, False): 2, (False, True): 3}[(left_odd, right_odd)]
    bits = (x[1], x[3]) if j % 2 else (x[3], x[1])
    return Vertex(j, BitWord(bits))


def hypercube_edges(dim: int = 4) -> list[tuple[int, int]]:
    return [(a, a ^ (1 << b)) for a in range(1 << dim) for b in range(dim) if a < a ^ (1 << b)]


# --------------------------------------------------------------- whole groups

def is_automorphism(G: PxGraph, p) -> bool:
    p = np.asarray(p, dtype=np.int64)
    if p.shape != (G.order,) or not np.array_equal(np.sort(p), np.arange(G.order)):
        return False
    mapped = np.sort(p[G.adj], axis=1)
    return bool(np.array_equal(mapped, G.adj[p]))


def full_aut(n: int, k: int) -> np.ndarray:
    """Every automorphism of PX(n, k) as rows of a permutation table, identity first, rows sorted."""
    check_params(n, k)
    if n != 4:
        tables = A_perm_tables(n, k)
    elif k == 3:
        base = A_perm_tables(4, 3)
        tables = np.concatenate([base, base[:, xi_table()]])
    else:
        from .symmetry import generic_automorphisms
        tables = generic_automorphisms(build(n, k))
    return _sorted_rows(tables)


def _sorted_rows(tables: np.ndarray) -> np.ndarray:
    order = np.lexsort(tables.T[::-1])
    return np.ascontiguousarray(tables[order])
