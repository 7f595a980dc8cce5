"""Checkers and brute-force oracles for determining sets, distinguishing
colorings and the cost of 2-distinguishing.

Nothing here knows how PX groups are built: every oracle takes the group as
an argument, either as an ``(order, |V|)`` array of permutation tables or as
an :class:`~praegerxu.group.AlgebraicGroup`.  The same code therefore checks a
claim against K x| D_n or against the full automorphism group.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import count
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import PxGraph, Vertex
from .group import AlgebraicGroup


class BudgetExhausted(RuntimeError):
    """A search hit one of its limits; ``partial`` holds what was established."""

    def __init__(self, message: str, partial: dict | None = None):
        super().__init__(message)
        self.partial = partial or {}


@dataclass(frozen=True)
class SearchBudget:
    max_subset_size: int = 6
    max_colorings: int = 10**9
    node_limit: int = 10**9
    time_limit_s: float | None = None
    max_generic_vertices: int = 120

    def __post_init__(self):
        for name in ("max_subset_size", "max_colorings", "node_limit", "max_generic_vertices"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.time_limit_s is not None and self.time_limit_s <= 0:
            raise ValueError("time_limit_s must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "SearchBudget":
        ms = os.environ.get("PX_BUDGET_MS")
        if ms and "time_limit_s" not in overrides:
            overrides["time_limit_s"] = float(ms) / 1000
        return cls(**overrides)

    def deadline(self) -> float | None:
        return None if self.time_limit_s is None else time.monotonic() + self.time_limit_s


DEFAULT_BUDGET = SearchBudget()


def _ids(G: PxGraph, vertices: Iterable) -> list[int]:
    return [v if isinstance(v, (int, np.integer)) else G.vertex_id(v) for v in vertices]


def _tables(group) -> np.ndarray:
    return group.tables() if isinstance(group, AlgebraicGroup) else np.asarray(group)


def two_coloring(G: PxGraph, red: Iterable) -> np.ndarray:
    """Color 0 on ``red``, color 1 elsewhere."""
    colors = np.ones(G.order, dtype=np.int64)
    colors[_ids(G, red)] = 0
    return colors


def _coloring(G: PxGraph, coloring) -> np.ndarray:
    if isinstance(coloring, dict):
        colors = np.full(G.order, -1, dtype=np.int64)
        for v, c in coloring.items():
            colors[_ids(G, [v])[0]] = c
    else:
        colors = np.asarray(coloring, dtype=np.int64)
    if colors.shape != (G.order,) or colors.min() < 0:
        raise ValueError("a coloring must assign a color to every vertex")
    return colors


# ----------------------------------------------------------------- checkers

def stabilizer_order(G: PxGraph, group, S: Iterable) -> int:
    """Number of group elements fixing every vertex of ``S``."""
    S = np.asarray(sorted(set(_ids(G, S))), dtype=np.int64)
    if isinstance(group, AlgebraicGroup):
        return group.count_fixers(S)
    return _kernels.count_fixers(np.asarray(group), S)


def is_determining(G: PxGraph, group, S: Iterable) -> bool:
    S = np.asarray(sorted(set(_ids(G, S))), dtype=np.int64)
    if isinstance(group, AlgebraicGroup):
        return group.count_fixers(S, stop_after=2) == 1
    return _kernels.count_fixers(np.asarray(group), S) == 1


def is_distinguishing(G: PxGraph, group, coloring) -> bool:
    colors = _coloring(G, coloring)
    if isinstance(group, AlgebraicGroup):
        return group.count_preservers(colors, stop_after=2) == 1
    return _kernels.count_preservers(np.asarray(group), colors) == 1


# ------------------------------------------------------------ subset search

def _chunks(lo: int, hi: int, pieces: int) -> list[tuple[int, int]]:
    pieces = max(1, min(pieces, hi - lo))
    bounds = np.linspace(lo, hi, pieces + 1).round().astype(int)
    return [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]


def _first_subset(kind: str, perms: np.ndarray, size: int, budget: SearchBudget,
                  workers: int, deadline: float | None) -> list[int] | None:
    """Lexicographically least subset of ``size`` vertex ids passing ``kind``.

    The range of first elements is cut into chunks; chunks run on a thread pool
    (the numba kernels release the GIL) and the earliest chunk with a hit wins,
    so the answer does not depend on ``workers``.
    """
    G_order, N = perms.shape
    if kind == "det":
        run = lambda lo, hi: _kernels.first_determining_subset(perms, size, lo, hi, budget.node_limit)
    else:
        inv = _kernels.inverse_tables(perms)
        run = lambda lo, hi: _kernels.first_distinguishing_subset(perms, inv, size, lo, hi, budget.node_limit)
    chunks = _chunks(0, N - size + 1, 4 * max(workers, 1) if deadline or workers > 1 else 1)

    def task(chunk):
        if deadline is not None and time.monotonic() > deadline:
            return "timeout", None
        status, out, _ = run(*chunk)
        if status == _kernels.OUT_OF_NODES:
            return "nodes", None
        return ("found", [int(v) for v in out]) if status == _kernels.FOUND else ("none", None)

    if workers <= 1:
        results = map(task, chunks)
        return _merge(results, kind, size)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return _merge(pool.map(task, chunks), kind, size)


def _merge(results, kind, size):
    for status, subset in results:
        if status == "found":
            return subset
        if status in ("timeout", "nodes"):
            raise BudgetExhausted(f"{kind} search at size {size} ran out of {status}",
                                  {"lower_bound": size})
    return None


def det_bruteforce(G: PxGraph, group, budget: SearchBudget = DEFAULT_BUDGET,
                   workers: int = 1) -> tuple[int, list[Vertex]]:
    """Minimum size of a determining set, with the lexicographically least witness."""
    perms = _tables(group)
    deadline = budget.deadline()
    if len(perms) == 1:
        return 0, []
    for size in range(1, G.order + 1):
        if size > budget.max_subset_size:
            raise BudgetExhausted(f"no determining set of size <= {budget.max_subset_size}",
                                  {"lower_bound": size})
        hit = _first_subset("det", perms, size, budget, workers, deadline)
        if hit is not None:
            return size, [G.vertex_from_id(v) for v in hit]
    raise AssertionError("the whole vertex set is always determining")


def cost2_bruteforce(G: PxGraph, group, budget: SearchBudget = DEFAULT_BUDGET,
                     workers: int = 1) -> tuple[int, list[Vertex]]:
    """Smallest red class of a distinguishing 2-coloring, with a witness."""
    perms = _tables(group)
    deadline = budget.deadline()
    if len(perms) == 1:
        return 0, []
    for size in range(1, G.order // 2 + 1):
        if size > budget.max_subset_size:
            raise BudgetExhausted(f"no distinguishing red class of size <= {budget.max_subset_size}",
                                  {"lower_bound": size})
        hit = _first_subset("dist", perms, size, budget, workers, deadline)
        if hit is not None:
            return size, [G.vertex_from_id(v) for v in hit]
    raise ValueError("graph is not 2-distinguishable")


def distinguishing_coloring_search(G: PxGraph, group, colors: int,
                                   budget: SearchBudget = DEFAULT_BUDGET,
                                   workers: int = 1) -> np.ndarray | None:
    """A distinguishing coloring with at most ``colors`` colors, or None."""
    perms = _tables(group)
    if len(perms) == 1:
        return np.zeros(G.order, dtype=np.int64)
    if colors <= 1:
        return None
    if colors == 2:
        deadline = budget.deadline()
        for size in range(1, G.order // 2 + 1):
            loose = SearchBudget(max_subset_size=G.order, node_limit=budget.node_limit,
                                 time_limit_s=budget.time_limit_s)
            hit = _first_subset("dist", perms, size, loose, workers, deadline)
            if hit is not None:
                return two_coloring(G, hit)
        return None
    status, col, _ = _kernels.first_distinguishing_coloring(
        perms, _kernels.inverse_tables(perms), colors, min(budget.node_limit, budget.max_colorings))
    if status == _kernels.OUT_OF_NODES:
        raise BudgetExhausted(f"{colors}-coloring search ran out of nodes")
    return col if status == _kernels.FOUND else None


def dist_bruteforce(G: PxGraph, group, budget: SearchBudget = DEFAULT_BUDGET,
                    workers: int = 1) -> int:
    """Distinguishing number by increasing the palette until a coloring exists."""
    for c in count(1):
        if distinguishing_coloring_search(G, group, c, budget, workers) is not None:
            return c
    raise AssertionError("unreachable")


def interchangeable_bruteforce(G: PxGraph, group, u, v) -> np.ndarray | None:
    """First group element (in table order) swapping ``u`` and ``v``."""
    a, b = _ids(G, [u, v])
    if a == b:
        raise ValueError("interchangeability needs two distinct vertices")
    perms = _tables(group)
    hits = np.flatnonzero((perms[:, a] == b) & (perms[:, b] == a))
    return perms[hits[0]].copy() if len(hits) else None


# --------------------------------------------------- generic automorphisms

def _adjacency(graph) -> list[list[int]]:
    if isinstance(graph, PxGraph):
        return [list(map(int, row)) for row in graph.adj]
    return [sorted(set(map(int, row))) for row in graph]


def _refine(adj: list[list[int]], colors: list[int]) -> tuple[list[int], list]:
    """Iterate neighbor-multiset refinement to a fixed point.

    New colors are ranks of sorted signatures, so the output depends only on
    the colored graph up to isomorphism; the returned trace lets two sides of
    the search be compared.
    """
    trace = []
    classes = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(len(adj))]
        ranking = {s: r for r, s in enumerate(sorted(set(sigs)))}
        colors = [ranking[s] for s in sigs]
        counts = [0] * len(ranking)
        for c in colors:
            counts[c] += 1
        trace.append(tuple(zip(sorted(ranking), counts)))
        if len(ranking) == classes:
            return colors, trace
        classes = len(ranking)


def generic_automorphisms(graph, budget: SearchBudget = DEFAULT_BUDGET) -> np.ndarray:
    """All automorphisms by individualization and equitable refinement.

    ``graph`` is a :class:`PxGraph` or any adjacency list.  Rows of the result
    are permutation tables in lexicographic order (identity first).
    """
    adj = _adjacency(graph)
    N = len(adj)
    if N > budget.max_generic_vertices:
        raise BudgetExhausted(f"{N} vertices exceeds the generic search cap {budget.max_generic_vertices}")
    adj_sets = [set(row) for row in adj]
    deadline = budget.deadline()
    found: list[list[int]] = []
    nodes = 0

    def individualize(colors, v):
        out = list(colors)
        out[v] = max(colors) + 1
        return out

    def search(src, dst):
        nonlocal nodes
        nodes += 1
        if nodes > budget.node_limit or (deadline is not None and time.monotonic() > deadline):
            raise BudgetExhausted("generic automorphism search ran out of budget",
                                  {"found": len(found)})
        sizes = {}
        for c in src:
            sizes[c] = sizes.get(c, 0) + 1
        target = min((c for c, s in sizes.items() if s > 1), default=None)
        if target is None:
            where = {c: w for w, c in enumerate(dst)}
            perm = [where[c] for c in src]
            if all({perm[w] for w in adj[v]} == adj_sets[perm[v]] for v in range(N)):
                found.append(perm)
            return
        v = src.index(target)
        s2, tr_s = _refine(adj, individualize(src, v))
        for w in (w for w in range(N) if dst[w] == target):
            t2, tr_t = _refine(adj, individualize(dst, w))
            if tr_s == tr_t:
                search(s2, t2)

    start, _ = _refine(adj, [len(row) for row in adj])
    search(start, list(start))
    perms = np.array(sorted(found), dtype=np.int16 if N < 2**15 else np.int32)
    return perms
