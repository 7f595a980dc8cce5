"""Twin classes, the twin quotient graph and the two transfer rules."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .graph import PxGraph


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[tuple[int, ...], ...]

    @property
    def class_of(self) -> dict[int, int]:
        return {v: c for c, members in enumerate(self.classes) for v in members}

    @property
    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


@dataclass(frozen=True)
class QuotientGraph:
    """Vertices are twin classes, named by their smallest member id."""

    nodes: tuple[int, ...]
    sizes: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[list[int]]:
        pos = {v: p for p, v in enumerate(self.nodes)}
        adj = [[] for _ in self.nodes]
        for a, b in self.edges:
            adj[pos[a]].append(pos[b])
            adj[pos[b]].append(pos[a])
        return [sorted(row) for row in adj]


def _neighborhoods(G) -> list[tuple[int, ...]]:
    if isinstance(G, PxGraph):
        return [tuple(map(int, row)) for row in G.adj]
    return [tuple(sorted(map(int, row))) for row in G]


def twin_classes(G) -> TwinPartition:
    """Partition by equality of open neighborhoods; classes sorted by smallest member."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for v, nb in enumerate(_neighborhoods(G)):
        groups.setdefault(nb, []).append(v)
    return TwinPartition(tuple(sorted(tuple(c) for c in groups.values())))


def twin_quotient(G) -> QuotientGraph:
    nbs = _neighborhoods(G)
    part = twin_classes(G)
    cls = part.class_of
    edges = set()
    for c, members in enumerate(part.classes):
        for d, others in enumerate(part.classes):
            if d <= c:
                continue
            hits = [w in nbs[v] for v in members for w in others]
            if any(hits):
                if not all(hits):
                    raise AssertionError("twin classes are not uniformly adjacent")
                edges.add((members[0], others[0]))
    assert all(cls[v] == c for c, m in enumerate(part.classes) for v in m)
    return QuotientGraph(tuple(m[0] for m in part.classes), tuple(part.sizes), tuple(sorted(edges)))


def min_twin_cover(G) -> list[int]:
    """Every vertex except the largest id of each twin class."""
    return sorted(v for c in twin_classes(G).classes for v in c[:-1])


def dist_from_quotient(t: int, d_quotient: int) -> int:
    """Smallest d with C(d, t) >= d_quotient."""
    if t < 1 or d_quotient < 1:
        raise ValueError("class size and quotient distinguishing number must be positive")
    d = t
    while comb(d, t) < d_quotient:
        d += 1
    return d


def cycle_dist(n: int) -> int:
    if n < 3:
        raise ValueError("cycles need at least 3 vertices")
    return 3 if n <= 5 else 2


def cycle_distinguishing_coloring(n: int) -> list[int]:
    """A distinguishing coloring of C_n with :func:`cycle_dist` colors.

    Colors 1 on vertex 0 and the pair 2, 3 break every rotation and reflection
    once n >= 6; small cycles take one vertex of each of the first three colors.
    """
    colors = [0] * n
    if n <= 5:
        colors[1], colors[2] = 1, 2
    else:
        colors[0] = colors[2] = colors[3] = 1
    return colors


def lift_quotient_coloring(part: TwinPartition, quotient_colors, d: int) -> np.ndarray:
    """Give each twin class a distinct t-subset of range(d), one color per member.

    Quotient color ``c`` selects the ``c``-th t-subset in lexicographic order.
    """
    from itertools import combinations

    sizes = set(part.sizes)
    if len(sizes) != 1:
        raise ValueError("lifting needs every twin class to have the same size")
    t = sizes.pop()
    subsets = list(combinations(range(d), t))
    if max(quotient_colors) >= len(subsets):
        raise ValueError(f"C({d},{t}) subsets cannot encode {max(quotient_colors) + 1} colors")
    colors = np.empty(sum(part.sizes), dtype=np.int64)
    for members, qc in zip(part.classes, quotient_colors):
        colors[list(members)] = subsets[qc]
    return colors
