"""Praeger-Xu graphs PX(n, k) in the bitstring model."""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

import numpy as np

from .bitstring import MAX_K, BitWord


class Vertex(NamedTuple):
    i: int
    x: BitWord

    def __str__(self) -> str:
        return f"{self.i}:{self.x}"

    @classmethod
    def parse(cls, text: str) -> "Vertex":
        try:
            i, bits = text.split(":")
            return cls(int(i), BitWord.parse(bits))
        except ValueError as exc:
            raise ValueError(f"bad vertex literal {text!r}, expected i:bits") from exc


def check_params(n: int, k: int) -> None:
    if n < 3 or not 1 <= k < n:
        raise ValueError(f"PX(n,k) needs n >= 3 and 1 <= k < n, got n={n}, k={k}")
    if k > MAX_K:
        raise ValueError(f"k={k} exceeds the supported maximum {MAX_K}")


def antipodal(i: int, j: int, n: int) -> bool:
    return n % 2 == 0 and (i - j) % n == n // 2


@dataclass(frozen=True)
class PxGraph:
    n: int
    k: int
    adj: np.ndarray = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return self.n << self.k

    @property
    def num_edges(self) -> int:
        return 2 * self.order

    def vertex_id(self, v: Vertex) -> int:
        i, x = v
        if not 0 <= i < self.n or x.k != self.k:
            raise ValueError(f"{v} is not a vertex of PX({self.n},{self.k})")
        return (i << self.k) | int(x)

    def vertex_from_id(self, vid: int) -> Vertex:
        if not 0 <= vid < self.order:
            raise ValueError(f"vertex id {vid} out of range for PX({self.n},{self.k})")
        return Vertex(vid >> self.k, BitWord.from_int(vid & ((1 << self.k) - 1), self.k))

    def ids(self, vertices: Iterable[Vertex]) -> list[int]:
        return [self.vertex_id(v) for v in vertices]

    def vertices(self) -> list[Vertex]:
        return [self.vertex_from_id(v) for v in range(self.order)]

    def neighbors(self, v: Vertex) -> set[Vertex]:
        return {self.vertex_from_id(int(w)) for w in self.adj[self.vertex_id(v)]}

    def are_adjacent(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def fibre(self, i: int) -> set[Vertex]:
        if not 0 <= i < self.n:
            raise ValueError(f"fibre index {i} out of range")
        return {self.vertex_from_id((i << self.k) | x) for x in range(1 << self.k)}

    def fibre_ids(self, i: int) -> np.ndarray:
        return np.arange(i << self.k, (i + 1) << self.k)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, int(w)) for u in range(self.order) for w in self.adj[u] if u < w]

    def is_connected(self) -> bool:
        seen = np.zeros(self.order, dtype=bool)
        seen[0] = True
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    queue.append(int(w))
        return bool(seen.all())


def build(n: int, k: int) -> PxGraph:
    """Build PX(n, k).

    ``(i, a z_1..z_{k-1})`` is joined to ``(i+1, z_1..z_{k-1} b)`` for both
    values of ``b``; every other adjacency is the reverse of such an edge.
    """
    check_params(n, k)
    size = 1 << k
    mask = size - 1
    vid = np.arange(n * size, dtype=np.int64)
    i, x = vid >> k, vid & mask
    up = ((i + 1) % n) << k
    down = ((i - 1) % n) << k
    shifted = (x << 1) & mask
    adj = np.stack([
        up | shifted,
        up | shifted | 1,
        down | (x >> 1),
        down | (x >> 1) | (1 << (k - 1)),
    ], axis=1)
    adj.sort(axis=1)
    adj.setflags(write=False)
    return PxGraph(n, k, adj)


def export_edges(G: PxGraph) -> str:
    label = [str(v) for v in G.vertices()]
    return "".join(f"{label[u]} {label[w]}\n" for u, w in G.edges())


def export_json(G: PxGraph) -> str:
    doc = {
        "n": G.n,
        "k": G.k,
        "vertices": [str(v) for v in G.vertices()],
        "edges": [list(e) for e in G.edges()],
    }
    return json.dumps(doc) + "\n"


def export_dot(G: PxGraph) -> str:
    # fibre 0 at 12 o'clock, fibres clockwise, word 0 innermost
    lines = [f"graph PX_{G.n}_{G.k} {{", "  node [shape=point];"]
    size = 1 << G.k
    for v in G.vertices():
        angle = math.pi / 2 - 2 * math.pi * v.i / G.n
        radius = 1.0 + int(v.x) / max(size - 1, 1)
        lines.append(f'  "{v}" [pos="{radius * math.cos(angle):.4f},{radius * math.sin(angle):.4f}!"];')
    label = [str(v) for v in G.vertices()]
    for u, w in G.edges():
        lines.append(f'  "{label[u]}" -- "{label[w]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


EXPORTERS = {"edges": export_edges, "json": export_json, "dot": export_dot}


def export(G: PxGraph, fmt: str) -> str:
    try:
        return EXPORTERS[fmt](G)
    except KeyError:
        raise ValueError(f"unknown export format {fmt!r}") from None
