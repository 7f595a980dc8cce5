"""Verification campaign: every checked claim becomes one report record."""
from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import formulas, group as grp, symmetry, twins, witnesses
from .graph import Vertex, build

CHECKS = ("table1", "aut", "relations", "xi", "phi", "twins", "interchange", "witness", "scale")


@dataclass
class Config:
    n_max: int = 7
    k_max: int = 4
    vertex_cap: int = 112
    generic_cap: int = 120
    max_subset_size: int = 8
    node_limit: int = 10**9
    time_limit_ms: int | None = None
    workers: int = 1
    out_dir: str = "."
    format: str = "ndjson"
    timing: bool = True
    checks: tuple[str, ...] = CHECKS
    pairs: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def __post_init__(self):
        for name in ("n_max", "k_max", "vertex_cap", "generic_cap", "max_subset_size", "node_limit", "workers"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")

    def budget(self) -> symmetry.SearchBudget:
        return symmetry.SearchBudget.from_env(
            max_subset_size=self.max_subset_size, node_limit=self.node_limit,
            max_generic_vertices=self.generic_cap,
            **({"time_limit_s": self.time_limit_ms / 1000} if self.time_limit_ms else {}))

    def grid(self) -> list[tuple[int, int]]:
        if self.pairs:
            return list(self.pairs)
        return [(n, k) for n in range(3, self.n_max + 1) for k in range(1, min(n - 1, self.k_max) + 1)
                if n << k <= self.vertex_cap]


def load_config(path: str) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = (part.strip() for part in line.split("=", 1))
            out[key] = value
    return out


def _report(claim, method, value, expected, witness=(), status=None, start=None, timing=True):
    if status is None:
        status = "pass" if value == expected else "fail"
    return {
        "claim": claim,
        "method": method,
        "value": value,
        "witness": [str(w) for w in witness],
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3) if (timing and start) else None,
        "status": status,
    }


def _labels(G, ids):
    return [str(G.vertex_from_id(int(v))) for v in ids]


# each task returns a list of reports; tasks are independent

def _table1(n, k, cfg):
    G = build(n, k)
    group = grp.full_aut(n, k)
    budget = cfg.budget()
    out = []
    t = time.perf_counter()
    try:
        d, S = symmetry.det_bruteforce(G, group, budget, workers=1)
        out.append(_report(f"det(PX({n},{k})) = {formulas.det_formula(n, k)}", "bruteforce", d,
                           formulas.det_formula(n, k), S, start=t, timing=cfg.timing))
    except symmetry.BudgetExhausted as exc:
        out.append(_report(f"det(PX({n},{k})) = {formulas.det_formula(n, k)}", "bruteforce", None, None,
                           status="budget", start=t, timing=cfg.timing) | {"partial": exc.partial})
    t = time.perf_counter()
    try:
        dist = symmetry.dist_bruteforce(G, group, budget)
        out.append(_report(f"dist(PX({n},{k})) = {formulas.dist_formula(n, k)}", "bruteforce", dist,
                           formulas.dist_formula(n, k), start=t, timing=cfg.timing))
    except symmetry.BudgetExhausted:
        out.append(_report(f"dist(PX({n},{k}))", "bruteforce", None, None, status="budget", start=t,
                           timing=cfg.timing))
    if k >= 2:
        t = time.perf_counter()
        try:
            c, R = symmetry.cost2_bruteforce(G, group, budget)
            out.append(_report(f"cost(PX({n},{k})) = {formulas.cost_formula(n, k)}", "bruteforce", c,
                               formulas.cost_formula(n, k), R, start=t, timing=cfg.timing))
        except symmetry.BudgetExhausted:
            out.append(_report(f"cost(PX({n},{k}))", "bruteforce", None, None, status="budget",
                               start=t, timing=cfg.timing))
    return out


def _aut(n, k, cfg):
    t = time.perf_counter()
    G = build(n, k)
    out = []
    A = grp.A_perm_tables(n, k)
    distinct = len(np.unique(A, axis=0))
    out.append(_report(f"|A(PX({n},{k}))| = 2^{n}*{2 * n} distinct permutations", "formula", distinct,
                       grp.group_order_A(n), start=t, timing=cfg.timing))
    if G.order <= min(56, cfg.generic_cap):
        t = time.perf_counter()
        generic = symmetry.generic_automorphisms(G, cfg.budget())
        full = grp.full_aut(n, k)
        same = generic.shape == full.shape and bool(np.array_equal(generic, full))
        out.append(_report(f"generic search = full_aut(PX({n},{k})) [{len(full)}]", "bruteforce",
                           same, True, start=t, timing=cfg.timing))
    return out


def _relations(n, k, cfg):
    t = time.perf_counter()
    G = build(n, k)
    one = grp.identity(n, k)
    r, m = grp.rho(n, k), grp.mu(n, k)
    table = grp.perm_table
    ok = np.array_equal(table(grp.compose(m, m)), table(one))
    ok &= np.array_equal(table(grp.compose(m, grp.compose(r, m))), table(grp.rho(n, k, -1)))
    for s in range(n):
        ts = grp.tau(n, k, s)
        ok &= np.array_equal(table(grp.compose(ts, ts)), table(one))
        ok &= np.array_equal(table(grp.compose(r, grp.compose(ts, grp.rho(n, k, -1)))),
                             table(grp.tau(n, k, s + 1)))
        ok &= np.array_equal(table(grp.compose(m, grp.compose(ts, m))), table(grp.tau(n, k, k - 1 - s)))
        for u in range(n):
            tu = grp.tau(n, k, u)
            ok &= np.array_equal(table(grp.compose(ts, tu)), table(grp.compose(tu, ts)))
    return [_report(f"generator relations on PX({n},{k})", "witness", bool(ok), True, start=t, timing=cfg.timing)]


def _xi(cfg):
    t = time.perf_counter()
    G = build(4, 3)
    table = grp.xi_table()
    A = grp.A_perm_tables(4, 3)
    out = [
        _report("xi is an automorphism of PX(4,3)", "witness", grp.is_automorphism(G, table), True,
                start=t, timing=cfg.timing),
        _report("xi is not in A", "bruteforce", bool((A == table).all(axis=1).any()), False,
                start=t, timing=cfg.timing),
        _report("xi fixed points (reconciled with the two-cycle list)", "witness",
                [str(v) for v in grp.xi_fixed_points()],
                ["0:000", "0:111", "1:001", "1:110", "2:011", "2:100", "3:000", "3:111"],
                start=t, timing=cfg.timing),
    ]
    z = Vertex.parse("0:000")
    for v, xv, taus, delta in SWAPS:
        t = time.perf_counter()
        alpha = grp.element(4, 3, delta, taus)
        beta = grp.compose(alpha, grp.xi())
        v = Vertex.parse(v)
        ok = grp.apply(beta, z) == v and grp.apply(beta, v) == z and str(grp.apply(grp.xi(), v)) == xv
        out.append(_report(f"({alpha})*xi swaps 0:000 and {v}", "witness", ok, True, start=t,
                           timing=cfg.timing))
    return out


# (v, xi.v, tau indices of alpha, delta of alpha)
SWAPS = [
    ("1:010", "3:001", [2], grp.rotation(4, 1)),
    ("1:011", "1:100", [2, 3], grp.mu_s(4, 3, 3)),
    ("1:100", "1:011", [0, 1], grp.mu_s(4, 3, 3)),
    ("1:101", "3:110", [0, 1, 3], grp.rotation(4, 1)),
    ("3:010", "3:101", [0, 2], grp.mu_s(4, 3, 1)),
    ("3:110", "1:101", [0, 2, 3], grp.rotation(4, 3)),
    ("3:001", "1:010", [1], grp.rotation(4, 3)),
    ("3:101", "3:010", [1, 3], grp.mu_s(4, 3, 1)),
]


def _phi(cfg):
    t = time.perf_counter()
    G = build(4, 2)
    images = [G.vertex_id(grp.phi(q)) for q in range(16)]
    bijective = sorted(images) == list(range(16))
    edges_ok = all(G.are_adjacent(images[a], images[b]) for a, b in grp.hypercube_edges(4))
    return [_report("phi: Q4 -> PX(4,2) is an isomorphism", "bruteforce", bijective and edges_ok, True,
                    start=t, timing=cfg.timing)]


def _twins(n, k, cfg):
    t = time.perf_counter()
    G = build(n, k)
    part = twins.twin_classes(G)
    if k >= 2:
        expected = [(v,) for v in range(G.order)]
    elif n == 4:
        expected = [(0, 1, 4, 5), (2, 3, 6, 7)]
    else:
        expected = [(2 * i, 2 * i + 1) for i in range(n)]
    out = [_report(f"twin classes of PX({n},{k})", "bruteforce", list(map(list, part.classes)),
                   list(map(list, expected)), start=t, timing=cfg.timing)]
    if k == 1:
        q = twins.twin_quotient(G)
        target = [[1], [0]] if n == 4 else [sorted([(i - 1) % n, (i + 1) % n]) for i in range(n)]
        out.append(_report(f"twin quotient of PX({n},1) is {'K_2' if n == 4 else f'C_{n}'}", "bruteforce",
                           q.adjacency(), target, start=t, timing=cfg.timing))
    return out


def _interchange(n, k, cfg):
    t = time.perf_counter()
    G = build(n, k)
    A = grp.A_perm_tables(n, k)
    bad = []
    for a, b in itertools.combinations(range(G.order), 2):
        u, v = G.vertex_from_id(a), G.vertex_from_id(b)
        if witnesses.interchangeable_predicate(n, k, u, v) != \
                (symmetry.interchangeable_bruteforce(G, A, a, b) is not None):
            bad.append(f"{u}|{v}")
    return [_report(f"swap predicate == brute force over A on PX({n},{k})", "bruteforce", len(bad), 0,
                    bad[:10], start=t, timing=cfg.timing)]


def _witness(n, k, cfg):
    out = []
    G = build(n, k)
    group = grp.full_aut(n, k)
    t = time.perf_counter()
    S = witnesses.det_witness(n, k)
    out.append(_report(f"det_witness(PX({n},{k})) determining, size {formulas.det_formula(n, k)}",
                       "witness", [symmetry.is_determining(G, group, S), len(S)],
                       [True, formulas.det_formula(n, k)], S, start=t, timing=cfg.timing))
    t = time.perf_counter()
    colors = witnesses.dist_witness(n, k)
    out.append(_report(f"dist_witness(PX({n},{k})) distinguishing with {formulas.dist_formula(n, k)} colors",
                       "witness", [symmetry.is_distinguishing(G, group, colors), int(colors.max()) + 1],
                       [True, formulas.dist_formula(n, k)], start=t, timing=cfg.timing))
    if k >= 2:
        t = time.perf_counter()
        R = witnesses.cost_witness(n, k)
        out.append(_report(f"cost_witness(PX({n},{k})) distinguishing, size {formulas.cost_formula(n, k)}",
                           "witness", [symmetry.is_distinguishing(G, group, symmetry.two_coloring(G, R)), len(R)],
                           [True, formulas.cost_formula(n, k)], R, start=t, timing=cfg.timing))
    return out


def _scale(cfg):
    out = []
    t = time.perf_counter()
    G = build(20, 5)
    S = witnesses.det_witness(20, 5)
    ok = symmetry.is_determining(G, grp.AlgebraicGroup(20, 5), S)
    out.append(_report("det_witness(PX(20,5)) determining over A (size 4)", "witness", [ok, len(S)],
                       [True, 4], S, start=t, timing=cfg.timing))
    G = build(13, 4)
    A = grp.AlgebraicGroup(13, 4)
    for label, R in (("cost_witness", witnesses.cost_witness(13, 4)),
                     ("ceil(n/k)+1 construction", witnesses.plus_one_witness(13, 4))):
        t = time.perf_counter()
        ok = symmetry.is_distinguishing(G, A, symmetry.two_coloring(G, R))
        out.append(_report(f"{label}(PX(13,4)) distinguishing over A (size {len(R)})", "witness", ok, True,
                           R, start=t, timing=cfg.timing))
    return out


def tasks(cfg: Config) -> list[Callable[[], list[dict]]]:
    grid = cfg.grid()
    jobs = []
    for check in cfg.checks:
        if check not in CHECKS:
            raise ValueError(f"unknown check {check!r}; choose from {', '.join(CHECKS)}")
        if check == "xi":
            jobs.append(lambda: _xi(cfg))
        elif check == "phi":
            jobs.append(lambda: _phi(cfg))
        elif check == "scale":
            jobs.append(lambda: _scale(cfg))
        elif check == "interchange":
            pairs = cfg.pairs or ((5, 2), (5, 3), (6, 2), (6, 3), (7, 2))
            jobs += [lambda n=n, k=k: _interchange(n, k, cfg) for n, k in pairs]
        else:
            fn = {"table1": _table1, "aut": _aut, "relations": _relations, "twins": _twins,
                  "witness": _witness}[check]
            jobs += [lambda n=n, k=k, fn=fn: fn(n, k, cfg) for n, k in grid]
    return jobs


def run(cfg: Config) -> list[dict]:
    """Run every task; report order is fixed by task order, whatever ``workers`` is."""
    jobs = tasks(cfg)
    if cfg.workers <= 1:
        results = [job() for job in jobs]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(lambda job: job(), jobs))
    return [r for batch in results for r in batch]


def summary(reports: list[dict]) -> dict:
    counts = {s: sum(r["status"] == s for r in reports) for s in ("pass", "fail", "budget")}
    return {"summary": True, "total": len(reports), **counts,
            "status": "pass" if counts["fail"] == counts["budget"] == 0 else "fail"}
