"""Closed-form det, dist and cost of 2-distinguishing for PX(n, k).

``None`` stands for an undefined value (cost when k = 1).
"""
from __future__ import annotations

from .graph import check_params


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def det_formula(n: int, k: int) -> int:
    check_params(n, k)
    if (n, k) == (4, 1):
        return 6
    if 2 * k == n:
        return ceil_div(n, k) + 1
    return ceil_div(n, k)


def dist_formula(n: int, k: int) -> int:
    check_params(n, k)
    if (n, k) == (4, 1):
        return 5
    return 3 if k == 1 else 2


def cost_formula(n: int, k: int) -> int | None:
    check_params(n, k)
    if k == 1:
        return None
    if (n, k) == (4, 2):
        return 5
    c = ceil_div(n, k)
    if 5 <= n < 2 * k or (n > 2 * k and n % k not in (0, k - 1)):
        return c
    return c + 1


def params(n: int, k: int) -> dict:
    return {"n": n, "k": k, "det": det_formula(n, k), "dist": dist_formula(n, k),
            "cost": cost_formula(n, k)}
