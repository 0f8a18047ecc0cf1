"""Exact integer comparisons against fractional powers.

Thresholds such as ``k**0.8`` land on integers for some ``k`` (``32**0.8 ==
16``) and a float ``pow`` can miss by one ulp in either direction, which
would move a boundary.  Each helper here reduces the comparison to integer
powers.
"""
from __future__ import annotations

import math


def ceil_root(value_num: int, den: int) -> int:
    """Smallest integer ``t >= 0`` with ``t**den >= value_num``."""
    if value_num <= 0:
        return 0
    try:
        t = math.ceil(value_num ** (1.0 / den))
    except OverflowError:
        t = 1 << ((value_num.bit_length() + den - 1) // den)
    while t > 0 and (t - 1) ** den >= value_num:
        t -= 1
    while t ** den < value_num:
        t += 1
    return t


def ceil_power(k: int, num: int, den: int) -> int:
    """Smallest integer ``t`` with ``t >= k**(num/den)``."""
    return ceil_root(k ** num, den)


def at_most_power(x: int, k: int, num: int, den: int) -> bool:
    """``x <= k**(num/den)``, exactly."""
    return x <= 0 or x ** den <= k ** num


def at_least_power(x: int, k: int, num: int, den: int) -> bool:
    """``x >= k**(num/den)``, exactly."""
    return x >= 0 and x ** den >= k ** num


def host_order(k: int) -> int:
    """``ceil(2 (k^2 + k^1.9))``."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    # 2 k^1.9 = (2^10 k^19)^(1/10)
    return 2 * k * k + ceil_root(1024 * k ** 19, 10)


def default_probability(k: int) -> float:
    """Sampling probability ``1 / (2 (k + 0.75 k^0.9))``."""
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    return 1.0 / (2.0 * (k + 0.75 * k ** 0.9))


def subdivision_order(k: int) -> int:
    """Number of vertices of the 1-subdivision of T_k."""
    return k + k * (k - 1) // 2


def p1_holds(size: int, k: int) -> bool:
    """``size >= k + 2 k^0.8``."""
    return at_least_power(size - k, 32 * k ** 4, 1, 5) if size >= k else False


def p2_holds(q: int, t: int, k: int) -> bool:
    """``q <= t - t / (32 k^0.1)``, i.e. ``(32 (t - q))^10 k >= t^10``."""
    gap = t - q
    if gap < 0:
        return False
    return (32 * gap) ** 10 * k >= t ** 10


def p3_holds(overlap: int, t: int, k: int) -> bool:
    """``overlap <= t / (2k) + t^(3/4) - 1``."""
    x = (overlap + 1) * 2 * k - t
    return x <= 0 or x ** 4 <= (2 * k) ** 4 * t ** 3


def p2_bound(t: int, k: int) -> float:
    return t - t / (32 * k ** 0.1)


def p3_bound(t: int, k: int) -> float:
    return t / (2 * k) + t ** 0.75 - 1
