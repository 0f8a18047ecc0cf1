import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st
from mpmath import mp, mpf

from tsubdiv import default_probability, host_order, subdivision_order
from tsubdiv import bounds

mp.dps = 60


def hi_pow(k, e):
    return mpf(k) ** mpf(e)


@pytest.mark.parametrize("k, n", [(1, 4), (10, 359), (12, 513), (16, 901), (8, 232), (20, 1393)])
def test_host_order(k, n):
    assert host_order(k) == n


def test_host_order_at_exact_power():
    # 1024^1.9 = 2^19 exactly
    assert host_order(1024) == 2 * 1024 ** 2 + 2 * 2 ** 19


@given(st.integers(1, 10**7))
def test_host_order_matches_high_precision(k):
    exact = 2 * (k * k + hi_pow(k, "1.9"))
    nearest = int(mp.nint(exact))
    if abs(exact - nearest) < mpf(10) ** -40:
        # k^1.9 is (numerically) an integer, so mpmath cannot round it reliably
        r = host_order(k) - 2 * k * k
        assert r ** 10 >= 1024 * k ** 19 > (r - 1) ** 10
    else:
        assert host_order(k) == int(mp.ceil(exact))


def test_default_probability_values():
    assert default_probability(1) == pytest.approx(1 / 3.5, abs=1e-12)
    assert default_probability(16) == pytest.approx(0.019923, abs=2e-6)
    assert default_probability(32) < default_probability(16)


def test_bad_k():
    for f in (host_order, default_probability):
        with pytest.raises(ValueError):
            f(0)


def test_subdivision_order():
    assert [subdivision_order(k) for k in (1, 2, 3, 12)] == [1, 3, 6, 78]


@given(st.integers(1, 10**6), st.sampled_from([(4, 5), (7, 10), (1, 10)]))
def test_ceil_power(k, frac):
    num, den = frac
    t = bounds.ceil_power(k, num, den)
    assert Fraction(t) ** den >= k ** num > Fraction(t - 1) ** den if t > 0 else True


def test_ceil_power_exact_cases():
    assert bounds.ceil_power(32, 4, 5) == 16
    assert bounds.ceil_power(2, 4, 5) == 2
    assert bounds.ceil_power(1, 7, 10) == 1


@given(st.integers(0, 200), st.integers(1, 5000), st.integers(1, 400))
def test_p3_exact_matches_high_precision(overlap, t, k):
    rhs = mpf(t) / (2 * k) + hi_pow(t, "0.75") - 1
    assert bounds.p3_holds(overlap, t, k) == (overlap <= rhs)


@given(st.integers(0, 5000), st.integers(1, 5000), st.integers(1, 400))
def test_p2_exact_matches_high_precision(q, t, k):
    rhs = t - mpf(t) / (32 * hi_pow(k, "0.1"))
    assert bounds.p2_holds(q, t, k) == (q <= rhs)


@given(st.integers(0, 3000), st.integers(1, 2000))
def test_p1_exact_matches_high_precision(size, k):
    assert bounds.p1_holds(size, k) == (size >= k + 2 * hi_pow(k, "0.8"))


def test_p1_boundary():
    # k = 32: k + 2 k^0.8 = 64 exactly
    assert bounds.p1_holds(64, 32) and not bounds.p1_holds(63, 32)
