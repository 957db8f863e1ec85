"""Shared assertion helpers for the test suite."""

import math


def bound_of(x):
    """Certified lower valuation bound of x, ignoring exactness."""
    bound, _ = x.valuation_bound()
    return bound


def residue(x, k):
    """x as an integer modulo p^k; requires v(x) >= 0 and k certified digits."""
    assert x.prec >= k, "only %d digits certified, %d asked" % (x.prec, k)
    if x.is_exact_zero or x.unit == 0:
        return 0
    assert x.val >= 0
    return x.unit * x.p ** x.val % x.p ** k


def assert_agree(x, y, digits):
    d = x - y
    bound = bound_of(d)
    assert bound >= digits, "agree only to %s digits, need %d: %r vs %r" % (
        bound, digits, x, y)


def assert_exact_zero(x):
    bound, exact = x.valuation_bound()
    assert exact and bound == math.inf, "expected exact zero, got %r" % (x,)
