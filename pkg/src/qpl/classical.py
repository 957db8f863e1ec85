"""Exact-rational Bernoulli apparatus: the trusted reference layer.

Everything here is computed in Fraction arithmetic; p-adic rounding happens
only at the boundary, when a caller asks for a PadicNumber at a stated
precision.  Characters of order one or two have integer values and keep the
whole computation rational; higher-order characters force genuinely p-adic
values and require an explicit precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .characters import DirichletCharacter, eta_power
from .padic import PadicNumber, fraction_valuation

__all__ = [
    "bernoulli_number",
    "bernoulli_poly",
    "norlund_poly",
    "norlund_number",
    "gen_bernoulli_poly",
    "multi_gen_bernoulli_poly",
    "stirling_first",
    "pochhammer",
    "sum_counts",
]

_BERNOULLI = [Fraction(1)]


def bernoulli_number(n: int) -> Fraction:
    """B_n with the B_1 = -1/2 convention (EGF t/(e^t - 1))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    while len(_BERNOULLI) <= n:
        m = len(_BERNOULLI)
        if m > 2 and m % 2 == 1:
            _BERNOULLI.append(Fraction(0))
            continue
        acc = Fraction(0)
        for k in range(m):
            acc += math.comb(m + 1, k) * _BERNOULLI[k]
        _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def bernoulli_poly(n: int, z) -> Fraction:
    z = Fraction(z)
    return sum(
        math.comb(n, k) * bernoulli_number(k) * z ** (n - k)
        for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def _egf_coeff(r: int, n: int) -> Fraction:
    """Coefficient of t^n in (t/(e^t - 1))^r."""
    if r == 0:
        return Fraction(1 if n == 0 else 0)
    if r == 1:
        return bernoulli_number(n) / math.factorial(n)
    return sum(_egf_coeff(r - 1, k) * _egf_coeff(1, n - k) for k in range(n + 1))


def norlund_number(n: int, r: int) -> Fraction:
    """Higher-order Bernoulli number B_n^(r)."""
    if n < 0 or r < 0:
        raise ValueError("need n >= 0 and r >= 0")
    return _egf_coeff(r, n) * math.factorial(n)


def norlund_poly(n: int, r: int, z) -> Fraction:
    """B_n^(r)(z) = sum C(n,k) B_k^(r) z^(n-k)."""
    z = Fraction(z)
    return sum(
        math.comb(n, k) * norlund_number(k, r) * z ** (n - k)
        for k in range(n + 1)
    )


@lru_cache(maxsize=None)
def stirling_first(n: int, k: int) -> int:
    """Signed Stirling numbers of the first kind.

    Defined by n! C(x, n) = sum_k s(n, k) x^k, equivalently the recurrence
    s(n+1, k) = s(n, k-1) - n s(n, k).
    """
    if n < 0 or k < 0:
        raise ValueError("need n >= 0 and k >= 0")
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0 or k > n:
        return 0
    return stirling_first(n - 1, k - 1) - (n - 1) * stirling_first(n - 1, k)


def pochhammer(x, r: int):
    """Rising factorial (x)_r = x (x+1) ... (x+r-1); (x)_0 = 1."""
    if r < 0:
        raise ValueError("r must be >= 0")
    result = 1
    for i in range(r):
        result = result * (x + i)
    return result


@lru_cache(maxsize=None)
def sum_counts(f: int, r: int) -> tuple:
    """counts[t] = #{(a_1..a_r) in [1,f]^r : sum a_i = t}, t = 0..r*f."""
    counts = [1]
    step = [0] + [1] * f
    for _ in range(r):
        nxt = [0] * (len(counts) + f)
        for i, c in enumerate(counts):
            if c:
                for j in range(1, f + 1):
                    nxt[i + j] += c
        counts = nxt
    return tuple(counts)


def _grouped_to_value(groups: dict, chi: DirichletCharacter, prec):
    """Assemble sum_e coeff_e * eta^e from exact grouped coefficients.

    groups maps eta-exponents to Fractions.  Returns a Fraction when the
    character values are rational (order <= 2), else a PadicNumber certified
    to absolute precision prec.
    """
    if chi.order <= 2:
        # order <= 2 forces every exponent to 0 or eta_order/2, i.e. +1 or -1
        total = Fraction(0)
        half = chi.eta_order // 2
        for e, coeff in groups.items():
            total += coeff if e % chi.eta_order == 0 else -coeff
            assert e % chi.eta_order in (0, half)
        if prec is None:
            return total
        return PadicNumber.from_fraction(total, chi.p, prec)
    if prec is None:
        raise ValueError(
            "character of order %d has p-adic values; pass prec" % chi.order
        )
    p = chi.p
    vmin = 0
    for coeff in groups.values():
        if coeff != 0:
            vmin = min(vmin, fraction_valuation(coeff, p))
    work = prec - vmin
    acc = PadicNumber.exact_zero(p, work)
    for e, coeff in groups.items():
        if coeff != 0:
            acc = acc + eta_power(p, e, work) * coeff
    return acc


def gen_bernoulli_poly(n: int, chi: DirichletCharacter, z=0, prec=None):
    """Generalized Bernoulli polynomial attached to chi at its modulus f:

        f^(n-1) * sum_{a=1..f} chi(a) B_n((a+z)/f).

    For the modulus-1 principal character this is B_n(z+1), matching
    B_{n,principal} = B_n for n != 1 and B_{1,principal} = +1/2.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    f = chi.modulus
    z = Fraction(z)
    scale = Fraction(f) ** (n - 1)
    groups = {}
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        term = scale * bernoulli_poly(n, Fraction(a + z, f))
        groups[e] = groups.get(e, Fraction(0)) + term
    return _grouped_to_value(groups, chi, prec)


def multi_gen_bernoulli_poly(n: int, r: int, chi: DirichletCharacter,
                             z=0, prec=None):
    """Multiple generalized Bernoulli polynomial at the modulus f of chi:

        f^(n-r) * sum_{a_1..a_r=1..f} chi(a_1+...+a_r)
                   B_n^(r)((z+a_1+...+a_r)/f).

    The inner sums are grouped by a_1+...+a_r, so the cost is r*f terms,
    not f^r.
    """
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    f = chi.modulus
    z = Fraction(z)
    scale = Fraction(f) ** (n - r)
    counts = sum_counts(f, r)
    groups = {}
    for t in range(r, r * f + 1):
        e = chi.exponent(t)
        if e is None:
            continue
        term = counts[t] * scale * norlund_poly(n, r, Fraction(z + t, f))
        groups[e] = groups.get(e, Fraction(0)) + term
    return _grouped_to_value(groups, chi, prec)
