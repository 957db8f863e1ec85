"""Exact rational Bernoulli apparatus: numbers, polynomials, multiple
orders, generalized variants, Stirling numbers."""

import math
from fractions import Fraction

import pytest

from qpl import (
    bernoulli_number,
    bernoulli_poly,
    char_build,
    forward_diff,
    fraction_valuation,
    gen_bernoulli_poly,
    multi_gen_bernoulli_poly,
    norlund_number,
    norlund_poly,
    omega_pow,
    pochhammer,
    principal_char,
    stirling_expansion,
    stirling_first,
    sum_counts,
)
from qpl.characters import eta_order

from helpers import residue


def test_bernoulli_numbers():
    assert bernoulli_number(0) == 1
    assert bernoulli_number(1) == Fraction(-1, 2)
    assert bernoulli_number(4) == Fraction(-1, 30)
    assert bernoulli_number(7) == 0
    assert bernoulli_number(12) == Fraction(-691, 2730)


def test_bernoulli_poly_values():
    assert bernoulli_poly(1, Fraction(1, 2)) == 0
    assert bernoulli_poly(0, Fraction(7, 3)) == 1
    for n in range(9):
        assert bernoulli_poly(n, 0) == bernoulli_number(n)


def test_bernoulli_poly_difference_equation():
    for n in range(1, 9):
        for x in (Fraction(0), Fraction(1, 2), Fraction(-2), Fraction(5, 3)):
            assert (bernoulli_poly(n, x + 1) - bernoulli_poly(n, x)
                    == n * x ** (n - 1))


def test_norlund_reduces_to_classical():
    for n in range(8):
        assert norlund_number(n, 1) == bernoulli_number(n)
        assert norlund_poly(n, 1, Fraction(1, 3)) == bernoulli_poly(
            n, Fraction(1, 3))


def test_norlund_small_values():
    assert norlund_number(0, 3) == 1
    assert norlund_number(1, 2) == -1
    assert norlund_poly(3, 2, Fraction(2)) == Fraction(1, 2)


def test_norlund_convolution():
    # order r splits as (r-1) + 1 under the generating-function product
    for n in range(7):
        for r in (2, 3):
            for x in (Fraction(0), Fraction(1, 2)):
                for y in (Fraction(0), Fraction(1), Fraction(-2)):
                    lhs = norlund_poly(n, r, x + y)
                    rhs = sum(math.comb(n, k)
                              * norlund_poly(k, r - 1, x)
                              * bernoulli_poly(n - k, y)
                              for k in range(n + 1))
                    assert lhs == rhs


def test_gen_bernoulli_principal():
    one = principal_char(5)
    # modulus-1 sum runs over a = 1, shifting the argument by 1
    assert gen_bernoulli_poly(1, one) == Fraction(1, 2)
    for n in range(7):
        for z in (0, 2, Fraction(1, 2)):
            assert gen_bernoulli_poly(n, one, z) == bernoulli_poly(
                n, Fraction(z) + 1)


def test_gen_bernoulli_quadratic():
    half = eta_order(5) // 2
    chi3 = char_build(3, {2: half}, 5)
    assert gen_bernoulli_poly(1, chi3) == Fraction(-1, 3)
    assert isinstance(gen_bernoulli_poly(2, chi3), Fraction)
    # odd character: even-index values vanish
    assert gen_bernoulli_poly(2, chi3) == 0


def test_gen_bernoulli_padic_values():
    w = omega_pow(5, 1)
    with pytest.raises(ValueError):
        gen_bernoulli_poly(1, w)
    v = gen_bernoulli_poly(1, w, prec=6)
    x = gen_bernoulli_poly(1, w, prec=10)
    assert residue(x, 6) == residue(v, 6)


def test_multi_gen_reduces_to_gen():
    half = eta_order(5) // 2
    chi3 = char_build(3, {2: half}, 5)
    for n in range(6):
        assert multi_gen_bernoulli_poly(n, 1, chi3, 2) == gen_bernoulli_poly(
            n, chi3, 2)


def test_multi_gen_principal_is_shifted_norlund():
    one = principal_char(5)
    assert multi_gen_bernoulli_poly(3, 2, one) == Fraction(1, 2)
    for n in range(6):
        for r in (1, 2, 3):
            for z in (0, 1, Fraction(1, 2)):
                assert multi_gen_bernoulli_poly(n, r, one, z) == norlund_poly(
                    n, r, Fraction(z) + r)


def test_stirling_first_values():
    assert stirling_first(0, 0) == 1
    assert stirling_first(3, 3) == 1
    assert stirling_first(2, 3) == 0
    assert stirling_first(3, 1) == 2
    assert stirling_first(3, 2) == -3
    assert stirling_first(4, 2) == 11


def test_stirling_recurrence():
    for n in range(8):
        for k in range(1, n + 2):
            assert stirling_first(n + 1, k) == stirling_first(
                n, k - 1) - n * stirling_first(n, k)


def test_stirling_expansion_matches_binomial():
    # n! C(x, n) expands through signed Stirling numbers
    for n in range(13):
        terms = stirling_expansion(n)
        assert terms == tuple((m, stirling_first(n, m)) for m in range(n + 1))
        for x in range(-3, 4):
            falling = math.prod(x - i for i in range(n))
            assert falling == sum(s * x ** m for m, s in terms)


def test_pochhammer():
    assert pochhammer(7, 0) == 1
    assert pochhammer(2, 3) == 24
    for r in range(6):
        assert pochhammer(1, r) == math.factorial(r)
    assert pochhammer(Fraction(1, 2), 2) == Fraction(3, 4)


def test_sum_counts():
    counts = sum_counts(3, 2)
    # pairs from [1,3]^2 by total: 2..6 -> 1,2,3,2,1
    assert counts[2:7] == (1, 2, 3, 2, 1)
    assert sum(counts) == 9


def test_classical_kummer_invariant():
    # v_p of the k-th forward difference of B_n/n grows at least like k
    for p in (5, 7):
        for n in range(2, 11, 2):
            if n % (p - 1) == 0:
                continue
            for k in (1, 2):
                if n <= k:
                    continue
                seq = lambda m: bernoulli_number(m) / m
                d = forward_diff(seq, n, p - 1, k)
                assert fraction_valuation(d, p) >= k
