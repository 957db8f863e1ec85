"""Exact behavior of the fixed-precision p-adic arithmetic layer."""

import math
from fractions import Fraction

import pytest

from qpl import (
    DivisionByZero,
    DomainError,
    ExponentForm,
    NotAUnit,
    PadicNumber,
    QContext,
    angle_q,
    binom_padic,
    fraction_valuation,
    in_D,
    in_R,
    in_Rstar,
    int_valuation,
    iwasawa_log,
    p_star,
    padic_arith,
    padic_exp,
    padic_from_rational,
    padic_power,
    q_bracket,
    q_pow,
    rstar_threshold,
    teichmuller,
    teichmuller_int,
)

from helpers import assert_agree, assert_exact_zero, bound_of, residue

CTX = QContext(5, Fraction(6), 8)


def test_from_rational_half():
    x = padic_from_rational(1, 2, 5, 3)
    assert x.val == 0
    assert residue(x, 3) == 63


def test_from_rational_with_valuation():
    x = padic_from_rational(5, 3, 5, 3)
    assert x.val == 1
    assert x.unit % 125 == 42


def test_from_rational_geometric_series():
    # -1/4 = 1/(1-5) = 1 + 5 + 25 + ...
    x = padic_from_rational(-1, 4, 5, 3)
    assert residue(x, 3) == 31


def test_from_rational_negative_valuation():
    x = padic_from_rational(1, 5, 5, 3)
    assert x.val == -1


def test_addition_example():
    x = PadicNumber.from_int(6, 5, 6) + 5
    assert residue(x, 3) == 11


def test_arith_dispatch_matches_operators():
    x = PadicNumber.from_int(6, 5, 8)
    y = PadicNumber.from_int(35, 5, 8)
    for op, direct in (("add", x + y), ("sub", x - y),
                       ("mul", x * y), ("div", x / y)):
        assert_agree(padic_arith(op, x, y), direct, direct.prec)
    with pytest.raises(ValueError):
        padic_arith("pow", x, y)


def test_sub_same_object_is_exact_zero():
    x = padic_from_rational(7, 3, 5, 6)
    z = x - x
    assert_exact_zero(z)
    assert z.prec == x.prec


def test_inexact_zero_bound():
    x = PadicNumber.from_int(6, 5, 4)
    z = x - PadicNumber.from_int(6, 5, 4)
    bound, exact = z.valuation_bound()
    assert bound == 4 and not exact


def test_nonzero_bound_is_exact():
    x = padic_from_rational(50, 1, 5, 4)
    bound, exact = x.valuation_bound()
    assert bound == 2 and exact


def test_mul_keeps_relative_precision():
    x = PadicNumber(5, 1, 7, 10)   # 9 relative digits
    y = PadicNumber(5, 0, 3, 4)    # 4 relative digits
    z = x * y
    assert z.val == 1
    assert z.prec == z.val + 4


def test_division_round_trip():
    x = padic_from_rational(7, 3, 5, 8)
    y = padic_from_rational(4, 9, 5, 8)
    assert_agree((x / y) * y, x, 8)


def test_division_by_zero():
    x = PadicNumber.from_int(1, 5, 8)
    inexact_zero = PadicNumber(5, 8, 0, 8)
    with pytest.raises(DivisionByZero):
        x / inexact_zero
    with pytest.raises(DivisionByZero):
        x / PadicNumber.exact_zero(5, 8)


def test_teichmuller_of_two():
    t = teichmuller(2, QContext(5, Fraction(6), 3))
    assert residue(t, 3) == 57


def test_teichmuller_of_minus_one_class():
    t = teichmuller(4, CTX)
    assert residue(t + 1, 8) == 0
    assert bound_of(t + 1) >= 8


def test_teichmuller_fixed_points():
    assert residue(teichmuller(1, CTX), 8) == 1
    with pytest.raises(NotAUnit):
        teichmuller(5, CTX)


def test_teichmuller_int_order():
    for p in (2, 3, 5, 7):
        phi = 2 if p == 2 else p - 1
        mod = p ** 9
        for a in range(1, 10):
            if math.gcd(a, p) != 1:
                continue
            t = teichmuller_int(a, p, 9)
            assert pow(t, phi, mod) == 1
            assert (t - a) % p_star(p) == 0


def test_iwasawa_log_of_six():
    x = PadicNumber.from_int(6, 5, 3)
    L = iwasawa_log(x)
    assert L.val == 1
    assert residue(L, 3) == 55


def test_log_multiplicative():
    x = PadicNumber.from_int(6, 5, 12)
    assert_agree(iwasawa_log(x * x), iwasawa_log(x) * 2, 11)


def test_log_domain():
    # only principal units 1 + p* R are accepted
    with pytest.raises(DomainError):
        iwasawa_log(PadicNumber.from_int(5, 5, 8))
    with pytest.raises(DomainError):
        iwasawa_log(PadicNumber.from_int(2, 5, 8))


def test_exp_of_five():
    x = padic_from_rational(5, 1, 5, 3)
    assert residue(padic_exp(x), 3) == 81


def test_exp_log_round_trip():
    x = PadicNumber.from_int(6, 5, 8)
    assert_agree(padic_exp(iwasawa_log(x)), x, 8)


def test_exp_domain():
    with pytest.raises(DomainError):
        padic_exp(PadicNumber.from_int(1, 5, 8))


def test_q_bracket_of_three():
    b = q_bracket(CTX, 1, 3)
    assert bound_of(b - 43) >= 8       # 1 + q + q^2 at q = 6
    assert bound_of(q_bracket(CTX, 1, 0)) >= 8


def test_q_bracket_cocycle():
    for a, b in ((1, 2), (3, 4), (2, 7)):
        lhs = q_bracket(CTX, 1, a + b)
        rhs = q_bracket(CTX, 1, a) + q_pow(CTX, a) * q_bracket(CTX, 1, b)
        assert_agree(lhs, rhs, 8)


def test_q_bracket_exponent_form():
    # [a + p* z] through the exponent-form path agrees with the integer path
    e = ExponentForm(5 * 2).add_int(3)
    assert_agree(q_bracket(CTX, 1, e), q_bracket(CTX, 1, 13), 8)


def test_q_pow_integer_exact():
    assert bound_of(q_pow(CTX, 3) - 216) >= 8


def test_q_pow_fractional_root():
    half = q_pow(CTX, Fraction(1, 2))
    assert_agree(half * half, q_pow(CTX, 1), 7)


def test_q_pow_padic_exponent():
    e = PadicNumber.from_int(3, 5, 6)
    assert bound_of(q_pow(CTX, e) - 216) >= 6


def test_angle_of_two():
    ctx = QContext(5, Fraction(6), 3)
    a = angle_q(ctx, 2)
    assert residue(a, 3) == pow(57, -1, 125) * 7 % 125


def test_angle_is_principal_unit():
    assert bound_of(angle_q(CTX, 1) - 1) >= 8
    for a in (2, 3, 4, 6, 7):
        assert bound_of(angle_q(CTX, a) - 1) >= 1
    with pytest.raises(NotAUnit):
        angle_q(CTX, 10)


def test_angle_with_shift():
    # <a + p* z> built from the shifted bracket
    direct = angle_q(CTX, 2, 3)
    bracket = q_bracket(CTX, 1, 2 + 5 * 3)
    t_inv = teichmuller(2, CTX)
    assert_agree(direct * t_inv, bracket, 8)


def test_padic_power_integer_consistency():
    x = angle_q(CTX, 2)
    assert bound_of(padic_power(x, 0) - 1) >= 8
    assert_agree(padic_power(x, 3), x * x * x, 8)


def test_padic_power_additive_in_exponent():
    x = angle_q(CTX, 3)
    s = PadicNumber.from_int(2, 5, 8)
    t = PadicNumber.from_int(5, 5, 8)
    assert_agree(padic_power(x, s) * padic_power(x, t),
                 padic_power(x, s + t), 7)


def test_padic_power_domain():
    x = angle_q(CTX, 2)
    with pytest.raises(DomainError):
        padic_power(x, PadicNumber(5, -1, 1, 7))
    with pytest.raises(DomainError):
        padic_power(PadicNumber.from_int(2, 5, 8), PadicNumber.from_int(1, 5, 8))


def test_binom_padic_negative_one():
    m1 = PadicNumber.from_int(-1, 5, 8)
    for k in range(6):
        assert residue(binom_padic(m1, k) - (-1) ** k, 7) == 0


def test_binom_padic_integers():
    t = PadicNumber.from_int(7, 5, 10)
    assert bound_of(binom_padic(t, 3) - math.comb(7, 3)) >= 8
    assert bound_of(binom_padic(t, 0) - 1) >= 1


def test_binom_padic_type_guard():
    with pytest.raises(TypeError):
        binom_padic(3, 2)


def test_region_predicates():
    assert in_R(PadicNumber(5, 0, 1, 8))
    assert not in_R(PadicNumber(5, -1, 1, 7))
    assert in_Rstar(PadicNumber(5, 1, 1, 8))
    assert not in_Rstar(PadicNumber(5, 0, 1, 8))
    assert in_D(PadicNumber(5, 0, 1, 8))
    assert not in_D(PadicNumber(5, -1, 1, 7))
    # p = 2: R* needs v >= 2, D reaches down to v = -1
    assert in_Rstar(PadicNumber(2, 2, 1, 8))
    assert not in_Rstar(PadicNumber(2, 1, 1, 8))
    assert in_D(PadicNumber(2, -1, 1, 7))
    assert not in_D(PadicNumber(2, -2, 1, 6))


def test_constants():
    assert p_star(2) == 4 and p_star(5) == 5
    assert rstar_threshold(2) == 2 and rstar_threshold(5) == 1
    assert int_valuation(50, 5) == 2
    assert fraction_valuation(Fraction(3, 25), 5) == -2


def test_serialization_round_trip():
    for x in (padic_from_rational(7, 3, 5, 6),
              PadicNumber(5, 6, 0, 6),
              PadicNumber.exact_zero(5, 6)):
        d = x.to_dict()
        y = PadicNumber.from_dict(d)
        assert x.p == y.p and x.prec == y.prec
        assert_exact_zero(x - y) if x.is_exact_zero else None
        assert (x - y).valuation_bound()[0] >= x.prec


def test_serialization_shape():
    # N significant digits above the valuation: absolute precision val + N
    x = padic_from_rational(50, 1, 5, 4)
    d = x.to_dict()
    assert d["p"] == 5 and d["val"] == 2 and d["prec"] == 6
    value = sum(dig * 5 ** i for i, dig in enumerate(d["digits"]))
    assert value == x.unit
    assert PadicNumber.exact_zero(5, 6).to_dict()["val"] == "inf"


def test_context_precision_switch():
    wide = CTX.with_precision(20)
    assert wide.p == 5 and wide.q == CTX.q and wide.prec == 20
    assert wide.convention == CTX.convention
    carl = CTX.with_convention("carlitz")
    assert carl.convention == "carlitz" and carl.prec == CTX.prec
