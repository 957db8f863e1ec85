"""q-Bernoulli numbers and polynomials over Z_p.

Two single-beta conventions coexist and are kept strictly apart:

* Carlitz singles carry the 1/log q correction (beta_0 = (q-1)/log q) and
  satisfy the classical symbolic recurrence.
* Pure-sum multiples come from the order-r generating function whose low
  coefficients vanish (beta_n^(r) = 0 for n < r); their r = 1 case is NOT
  the Carlitz sequence.

The context convention flag decides which family feeds series expansions
elsewhere; see series_beta.  The closed form used for the multiples is the
one validated against the floating-point oracles.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .characters import DirichletCharacter
from .errors import BudgetExceeded, NormalizationUnresolved, PrecisionExhausted
from .padic import (
    ExponentForm,
    PadicNumber,
    QContext,
    fraction_valuation,
    int_valuation,
)

__all__ = [
    "QBernoulliTable",
    "beta_table",
    "carlitz_beta",
    "carlitz_beta_poly",
    "gen_q_beta_poly",
    "kim_sum_of_products",
    "loss_budget",
    "multi_q_beta_poly",
    "multi_gen_q_beta_poly",
    "series_beta",
    "set_convention_certificate",
    "load_convention_certificate",
    "convention_certificate",
]

#: direct nested summation guard for the f^r character sums
TERM_BUDGET = 10 ** 7


def _ceil_log(p: int, n: int) -> int:
    e = 0
    t = 1
    while t < n:
        t *= p
        e += 1
    return e


def _base_valuation(ctx: QContext, base_power: int) -> int:
    """v_p(q^base_power - 1); exact since v_p(q-1) clears the LTE threshold."""
    return ctx.v_q1 + int_valuation(base_power, ctx.p)


def loss_budget(ctx: QContext, n: int, base_power: int = 1) -> int:
    """Extra working digits for a beta table up to index n."""
    if n == 0:
        return 2
    return n * (_base_valuation(ctx, base_power) + _ceil_log(ctx.p, n) + 2)


@dataclass
class QBernoulliTable:
    """Carlitz beta values for one base power q^d of one context."""

    ctx: QContext
    base_power: int
    convention: str
    target: int = 0
    entries: list = field(default_factory=list)

    def extend(self, n: int, target: int) -> None:
        if n < len(self.entries) and target <= self.target:
            return
        target = max(target, self.target)
        self.target = target
        self.entries = _carlitz_run(self.ctx, max(n, len(self.entries) - 1),
                                    self.base_power, target)


def _carlitz_run(ctx: QContext, n_max: int, d: int, target: int) -> list:
    """Solve (q^n - 1) b_n = [n = 1] - sum_{k<n} C(n,k) q^k b_k at base q^d."""
    p = ctx.p
    work = target + loss_budget(ctx, n_max, d)
    q_exact = ctx.q ** d
    vd = _base_valuation(ctx, d)
    num = PadicNumber.from_fraction(q_exact - 1, p, work)
    log_qd = ctx.log_q(vd + work) * d
    entries = [num / log_qd]
    qpow = [ctx.q_pow_int(d * k, work) for k in range(n_max + 1)]
    for n in range(1, n_max + 1):
        acc = PadicNumber.from_int(1 if n == 1 else 0, p, work)
        for k in range(n):
            acc = acc - math.comb(n, k) * qpow[k] * entries[k]
        divisor = PadicNumber.from_fraction(q_exact ** n - 1, p, acc.rel or 1)
        b = acc / divisor
        if b.prec < target:
            raise PrecisionExhausted(
                "beta_%d at base q^%d retains %d digits, need %d"
                % (n, d, b.prec, target)
            )
        entries.append(b)
    return entries


def beta_table(ctx: QContext, base_power: int = 1) -> QBernoulliTable:
    key = ("carlitz", base_power)
    table = ctx._tables.get(key)
    if table is None:
        table = QBernoulliTable(ctx, base_power, "carlitz")
        ctx._tables[key] = table
    return table


def carlitz_beta(ctx: QContext, n: int, base_power: int = 1) -> PadicNumber:
    """Carlitz q-Bernoulli number beta_n at base q^base_power."""
    if n < 0:
        raise ValueError("n must be >= 0")
    table = beta_table(ctx, base_power)
    if n >= len(table.entries) or table.target < ctx.prec:
        table.extend(n, ctx.prec)
    return table.entries[n]


def carlitz_beta_poly(ctx: QContext, n: int, x,
                      base_power: int = 1) -> PadicNumber:
    """beta_n(x) = sum C(n,k) q^(kx) beta_k [x]^(n-k), Carlitz convention."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = ExponentForm.wrap(x)
    d = base_power
    work = ctx.prec + loss_budget(ctx, n, d) + 2
    betas = [carlitz_beta(ctx.with_precision(work), k, d) for k in range(n + 1)]
    u = ctx.q_power(d, x, work)
    bracket = ctx.q_bracket(d, x, work)
    acc = PadicNumber.exact_zero(ctx.p, work)
    upow = PadicNumber.from_int(1, ctx.p, work)
    # accumulate q^(kx) incrementally; bracket powers by reverse index
    brackets = [PadicNumber.from_int(1, ctx.p, work)]
    for _ in range(n):
        brackets.append(brackets[-1] * bracket)
    for k in range(n + 1):
        acc = acc + math.comb(n, k) * upow * betas[k] * brackets[n - k]
        if k < n:
            upow = upow * u
    return acc


def gen_q_beta_poly(ctx: QContext, n: int, chi: DirichletCharacter,
                    z=0) -> PadicNumber:
    """Character-attached single q-Bernoulli polynomial, Carlitz convention:

        [f]_q^(n-1) sum_{a=1..f} chi(a) beta_{n,q^f}((a+z)/f).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    f = chi.modulus
    zf = ExponentForm.wrap(z)
    work = ctx.prec + loss_budget(ctx, n, f) + 2
    acc = PadicNumber.exact_zero(ctx.p, work)
    for a in range(1, f + 1):
        e = chi.exponent(a)
        if e is None:
            continue
        x = zf.add_int(a).over(f)
        acc = acc + chi.eval(a, work) * carlitz_beta_poly(
            ctx.with_precision(work), n, x, base_power=f)
    return ctx.q_bracket(1, f, work) ** (n - 1) * acc


def multi_q_beta_poly(ctx: QContext, n: int, r: int, x,
                      base_power: int = 1) -> PadicNumber:
    """Multiple q-Bernoulli polynomial of order r at base Q = q^base_power:

        (-1)^r n!/(n-r)! (1-Q)^(r-n)
            sum_{j=0..n-r} C(n-r,j) (-1)^j Q^((j+1)x) (1-Q^(j+1))^(-r)

    and 0 for n < r (the order-r generating function starts at t^r).
    """
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    p = ctx.p
    if n < r:
        return PadicNumber.exact_zero(p, ctx.prec)
    d = base_power
    vd = _base_valuation(ctx, d)
    q_exact = ctx.q ** d
    # worst term valuation: prefactor (r-n) vd, coefficients -r(vd + v_p(j+1))
    vmin = (r - n) * vd - r * (vd + _ceil_log(p, n - r + 1))
    rel = ctx.prec - vmin + 2
    x = ExponentForm.wrap(x)
    u = ctx.q_power(d, x, rel)
    acc = PadicNumber.exact_zero(p, ctx.prec + 2)
    upow = u
    for j in range(n - r + 1):
        coeff = Fraction(math.comb(n - r, j) * (-1) ** j) \
            / (1 - q_exact ** (j + 1)) ** r
        acc = acc + PadicNumber.from_fraction(coeff, p, rel) * upow
        if j < n - r:
            upow = upow * u
    pref = Fraction((-1) ** r * math.perm(n, r)) * (1 - q_exact) ** (r - n)
    return PadicNumber.from_fraction(pref, p, rel) * acc


def multi_gen_q_beta_poly(ctx: QContext, n: int, r: int,
                          chi: DirichletCharacter, z=0,
                          base_power: int = 1) -> PadicNumber:
    """Character-attached multiple q-Bernoulli polynomial at the modulus f
    of chi (induce chi first to evaluate at a larger modulus):

        [f]_Q^(n-r) sum_{a_1..a_r=1..f} chi(a_1+...+a_r)
                     beta^(r)_{n,Q^f}((z+a_1+...+a_r)/f)

    with Q = q^base_power.  The sum is grouped over t = a_1+...+a_r with
    multiplicities, which leaves the value unchanged; the f^r budget guard
    is enforced regardless.
    """
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    f = chi.modulus
    if f ** r > TERM_BUDGET:
        raise BudgetExceeded(
            "f^r = %d exceeds the %d-term budget" % (f ** r, TERM_BUDGET)
        )
    from .classical import sum_counts
    zf = ExponentForm.wrap(z)
    vfb = int_valuation(f, ctx.p) * abs(n - r)
    work = ctx.prec + vfb + 2
    inner = ctx.with_precision(work)
    acc = PadicNumber.exact_zero(ctx.p, work)
    counts = sum_counts(f, r)
    for t in range(r, r * f + 1):
        e = chi.exponent(t)
        if e is None:
            continue
        x = zf.add_int(t).over(f)
        beta = multi_q_beta_poly(inner, n, r, x, base_power=base_power * f)
        acc = acc + counts[t] * chi.eval(t, work) * beta
    return ctx.q_bracket(base_power, f, work) ** (n - r) * acc


# -- convention certificate ---------------------------------------------------

_CERTIFICATE = [None]


def set_convention_certificate(cert: dict) -> None:
    """Install an oracle-produced resolution certificate for this process.

    Passing None clears the stored certificate.
    """
    if cert is None:
        _CERTIFICATE[0] = None
        return
    for key in ("normalization", "single_beta", "r_max"):
        if key not in cert:
            raise ValueError("certificate lacks %r" % key)
    if cert["normalization"] not in ("n", "n+r"):
        raise ValueError("bad normalization %r" % cert["normalization"])
    if cert["single_beta"] not in ("pure_sum", "carlitz"):
        raise ValueError("bad single_beta %r" % cert["single_beta"])
    _CERTIFICATE[0] = dict(cert)


def load_convention_certificate(path) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        cert = json.load(fh)
    set_convention_certificate(cert)
    return cert


def convention_certificate():
    return _CERTIFICATE[0]


def _single_poly(ctx: QContext, convention: str, k: int, z) -> PadicNumber:
    if convention == "carlitz":
        return carlitz_beta_poly(ctx, k, z)
    if k < 1:
        return PadicNumber.exact_zero(ctx.p, ctx.prec)
    return multi_q_beta_poly(ctx, k, 1, z)


def kim_sum_of_products(ctx: QContext, n: int, r: int, z_list) -> PadicNumber:
    """The nested sums-of-products expansion over compositions
    i_1+...+i_r = n+r, with the binomial weights and (q-1)-powers, using the
    single-beta convention fixed by the stored resolution certificate.

    The certificate also records which multiple-beta order this equals
    (its "normalization" field); no equality is assumed here beyond what
    the oracle established.
    """
    cert = _CERTIFICATE[0]
    if cert is None:
        raise NormalizationUnresolved(
            "no convention certificate installed; run the oracle resolution"
        )
    if r > cert["r_max"]:
        raise NormalizationUnresolved(
            "certificate covers r <= %d, not r = %d" % (cert["r_max"], r)
        )
    if len(z_list) != r:
        raise ValueError("need exactly r shift arguments")
    convention = cert["single_beta"]
    p = ctx.p
    N = n + r
    work = ctx.prec + 2 * loss_budget(ctx, N) + 2
    inner = ctx.with_precision(work)
    q_minus_1 = ctx.q - 1
    total = PadicNumber.exact_zero(p, work)
    for comp in _compositions(N, r):
        multinom = math.factorial(N)
        for i in comp:
            multinom //= math.factorial(i)
        factor = PadicNumber.from_int(multinom, p, work)
        running = N
        for j in range(r - 1):
            running -= comp[j]
            inner_sum = PadicNumber.exact_zero(p, work)
            for k in range(running + 1):
                w = Fraction(math.comb(running, k)) * q_minus_1 ** k
                inner_sum = inner_sum + PadicNumber.from_fraction(
                    w, p, work) * _single_poly(inner, convention,
                                               k + comp[j], z_list[j])
            factor = factor * inner_sum
        total = total + factor * _single_poly(inner, convention,
                                              comp[r - 1], z_list[r - 1])
    return total


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def series_beta(ctx: QContext, k: int, r: int,
                base_power: int = 1) -> PadicNumber:
    """The coefficient beta^(r)_{k} at base q^base_power that series
    expansions consume, honoring the context convention flag.

    pure_sum: the order-r generating-function coefficients (0 for k < r).
    carlitz: for r = 1 the full Carlitz sequence; for r >= 2 the k = 0 term
    is replaced by ((q^d - 1)/log q^d)^r and the other low terms stay 0.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    if ctx.convention == "carlitz":
        if r == 1:
            return carlitz_beta(ctx, k, base_power)
        if k == 0:
            return carlitz_beta(ctx, 0, base_power) ** r
    if k < r:
        return PadicNumber.exact_zero(ctx.p, ctx.prec)
    return multi_q_beta_poly(ctx, k, r, 0, base_power=base_power)
