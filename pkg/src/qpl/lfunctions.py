"""Special values and p-adic interpolation of the multiple q-L-series.

The module has three layers.  The closed-form layer (q_zeta_special,
partial_q_zeta_special, Lq_special, Lpq_special) returns negative-integer
special values as finite combinations of multiple q-Bernoulli polynomials.
The series layer (Lpq_eval, Lpq_at_r) evaluates the two-variable p-adic
q-L-function as a double sum: a finite outer sum over residue vectors,
grouped by their sum, and an inner k-series whose truncation is certified
term by term.  Lpq_difference_rhs is the finite sum that a shift of z by
r*F adds to the function, used by the congruence machinery.

Conventions: s is an integer or a PadicNumber in the disk D, z lies in the
valuation ring, and characters should be primitive (an imprimitive modulus
changes Euler factors at its extra primes).  The inner series coefficients
beta^(r)_k follow the context convention flag; see qbernoulli.series_beta.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from .characters import DirichletCharacter, char_twist_omega
from .classical import pochhammer, sum_counts
from .errors import (
    BudgetExceeded,
    DivergenceDetected,
    DomainError,
    PoleError,
    PrecisionExhausted,
)
from .padic import (
    ExponentForm,
    PadicNumber,
    QContext,
    angle_q,
    fraction_valuation,
    in_D,
    in_R,
    int_valuation,
    iwasawa_log,
    padic_power,
)
from .qbernoulli import TERM_BUDGET, multi_gen_q_beta_poly, multi_q_beta_poly, series_beta

# hard ceiling on monitored k-series length; the stop rule should fire or
# fail long before this
SERIES_CAP = 400


@dataclass(frozen=True)
class SeriesValue:
    """A series evaluation together with its truncation certificate.

    converged means the stop rule was satisfied (or the series was finite),
    in which case tail_valuation_bound is at least the requested precision
    and the value is reported at exactly that precision.
    """

    value: PadicNumber
    terms_used: int
    tail_valuation_bound: int
    converged: bool


@dataclass(frozen=True)
class LParams:
    """Evaluation point of the two-variable p-adic q-L-function."""

    r: int
    chi: DirichletCharacter
    F: int
    z: object = 0
    s: object = 0

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("order r must be >= 1")
        if self.F < 1:
            raise ValueError("F must be a positive integer")

    def validate(self, ctx: QContext) -> None:
        chi = self.chi
        if chi.p != ctx.p:
            raise DomainError(
                "character belongs to p = %d, context has p = %d" % (chi.p, ctx.p)
            )
        base = math.lcm(chi.modulus, ctx.p_star)
        if self.F % base != 0:
            raise DomainError(
                "F = %d must be a multiple of lcm(modulus, p*) = %d"
                % (self.F, base)
            )
        if self.F ** self.r > TERM_BUDGET:
            raise BudgetExceeded(
                "outer sum has %d terms, budget is %d"
                % (self.F ** self.r, TERM_BUDGET)
            )
        z = self.z
        if isinstance(z, PadicNumber):
            if z.p != ctx.p or not in_R(z):
                raise DomainError("z must lie in the valuation ring")
        elif Fraction(z) != 0 and fraction_valuation(Fraction(z), ctx.p) < 0:
            raise DomainError("z must lie in the valuation ring")
        s = self.s
        if isinstance(s, PadicNumber):
            if s.p != ctx.p or not in_D(s):
                raise DomainError("s lies outside the convergence disk D")
        elif not isinstance(s, int):
            raise TypeError("s must be an integer or a PadicNumber")


def choose_F(f: int, p: int, r: int = 1, purpose: str = "interpolation") -> int:
    """Smallest F valid for the requested use.

    interpolation: a multiple of the conductor and of p*.
    difference: a multiple of p (p*)^(-1) r lcm(f, p*), the shift step
    the difference identity needs.
    """
    from .padic import p_star

    base = math.lcm(f, p_star(p))
    if purpose == "interpolation":
        return base
    if purpose == "difference":
        return p * r * base // p_star(p)
    raise ValueError("purpose must be 'interpolation' or 'difference'")


def _neg_pochhammer(n: int, r: int):
    """(-1)^r / (n+1)_r as an exact Fraction, plus its p-content."""
    c = pochhammer(n + 1, r)
    return Fraction((-1) ** r, c), c


def _ceil_log(p: int, n: int) -> int:
    out, m = 0, 1
    while m < n:
        m *= p
        out += 1
    return out


def _beta_headroom(ctx: QContext, m: int, r: int, F: int) -> int:
    """Certified bound on -v(beta^(r)_{k,q^F}) over k <= m; factors that
    multiply such a beta need this many extra digits to keep target
    absolute precision."""
    if m < r:
        return 0
    vd = ctx.v_q1 + int_valuation(F, ctx.p)
    return (m - r) * vd + r * (vd + _ceil_log(ctx.p, m - r + 1))


def _clamp(x: PadicNumber, prec: int) -> PadicNumber:
    """Truncate x to absolute precision prec (never extends)."""
    if x.is_exact_zero:
        return x if x.prec <= prec else PadicNumber.exact_zero(x.p, prec)
    if x.prec <= prec:
        return x
    return x + PadicNumber.zero_at(x.p, prec)


# -- closed-form special values ----------------------------------------------


def q_zeta_special(ctx: QContext, n: int, r: int, x) -> PadicNumber:
    """Multiple q-zeta value at s = -n: (-1)^r/(n+1)_r beta^(r)_{n+r}(x)."""
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    c, poch = _neg_pochhammer(n, r)
    inner = ctx.with_precision(ctx.prec + int_valuation(poch, ctx.p) + 2)
    return _clamp(multi_q_beta_poly(inner, n + r, r, x) * c, ctx.prec)


def partial_q_zeta_special(ctx: QContext, n: int, r: int, a_list, F: int,
                           z=0) -> PadicNumber:
    """Partial multiple q-zeta value at s = -n for the residue vector a_list:

        [F]_q^n (-1)^r/(n+1)_r beta^(r)_{n+r, q^F}((z + sum a_i)/F)
    """
    a_list = list(a_list)
    if len(a_list) != r:
        raise ValueError("need exactly r residues")
    if any(a < 1 or a > F for a in a_list):
        raise DomainError("residues must satisfy 1 <= a_i <= F")
    c, poch = _neg_pochhammer(n, r)
    work = (ctx.prec + int_valuation(poch, ctx.p)
            + _beta_headroom(ctx, n + r, r, F) + 2)
    inner = ctx.with_precision(work)
    x = ExponentForm.wrap(z).add_int(sum(a_list)).over(F)
    beta = multi_q_beta_poly(inner, n + r, r, x, base_power=F)
    value = inner.q_bracket(1, F) ** n * beta * c
    return _clamp(value, ctx.prec)


def Lq_special(ctx: QContext, n: int, r: int, chi: DirichletCharacter,
               z=0, F: int = None) -> PadicNumber:
    """Multiple Dirichlet q-L value at s = -n.

    With F omitted this is (-1)^r/(n+1)_r beta^(r)_{n+r,q,chi}(z).  With an
    F that is a multiple of the modulus, the same value is assembled from
    partial q-zeta pieces over residue vectors in [1,F]^r; both routes must
    agree, which the test suite checks as the F-independence property.
    """
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    c, poch = _neg_pochhammer(n, r)
    inner = ctx.with_precision(ctx.prec + int_valuation(poch, ctx.p) + 2)
    if F is None:
        return _clamp(multi_gen_q_beta_poly(inner, n + r, r, chi, z) * c, ctx.prec)
    if F % chi.modulus != 0:
        raise DomainError("F = %d is not a multiple of the modulus %d"
                          % (F, chi.modulus))
    if F ** r > TERM_BUDGET:
        raise BudgetExceeded("outer sum has %d terms, budget is %d"
                             % (F ** r, TERM_BUDGET))
    work = inner.prec + _beta_headroom(ctx, n + r, r, F) + 2
    wctx = ctx.with_precision(work)
    counts = sum_counts(F, r)
    zf = ExponentForm.wrap(z)
    acc = PadicNumber.exact_zero(ctx.p, work)
    for total in range(r, r * F + 1):
        if chi.exponent(total) is None:
            continue
        x = zf.add_int(total).over(F)
        beta = multi_q_beta_poly(wctx, n + r, r, x, base_power=F)
        acc = acc + counts[total] * chi.eval(total, work) * beta
    value = wctx.q_bracket(1, F) ** n * acc * c
    return _clamp(value, ctx.prec)


def Lpq_special(ctx: QContext, n: int, r: int, chi: DirichletCharacter,
                z=0) -> PadicNumber:
    """Closed form of the p-adic q-L-function at s = -n:

        (-1)^r/(n+1)_r ( beta^(r)_{n+r,q,chi_m}(p* z)
                         - chi_m(p) [p]_q^n beta^(r)_{n+r,q^p,chi_m}(p* z / p) )

    with m = n + r and chi_m the omega^(-m) twist of chi.  The second
    polynomial argument is kept symbolic so (q^p)^(p* z / p) = q^(p* z)
    is materialized without dividing by p.
    """
    if n < 0 or r < 1:
        raise ValueError("need n >= 0 and r >= 1")
    m = n + r
    chim = char_twist_omega(chi, m)
    c, poch = _neg_pochhammer(n, r)
    if isinstance(z, PadicNumber):
        z1 = z * ctx.p_star
    else:
        z1 = ctx.p_star * z
    # The euler * second product is limited by the factors' relative
    # precision, which undershoots when the base-q^p polynomial has negative
    # valuation (principal twist rows).  The deficit is only known after the
    # fact, so top the working precision up and recompute until the result
    # is certified to the full ctx.prec.
    boost = 0
    for _ in range(4):
        inner = ctx.with_precision(
            ctx.prec + int_valuation(poch, ctx.p) + 2 + boost
        )
        first = multi_gen_q_beta_poly(inner, m, r, chim, z1)
        value = first
        if chim.exponent(ctx.p) is not None:
            second = multi_gen_q_beta_poly(inner, m, r, chim,
                                           ExponentForm(z1, ctx.p),
                                           base_power=ctx.p)
            euler = chim.eval(ctx.p, inner.prec) * inner.q_bracket(1, ctx.p) ** n
            value = first - euler * second
        value = value * c
        if value.prec >= ctx.prec:
            break
        boost += ctx.prec - value.prec + 1
    return _clamp(value, ctx.prec)


# -- the two-variable series -------------------------------------------------


class _StopRule:
    """Truncation monitor for the k-series.

    Accepts at the first k >= floor where the last 5 term-valuation lower
    bounds all clear the target and the window trend is nondecreasing
    (last >= first; coefficient families oscillate within a climbing
    envelope, so the trend is measured across the window, not pairwise).
    Five bounds >= target already certify those terms ultrametrically; the
    trend clause guards against a tail that is about to sink.  Divergence
    is reported once the bounds have sunk well below target with no
    recovery.
    """

    WINDOW = 5

    def __init__(self, floor: int, target: int):
        self.floor = floor
        self.target = target
        self.bounds = []

    def accept(self, k: int, bound) -> bool:
        self.bounds.append(bound)
        w = self.bounds[-self.WINDOW:]
        return (
            k >= self.floor
            and len(w) == self.WINDOW
            and all(b >= self.target for b in w)
            and w[-1] >= w[0]
        )

    def diverging(self) -> bool:
        w = self.bounds[-12:]
        return (
            len(w) == 12
            and w[-1] < self.target - 8
            and w[0] > w[-1]
            and all(w[i] >= w[i + 1] for i in range(11))
        )


def _pole_guard(r: int, s, chi: DirichletCharacter) -> None:
    hit = None
    if isinstance(s, int):
        if 1 <= s <= r:
            hit = s
    else:
        for j in range(1, r + 1):
            if (s - j).is_zero:
                hit = j
                break
    if hit is None:
        return
    if chi.is_principal:
        raise PoleError("simple pole at s = %d for the principal character" % hit)
    raise PoleError(
        "s = %d is a removable point for a nonprincipal character, but the "
        "series form divides by (s - %d); use Lpq_at_r for the value at s = r"
        % (hit, hit)
    )


def _outer_rows(wctx: QContext, chi: DirichletCharacter, r: int, F: int, z,
                work: int):
    """Grouped outer-sum data: for each admissible residue sum A, the
    multiplicity-weighted character value, the principal-unit angle, and
    the geometric factor q^(A + p* z) [F]_q / [A + p* z]_q."""
    counts = sum_counts(F, r)
    br_F = wctx.q_bracket(1, F, work)
    rows = []
    for total in range(r, r * F + 1):
        if counts[total] == 0 or math.gcd(total, wctx.p) != 1:
            continue
        if chi.exponent(total) is None:
            continue
        weight = counts[total] * chi.eval(total, work)
        exponent = ExponentForm.wrap(z).scale_int(wctx.p_star).add_int(total)
        angle = angle_q(wctx, total, z, work)
        geom = wctx.q_power(1, exponent, work) * (
            br_F / wctx.q_bracket(1, exponent, work)
        )
        rows.append((total, weight, exponent, angle, geom))
    return rows, br_F


def Lpq_eval(ctx: QContext, params: LParams, weight: str = "printed") -> SeriesValue:
    """The p-adic q-L-function of two variables as a certified double sum:

        1/[F]_q^r 1/((s-1)...(s-r)) sum'_{A} chi(A) <A + p* z>_q^{r-s}
            sum_k C(r-s, k) beta^(r)_{k,q^F} q^(k(A+p*z)) ([F]_q/[A+p*z]_q)^k

    where A runs over residue sums in [r, rF] prime to p, with
    multiplicities.  For integer s <= 0 the k-series terminates at
    k = r - s and the result is exact to the reported precision; for other
    s in D truncation is monitored by the stop rule and DivergenceDetected
    is raised if the term valuations fail to climb.

    weight="derivation" multiplies each outer term by q^((1-r)(A + p* z)),
    the prefactor the order-r expansion identity actually carries; at r = 1
    the two weights coincide.
    """
    if weight not in ("printed", "derivation"):
        raise ValueError("weight must be 'printed' or 'derivation'")
    params.validate(ctx)
    r, chi, F, z, s = params.r, params.chi, params.F, params.z, params.s
    _pole_guard(r, s, chi)
    p = ctx.p
    vF = int_valuation(F, p)

    if isinstance(s, int):
        prod_exact = 1
        for j in range(1, r + 1):
            prod_exact *= s - j
        v_prod = int_valuation(prod_exact, p)
    else:
        prod_exact = None
        v_prod = sum((s - j).valuation_bound()[0] for j in range(1, r + 1))

    finite_k = None
    if isinstance(s, int) and r - s > 0:
        finite_k = r - s

    # pad: r*vF for the 1/[F]^r division, v_prod for the polar prefactor,
    # headroom for negative beta valuations up to the deepest k reached
    # (the finite degree, or the series start when truncation is monitored)
    pad = (r * vF + v_prod + 4
           + _beta_headroom(ctx, finite_k if finite_k is not None else r, r, F))
    work = ctx.prec + pad
    wctx = ctx.with_precision(work)
    target = ctx.prec + r * vF + v_prod

    rows, br_F = _outer_rows(wctx, chi, r, F, z, work)
    if not rows:
        return SeriesValue(PadicNumber.exact_zero(p, ctx.prec), 0, ctx.prec, True)
    heads = []
    for total, wt, exponent, angle, geom in rows:
        head = angle ** (r - s) if finite_k is not None else padic_power(angle, r - s)
        if weight == "derivation":
            head = head * wctx.q_power(1, exponent.scale_int(1 - r), work)
        heads.append(wt * head)
    gpow = [wctx.one(work) for _ in rows]

    acc = PadicNumber.exact_zero(p, work)
    coeff = Fraction(1) if isinstance(s, int) else wctx.one(work)
    rule = _StopRule(r + 5, target)
    k = 0
    terms = 0
    converged = finite_k is not None
    while True:
        if finite_k is not None and k > finite_k:
            break
        beta = series_beta(wctx, k, r, base_power=F)
        if not beta.is_zero:
            row_sum = PadicNumber.exact_zero(p, work)
            for head, g in zip(heads, gpow):
                row_sum = row_sum + head * g
            term = coeff * beta * row_sum
        else:
            term = PadicNumber.exact_zero(p, work)
        acc = acc + term
        terms += 1
        if finite_k is None:
            if rule.accept(k, term.valuation_bound()[0]):
                converged = True
                break
            if rule.diverging():
                raise DivergenceDetected(
                    "term valuations sink below target near k = %d; the "
                    "k-series does not converge at this point" % k
                )
            if terms >= SERIES_CAP:
                raise DivergenceDetected(
                    "no certified truncation within %d terms" % SERIES_CAP
                )
        k += 1
        coeff = coeff * ((r - s) - (k - 1)) / k
        gpow = [gp * row[4] for gp, row in zip(gpow, rows)]

    value = acc / br_F ** r
    if prod_exact is not None:
        value = value * Fraction(1, prod_exact)
    else:
        prod_p = wctx.one(work)
        for j in range(1, r + 1):
            prod_p = prod_p * (s - j)
        value = value / prod_p
    if not value.is_exact_zero and value.prec < ctx.prec:
        raise PrecisionExhausted(
            "series evaluation retains %d digits, %d requested"
            % (value.prec, ctx.prec)
        )
    return SeriesValue(_clamp(value, ctx.prec), terms, ctx.prec, converged)


def Lpq_at_r(ctx: QContext, r: int, chi: DirichletCharacter, z=0,
             F: int = None) -> SeriesValue:
    """Value of the p-adic q-L-function at s = r (nonprincipal chi only):

        1/[F]_q^r 1/(r-1)! sum'_A chi(A) { -beta^(r)_0 log_p<A + p* z>_q
            + sum_{k>=r} (-1)^k/k beta^(r)_{k,q^F} q^(k(A+p*z))
              ([F]_q/[A+p*z]_q)^k }

    Under the pure-sum convention beta^(r)_0 = 0 and the logarithmic term
    drops; the context convention flag decides.
    """
    if r < 1:
        raise ValueError("order r must be >= 1")
    if chi.is_principal:
        raise PoleError("the principal character has a genuine pole at s = r")
    p = ctx.p
    if F is None:
        F = choose_F(chi.conductor, p, r, "interpolation")
    params = LParams(r=r, chi=chi, F=F, z=z, s=r)
    params.validate(ctx)
    vF = int_valuation(F, p)
    v_fact = int_valuation(math.factorial(r - 1), p)
    pad = r * vF + v_fact + _beta_headroom(ctx, r, r, F) + 4
    work = ctx.prec + pad
    wctx = ctx.with_precision(work)
    target = ctx.prec + r * vF + v_fact

    rows, br_F = _outer_rows(wctx, chi, r, F, z, work)
    if not rows:
        return SeriesValue(PadicNumber.exact_zero(p, ctx.prec), 0, ctx.prec, True)

    beta0 = series_beta(wctx, 0, r, base_power=F)
    acc = PadicNumber.exact_zero(p, work)
    if not beta0.is_zero:
        log_sum = PadicNumber.exact_zero(p, work)
        for total, wt, exponent, angle, geom in rows:
            log_sum = log_sum + wt * iwasawa_log(angle)
        acc = -(beta0 * log_sum)

    gpow = [row[4] ** r for row in rows]
    rule = _StopRule(r + 5, target)
    k = r
    terms = 0
    converged = False
    while True:
        beta = series_beta(wctx, k, r, base_power=F)
        row_sum = PadicNumber.exact_zero(p, work)
        for (total, wt, exponent, angle, geom), gp in zip(rows, gpow):
            row_sum = row_sum + wt * gp
        term = Fraction((-1) ** k, k) * beta * row_sum
        acc = acc + term
        terms += 1
        if rule.accept(k, term.valuation_bound()[0]):
            converged = True
            break
        if rule.diverging():
            raise DivergenceDetected(
                "term valuations sink below target near k = %d; the value "
                "series does not converge under this convention" % k
            )
        if terms >= SERIES_CAP:
            raise DivergenceDetected(
                "no certified truncation within %d terms" % SERIES_CAP
            )
        k += 1
        gpow = [gp * row[4] for gp, row in zip(gpow, rows)]

    value = acc / br_F ** r * Fraction(1, math.factorial(r - 1))
    if not value.is_exact_zero and value.prec < ctx.prec:
        raise PrecisionExhausted(
            "series evaluation retains %d digits, %d requested"
            % (value.prec, ctx.prec)
        )
    return SeriesValue(_clamp(value, ctx.prec), terms, ctx.prec, converged)


def Lpq_difference_rhs(ctx: QContext, s, z, chi: DirichletCharacter, r: int,
                       F: int) -> PadicNumber:
    """The finite sum by which shifting z to z + rF changes the function:

        - sum'_{A in [r, r p* F]} chi_r(A) q^(A + p* z) <A + p* z>_q^(-s)

    over residue sums prime to p, with chi_r the omega^(-r) twist of chi.
    F must be a multiple of p (p*)^(-1) r lcm(f, p*).
    """
    if r < 1:
        raise ValueError("order r must be >= 1")
    p, pstar = ctx.p, ctx.p_star
    step = p * r * math.lcm(chi.conductor, pstar) // pstar
    if F % step != 0:
        raise DomainError(
            "F = %d is not a multiple of p (p*)^(-1) r lcm(f, p*) = %d"
            % (F, step)
        )
    span = pstar * F
    if span ** r > TERM_BUDGET:
        raise BudgetExceeded("outer sum has %d terms, budget is %d"
                             % (span ** r, TERM_BUDGET))
    chir = char_twist_omega(chi, r)
    work = ctx.prec + 4
    wctx = ctx.with_precision(work)
    counts = sum_counts(span, r)
    acc = PadicNumber.exact_zero(p, work)
    for total in range(r, r * span + 1):
        if counts[total] == 0 or math.gcd(total, p) != 1:
            continue
        if chir.exponent(total) is None:
            continue
        exponent = ExponentForm.wrap(z).scale_int(pstar).add_int(total)
        angle = angle_q(wctx, total, z, work)
        head = angle ** (-s) if isinstance(s, int) else padic_power(angle, -s)
        acc = acc + (counts[total] * chir.eval(total, work)
                     * wctx.q_power(1, exponent, work) * head)
    return _clamp(-acc, ctx.prec)
