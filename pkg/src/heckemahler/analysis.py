"""Certified series evaluation, shift-relation checks, and exponent routes.

Evaluation is interval arithmetic over exact rationals: partial sums are
exact, tails are bounded geometrically through a rational majorant of
beta * alpha**theta.  The irrationality exponent comes out of two
independent routes (digit-formula and convergent growth) that the test
suite compares against each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

from .approximants import SigmaGamma, error_exponents
from .cf import Convergents, SlopeSpec, cf_extract, theta_interval
from .errors import DivergenceError, SizeBudgetExceeded, UndecidableDigit
from .numbers import (
    RealInterval,
    bits_cap,
    frac_pow_bounds,
    log2_frac,
    log2_int,
    logaddexp2,
    logsubexp2,
    pow_frac_up,
    round_frac,
)
from .ostrowski import (
    DerivedSequences,
    DigitProvider,
    InterceptSpec,
    as_provider,
    check_digits,
)
from .words import BinaryWord, sturmian_prefix, word_value

DEFAULT_BITS = 512
BITS_HARD_CAP = 16384
WINDOW_SKIP = 5
FAST_BITS_DEFAULT = 2_000_000

LN2 = math.log(2.0)


@dataclass
class EvalRequest:
    """One series evaluation: which word, which weights, how precisely."""

    slope: SlopeSpec
    intercept: InterceptSpec
    beta: Fraction
    alpha: Fraction
    target_bits: int = DEFAULT_BITS
    n_terms: int = 0
    letters: Optional[Sequence[int]] = None

    @classmethod
    def from_integers(cls, slope, intercept, b: int, a: int, **kw) -> "EvalRequest":
        return cls(slope, intercept, Fraction(1, b), Fraction(1, a), **kw)


def _theta_lower(slope: SlopeSpec, min_q: int = 64) -> Fraction:
    """Rational lower bound on theta from an even-index convergent."""
    conv = Convergents(slope)
    k = 0
    while conv.q(k) < min_q:
        k += 2
    return Fraction(conv.p(k), conv.q(k))


def geom_ratio_up(slope: SlopeSpec, beta: Fraction, alpha: Fraction,
                  bits: int = 64) -> Fraction:
    """Rational g >= beta * alpha**theta; raises if not contracting."""
    if alpha == 1:
        g = Fraction(beta)
    else:
        tl = _theta_lower(slope)
        _, hi = frac_pow_bounds(alpha, tl.numerator, tl.denominator, bits)
        g = round_frac(beta * hi, bits, True)
    if g >= 1:
        raise DivergenceError(f"beta * alpha**theta not below 1 (bound {g})")
    return g


def pick_n_terms(slope: SlopeSpec, beta: Fraction, alpha: Fraction,
                 target_bits: int) -> int:
    """Letters needed for a tail below 2**-target_bits."""
    if beta == 1:
        return 1
    g = geom_ratio_up(slope, beta, alpha)
    per_letter = -log2_frac(g)
    extra = max(0.0, log2_frac(1 / alpha)) if alpha != 1 else 0.0
    return int((target_bits + extra + 8) / per_letter) + 8


def eval_direct(req: EvalRequest, n_terms: int) -> RealInterval:
    """Enclosure of the letter-weighted series from its first n_terms letters.

    Exact partial sum plus the geometric tail majorant
    (1/alpha) * g**(n+1) / (1-g) with g >= beta * alpha**theta, using
    floor(n*theta + rho) >= n*theta_lo - 1.  With explicit `letters` the
    weaker exponent bound floor >= 0 is used instead (g = beta).
    """
    beta, alpha = Fraction(req.beta), Fraction(req.alpha)
    if not (0 < beta <= 1 and 0 < alpha <= 1):
        raise DivergenceError("weights must satisfy 0 < beta <= 1, 0 < alpha <= 1")
    if beta == 1:
        if alpha == 1:
            raise DivergenceError("beta = alpha = 1 diverges")
        # the alpha exponent steps through 1, 2, 3, ... exactly at the
        # one-letters, so the value telescopes to a geometric sum
        return RealInterval.point(alpha / (1 - alpha))
    if req.letters is not None:
        w = BinaryWord.from_letters(list(req.letters)[:n_terms])
        if w.length < n_terms:
            raise ValueError("not enough letters for the requested truncation")
        g = beta
        mult = Fraction(1)
    else:
        intercept = req.intercept
        if isinstance(intercept, DigitProvider):
            intercept = intercept.intercept
        w = sturmian_prefix(req.slope, intercept, n_terms,
                            max_bits=max(8 * req.target_bits, 1 << 16))
        g = geom_ratio_up(req.slope, beta, alpha)
        mult = 1 / alpha
    inv_b, inv_a = 1 / beta, 1 / alpha
    if inv_b.denominator == 1 and inv_a.denominator == 1:
        bi, ai = int(inv_b), int(inv_a)
        part = Fraction(word_value(w, bi, ai), bi ** w.length * ai ** w.ones())
    else:
        part = Fraction(0)
        for s in reversed(w.letters()):
            part = beta * alpha ** s * (s + part)
    tail_up = mult * pow_frac_up(g, n_terms + 1) / (1 - g)
    return RealInterval(part, part + tail_up)


def eval_to_width(slope: SlopeSpec, intercept, b: int, a: int,
                  target_bits: int) -> Tuple[RealInterval, int]:
    """eval_direct tuned so the tail stays below 2**-target_bits."""
    if not isinstance(intercept, InterceptSpec):
        intercept = InterceptSpec.formal_digits(list(intercept))
    req = EvalRequest.from_integers(slope, intercept, b, a, target_bits=target_bits)
    n = pick_n_terms(slope, req.beta, req.alpha, target_bits)
    return eval_direct(req, n), n


def fast_depth_cap(slope: SlopeSpec, digits, b: int, a: int, K: int,
                   max_bits: int = FAST_BITS_DEFAULT) -> int:
    """Largest K' <= K whose accelerated partial sum fits the bit budget."""
    provider = as_provider(slope, digits)
    seq = DerivedSequences(provider)
    conv = provider.conv
    lb, la = log2_int(b), log2_int(a)
    k = -1
    while k < K:
        need = float(seq.r(k + 2) + conv.q(k + 1)) * lb \
            + float(seq.r_tilde(k + 2) + conv.p(k + 1)) * la
        if need > max_bits:
            break
        k += 1
    return k


def eval_fast(slope: SlopeSpec, digits, b: int, a: int, K: int,
              max_bits: int = FAST_BITS_DEFAULT) -> RealInterval:
    """Enclosure from the accelerated alternating sum over block indices <= K.

    Terms are Gamma_k = (1-beta) alpha Pi_k / ((1-gamma_{k+1})(1-gamma_k))
    with Pi_k the running product of gamma_h^{a_{h+1}-b_{h+1}}; each Pi_k
    is checked against its closed-form exponents.  The tail uses that Pi
    values repeat at most twice in a row and shrink by at least
    gamma_{K+1} between runs.
    """
    assert b >= 2 and a >= 1 and K >= 0
    provider = as_provider(slope, digits)
    if fast_depth_cap(slope, provider, b, a, K, max_bits) < K:
        raise SizeBudgetExceeded(
            f"accelerated sum to K={K} exceeds {max_bits} bits "
            f"(feasible K = {fast_depth_cap(slope, provider, b, a, K, max_bits)})",
            last_index=fast_depth_cap(slope, provider, b, a, K, max_bits),
        )
    sg = SigmaGamma(slope, provider, b, a)
    conv, seq = sg.conv, sg.seq
    beta, alpha = sg.beta, sg.alpha
    part = Fraction(0)
    pi = Fraction(1)
    for k in range(K + 1):
        gap = conv.a(k + 1) - provider.digit(k + 1)
        pi *= sg.gamma(k) ** gap
        assert pi == beta ** (seq.r(k + 1) + conv.q(k) - 1) \
            * alpha ** (seq.r_tilde(k + 1) + conv.p(k) - 1), k
        part += (-1) ** k * pi / ((1 - sg.gamma(k + 1)) * (1 - sg.gamma(k)))
    part *= (1 - beta) * alpha
    g_next = sg.gamma(K + 1)
    pi_next = pi * g_next ** (conv.a(K + 2) - provider.digit(K + 2))
    tail = (1 - beta) * alpha * 2 * pi_next / (1 - g_next) ** 3
    return RealInterval(part - tail, part + tail)


class OracleExpansion(NamedTuple):
    head: Optional[Fraction]
    elements: List[int]
    certified: int
    bits: int
    n_terms: int


def oracle_quotients(slope: SlopeSpec, intercept, b: int, a: int,
                     digits10: int = 500,
                     max_elements: Optional[int] = None) -> OracleExpansion:
    """Continued fraction of the target certified by series evaluation alone.

    Evaluates (b-1) * xi_s(1/b, 1/a) to about digits10 decimal digits and
    runs the interval Euclidean algorithm; only elements on which both
    endpoints agree are reported.  When (a-1) is not a multiple of (b-1)
    the rational head is split off first and the elements describe the
    fractional remainder of 1/xi.
    """
    bits = int(digits10 * math.log2(10)) + 64
    series, n_terms = eval_to_width(slope, intercept, b, a, bits)
    xi = series * (b - 1)
    head: Optional[Fraction] = None
    if b > 2 and (a - 1) % (b - 1) != 0:
        provider = as_provider(slope, intercept)
        gap1 = provider.conv.a(1) - provider.digit(1)
        head = Fraction(b ** gap1 * a - 1, b - 1)
        xi = RealInterval.point(1) / xi - head
    terms, certified = cf_extract(xi, max_terms=max_elements)
    return OracleExpansion(head, terms, certified, bits, n_terms)


def verify_functional_equation(slope: SlopeSpec, digits, b: int, a: int,
                               m: int, bits: int = DEFAULT_BITS) -> RealInterval:
    """Residual enclosure of the shift relation at index m; must contain 0.

    The left side is the direct evaluation of the full series; the right
    side is sigma_m/(1-gamma_m) plus the transferred series with weights
    (gamma_m, gamma_{m-1}), slope shifted by m, and digits b_{m+1}, ...
    Both the running product Pi_{m-1} and the composed gamma values are
    recomputed two ways and compared exactly before evaluation.
    """
    assert m >= 1
    provider = as_provider(slope, digits)
    sg = SigmaGamma(slope, provider, b, a)
    sg.ensure(m + 3)
    conv, seq = sg.conv, sg.seq
    beta, alpha = sg.beta, sg.alpha
    g_m, g_m1 = sg.gamma(m), sg.gamma(m - 1)

    pi = Fraction(1)
    for h in range(m):
        pi *= sg.gamma(h) ** (conv.a(h + 1) - provider.digit(h + 1))
    assert pi == beta ** (seq.r(m) + conv.q(m - 1) - 1) \
        * alpha ** (seq.r_tilde(m) + conv.p(m - 1) - 1)
    coef = Fraction(-1) ** m * (1 - beta) * alpha * pi / ((1 - g_m) * g_m1)

    slope_m = slope.shift(m)
    conv_m = Convergents(slope_m)
    for h in range(3):
        assert g_m ** conv_m.q(h) * g_m1 ** conv_m.p(h) == sg.gamma(m + h), h

    lhs = eval_direct(
        EvalRequest.from_integers(slope, provider, b, a, target_bits=bits),
        pick_n_terms(slope, beta, alpha, bits),
    )
    inner_bits = bits + 8
    n_inner = pick_n_terms(slope_m, g_m, g_m1, inner_bits)
    k_need = 1
    while conv_m.q(k_need) <= n_inner + 1:
        k_need += 1
    shifted = [provider.digit(m + 1 + j) for j in range(k_need)]
    transfer = None
    if shifted and shifted[0] >= conv_m.a(1):
        # The shifted suffix may overflow the canonical first-digit cap
        # (b_{m+1} = a_{m+1} is admissible mid-sequence).  The carry
        # identity a'_1 delta'_0 = delta'_1 + 1 rewrites the suffix as
        # the canonical list (0, b_{m+2}+1, b_{m+3}, ...); on the series
        # side the rewrite multiplies the leading term by beta'^{-q'_1}
        # and every later term by alpha'^{p'_1}, which is applied below.
        assert shifted[0] == conv_m.a(1)
        carry = (shifted[1] if len(shifted) > 1 else 0) + 1
        canon = [0, carry] + shifted[2:]
        check_digits(conv_m, canon)  # a cascading carry is out of scope
        q1, p1 = conv_m.q(1), conv_m.p(1)
        gp0 = g_m
        gp1 = g_m ** q1 * g_m1 ** p1
        lead = ((1 - g_m) / g_m) * g_m ** (q1 + 1) * g_m1 ** p1 \
            / ((1 - gp1) * (1 - gp0))
        transfer = (lead * (g_m ** -q1 - g_m1 ** p1), g_m1 ** p1)
        shifted = canon
    inner = eval_direct(
        EvalRequest(slope_m, InterceptSpec.formal_digits(shifted), g_m, g_m1,
                    target_bits=inner_bits),
        n_inner,
    )
    if transfer is not None:
        inner = inner * transfer[1] + transfer[0]
    rhs = inner * coef + sg.sigma(m) / (1 - g_m)
    return lhs - rhs


@dataclass
class ExponentReport:
    """Finite-depth exponent data; estimates are tail-window maxima."""

    route: str
    depth: int
    window_skip: int
    values: Dict[str, List[Optional[float]]]
    maxima: Dict[str, Optional[float]]
    estimate: Optional[float]
    notes: List[str] = field(default_factory=list)


def _ratio(num: int, den: int) -> float:
    if num.bit_length() < 512 and den.bit_length() < 512:
        return num / den
    return 2.0 ** (log2_int(num) - log2_int(den))


def _window_start(count: int, skip: int) -> int:
    # a fixed skip cannot estimate a limsup when the transient decays
    # slowly, so the window is the trailing half, never less than skip
    return max(skip, count // 2)


def _window_max(vals: List[Optional[float]], skip: int) -> Optional[float]:
    window = [v for v in vals[_window_start(len(vals), skip):] if v is not None]
    return max(window) if window else None


def exponent_by_formula(slope: SlopeSpec, digits, K: int,
                        window_skip: int = WINDOW_SKIP) -> ExponentReport:
    """Per-index exponent contributions from the digit data alone.

    nu_k(1) = 2 + t_k/r_{k+1} needs positive digit gaps at k+1 and k+2;
    nu_k(2) = 2 + r_k/(r_{k+1}+t_k) needs one at k+2;
    nu_k(3) = 1 + q_{k+1}/(r_{k+1}+q_k) and nu_k(4) = 1 + r_{k+2}/q_{k+1}
    are unconditional.  The reported estimate is the maximum over the
    trailing half of the index range (never starting before window_skip);
    families whose condition fails everywhere in the window are flagged
    instead of guessed.
    """
    provider = as_provider(slope, digits)
    conv = provider.conv
    seq = DerivedSequences(provider)
    conv.ensure(K + 3)
    values: Dict[str, List[Optional[float]]] = {
        "nu1": [], "nu2": [], "nu3": [], "nu4": [],
    }
    for k in range(K + 1):
        gap1 = conv.a(k + 1) - provider.digit(k + 1)
        gap2 = conv.a(k + 2) - provider.digit(k + 2)
        values["nu1"].append(
            2 + _ratio(seq.t(k), seq.r(k + 1)) if gap1 >= 1 and gap2 >= 1 else None
        )
        values["nu2"].append(
            2 + _ratio(seq.r(k), seq.r(k + 1) + seq.t(k)) if gap2 >= 1 else None
        )
        values["nu3"].append(1 + _ratio(conv.q(k + 1), seq.r(k + 1) + conv.q(k)))
        values["nu4"].append(1 + _ratio(seq.r(k + 2), conv.q(k + 1)))
    maxima: Dict[str, Optional[float]] = {}
    notes: List[str] = []
    for name, seq_vals in values.items():
        maxima[name] = _window_max(seq_vals, window_skip)
        if maxima[name] is None:
            notes.append(
                f"{name} ineligible beyond depth {_window_start(len(seq_vals), window_skip)}"
            )
    eligible = [v for v in maxima.values() if v is not None]
    return ExponentReport(
        route="formula",
        depth=K,
        window_skip=window_skip,
        values=values,
        maxima=maxima,
        estimate=max(eligible) if eligible else None,
        notes=notes,
    )


def exponent_by_convergents(stream, J: int, b: int,
                            window_skip: int = WINDOW_SKIP) -> ExponentReport:
    """Exponent from the growth of the output expansion's denominators.

    Builds log Q_j from the contracted elements (seed Q_0 = b-1, so each
    convergent is the (b-1)-scaled one) and reports
    1 + max_j log Q_{j+1} / log Q_j over the tail window.  `stream` is a
    PartialQuotientStream or any sequence of elements (ints, Fractions,
    or float log2 magnitudes).
    """
    assert J >= 2
    elems = stream.take(J + 1) if hasattr(stream, "take") else list(stream)[: J + 1]
    logs: List[float] = []
    for x in elems:
        if isinstance(x, float):
            logs.append(x)
        elif isinstance(x, Fraction):
            logs.append(log2_frac(x))
        else:
            logs.append(log2_int(x))
    lq_prev, lq = -math.inf, log2_int(b - 1)
    lqs = [lq]
    for lx in logs:
        lq_prev, lq = lq, logaddexp2(lx + lq, lq_prev)
        lqs.append(lq)
    ratios: List[Optional[float]] = [
        lqs[j + 1] / lqs[j] if lqs[j] > 0 else None for j in range(len(lqs) - 1)
    ]
    mx = _window_max(ratios, window_skip)
    return ExponentReport(
        route="convergents",
        depth=len(ratios) - 1,
        window_skip=window_skip,
        values={"log_q_ratio": ratios},
        maxima={"log_q_ratio": mx},
        estimate=1 + mx if mx is not None else None,
    )


# -- signed-log sums for the distance to the scaled approximants ---------


class SignedLog(NamedTuple):
    sign: int
    log2: float


SL_ZERO = SignedLog(0, -math.inf)


def sl_add(u: SignedLog, v: SignedLog) -> SignedLog:
    if u.sign == 0:
        return v
    if v.sign == 0:
        return u
    if u.sign == v.sign:
        return SignedLog(u.sign, logaddexp2(u.log2, v.log2))
    if u.log2 == v.log2:
        return SL_ZERO
    if u.log2 > v.log2:
        return SignedLog(u.sign, logsubexp2(u.log2, v.log2))
    return SignedLog(v.sign, logsubexp2(v.log2, u.log2))


class GapReport(NamedTuple):
    k: int
    which: str
    sign: int
    log2_gap: float
    exponent: int
    log2_base: float
    offset: float


class _GapContext:
    """Float log2 views of the exact quantities entering Gamma_h, Delta_h."""

    def __init__(self, slope: SlopeSpec, digits, b: int, a: int):
        self.provider = as_provider(slope, digits)
        self.conv = self.provider.conv
        self.seq = DerivedSequences(self.provider)
        self.lb = -log2_int(b)
        self.la = -log2_int(a)
        self.lpre = log2_int(b - 1)    # (1-beta)/beta for beta = 1/b

    def gap(self, k: int) -> int:
        return self.conv.a(k) - self.provider.digit(k)

    def lgamma(self, h: int) -> float:
        return float(self.conv.q(h)) * self.lb + float(self.conv.p(h)) * self.la

    def l1mg(self, h: int) -> float:
        lg = self.lgamma(h)
        return math.log1p(-(2.0 ** lg)) / LN2

    def lpow(self, e_b: int, e_a: int) -> float:
        return float(e_b) * self.lb + float(e_a) * self.la


def _gamma_log(ctx: _GapContext, h: int) -> Tuple[SignedLog, int]:
    """(Gamma_h as a signed log, indices consumed: 1 or 2 for a pair)."""
    conv, seq = ctx.conv, ctx.seq
    sign = -1 if h % 2 else 1
    base = ctx.lpre + ctx.lpow(seq.r(h + 1) + conv.q(h),
                               seq.r_tilde(h + 1) + conv.p(h))
    if ctx.gap(h + 2) == 0:
        # the next term has the same power pair and opposite sign; their
        # sum has the closed form with the gamma_h - gamma_{h+2} factor
        lg = base + logsubexp2(ctx.lgamma(h), ctx.lgamma(h + 2)) \
            - ctx.l1mg(h) - ctx.l1mg(h + 1) - ctx.l1mg(h + 2)
        return SignedLog(sign, lg), 2
    lg = base - ctx.l1mg(h + 1) - ctx.l1mg(h)
    return SignedLog(sign, lg), 1


def _delta_log(ctx: _GapContext, h: int) -> SignedLog:
    conv, seq = ctx.conv, ctx.seq
    sign = -1 if h % 2 else 1
    gap2 = ctx.gap(h + 2)
    denom = ctx.l1mg(h + 1) + ctx.l1mg(h)
    lx = ctx.lpow(seq.r(h + 1) + conv.q(h + 1) + conv.q(h),
                  seq.r_tilde(h + 1) + conv.p(h + 1) + conv.p(h))
    if gap2 == 1:
        # the two power products coincide, so the bracket collapses to
        # the first one times gamma_h
        return SignedLog(sign, ctx.lpre + lx + ctx.lgamma(h) - denom)
    if gap2 == 0:
        # factoring the smaller power out leaves gamma_h + gamma_{h+1} - 1
        ly = ctx.lpow(seq.r(h + 2) + conv.q(h + 1),
                      seq.r_tilde(h + 2) + conv.p(h + 1))
        s = 2.0 ** ctx.lgamma(h) + 2.0 ** ctx.lgamma(h + 1)
        if s == 1.0:
            return SL_ZERO
        if s < 1.0:
            return SignedLog(-sign, ctx.lpre + ly + math.log1p(-s) / LN2 - denom)
        return SignedLog(sign, ctx.lpre + ly + math.log2(s - 1.0) - denom)
    # gap2 >= 2: factoring the larger power out leaves
    # 1 - gamma_{h+1}**(gap2-1) * (1-gamma_h), strictly inside (0, 1)
    u = (gap2 - 1) * ctx.lgamma(h + 1) + ctx.l1mg(h)
    return SignedLog(sign, ctx.lpre + lx + math.log1p(-(2.0 ** u)) / LN2 - denom)


def gamma_term(sg: SigmaGamma, h: int) -> Fraction:
    """Gamma_h exactly: the h-th accelerated-series term."""
    conv, seq = sg.conv, sg.seq
    sg.ensure(h + 1)
    num = sg.beta ** (seq.r(h + 1) + conv.q(h)) * sg.alpha ** (seq.r_tilde(h + 1) + conv.p(h))
    pre = (1 - sg.beta) / sg.beta
    return Fraction(-1) ** h * pre * num / ((1 - sg.gamma(h + 1)) * (1 - sg.gamma(h)))


def delta_term(sg: SigmaGamma, h: int) -> Fraction:
    """Delta_h exactly: the h-th term of the distance to the scaled (3)_h."""
    conv, seq = sg.conv, sg.seq
    sg.ensure(h + 2)
    x = sg.beta ** (seq.r(h + 1) + conv.q(h + 1) + conv.q(h)) \
        * sg.alpha ** (seq.r_tilde(h + 1) + conv.p(h + 1) + conv.p(h))
    y = sg.beta ** (seq.r(h + 2) + conv.q(h + 1)) \
        * sg.alpha ** (seq.r_tilde(h + 2) + conv.p(h + 1)) * (1 - sg.gamma(h))
    pre = (1 - sg.beta) / sg.beta
    return Fraction(-1) ** h * pre * (x - y) / ((1 - sg.gamma(h + 1)) * (1 - sg.gamma(h)))


def approximant_gap(slope: SlopeSpec, digits, b: int, a: int, k: int,
                    which: str = "3", terms: int = 24) -> GapReport:
    """Signed log2 of xi_s minus the scaled family value, summed termwise.

    which="4" measures against (4)_{k-1} (sum of Gamma_h, h >= k, with
    equal-exponent pairs combined in closed form); which="3" against
    (3)_k (sum of Delta_h).  The expected decay exponent comes from the
    same digit data, so `offset` isolates the bounded factor.
    """
    if which not in ("3", "4"):
        raise ValueError("which must be '3' or '4'")
    ctx = _GapContext(slope, digits, b, a)
    acc = SL_ZERO
    h = k
    used = 0
    while used < terms:
        if which == "4":
            term, step = _gamma_log(ctx, h)
        else:
            term, step = _delta_log(ctx, h), 1
        acc = sl_add(acc, term)
        h += step
        used += 1
        if term.sign != 0 and acc.sign != 0 and term.log2 < acc.log2 - 80:
            break
    u, v = error_exponents(k, slope, ctx.provider)
    if which == "4":
        exponent = u + ctx.conv.q(k)
    else:
        exponent = v + ctx.conv.q(k + 1)
    th = theta_interval(slope, 64).mid()
    log2_base = ctx.lb + float(th) * ctx.la
    offset = acc.log2 - float(exponent) * log2_base
    return GapReport(k, which, acc.sign, acc.log2, exponent, log2_base, offset)


def floor_theta_plus_rho(slope: SlopeSpec, intercept: InterceptSpec,
                         bits: int = DEFAULT_BITS) -> int:
    """floor(theta + rho) in {0, 1}, decided exactly when possible.

    Intercepts living in the slope's field (rationals, formal digits,
    matching surds) are decided exactly; a foreign surd falls back to
    interval comparison with doubling precision and errors out at the cap
    if theta + rho sits on the integer boundary.
    """
    th = slope.theta()
    exact = intercept.exact_value(slope)
    if exact is not None:
        return (th + exact).floor()
    work = 64
    cap = min(bits_cap(BITS_HARD_CAP), max(bits, 64))
    while True:
        s = th.interval(work) + intercept.numeric_value(slope, work)
        nlo, nhi = s.floor_pair()
        if nlo == nhi:
            return nlo
        if work >= cap:
            raise UndecidableDigit(
                f"floor(theta + rho) undecided at {work} bits"
            )
        work = min(2 * work, cap) if work < cap else work
