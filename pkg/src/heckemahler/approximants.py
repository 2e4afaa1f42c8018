"""Sigma/gamma data and the five families of approximating fractions.

Everything here is exact rational arithmetic.  The same five fraction
families are produced by three independent routes and cross-checked:

  * word route: numerators are values of R/T/M/V words, denominators are
    closed-form weight differences;
  * farey route: mediant chain driven by the element quads, seeded with
    the two formal anchors (b-1)/0 and 0/(b-1);
  * matrix route: plain continued-fraction recurrences over the raw
    element stream, seeded so every convergent lands on the family cycle.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .cf import SlopeSpec
from .expansion import ElementSource
from .numbers import ExactFraction
from .ostrowski import DerivedSequences, DigitProvider, as_provider
from .words import build_word_family, build_word_stats, word_value

FAMILY_NAMES = ("1", "2-1", "2", "3", "4")


class SigmaGamma:
    """gamma_k = beta^{q_k} alpha^{p_k} and the partial sums sigma_k.

    sigma_k is the weighted sum over the first q_k letters of the
    periodised word V_k^infinity, i.e. over the letters of V_k itself.
    Each recurrence step is checked against the telescoped closed form,
    whose right side uses the derived-sequence exponent identity
    r_{k+1} + q_k - 1 and r~_{k+1} + p_k - 1.
    """

    def __init__(self, slope: SlopeSpec, digits, b: int, a: int):
        assert b >= 2 and a >= 1
        self.slope = slope
        self.provider = as_provider(slope, digits)
        self.conv = self.provider.conv
        self.seq = DerivedSequences(self.provider)
        self.b = b
        self.a = a
        self.beta = Fraction(1, b)
        self.alpha = Fraction(1, a)
        self._sigma: List[Fraction] = [Fraction(0)]
        self._gamma: List[Fraction] = [self.beta]

    def gamma(self, k: int) -> Fraction:
        if k == -1:
            return self.alpha
        self.ensure(k)
        return self._gamma[k]

    def sigma(self, k: int) -> Fraction:
        self.ensure(k)
        return self._sigma[k]

    def ensure(self, K: int) -> None:
        while len(self._sigma) <= K:
            self._step()

    def _step(self) -> None:
        conv, seq = self.conv, self.seq
        k = len(self._sigma) - 1
        gap = conv.a(k + 1) - self.provider.digit(k + 1)
        g_next = self.beta ** conv.q(k + 1) * self.alpha ** conv.p(k + 1)
        if k == 0:
            s_next = self.beta ** gap * self.alpha
        else:
            g, gm1 = self._gamma[k], self._gamma[k - 1]
            coef = (1 - g_next - g ** gap * (1 - gm1)) / (1 - g)
            s_next = coef * self._sigma[k] + g ** gap * self._sigma[k - 1]
        lhs = (1 - self._gamma[k]) * s_next - (1 - g_next) * self._sigma[k]
        e = seq.r(k + 1) + conv.q(k) - 1
        et = seq.r_tilde(k + 1) + conv.p(k) - 1
        rhs = (-1) ** k * (1 - self.beta) * self.alpha * self.beta ** e * self.alpha ** et
        assert lhs == rhs, k
        self._gamma.append(g_next)
        self._sigma.append(s_next)

    def direct_check(self, K: int, max_len: int = 4096) -> int:
        """Recompute sigma_k by summing V_k letters for every q_k <= max_len.

        Returns the number of indices checked.
        """
        self.ensure(K)
        k_top = K
        while k_top >= 0 and self.conv.q(k_top) > max_len:
            k_top -= 1
        if k_top < 0:
            return 0
        fam = build_word_family(self.slope, self.provider, k_top, max_len=max_len + 1)
        checked = 0
        for k in range(k_top + 1):
            val = word_value(fam.V(k), self.b, self.a)
            direct = Fraction(val) * self._gamma[k]
            assert direct == self._sigma[k], k
            checked += 1
        return checked


def sigma_gamma(slope: SlopeSpec, digits, b: int, a: int, K: int,
                max_len: int = 4096) -> SigmaGamma:
    """Exact sigma_k, gamma_k for k = 0..K with the direct-summation check."""
    sg = SigmaGamma(slope, digits, b, a)
    sg.ensure(K)
    sg.direct_check(K, max_len=max_len)
    return sg


def fraction_families(slope: SlopeSpec, digits, b: int, a: int, K: int,
                      max_bits: Optional[int] = None) -> Dict[str, List[ExactFraction]]:
    """Word-value route for the five families, indices k = 0..K.

    Entry lists are keyed "1", "2-1", "2", "3", "4"; list position j holds
    index k = j.  Numerators and denominators are kept unreduced so the
    farey cross-check can compare componentwise.
    """
    provider = as_provider(slope, digits)
    stats = build_word_stats(slope, provider, K + 1, b, a, max_bits=max_bits)
    alg, conv, seq = stats.alg, stats.conv, stats.seq
    out: Dict[str, List[ExactFraction]] = {name: [] for name in FAMILY_NAMES}
    bm1 = b - 1
    for k in range(K + 1):
        rk, rk1 = stats.R_(k), stats.R_(k + 1)
        tk, mk, vk1 = stats.T_(k), stats.M(k), stats.V(k + 1)
        w_r1 = alg.weight(rk1)
        w_r0 = alg.weight(rk)
        f1 = ExactFraction(bm1 * (rk1.val - rk.val), w_r1 - w_r0)
        rt = alg.concat(rk1, tk)
        f2 = ExactFraction(bm1 * rt.val, alg.weight(rt) - 1)
        f21 = ExactFraction(f2.num - f1.num, f2.den - f1.den)
        rm = alg.concat(rk1, mk)
        f3 = ExactFraction(bm1 * (rm.val - rk1.val),
                           w_r1 * (b ** conv.q(k) * a ** conv.p(k) - 1))
        f4 = ExactFraction(bm1 * vk1.val, alg.weight(vk1) - 1)
        assert w_r1 == b ** seq.r(k + 1) * a ** seq.r_tilde(k + 1)
        for name, fr in zip(FAMILY_NAMES, (f1, f21, f2, f3, f4)):
            out[name].append(fr)
    return out


def farey_chain(slope: SlopeSpec, digits, b: int, a: int, K: int,
                cross_check: bool = True,
                max_bits: Optional[int] = None) -> Dict[str, List[ExactFraction]]:
    """Element-quad mediant route with the formal anchors.

    (3)_{-1} = (b-1)/0 and (4)_{-1} = 0/(b-1); each index k then updates
      (1)_k    = c_k * (4)_{k-1} (+) (3)_{k-1}
      (2-1)_k  = d_k * (1)_k     (+) (4)_{k-1}
      (2)_k    = 1   * (2-1)_k   (+) (1)_k
      (3)_k    = e_k * (2)_k     (+) (2-1)_k
      (4)_k    = f_k * (3)_k     (+) (2)_k
    where (+) is componentwise.  With cross_check the result is compared
    entry for entry against the word route.
    """
    provider = as_provider(slope, digits)
    src = ElementSource(slope, provider, b, a, mode="exact", max_bits=max_bits)
    prev3 = ExactFraction(b - 1, 0)
    prev4 = ExactFraction(0, b - 1)
    out: Dict[str, List[ExactFraction]] = {name: [] for name in FAMILY_NAMES}
    for k in range(K + 1):
        qd = src.quad(k)
        f1 = prev4.farey(qd.c, prev3)
        f21 = f1.farey(qd.d, prev4)
        f2 = f21.farey(1, f1)
        f3 = f2.farey(qd.e, f21)
        f4 = f3.farey(qd.f, f2)
        for name, fr in zip(FAMILY_NAMES, (f1, f21, f2, f3, f4)):
            out[name].append(fr)
        prev3, prev4 = f3, f4
    if cross_check:
        ref = fraction_families(slope, provider, b, a, K, max_bits=max_bits)
        for name in FAMILY_NAMES:
            for k in range(K + 1):
                assert out[name][k] == ref[name][k], (name, k)
    return out


def _demote(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def matrix_convergents(elements: Sequence, b: int) -> Tuple[list, list]:
    """Numerators and denominators of [x_0; x_1, x_2, ...] scaled by b - 1.

    Seeds P_{-1} = b - 1, P_0 = 0, Q_{-1} = 0, Q_0 = b - 1, so successive
    convergents P_j / Q_j trace the family cycle (1)_0, (2-1)_0, (2)_0,
    (3)_0, (4)_0, (1)_1, ...  Returns (P, Q) with list position j + 1
    holding index j (position 0 is the seed j = -1).  Every step asserts
    the determinant Q_j P_{j-1} - Q_{j-1} P_j = +-(b-1)^2.
    """
    P: list = [b - 1, 0]
    Q: list = [0, b - 1]
    det = (b - 1) ** 2
    for x in elements:
        P.append(x * P[-1] + P[-2])
        Q.append(x * Q[-1] + Q[-2])
        det = -det
        assert Q[-1] * P[-2] - Q[-2] * P[-1] == det
    return [_demote(v) for v in P], [_demote(v) for v in Q]


def identity_difference(k: int, sg: SigmaGamma,
                        fractions: Dict[str, List[ExactFraction]]) -> bool:
    """Exact closed-form gap between values of (3)_k and (4)_{k-1}.

    (3)_k - (4)_{k-1} = (-1)^k (b-1)^2 beta^{r_{k+1}+q_k} alpha^{r~_{k+1}+p_k}
                        / (1 - gamma_k).
    """
    f3 = fractions["3"][k].value()
    f4 = Fraction(0) if k == 0 else fractions["4"][k - 1].value()
    e = sg.seq.r(k + 1) + sg.conv.q(k)
    et = sg.seq.r_tilde(k + 1) + sg.conv.p(k)
    rhs = f4 + (-1) ** k * (sg.b - 1) ** 2 * sg.beta ** e * sg.alpha ** et / (1 - sg.gamma(k))
    return f3 == rhs


def error_exponents(k: int, slope: SlopeSpec, digits) -> Tuple[int, int]:
    """(u_k, v_k) controlling how fast (4)_{k-1} and (3)_k approach the target.

    The distance from the scaled (4)_{k-1} is comparable to
    (beta alpha^theta)^{u_k + q_k}, and from the scaled (3)_k to
    (beta alpha^theta)^{v_k + q_{k+1}}; the case split follows the digit
    gaps at k+2 and k+3.
    """
    provider = as_provider(slope, digits)
    conv = provider.conv
    seq = DerivedSequences(provider)
    conv.ensure(k + 3)
    gap2 = conv.a(k + 2) - provider.digit(k + 2)
    gap3 = conv.a(k + 3) - provider.digit(k + 3)
    u = seq.r(k + 1) if gap2 >= 1 else seq.r(k) + conv.q(k + 1)
    if gap2 >= 2:
        v = seq.r(k + 1) + conv.q(k)
    elif gap2 == 1:
        v = seq.r(k + 1) + 2 * conv.q(k) if gap3 >= 1 else seq.r(k + 1) + conv.q(k)
    else:
        v = seq.r(k)
    return u, v
