"""Numeration of intercepts in the base delta_k = q_k*theta - p_k.

An intercept rho in [0, 1) expands as rho = theta + sum_j b_{j+1} delta_j
with digits constrained by 0 <= b_1 <= a_1 - 1, 0 <= b_k <= a_k and
b_{k+1} = a_{k+1} forcing b_k = 0.  Points of theta*Z + Z can carry two
admissible expansions; those raise UndecidableDigit instead of guessing.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

from .cf import Convergents, SlopeSpec
from .errors import ParseError, UndecidableDigit
from .numbers import QuadraticNumber, RealInterval, bits_cap

DIGIT_BITS_DEFAULT = 4096


class InterceptSpec:
    """Intercept rho given as a rational, a surd, or formal digits."""

    __slots__ = ("kind", "value", "P", "D", "Q", "digits")

    def __init__(self, kind, value=None, P=None, D=None, Q=None, digits=None):
        self.kind = kind
        self.value = value
        self.P = P
        self.D = D
        self.Q = Q
        self.digits = digits

    @classmethod
    def rational(cls, value) -> "InterceptSpec":
        value = Fraction(value)
        if not (0 <= value < 1):
            raise ParseError("intercept must lie in [0, 1)")
        return cls("rational", value=value)

    @classmethod
    def surd(cls, P: int, D: int, Q: int) -> "InterceptSpec":
        P, D, Q = int(P), int(D), int(Q)
        if D <= 0:
            raise ParseError("intercept surd needs D > 0")
        if Q == 0:
            raise ParseError("intercept surd needs Q != 0")
        val = QuadraticNumber.from_surd(P, D, Q)
        if not (0 <= val and val < 1):
            raise ParseError("intercept must lie in [0, 1)")
        return cls("surd", P=P, D=D, Q=Q)

    @classmethod
    def formal_digits(cls, digits: Sequence[int]) -> "InterceptSpec":
        digits = [int(b) for b in digits]
        if any(b < 0 for b in digits):
            raise ParseError("digits must be non-negative")
        return cls("digits", digits=digits)

    def is_formal(self) -> bool:
        return self.kind == "digits"

    def exact_value(self, slope: SlopeSpec) -> Optional[QuadraticNumber]:
        """Exact intercept in the slope's field, or None if incompatible."""
        if self.kind == "rational":
            return QuadraticNumber(self.value)
        if self.kind == "surd":
            val = QuadraticNumber.from_surd(self.P, self.D, self.Q)
            theta = slope.theta()
            if val.coef == 0 or val.d == theta.d:
                return val
            return None
        return intercept_from_digits(slope, self.digits)

    def numeric_value(self, slope: SlopeSpec, bits: int) -> RealInterval:
        exact = self.exact_value(slope)
        if exact is not None:
            return exact.interval(bits)
        return QuadraticNumber.from_surd(self.P, self.D, self.Q).interval(bits)

    def to_text(self) -> str:
        if self.kind == "rational":
            return f"rat({self.value})"
        if self.kind == "surd":
            return f"surd({self.P},{self.D},{self.Q})"
        return "digits[" + ",".join(str(b) for b in self.digits) + "]"

    def __repr__(self):
        return f"InterceptSpec({self.to_text()})"


def parse_intercept(text: str) -> InterceptSpec:
    """Parse rat(p/q), surd(P,D,Q) or digits[b1,...], optionally rho: prefixed."""
    text = text.strip()
    if text.startswith("rho:"):
        text = text[4:].strip()
    if text.startswith("rat(") and text.endswith(")"):
        body = text[4:-1].strip()
        try:
            return InterceptSpec.rational(Fraction(body))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational {body!r}") from exc
    if text.startswith("surd(") and text.endswith(")"):
        body = text[5:-1]
        try:
            parts = [int(tok.strip()) for tok in body.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad surd body {body!r}") from exc
        if len(parts) != 3:
            raise ParseError("intercept surd needs three integers")
        return InterceptSpec.surd(*parts)
    if text.startswith("digits[") and text.endswith("]"):
        body = text[7:-1].strip()
        if not body:
            return InterceptSpec.formal_digits([])
        try:
            digits = [int(tok.strip()) for tok in body.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad digit list {body!r}") from exc
        return InterceptSpec.formal_digits(digits)
    raise ParseError(f"unknown intercept syntax {text!r}")


def check_digits(conv: Convergents, digits: Sequence[int],
                 tail: bool = False) -> None:
    """Check the admissibility constraints; raises ParseError on violation.

    tail=True accepts a shifted suffix of an admissible sequence, whose
    first digit may reach a_1 (canonical lists stop at a_1 - 1).
    """
    prev = 0
    for k, b in enumerate(digits, start=1):
        if b < 0:
            raise ParseError(f"digit b_{k} = {b} is negative")
        if k == 1:
            cap = conv.a(1) if tail else conv.a(1) - 1
            if b > cap:
                raise ParseError(f"digit b_1 = {b} exceeds {cap}")
        else:
            if b > conv.a(k):
                raise ParseError(f"digit b_{k} = {b} exceeds a_{k} = {conv.a(k)}")
            if b == conv.a(k) and prev != 0:
                raise ParseError(
                    f"digit b_{k} = a_{k} = {b} requires b_{k - 1} = 0, got {prev}"
                )
        prev = b


def validate_digits(slope, digits: Sequence[int]) -> bool:
    """True iff the digit prefix is admissible for the slope."""
    conv = slope if isinstance(slope, Convergents) else Convergents(slope)
    try:
        check_digits(conv, digits)
    except ParseError:
        return False
    return True


def intercept_from_digits(slope: SlopeSpec, digits: Sequence[int],
                          tail: bool = False) -> QuadraticNumber:
    """rho = theta + sum_j b_{j+1} delta_j for a finite digit list."""
    conv = Convergents(slope)
    check_digits(conv, digits, tail=tail)
    rho = conv.theta()
    for j, b in enumerate(digits):
        if b:
            rho = rho + b * conv.delta(j)
    return rho


class DigitProvider:
    """Extends the digit list b_1, b_2, ... of an intercept on demand."""

    def __init__(self, slope: SlopeSpec, intercept: InterceptSpec):
        self.slope = slope
        self.intercept = intercept
        self.conv = Convergents(slope)
        self._digits: list[int] = []
        if intercept.kind == "digits":
            check_digits(self.conv, intercept.digits)
            self._mode = "list"
        else:
            exact = intercept.exact_value(slope)
            if exact is not None:
                self._mode = "exact"
                self._y = exact - self.conv.theta()
            else:
                self._mode = "interval"

    def ensure(self, K: int) -> None:
        if len(self._digits) >= K:
            return
        if self._mode == "list":
            base = self.intercept.digits
            while len(self._digits) < K:
                k = len(self._digits) + 1
                self._digits.append(base[k - 1] if k <= len(base) else 0)
        elif self._mode == "exact":
            self._extend_exact(K)
        else:
            target = max(K, 2 * len(self._digits), 8)
            self._digits = _digits_by_interval(self.slope, self.intercept, target)

    def _extend_exact(self, K: int) -> None:
        conv = self.conv
        conv.ensure(K + 1)
        m = len(self._digits) + 1
        prev = self._digits[-1] if self._digits else 0
        y = self._y
        while m <= K:
            d_prev = conv.delta(m - 1)
            w_abs = -(conv.delta(m) / d_prev)
            t = y / d_prev - w_abs
            ct = -((-t).floor())
            c = ct if ct > 0 else 0
            cap = conv.a(1) - 1 if m == 1 else conv.a(m) - (1 if prev >= 1 else 0)
            if t == ct and ct >= 0 and c + 1 <= cap:
                raise UndecidableDigit(
                    f"intercept admits two digit expansions at index {m}; "
                    "supply formal digits instead"
                )
            assert 0 <= c <= cap, (m, c, cap)
            self._digits.append(c)
            if c:
                y = y - c * d_prev
            prev = c
            m += 1
        self._y = y

    def digit(self, k: int) -> int:
        if k < 1:
            raise IndexError("digits start at k = 1")
        self.ensure(k)
        return self._digits[k - 1]

    def digits(self, K: int) -> list[int]:
        self.ensure(K)
        return self._digits[:K]


def _digits_by_interval(
    slope: SlopeSpec, intercept: InterceptSpec, K: int, max_bits: Optional[int] = None
) -> list[int]:
    """Digit prefix via interval arithmetic with doubling precision."""
    if max_bits is None:
        max_bits = bits_cap(DIGIT_BITS_DEFAULT)
    conv = Convergents(slope)
    conv.ensure(K + 1)
    theta = conv.theta()
    bits = 128
    while True:
        rho_iv = intercept.numeric_value(slope, bits)
        y = rho_iv - theta.interval(bits)
        digits: list[int] = []
        prev = 0
        ok = True
        for m in range(1, K + 1):
            d_prev = conv.delta(m - 1)
            w_abs = -(conv.delta(m) / d_prev)
            t = y / d_prev.interval(bits) - w_abs.interval(bits)
            n_lo = -((-t.lo).numerator // (-t.lo).denominator)  # ceil
            n_hi = -((-t.hi).numerator // (-t.hi).denominator)
            cap = conv.a(1) - 1 if m == 1 else conv.a(m) - (1 if prev >= 1 else 0)
            if n_lo != n_hi:
                ok = False
                break
            c = n_lo if n_lo > 0 else 0
            if t.lo == t.hi == n_lo and c + 1 <= cap:
                raise UndecidableDigit(
                    f"intercept admits two digit expansions at index {m}"
                )
            if not 0 <= c <= cap:
                ok = False  # enclosure too loose to trust
                break
            digits.append(c)
            if c:
                y = y - RealInterval.point(c) * d_prev.interval(bits)
            prev = c
        if ok:
            return digits
        if bits >= max_bits:
            raise UndecidableDigit(
                f"cannot separate digit b_{m} at {max_bits} bits; "
                "raise HM_MAX_BITS or supply formal digits"
            )
        bits = min(2 * bits, max_bits)


def digit_list(slope: SlopeSpec, intercept: InterceptSpec, K: int) -> list[int]:
    """First K digits b_1..b_K of the intercept's expansion."""
    return DigitProvider(slope, intercept).digits(K)


def as_provider(slope: SlopeSpec, digits) -> DigitProvider:
    """Coerce an InterceptSpec, a digit list, or a provider to a DigitProvider."""
    if isinstance(digits, DigitProvider):
        return digits
    if isinstance(digits, InterceptSpec):
        return DigitProvider(slope, digits)
    return DigitProvider(slope, InterceptSpec.formal_digits(list(digits)))


class DerivedSequences:
    """t_k, t~_k (digit weight sums) and r_k = q_k - t_k, r~_k = p_k - t~_k.

    Extended lazily from a digit provider; both defining routes are kept in
    lockstep as a consistency check.
    """

    def __init__(self, provider: DigitProvider):
        self.provider = provider
        self.conv = provider.conv
        self._t = [0]
        self._tt = [0]
        self._r = [1]
        self._rt = [0]

    def ensure(self, K: int) -> None:
        conv = self.conv
        while len(self._t) <= K:
            k = len(self._t)
            b = self.provider.digit(k)
            t = self._t[-1] + b * conv.q(k - 1)
            tt = self._tt[-1] + b * conv.p(k - 1)
            self._t.append(t)
            self._tt.append(tt)
            r = conv.q(k) - t
            rt = conv.p(k) - tt
            # dual route for r via the digit recurrence
            r2 = self._r[-1] + (conv.a(k) - b - 1) * conv.q(k - 1) + conv.q(k - 2)
            rt2 = self._rt[-1] + (conv.a(k) - b - 1) * conv.p(k - 1) + conv.p(k - 2)
            assert r == r2 and rt == rt2, f"derived sequence mismatch at k={k}"
            assert 0 <= t < conv.q(k) and 1 <= r <= conv.q(k)
            self._r.append(r)
            self._rt.append(rt)

    def t(self, k: int) -> int:
        self.ensure(k)
        return self._t[k]

    def t_tilde(self, k: int) -> int:
        self.ensure(k)
        return self._tt[k]

    def r(self, k: int) -> int:
        self.ensure(k)
        return self._r[k]

    def r_tilde(self, k: int) -> int:
        self.ensure(k)
        return self._rt[k]


def derived_sequences(
    slope: SlopeSpec, digits: Sequence[int]
) -> tuple[list[int], list[int], list[int], list[int]]:
    """One-shot (t, t~, r, r~) lists for k = 0..len(digits)."""
    provider = DigitProvider(slope, InterceptSpec.formal_digits(list(digits)))
    seq = DerivedSequences(provider)
    K = len(digits)
    seq.ensure(K)
    return seq._t[: K + 1], seq._tt[: K + 1], seq._r[: K + 1], seq._rt[: K + 1]
