"""Continued fraction machinery for slopes in (0, 1).

A slope is given either by an eventually periodic list of partial quotients
or as a quadratic surd (P + sqrt(D)) / Q.  Both expose exact values, exact
partial quotient streams, and shifted tails.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import isqrt
from typing import Iterator, Optional, Sequence

from .errors import ParseError
from .numbers import QuadraticNumber, RealInterval, floor_quadratic


class SlopeSpec:
    """Irrational slope theta in (0,1) described exactly.

    kind == "periodic": partial quotients are prefix followed by period
    repeated forever.
    kind == "surd": theta = (P + sqrt(D)) / Q with D > 0 non square and
    Q dividing D - P*P (normalised on construction).
    """

    __slots__ = ("kind", "prefix", "period", "P", "D", "Q")

    def __init__(self, kind, prefix=None, period=None, P=None, D=None, Q=None):
        self.kind = kind
        self.prefix = prefix
        self.period = period
        self.P = P
        self.D = D
        self.Q = Q

    @classmethod
    def periodic(cls, prefix: Sequence[int], period: Sequence[int]) -> "SlopeSpec":
        prefix = [int(a) for a in prefix]
        period = [int(a) for a in period]
        if not period:
            raise ParseError("period must be non-empty")
        if any(a < 1 for a in itertools.chain(prefix, period)):
            raise ParseError("partial quotients must be >= 1")
        return cls("periodic", prefix=prefix, period=period)

    @classmethod
    def surd(cls, P: int, D: int, Q: int) -> "SlopeSpec":
        P, D, Q = int(P), int(D), int(Q)
        if D <= 0 or isqrt(D) ** 2 == D:
            raise ParseError("D must be positive and not a perfect square")
        if Q == 0:
            raise ParseError("Q must be non-zero")
        if (D - P * P) % Q != 0:
            P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
        spec = cls("surd", P=P, D=D, Q=Q)
        theta = spec.theta()
        if not (0 < theta and theta < 1):
            raise ParseError("slope must lie strictly between 0 and 1")
        return spec

    def theta(self) -> QuadraticNumber:
        """Exact value of the slope."""
        if self.kind == "surd":
            return QuadraticNumber.from_surd(self.P, self.D, self.Q)
        h1, h2 = 1, 0
        k1, k2 = 0, 1
        for b in self.period:
            h1, h2 = b * h1 + h2, h1
            k1, k2 = b * k1 + k2, k1
        # purely periodic tail y = [period; period; ...], y > 1
        disc = (h1 - k2) * (h1 - k2) + 4 * k1 * h2
        y = QuadraticNumber(Fraction(h1 - k2, 2 * k1), Fraction(1, 2 * k1), disc)
        p1, p0 = 1, 0
        q1, q0 = 0, 1
        for a in self.prefix:
            p1, p0 = p0, a * p0 + p1
            q1, q0 = q0, a * q0 + q1
        return (y * p0 + p1) / (y * q0 + q1)

    def partial_quotients(self) -> Iterator[int]:
        """Infinite stream a_1, a_2, ... of the slope's partial quotients."""
        if self.kind == "periodic":
            yield from self.prefix
            while True:
                yield from self.period
            return
        P, D, Q = self.P, self.D, self.Q
        first = True
        while True:
            a = floor_quadratic(P, 1, D, Q)
            P = a * Q - P
            assert (D - P * P) % Q == 0
            Q = (D - P * P) // Q
            if first:
                assert a == 0, "slope must start below 1"
                first = False
            else:
                yield a

    def shift(self, m: int) -> "SlopeSpec":
        """Slope with partial quotients a_{m+1}, a_{m+2}, ..."""
        if m < 0:
            raise ValueError("shift needs m >= 0")
        if self.kind == "periodic":
            pre, per = list(self.prefix), list(self.period)
            if m <= len(pre):
                pre = pre[m:]
            else:
                r = (m - len(pre)) % len(per)
                pre = []
                per = per[r:] + per[:r]
            return SlopeSpec("periodic", prefix=pre, period=per)
        P, D, Q = self.P, self.D, self.Q
        for _ in range(m + 1):
            a = floor_quadratic(P, 1, D, Q)
            P = a * Q - P
            Q = (D - P * P) // Q
        # state is x_{m+1} = [a_{m+1}; ...]; the shifted slope is 1/x_{m+1}
        assert (D - P * P) % Q == 0
        return SlopeSpec("surd", P=-P, D=D, Q=(D - P * P) // Q)

    def to_text(self) -> str:
        if self.kind == "periodic":
            pre = ",".join(str(a) for a in self.prefix)
            per = ",".join(str(a) for a in self.period)
            return f"per:[{pre};{per}]"
        return f"surd:({self.P},{self.D},{self.Q})"

    def __repr__(self):
        return f"SlopeSpec({self.to_text()})"

    def __eq__(self, other):
        if not isinstance(other, SlopeSpec):
            return NotImplemented
        return self.to_text() == other.to_text()

    def __hash__(self):
        return hash(self.to_text())


class Convergents:
    """Lazily extended convergents p_k / q_k of a slope.

    Seeds p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1, so that
    p_{k+1} = a_{k+1} p_k + p_{k-1} and likewise for q.
    """

    def __init__(self, slope: SlopeSpec):
        self.slope = slope
        self._quotients = slope.partial_quotients()
        self._a = []  # a_1 at index 0
        self._p = [1, 0]  # p_{-1}, p_0
        self._q = [0, 1]
        self._theta: Optional[QuadraticNumber] = None

    def ensure(self, K: int) -> None:
        while len(self._a) < K:
            a = next(self._quotients)
            self._a.append(a)
            self._p.append(a * self._p[-1] + self._p[-2])
            self._q.append(a * self._q[-1] + self._q[-2])
            k = len(self._a) - 1  # new index is k + 1
            det = self._p[-2] * self._q[-1] - self._p[-1] * self._q[-2]
            assert det == (-1) ** (k + 1)

    def a(self, k: int) -> int:
        if k < 1:
            raise IndexError("partial quotients start at k = 1")
        self.ensure(k)
        return self._a[k - 1]

    def p(self, k: int) -> int:
        if k < -1:
            raise IndexError
        self.ensure(k)
        return self._p[k + 1]

    def q(self, k: int) -> int:
        if k < -1:
            raise IndexError
        self.ensure(k)
        return self._q[k + 1]

    def theta(self) -> QuadraticNumber:
        if self._theta is None:
            self._theta = self.slope.theta()
        return self._theta

    def delta(self, k: int) -> QuadraticNumber:
        """delta_k = q_k * theta - p_k; alternates in sign, |delta| decreasing."""
        return self.theta() * self.q(k) - self.p(k)


def theta_interval(slope: SlopeSpec, bits: int) -> RealInterval:
    """Enclosure of theta of width below 2**-bits from consecutive convergents."""
    conv = Convergents(slope)
    K = 1
    target = 1 << bits
    while conv.q(K) * conv.q(K + 1) < target:
        K += 1
    lo = Fraction(conv.p(K), conv.q(K))
    hi = Fraction(conv.p(K + 1), conv.q(K + 1))
    if lo > hi:
        lo, hi = hi, lo
    return RealInterval(lo, hi)


def cf_extract(
    value, max_terms: Optional[int] = None
) -> tuple[list[int], int]:
    """Certified partial quotients a_1, a_2, ... of a value in (0, 1).

    `value` is a RealInterval (or Fraction for a point).  Returns
    (quotients, certified_count); a quotient is emitted only while both
    endpoints agree on its floor, so every real in the interval shares the
    emitted prefix and certified_count == len(quotients).  Emission stops
    on endpoint disagreement, on an exactly-zero tail (rational input,
    expansion complete), or after max_terms.
    """
    if isinstance(value, Fraction):
        value = RealInterval(value)
    lo, hi = value.lo, value.hi
    if not (0 < lo <= hi < 1):
        raise ParseError(f"cf_extract needs 0 < lower <= upper < 1, got [{lo}, {hi}]")
    terms: list[int] = []
    while max_terms is None or len(terms) < max_terms:
        lo, hi = 1 / hi, 1 / lo
        a_lo = lo.numerator // lo.denominator
        a_hi = hi.numerator // hi.denominator
        if a_lo != a_hi:
            break
        terms.append(a_lo)
        lo -= a_lo
        hi -= a_lo
        if hi == 0:
            break  # exact rational, expansion complete
        if lo == 0:
            break  # cannot certify the next quotient
    return terms, len(terms)


def _parse_int_list(body: str) -> list[int]:
    body = body.strip()
    if not body:
        return []
    try:
        return [int(tok.strip()) for tok in body.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad integer list {body!r}") from exc


def parse_slope(text: str) -> SlopeSpec:
    """Parse per:[a1,...;b1,...] or surd:(P,D,Q)."""
    text = text.strip()
    if text.startswith("per:"):
        body = text[4:].strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ParseError(f"expected per:[...;...], got {text!r}")
        inner = body[1:-1]
        if inner.count(";") != 1:
            raise ParseError("periodic slope needs exactly one ';'")
        pre_s, per_s = inner.split(";")
        return SlopeSpec.periodic(_parse_int_list(pre_s), _parse_int_list(per_s))
    if text.startswith("surd:"):
        body = text[5:].strip()
        if not (body.startswith("(") and body.endswith(")")):
            raise ParseError(f"expected surd:(P,D,Q), got {text!r}")
        parts = _parse_int_list(body[1:-1])
        if len(parts) != 3:
            raise ParseError("surd slope needs exactly three integers")
        return SlopeSpec.surd(*parts)
    raise ParseError(f"unknown slope syntax {text!r}")
