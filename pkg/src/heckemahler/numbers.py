"""Exact scalar arithmetic: integer roots, quadratic irrationals, intervals.

Everything here is rigorous.  Floats appear only in the log2 helpers, which
are used for magnitude estimates, never for decisions.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from math import isqrt

Rat = Fraction


def bits_cap(default: int) -> int:
    """Precision ceiling in bits; HM_MAX_BITS overrides the default."""
    raw = os.environ.get("HM_MAX_BITS")
    if raw is None:
        return default
    val = int(raw)
    if val <= 0:
        raise ValueError("HM_MAX_BITS must be positive")
    return val


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration."""
    if n < 0 or k < 1:
        raise ValueError("iroot needs n >= 0, k >= 1")
    if k == 1 or n < 2:
        return n
    x = 1 << -(-n.bit_length() // k)
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def iroot_ceil(n: int, k: int) -> int:
    r = iroot(n, k)
    return r if r ** k == n else r + 1


def floor_quadratic(A: int, B: int, D: int, L: int) -> int:
    """floor((A + B*sqrt(D)) / L) computed exactly with integer arithmetic."""
    if L == 0:
        raise ZeroDivisionError("floor_quadratic with L == 0")
    if L < 0:
        A, B, L = -A, -B, -L
    if B == 0 or D == 0:
        return A // L
    t = B * B * D
    r = isqrt(t)
    if B > 0:
        s = r
    else:
        s = -r if r * r == t else -r - 1
    return (A + s) // L


def squarefree_part(n: int) -> tuple[int, int]:
    """Split n > 0 as m*m*d with d squarefree; returns (m, d)."""
    if n <= 0:
        raise ValueError("squarefree_part needs n > 0")
    m, d = 1, 1
    i = 2
    while i * i <= n:
        if n % i == 0:
            e = 0
            while n % i == 0:
                n //= i
                e += 1
            m *= i ** (e // 2)
            if e % 2:
                d *= i
        i += 1 if i == 2 else 2
    return m, d * n


def _sign(x) -> int:
    return (x > 0) - (x < 0)


class QuadraticNumber:
    """Element rat + coef*sqrt(d) of a real quadratic field, d squarefree.

    Exact comparisons and floors.  Elements with different surd parts only
    combine when one of them is rational.
    """

    __slots__ = ("rat", "coef", "d")

    def __init__(self, rat, coef=0, d: int = 0):
        rat = Fraction(rat)
        coef = Fraction(coef)
        if coef == 0:
            d = 0
        else:
            if d <= 0:
                raise ValueError("irrational part needs d > 0")
            m, d0 = squarefree_part(d)
            if d0 == 1:
                rat += coef * m
                coef = Fraction(0)
                d = 0
            else:
                coef *= m
                d = d0
        self.rat = rat
        self.coef = coef
        self.d = d

    @classmethod
    def from_surd(cls, P: int, D: int, Q: int) -> "QuadraticNumber":
        """(P + sqrt(D)) / Q"""
        if Q == 0:
            raise ZeroDivisionError
        return cls(Fraction(P, Q), Fraction(1, Q), D)

    def is_rational(self) -> bool:
        return self.coef == 0

    def _lift(self, other):
        if isinstance(other, QuadraticNumber):
            return other
        if isinstance(other, (int, Fraction)):
            return QuadraticNumber(other)
        return NotImplemented

    def _join_d(self, other: "QuadraticNumber") -> int:
        if self.coef and other.coef and self.d != other.d:
            raise ValueError("incompatible surd parts %d, %d" % (self.d, other.d))
        return self.d or other.d

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join_d(other)
        return QuadraticNumber(self.rat + other.rat, self.coef + other.coef, d)

    __radd__ = __add__

    def __neg__(self):
        return QuadraticNumber(-self.rat, -self.coef, self.d)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._join_d(other)
        rat = self.rat * other.rat + self.coef * other.coef * d
        coef = self.rat * other.coef + self.coef * other.rat
        return QuadraticNumber(rat, coef, d)

    __rmul__ = __mul__

    def inverse(self) -> "QuadraticNumber":
        if self.coef == 0:
            return QuadraticNumber(1 / self.rat)
        norm = self.rat * self.rat - self.coef * self.coef * self.d
        return QuadraticNumber(self.rat / norm, -self.coef / norm, self.d)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conjugate(self) -> "QuadraticNumber":
        return QuadraticNumber(self.rat, -self.coef, self.d)

    def sign(self) -> int:
        a, c = self.rat, self.coef
        if c == 0:
            return _sign(a)
        if a == 0:
            return _sign(c)
        if a > 0 and c > 0:
            return 1
        if a < 0 and c < 0:
            return -1
        s = a * a - c * c * self.d
        assert s != 0, "sqrt(d) cannot be rational for squarefree d > 1"
        return _sign(a) * _sign(s)

    def __bool__(self):
        return self.rat != 0 or self.coef != 0

    def _cmp(self, other) -> int:
        diff = self - other
        if diff is NotImplemented:
            return NotImplemented
        return diff.sign()

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return (
            self.rat == other.rat
            and self.coef == other.coef
            and self.d == other.d
        )

    def __hash__(self):
        if self.coef == 0:
            return hash(self.rat)
        return hash((self.rat, self.coef, self.d))

    def floor(self) -> int:
        if self.coef == 0:
            return self.rat.numerator // self.rat.denominator
        a, c = self.rat, self.coef
        q = a.denominator * c.denominator // math.gcd(a.denominator, c.denominator)
        A = a.numerator * (q // a.denominator)
        B = c.numerator * (q // c.denominator)
        return floor_quadratic(A, B, self.d, q)

    __floor__ = floor

    def interval(self, bits: int) -> "RealInterval":
        """Rational enclosure of width at most 2**-bits."""
        if self.coef == 0:
            return RealInterval(self.rat, self.rat)
        c = self.coef
        g = bits + max(0, c.numerator.bit_length() - c.denominator.bit_length()) + 2
        r = isqrt(self.d << (2 * g))
        lo_s = Fraction(r, 1 << g)
        hi_s = Fraction(r + 1, 1 << g)
        if c > 0:
            return RealInterval(self.rat + c * lo_s, self.rat + c * hi_s)
        return RealInterval(self.rat + c * hi_s, self.rat + c * lo_s)

    def __float__(self):
        return float(self.interval(80).mid())

    def __repr__(self):
        if self.coef == 0:
            return f"QuadraticNumber({self.rat})"
        return f"QuadraticNumber({self.rat} + {self.coef}*sqrt({self.d}))"


class RealInterval:
    """Closed interval with exact rational endpoints."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError("interval endpoints out of order")
        self.lo = lo
        self.hi = hi

    @classmethod
    def point(cls, x) -> "RealInterval":
        return cls(Fraction(x))

    def width(self) -> Fraction:
        return self.hi - self.lo

    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def _lift(self, other):
        if isinstance(other, RealInterval):
            return other
        if isinstance(other, (int, Fraction)):
            return RealInterval.point(other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return RealInterval(self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return RealInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        prods = (
            self.lo * other.lo,
            self.lo * other.hi,
            self.hi * other.lo,
            self.hi * other.hi,
        )
        return RealInterval(min(prods), max(prods))

    __rmul__ = __mul__

    def inverse(self) -> "RealInterval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError("interval straddles zero")
        return RealInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def floor_pair(self) -> tuple[int, int]:
        return (
            self.lo.numerator // self.lo.denominator,
            self.hi.numerator // self.hi.denominator,
        )

    def round_to(self, bits: int) -> "RealInterval":
        """Outward rounding onto the grid with denominator 2**bits."""
        s = 1 << bits
        lo = Fraction((self.lo * s).numerator // (self.lo * s).denominator, s)
        hi_scaled = self.hi * s
        hi = Fraction(-((-hi_scaled.numerator) // hi_scaled.denominator), s)
        return RealInterval(lo, hi)

    def __repr__(self):
        return f"RealInterval({self.lo}, {self.hi})"


def _as_int(x) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"expected integral value, got {x}")
        return x.numerator
    return int(x)


class ExactFraction:
    """Unreduced integer fraction; den == 0 marks a formal anchor term."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num = _as_int(num)
        self.den = _as_int(den)

    @property
    def formal(self) -> bool:
        return self.den == 0

    def value(self) -> Fraction:
        return Fraction(self.num, self.den)

    def farey(self, coef, other: "ExactFraction") -> "ExactFraction":
        """coef * self (+) other, mediant style on both parts.

        coef may be a Fraction, but the combined parts must come out
        integral; the paper-side cancellation guarantees it and we check.
        """
        num = coef * self.num + other.num
        den = coef * self.den + other.den
        return ExactFraction(num, den)

    def __eq__(self, other):
        if not isinstance(other, ExactFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"ExactFraction({self.num}, {self.den})"


def round_frac(x: Fraction, bits: int, up: bool) -> Fraction:
    """Directed rounding of x to about `bits` significant bits."""
    if x == 0:
        return x
    n, d = x.numerator, x.denominator
    e = abs(n).bit_length() - d.bit_length() - bits
    if e >= 0:
        num, den = n, d << e
    else:
        num, den = n << -e, d
    q, r = divmod(num, den)
    if up and r:
        q += 1
    if e >= 0:
        return Fraction(q << e)
    return Fraction(q, 1 << -e)


def pow_frac_dir(x: Fraction, n: int, bits: int, up: bool) -> Fraction:
    """Directed bound on x**n for x >= 0, with mantissas capped at ~bits."""
    if x < 0:
        raise ValueError("pow_frac_dir needs x >= 0")
    if n < 0:
        raise ValueError("pow_frac_dir needs n >= 0")
    result = Fraction(1)
    base = x
    while n:
        if n & 1:
            result = round_frac(result * base, bits, up)
            if not up and result < 0:
                result = Fraction(0)
        n >>= 1
        if n:
            base = round_frac(base * base, bits, up)
            if not up and base < 0:
                base = Fraction(0)
    return result


def pow_frac_up(x: Fraction, n: int, bits: int = 96) -> Fraction:
    return pow_frac_dir(x, n, bits, True)


def pow_frac_down(x: Fraction, n: int, bits: int = 96) -> Fraction:
    return pow_frac_dir(x, n, bits, False)


def frac_pow_bounds(x: Fraction, p: int, q: int, bits: int = 64) -> tuple[Fraction, Fraction]:
    """Bounds lo <= x**(p/q) <= hi for x > 0 and small p >= 0, q >= 1."""
    if x <= 0 or p < 0 or q < 1:
        raise ValueError("frac_pow_bounds needs x > 0, p >= 0, q >= 1")
    t = x ** p
    if q == 1:
        return t, t
    S = 1 << bits
    num, den = t.numerator, t.denominator
    scaled = num * S ** q
    lo = Fraction(iroot(scaled // den, q), S)
    hi = Fraction(iroot_ceil(-((-scaled) // den), q), S)
    return lo, hi


def log2_int(n: int) -> float:
    """log2 of a positive integer, accurate to ~1e-15 relative."""
    if n <= 0:
        raise ValueError("log2_int needs n > 0")
    e = n.bit_length() - 53
    if e > 0:
        return math.log2(n >> e) + e
    return math.log2(n)


def log2_frac(x: Fraction) -> float:
    if x <= 0:
        raise ValueError("log2_frac needs x > 0")
    return log2_int(x.numerator) - log2_int(x.denominator)


def logaddexp2(x: float, y: float) -> float:
    if x < y:
        x, y = y, x
    if y == -math.inf:
        return x
    return x + math.log2(1.0 + 2.0 ** (y - x))


def logsubexp2(x: float, y: float) -> float:
    """log2(2**x - 2**y) for x > y."""
    if y == -math.inf:
        return x
    if y >= x:
        raise ValueError("logsubexp2 needs x > y")
    return x + math.log2(1.0 - 2.0 ** (y - x))
