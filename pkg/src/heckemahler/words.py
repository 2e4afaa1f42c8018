"""Binary words, their (b, a)-values, and the digit-indexed word family.

Words pack into Python ints (most significant bit = first letter), so
concatenation, repetition and prefix extraction are shift arithmetic.  The
value of a word w_1..w_l is sum_n w_n * b**(l-n) * a**(#ones after n); a
word family mirrors the same recursions on (length, ones, value) triples
when letters themselves would be too long to hold.
"""

from __future__ import annotations

from math import gcd
from typing import NamedTuple, Optional, Sequence, Union

from .cf import Convergents, SlopeSpec
from .errors import (
    DivergenceError,
    LengthCapExceeded,
    SizeBudgetExceeded,
    UndecidableLetter,
)
from .numbers import ExactFraction, bits_cap, floor_quadratic, log2_int
from .ostrowski import (
    DerivedSequences,
    DigitProvider,
    InterceptSpec,
    as_provider,
    intercept_from_digits,
)

WORD_LEN_DEFAULT = 1_000_000
LETTER_BITS_DEFAULT = 4096


class BinaryWord:
    """Immutable 0/1 word packed into an int, first letter at the top bit."""

    __slots__ = ("bits", "length")

    def __init__(self, bits: int, length: int):
        assert 0 <= length and 0 <= bits < (1 << length) if length else bits == 0
        self.bits = bits
        self.length = length

    @classmethod
    def empty(cls) -> "BinaryWord":
        return cls(0, 0)

    @classmethod
    def zeros(cls, n: int) -> "BinaryWord":
        return cls(0, n)

    @classmethod
    def one(cls) -> "BinaryWord":
        return cls(1, 1)

    @classmethod
    def from_letters(cls, letters: Sequence[int]) -> "BinaryWord":
        bits = 0
        for w in letters:
            assert w in (0, 1)
            bits = (bits << 1) | w
        return cls(bits, len(letters))

    @classmethod
    def from_string(cls, s: str) -> "BinaryWord":
        s = s.strip()
        if not s:
            return cls.empty()
        return cls(int(s, 2), len(s))

    def __len__(self) -> int:
        return self.length

    def ones(self) -> int:
        return self.bits.bit_count()

    def letter(self, i: int) -> int:
        """Letter at 0-based position i."""
        if not 0 <= i < self.length:
            raise IndexError(i)
        return (self.bits >> (self.length - 1 - i)) & 1

    def letters(self) -> list[int]:
        return [self.letter(i) for i in range(self.length)]

    def __add__(self, other: "BinaryWord") -> "BinaryWord":
        return BinaryWord(
            (self.bits << other.length) | other.bits, self.length + other.length
        )

    def __pow__(self, m: int) -> "BinaryWord":
        if m < 0:
            raise ValueError("negative word power")
        if m == 0 or self.length == 0:
            return BinaryWord.empty()
        # repunit in base 2**length places the copies side by side
        rep = ((1 << (self.length * m)) - 1) // ((1 << self.length) - 1)
        return BinaryWord(self.bits * rep, self.length * m)

    def prefix(self, n: int) -> "BinaryWord":
        if not 0 <= n <= self.length:
            raise ValueError(n)
        return BinaryWord(self.bits >> (self.length - n), n)

    def suffix(self, n: int) -> "BinaryWord":
        if not 0 <= n <= self.length:
            raise ValueError(n)
        return BinaryWord(self.bits & ((1 << n) - 1), n)

    def to_string(self) -> str:
        return format(self.bits, f"0{self.length}b") if self.length else ""

    def __eq__(self, other):
        if not isinstance(other, BinaryWord):
            return NotImplemented
        return self.length == other.length and self.bits == other.bits

    def __hash__(self):
        return hash((self.bits, self.length))

    def __repr__(self):
        s = self.to_string()
        if len(s) > 40:
            s = s[:37] + "..."
        return f"BinaryWord({s!r}, length={self.length})"


def word_value(word: BinaryWord, b: int, a: int) -> int:
    """sum_n w_n * b**(l-n) * a**(ones strictly after position n)."""
    assert b >= 1 and a >= 1

    def rec(bits: int, L: int) -> int:
        if L <= 256:
            v = 0
            ba = b * a
            for j in range(L - 1, -1, -1):
                if (bits >> j) & 1:
                    v = v * ba + 1
                else:
                    v = v * b
            return v
        half = L // 2
        right_len = L - half
        left = bits >> right_len
        right = bits & ((1 << right_len) - 1)
        return rec(left, half) * b ** right_len * a ** right.bit_count() + rec(
            right, right_len
        )

    return rec(word.bits, word.length)


class WordValue(NamedTuple):
    """Length, ones count and (b, a)-value of a word, sans its letters."""

    length: int
    ones: int
    val: int


WordLike = Union[BinaryWord, WordValue]


class WordAlgebra:
    """Monoid of WordValue triples for fixed integer b, a >= 1.

    Concatenation and power mirror the word operations exactly; an optional
    bit budget aborts before a value integer would get too large.
    """

    def __init__(self, b: int, a: int, max_bits: Optional[int] = None):
        assert b >= 1 and a >= 1
        self.b = b
        self.a = a
        self.max_bits = max_bits
        self._lb = log2_int(b) if b > 1 else 0.0
        self._la = log2_int(a) if a > 1 else 0.0

    def _check(self, length: int, ones: int) -> None:
        if self.max_bits is not None:
            if length * self._lb + ones * self._la > self.max_bits:
                raise SizeBudgetExceeded(
                    f"word value would exceed {self.max_bits} bits"
                )

    def empty(self) -> WordValue:
        return WordValue(0, 0, 0)

    def lift(self, w: WordLike) -> WordValue:
        if isinstance(w, WordValue):
            return w
        self._check(w.length, w.ones())
        return WordValue(w.length, w.ones(), word_value(w, self.b, self.a))

    def weight(self, w: WordLike) -> int:
        """b**length * a**ones, the carry factor of the word."""
        w = self.lift(w)
        return self.b ** w.length * self.a ** w.ones

    def concat(self, x: WordLike, y: WordLike) -> WordValue:
        x, y = self.lift(x), self.lift(y)
        self._check(x.length + y.length, x.ones + y.ones)
        val = x.val * self.b ** y.length * self.a ** y.ones + y.val
        return WordValue(x.length + y.length, x.ones + y.ones, val)

    def pow(self, x: WordLike, m: int) -> WordValue:
        if m < 0:
            raise ValueError("negative word power")
        x = self.lift(x)
        if m == 0:
            return self.empty()
        self._check(x.length * m, x.ones * m)
        g = self.weight(x)
        if g == 1:
            val = x.val * m
        else:
            val = x.val * (g ** m - 1) // (g - 1)
        return WordValue(x.length * m, x.ones * m, val)


def periodic_value(Y: Optional[WordLike], Z: WordLike, b: int, a: int) -> ExactFraction:
    """Value of the infinite word Y Z Z Z ... as an unreduced fraction.

    The series sums w_n * b**-n * a**-(ones among the first n letters).
    """
    alg = WordAlgebra(b, a)
    y = alg.lift(Y) if Y is not None else alg.empty()
    z = alg.lift(Z)
    if z.length == 0:
        raise DivergenceError("periodic part must be non-empty")
    gz = alg.weight(z)
    if gz == 1:
        raise DivergenceError("periodic tail does not converge for these b, a")
    yz = alg.concat(y, z)
    num = yz.val - y.val
    den = alg.weight(y) * (gz - 1)
    return ExactFraction(num, den)


class WordFamily:
    """Words T_k, R_k, M_k, V_k driven by the slope and digit sequence.

    Index ranges: T, R for k >= 0 (T_0 empty, R_0 = "0") and M, V for
    k >= -1 (M_{-1} = V_{-1} = "1", M_0 = V_0 = "0").  Materialised letters;
    see WordStats for the value-only twin.
    """

    def __init__(self, slope: SlopeSpec, provider: DigitProvider, max_len: int):
        self.slope = slope
        self.provider = provider
        self.conv = provider.conv
        self.seq = DerivedSequences(provider)
        self.max_len = max_len
        self.T = [BinaryWord.empty()]
        self.R = [BinaryWord.from_string("0")]
        self._M = [BinaryWord.one(), BinaryWord.from_string("0")]  # k = -1, 0
        self._V = [BinaryWord.one(), BinaryWord.from_string("0")]

    @property
    def K(self) -> int:
        return len(self.T) - 1

    def M(self, k: int) -> BinaryWord:
        assert k >= -1
        self.ensure(k)
        return self._M[k + 1]

    def V(self, k: int) -> BinaryWord:
        assert k >= -1
        self.ensure(k)
        return self._V[k + 1]

    def T_(self, k: int) -> BinaryWord:
        self.ensure(k)
        return self.T[k]

    def R_(self, k: int) -> BinaryWord:
        self.ensure(k)
        return self.R[k]

    def ensure(self, K: int) -> None:
        while self.K < K:
            self._step()

    def _step(self) -> None:
        conv, seq = self.conv, self.seq
        k = self.K  # building index k + 1
        if seq.conv.q(k + 1) > self.max_len:
            raise LengthCapExceeded(k, family=self)
        b = self.provider.digit(k + 1)
        a = conv.a(k + 1)
        if k == 0:
            T1 = BinaryWord.zeros(b)
            R1 = BinaryWord.zeros(a - b - 1) + BinaryWord.one()
            self.T.append(T1)
            self.R.append(R1)
        else:
            Tn = self._M[k + 1] ** b + self.T[k]
            if b < a:
                Rn = self.R[k] + self._M[k + 1] ** (a - b - 1) + self._M[k]
            else:
                Rn = self.R[k - 1]
            self.T.append(Tn)
            self.R.append(Rn)
        Tn, Rn = self.T[k + 1], self.R[k + 1]
        Mn = Tn + Rn
        Vn = Rn + Tn
        self._M.append(Mn)
        self._V.append(Vn)
        # counts must match the derived sequences on both routes
        assert Tn.length == seq.t(k + 1) and Tn.ones() == seq.t_tilde(k + 1)
        assert Rn.length == seq.r(k + 1) and Rn.ones() == seq.r_tilde(k + 1)
        assert Mn.length == conv.q(k + 1) and Mn.ones() == conv.p(k + 1)
        if k >= 1:
            alt = self._V[k + 1] ** (a - b) + self._V[k] + self._V[k + 1] ** b
            assert alt == Vn, f"V recursion mismatch at k={k + 1}"
        # successive V share all but the final letter of the shorter one
        L = max(0, self._V[k + 1].length - 1)
        assert Vn.prefix(L) == self._V[k + 1].prefix(L)


def build_word_family(
    slope: SlopeSpec,
    digits,
    K: int,
    max_len: int = WORD_LEN_DEFAULT,
) -> WordFamily:
    """Materialise the word family up to index K.

    `digits` is a DigitProvider, an InterceptSpec, or a plain digit list.
    """
    provider = _as_provider(slope, digits)
    fam = WordFamily(slope, provider, max_len)
    fam.ensure(K)
    return fam


_as_provider = as_provider


class WordStats:
    """Value-only twin of WordFamily over a WordAlgebra."""

    def __init__(self, slope: SlopeSpec, provider: DigitProvider, alg: WordAlgebra):
        self.slope = slope
        self.provider = provider
        self.alg = alg
        self.conv = provider.conv
        self.seq = DerivedSequences(provider)
        self.T = [alg.empty()]
        self.R = [alg.lift(BinaryWord.from_string("0"))]
        self._M = [alg.lift(BinaryWord.one()), alg.lift(BinaryWord.from_string("0"))]
        self._V = list(self._M)

    @property
    def K(self) -> int:
        return len(self.T) - 1

    def M(self, k: int) -> WordValue:
        self.ensure(k)
        return self._M[k + 1]

    def V(self, k: int) -> WordValue:
        self.ensure(k)
        return self._V[k + 1]

    def T_(self, k: int) -> WordValue:
        self.ensure(k)
        return self.T[k]

    def R_(self, k: int) -> WordValue:
        self.ensure(k)
        return self.R[k]

    def ensure(self, K: int) -> None:
        while self.K < K:
            self._step()

    def _step(self) -> None:
        alg, conv, seq = self.alg, self.conv, self.seq
        k = self.K
        b = self.provider.digit(k + 1)
        a = conv.a(k + 1)
        if k == 0:
            Tn = alg.lift(BinaryWord.zeros(b))
            Rn = alg.concat(alg.lift(BinaryWord.zeros(a - b - 1)), BinaryWord.one())
        else:
            Tn = alg.concat(alg.pow(self._M[k + 1], b), self.T[k])
            if b < a:
                Rn = alg.concat(
                    alg.concat(self.R[k], alg.pow(self._M[k + 1], a - b - 1)),
                    self._M[k],
                )
            else:
                Rn = self.R[k - 1]
        self.T.append(Tn)
        self.R.append(Rn)
        self._M.append(alg.concat(Tn, Rn))
        self._V.append(alg.concat(Rn, Tn))
        assert Tn.length == seq.t(k + 1) and Tn.ones == seq.t_tilde(k + 1)
        assert Rn.length == seq.r(k + 1) and Rn.ones == seq.r_tilde(k + 1)


def build_word_stats(
    slope: SlopeSpec,
    digits,
    K: int,
    b: int,
    a: int,
    max_bits: Optional[int] = None,
) -> WordStats:
    provider = _as_provider(slope, digits)
    stats = WordStats(slope, provider, WordAlgebra(b, a, max_bits=max_bits))
    stats.ensure(K)
    return stats


def sturmian_prefix(
    slope: SlopeSpec,
    intercept: InterceptSpec,
    N: int,
    variant: str = "lower",
    max_bits: Optional[int] = None,
) -> BinaryWord:
    """First N letters s_1..s_N, s_n = floor(n*theta + rho) - floor((n-1)*theta + rho).

    variant="upper" uses ceilings instead of floors.  Formal-digit
    intercepts use the stabilising word family; exact-field intercepts
    use integer floors; anything else falls back to intervals with
    doubling precision (UndecidableLetter past the precision cap).
    """
    if variant not in ("lower", "upper"):
        raise ValueError("variant must be 'lower' or 'upper'")
    upper = variant == "upper"
    if N < 0:
        raise ValueError("N must be >= 0")
    if N == 0:
        return BinaryWord.empty()
    rho = None
    if intercept.is_formal():
        # A finite digit list reconstructs rho = m*theta - p with m >= 1,
        # so n*theta + rho is never an integer for n >= 0 and the floor
        # and ceiling words coincide; one family route serves both.
        digs = intercept.digits
        conv = Convergents(slope)
        if digs and digs[0] >= conv.a(1):
            # shifted suffix of an admissible sequence: the word family
            # cannot start from it (r_1 would vanish) but the intercept
            # itself is exact, so the floor route below takes over
            rho = intercept_from_digits(slope, digs, tail=True)
        else:
            provider = DigitProvider(slope, intercept)
            conv = provider.conv
            K = 1
            while conv.q(K) < N + 1:
                K += 1
            fam = build_word_family(slope, provider, K, max_len=conv.q(K) + 1)
            return fam.V(K).prefix(N)
    if rho is None:
        rho = intercept.exact_value(slope)
    if rho is not None:
        theta = slope.theta()
        d = theta.d
        dens = [
            theta.rat.denominator,
            theta.coef.denominator,
            rho.rat.denominator,
            rho.coef.denominator,
        ]
        L = 1
        for q in dens:
            L = L * q // gcd(L, q)
        At = theta.rat * L
        Bt = theta.coef * L
        A, B = rho.rat * L, rho.coef * L
        At, Bt, A, B = int(At), int(Bt), int(A), int(B)

        def corner(A2: int, B2: int) -> int:
            if upper:
                return -floor_quadratic(-A2, -B2, d, L)
            return floor_quadratic(A2, B2, d, L)

        prev = corner(A, B)
        bits = 0
        for _ in range(N):
            A += At
            B += Bt
            f = corner(A, B)
            step = f - prev
            assert step in (0, 1)
            bits = (bits << 1) | step
            prev = f
        return BinaryWord(bits, N)
    return _sturmian_prefix_interval(slope, intercept, N, upper, max_bits)


def _sturmian_prefix_interval(
    slope: SlopeSpec,
    intercept: InterceptSpec,
    N: int,
    upper: bool,
    max_bits: Optional[int],
) -> BinaryWord:
    if max_bits is None:
        max_bits = bits_cap(LETTER_BITS_DEFAULT)
    theta = slope.theta()
    prec = 128
    while True:
        tiv = theta.interval(prec + N.bit_length() + 2)
        riv = intercept.numeric_value(slope, prec)
        floors = []
        ok = True
        for n in range(N + 1):
            x = tiv * n + riv
            if upper:
                nlo, nhi = (-x).floor_pair()
                lo, hi = -nhi, -nlo
            else:
                lo, hi = x.floor_pair()
            if lo != hi:
                ok = False
                break
            floors.append(lo)
        if ok:
            letters = [floors[n] - floors[n - 1] for n in range(1, N + 1)]
            assert all(w in (0, 1) for w in letters)
            return BinaryWord.from_letters(letters)
        if prec >= max_bits:
            raise UndecidableLetter(
                f"letter at n={n} unresolved at {max_bits} bits; raise HM_MAX_BITS"
            )
        prec = min(2 * prec, max_bits)
