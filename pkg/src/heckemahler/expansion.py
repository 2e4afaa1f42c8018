"""Element quads and the contracted continued fraction of the target number.

The raw (improper) expansion interleaves the four element families as
c_0, d_0, 1, e_0, f_0, c_1, ...  Two contraction rules clean it up: a
9-term block collapses to a single element wherever the digit meets its
partial quotient, and any remaining x, 0, y merges to x + y.  Elements are
carried either as exact integers or as float log2 magnitudes; all zero and
sign decisions come from the digit flags, never from the carried values.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

from .cf import SlopeSpec
from .errors import NonPositiveResidual, SizeBudgetExceeded
from .numbers import RealInterval, log2_frac, log2_int, logaddexp2
from .ostrowski import DerivedSequences, DigitProvider, InterceptSpec, as_provider

ELEMENT_BITS_DEFAULT = 2_000_000

LN2 = math.log(2.0)


class ElementQuad(NamedTuple):
    k: int
    c: object
    d: object
    e: object
    f: object


def geom_sum(g: int, m: int) -> int:
    """1 + g + ... + g**(m-1) by binary splitting (no division)."""
    if m <= 0:
        return 0
    if m == 1:
        return 1
    h = m // 2
    s = geom_sum(g, h) * (1 + g**h)
    if m & 1:
        s += g ** (m - 1)
    return s


_as_provider = as_provider


class ElementSource:
    """Lazy c_k, d_k, e_k, f_k plus the digit flags the contractor needs.

    mode "exact" carries big integers (a Fraction head at k = 0 when b - 1
    does not divide a - 1) under a projected bit budget; mode "log" carries
    float log2 magnitudes with structural zeros as -inf and no budget.
    """

    def __init__(
        self,
        slope: SlopeSpec,
        digits,
        b: int,
        a: int,
        mode: str = "exact",
        max_bits: Optional[int] = None,
    ):
        if b < 2:
            raise ValueError("b must be >= 2")
        if a < 1:
            raise ValueError("a must be >= 1")
        if mode not in ("exact", "log"):
            raise ValueError("mode must be 'exact' or 'log'")
        self.slope = slope
        self.provider = _as_provider(slope, digits)
        self.conv = self.provider.conv
        self.seq = DerivedSequences(self.provider)
        self.b = b
        self.a = a
        self.mode = mode
        self.max_bits = ELEMENT_BITS_DEFAULT if max_bits is None else max_bits
        self.improper = b > 2 and (a - 1) % (b - 1) != 0
        self._lb = log2_int(b)
        self._la = log2_int(a)
        self._quads: dict[int, ElementQuad] = {}
        self.one = 1 if mode == "exact" else 0.0

    # -- flags (exact in both modes) ------------------------------------

    def digit(self, k: int) -> int:
        return self.provider.digit(k)

    def gap(self, k: int) -> int:
        """a_k - b_k, the headroom of digit k under its partial quotient."""
        return self.conv.a(k) - self.provider.digit(k)

    def t_zero(self, k: int) -> bool:
        return self.seq.t(k) == 0

    def rule_i_fires(self, k: int) -> bool:
        return self.gap(k + 2) == 0

    def c_is_zero(self, k: int) -> bool:
        if k == 0:
            return self.b ** self.gap(1) * self.a == self.b
        return self.gap(k + 1) == 1

    # -- quad values -----------------------------------------------------

    def add(self, x, y):
        if self.mode == "exact":
            return x + y
        return logaddexp2(x, y)

    def quad(self, k: int) -> ElementQuad:
        got = self._quads.get(k)
        if got is None:
            got = self._make_quad(k)
            self._quads[k] = got
        return got

    def _project_bits(self, k: int) -> float:
        # every element at index k fits inside b**q_{k+1} * a**p_{k+1}
        return float(self.conv.q(k + 1)) * self._lb + float(self.conv.p(k + 1)) * self._la

    def _make_quad(self, k: int) -> ElementQuad:
        if k < 0:
            raise IndexError("element index starts at 0")
        self.conv.ensure(k + 2)
        self.seq.ensure(k + 1)
        if self.mode == "log":
            return self._make_quad_log(k)
        need = self._project_bits(k)
        if need > self.max_bits:
            raise SizeBudgetExceeded(
                f"element index {k} needs about {need:.3g} bits, budget {self.max_bits}",
                last_index=k - 1,
            )
        b, a = self.b, self.a
        conv, seq = self.conv, self.seq
        t, tt = seq.t(k), seq.t_tilde(k)
        r, rt = seq.r(k), seq.r_tilde(k)
        g = b ** conv.q(k) * a ** conv.p(k)
        d = b**t * a**tt - 1
        e = b**r * a**rt - 1
        f = b**t * a**tt * geom_sum(g, self.digit(k + 1))
        if k == 0:
            c = Fraction(b ** self.gap(1) * a - b, b - 1)
            if c.denominator == 1:
                c = int(c)
        elif self.gap(k + 1) == 0:
            c = -(b ** seq.r(k - 1) * a ** seq.r_tilde(k - 1))
            assert c == -self.quad(k - 1).e - 1
        else:
            c = b ** (r + conv.q(k - 1)) * a ** (rt + conv.p(k - 1)) * geom_sum(
                g, self.gap(k + 1) - 1
            )
        return ElementQuad(k, c, d, e, f)

    # -- log twin ---------------------------------------------------------

    def _lpow(self, qe: int, pe: int) -> float:
        return float(qe) * self._lb + float(pe) * self._la

    def _lpow_minus1(self, qe: int, pe: int) -> float:
        """log2(b**qe * a**pe - 1); -inf when the power is exactly 1."""
        L = self._lpow(qe, pe)
        if L == 0.0:
            return -math.inf
        if L <= 64.0:
            return log2_int(self.b**qe * self.a**pe - 1)
        return L + math.log1p(-math.exp(-L * LN2)) / LN2

    def _lgeom(self, qk: int, pk: int, m: int) -> float:
        """log2(1 + g + ... + g**(m-1)) for g = b**qk * a**pk >= 2."""
        if m <= 0:
            return -math.inf
        if m == 1:
            return 0.0
        lg = self._lpow(qk, pk)
        if (m - 1) * lg <= 64.0:
            return log2_int(geom_sum(self.b**qk * self.a**pk, m))
        corr = math.log1p(-math.exp(-m * lg * LN2)) - math.log1p(-math.exp(-lg * LN2))
        return (m - 1) * lg + corr / LN2

    def _make_quad_log(self, k: int) -> ElementQuad:
        conv, seq = self.conv, self.seq
        t, tt = seq.t(k), seq.t_tilde(k)
        r, rt = seq.r(k), seq.r_tilde(k)
        qk, pk = conv.q(k), conv.p(k)
        d = self._lpow_minus1(t, tt)
        e = self._lpow_minus1(r, rt)
        bk1 = self.digit(k + 1)
        f = -math.inf if bk1 == 0 else self._lpow(t, tt) + self._lgeom(qk, pk, bk1)
        if k == 0:
            num = self.b ** self.gap(1) * self.a - self.b
            c = -math.inf if num == 0 else log2_frac(Fraction(num, self.b - 1))
        elif self.gap(k + 1) == 0:
            # negative value; rule (i) removes it structurally before any
            # log-domain addition, so only the magnitude is carried
            c = self._lpow(seq.r(k - 1), seq.r_tilde(k - 1))
        else:
            c = self._lpow(r + conv.q(k - 1), rt + conv.p(k - 1)) + self._lgeom(
                qk, pk, self.gap(k + 1) - 1
            )
        return ElementQuad(k, c, d, e, f)


def element_quads(
    slope: SlopeSpec,
    digits,
    b: int,
    a: int,
    K: int,
    mode: str = "exact",
    max_bits: Optional[int] = None,
) -> List[ElementQuad]:
    """Quads for k = 0..K."""
    src = ElementSource(slope, digits, b, a, mode=mode, max_bits=max_bits)
    return [src.quad(k) for k in range(K + 1)]


def raw_stream(quads) -> Iterator:
    """Interleaved element stream c_0, d_0, 1, e_0, f_0, c_1, d_1, 1, ..."""

    def from_source(src: ElementSource):
        k = 0
        while True:
            q = src.quad(k)
            yield q.c
            yield q.d
            yield src.one
            yield q.e
            yield q.f
            k += 1

    def from_list(seq):
        for q in seq:
            yield q.c
            yield q.d
            yield 1
            yield q.e
            yield q.f

    if isinstance(quads, ElementSource):
        return from_source(quads)
    return from_list(quads)


class PartialQuotientStream:
    """Contracted expansion [0; A_1, A_2, ...] with a possibly rational head.

    The head A_1 is an exact Fraction when a is not congruent to 1 modulo
    b - 1; the output is then flagged `improper` and the integer tail is the
    regular expansion of 1/value - A_1 continued.  Every element after the
    head is a positive integer (mode "exact") or its float log2 (mode
    "log").  `case_log` records which merge pattern fired at each block
    boundary as (block index, name) pairs.
    """

    def __init__(self, source: ElementSource):
        self.source = source
        self.improper = source.improper
        self.mode = source.mode
        self.case_log: List[Tuple[int, str]] = []
        self._elems: list = []
        self._gen = self._run()

    @property
    def emitted_count(self) -> int:
        return len(self._elems)

    def take(self, n: int, allow_partial: bool = False) -> list:
        """First n contracted elements A_1..A_n (fewer only if allowed)."""
        try:
            while len(self._elems) < n:
                self._elems.append(next(self._gen))
        except SizeBudgetExceeded:
            if not allow_partial:
                raise
        return list(self._elems[: min(n, len(self._elems))])

    # -- block consumption with rule (i) and the case log -----------------

    def _boundary_case(self, k: int) -> Optional[str]:
        """Zero pattern at the boundary between blocks k and k+1."""
        src = self.source
        f0 = src.digit(k + 1) == 0
        c0 = src.gap(k + 2) == 1
        d0 = src.t_zero(k + 1)
        if d0:
            assert f0, (k, "t_{k+1} = 0 forces b_{k+1} = 0")
        if not f0 and not c0:
            return None
        if f0 and not c0:
            return "ii5" if d0 else "ii2"
        if not f0:
            return "ii3"
        if d0:
            return "ii6"
        return "ii4"

    def _reduced(self) -> Iterator[Tuple[object, bool]]:
        """Post-rule-(i) elements as (value, structurally-zero) pairs."""
        src = self.source
        k = 0
        while True:
            fire = src.rule_i_fires(k)
            if k == 0:
                if not fire:
                    self.case_log.append((0, "head"))
            elif fire:
                if src.digit(k) == 0:
                    self.case_log.append((k, "ii1"))
            else:
                case = self._boundary_case(k - 1)
                if case is not None:
                    self.case_log.append((k, case))
            if fire:
                qk = src.quad(k)
                qk1 = src.quad(k + 1)
                if src.mode == "exact":
                    assert qk.f == 0
                    assert qk1.d == qk.d
                    assert qk1.c == -qk.e - 1
                self.case_log.append((k, "i"))
                collapsed = src.add(src.add(qk.c, qk1.e), src.one)
                yield collapsed, False
                # b_{k+2} = a_{k+2} >= 1, so f_{k+1} > 0
                yield qk1.f, False
                k += 2
            else:
                qd = src.quad(k)
                yield qd.c, src.c_is_zero(k)
                yield qd.d, src.t_zero(k)
                yield src.one, False
                yield qd.e, False
                yield qd.f, src.digit(k + 1) == 0
                k += 1

    def _run(self) -> Iterator:
        src = self.source
        out: List[list] = []  # [value, zero] cells
        first = True
        for value, zero in self._reduced():
            if src.mode == "exact" and not zero and not isinstance(value, Fraction):
                assert value > 0, value
            out.append([value, zero])
            while len(out) >= 3 and out[-2][1]:
                x, _, y = out[-3], out[-2], out[-1]
                out[-3:] = [[src.add(x[0], y[0]), x[1] and y[1]]]
            while len(out) >= 2 and not out[1][1]:
                v, z = out.pop(0)
                if z:
                    raise NonPositiveResidual("zero survived contraction")
                if src.mode == "exact":
                    if first:
                        if v <= 0:
                            raise NonPositiveResidual(f"head {v} not positive")
                    elif not isinstance(v, int) or v < 1:
                        raise NonPositiveResidual(f"element {v!r} not a positive integer")
                first = False
                yield v


def contract(source: ElementSource) -> PartialQuotientStream:
    """Apply both contraction rules to the element stream of `source`."""
    return PartialQuotientStream(source)


def expand_xi(
    slope: SlopeSpec,
    intercept,
    b: int,
    a: int,
    N: Optional[int] = None,
    max_bits: Optional[int] = None,
    allow_partial: bool = False,
) -> PartialQuotientStream:
    """Contracted continued fraction of (b-1) * xi_s(1/b, 1/a).

    `intercept` may be an InterceptSpec, a DigitProvider, or a plain digit
    list.  With N given, the first N elements are materialised eagerly.
    """
    stream = contract(ElementSource(slope, intercept, b, a, max_bits=max_bits))
    if N is not None:
        stream.take(N, allow_partial=allow_partial)
    return stream


def expand_log(
    slope: SlopeSpec,
    intercept,
    b: int,
    a: int,
    N: Optional[int] = None,
) -> PartialQuotientStream:
    """Log-domain twin of expand_xi: elements come out as float log2 values."""
    stream = contract(ElementSource(slope, intercept, b, a, mode="log"))
    if N is not None:
        stream.take(N)
    return stream


def xi_from_F(F_value, b: int, a: int, floor_theta_plus_rho: int = 0):
    """xi = (b-1)^2/b * F + floor(theta+rho) * (b-1) / (b^2 a)."""
    if floor_theta_plus_rho not in (0, 1):
        raise ValueError("floor(theta+rho) is 0 or 1")
    scale = Fraction((b - 1) ** 2, b)
    shift = Fraction((b - 1) * floor_theta_plus_rho, b * b * a)
    if isinstance(F_value, RealInterval):
        return RealInterval(F_value.lo * scale + shift, F_value.hi * scale + shift)
    return F_value * scale + shift


def F_from_xi(xi_value, b: int, a: int, floor_theta_plus_rho: int = 0):
    """Inverse of xi_from_F."""
    if floor_theta_plus_rho not in (0, 1):
        raise ValueError("floor(theta+rho) is 0 or 1")
    scale = Fraction((b - 1) ** 2, b)
    shift = Fraction((b - 1) * floor_theta_plus_rho, b * b * a)
    if isinstance(xi_value, RealInterval):
        return RealInterval(
            (xi_value.lo - shift) / scale, (xi_value.hi - shift) / scale
        )
    return (xi_value - shift) / scale
