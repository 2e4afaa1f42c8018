"""Scalar layer: integer roots, quadratic numbers, intervals, directed rounding."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from heckemahler.numbers import (
    ExactFraction,
    QuadraticNumber,
    RealInterval,
    floor_quadratic,
    frac_pow_bounds,
    iroot,
    iroot_ceil,
    log2_frac,
    log2_int,
    logaddexp2,
    logsubexp2,
    pow_frac_down,
    pow_frac_up,
    round_frac,
    squarefree_part,
)


def test_iroot_brackets():
    rng = random.Random(101)
    for _ in range(300):
        n = rng.randrange(0, 10 ** rng.randint(1, 30))
        k = rng.randint(1, 7)
        r = iroot(n, k)
        assert r ** k <= n < (r + 1) ** k
        rc = iroot_ceil(n, k)
        assert (rc - 1) ** k < n <= rc ** k or (n == 0 and rc == 0)


def test_iroot_rejects_bad_input():
    with pytest.raises(ValueError):
        iroot(-1, 2)
    with pytest.raises(ValueError):
        iroot(4, 0)


def test_squarefree_part():
    assert squarefree_part(1) == (1, 1)
    assert squarefree_part(4) == (2, 1)
    assert squarefree_part(18) == (3, 2)
    assert squarefree_part(50) == (5, 2)
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 10 ** 9)
        m, d = squarefree_part(n)
        assert m * m * d == n
        i = 2
        while i * i <= d:
            assert d % (i * i) != 0
            i += 1


def test_floor_quadratic_against_exact_comparison():
    rng = random.Random(23)
    for _ in range(400):
        A = rng.randint(-10 ** 6, 10 ** 6)
        B = rng.randint(-10 ** 3, 10 ** 3)
        D = rng.randint(2, 10 ** 4)
        L = rng.choice([1, -1]) * rng.randint(1, 10 ** 3)
        n = floor_quadratic(A, B, D, L)
        # n <= (A + B*sqrt(D))/L < n + 1, checked in the quadratic field
        x = QuadraticNumber(Fraction(A, L), Fraction(B, L), D)
        assert QuadraticNumber(n) <= x
        assert x < QuadraticNumber(n + 1)


def test_quadratic_number_arithmetic_closure():
    rng = random.Random(55)
    for _ in range(150):
        x = QuadraticNumber(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 9)), 5)
        y = QuadraticNumber(Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                            Fraction(rng.randint(-9, 9), rng.randint(1, 9)), 5)
        s = x + y
        p = x * y
        fx, fy = float(x), float(y)
        assert abs(float(s) - (fx + fy)) < 1e-9
        assert abs(float(p) - fx * fy) < max(1e-9, 1e-12 * abs(fx * fy))
        if y:
            q = x / y
            assert abs(float(q) * fy - fx) < 1e-6
            assert (q * y - x).sign() == 0


def test_quadratic_number_inverse_and_conjugate():
    x = QuadraticNumber(Fraction(3), Fraction(1), 2)  # 3 + sqrt(2)
    assert x * x.inverse() == QuadraticNumber(1)
    c = x.conjugate()
    assert x * c == QuadraticNumber(9 - 2)
    assert (x + c) == QuadraticNumber(6)


def test_quadratic_number_normalises_square_d():
    # sqrt(18) = 3*sqrt(2); a perfect-square d collapses to the rational part
    x = QuadraticNumber(0, 1, 18)
    assert x.d == 2 and x.coef == 3
    y = QuadraticNumber(1, 2, 9)
    assert y.is_rational() and y.rat == 7


def test_quadratic_number_incompatible_surds():
    x = QuadraticNumber(0, 1, 2)
    y = QuadraticNumber(0, 1, 3)
    with pytest.raises(ValueError):
        x + y
    assert not (x == y)


def test_quadratic_number_floor_and_interval():
    rng = random.Random(6)
    for _ in range(200):
        x = QuadraticNumber(Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
                            Fraction(rng.randint(-50, 50), rng.randint(1, 20)),
                            rng.choice([2, 3, 5, 13]))
        f = x.floor()
        assert QuadraticNumber(f) <= x < QuadraticNumber(f + 1)
        iv = x.interval(100)
        assert iv.width() <= Fraction(1, 2 ** 100)
        assert iv.lo <= float(x) + 1e-9 and float(x) - 1e-9 <= iv.hi


def test_quadratic_number_comparisons():
    sqrt2 = QuadraticNumber(0, 1, 2)
    assert sqrt2 > 1
    assert sqrt2 < Fraction(3, 2)
    assert sqrt2 * sqrt2 == 2
    # sign decisions on mixed-sign components go through the norm
    assert QuadraticNumber(-7, 5, 2) > 0
    assert QuadraticNumber(7, -5, 2) < 0
    assert QuadraticNumber(Fraction(-3, 2), 1, 2) < 0


def test_real_interval_operations_contain_point_results():
    rng = random.Random(99)
    for _ in range(200):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 10))
        b = a + Fraction(rng.randint(0, 10), rng.randint(1, 10))
        c = Fraction(rng.randint(-50, 50), rng.randint(1, 10))
        d = c + Fraction(rng.randint(0, 10), rng.randint(1, 10))
        x = RealInterval(a, b)
        y = RealInterval(c, d)
        px = a + (b - a) / 3
        py = c + (d - c) / 2
        assert px + py in x + y
        assert px - py in x - y
        assert px * py in x * y
        if not (y.lo <= 0 <= y.hi):
            assert px / py in x / y


def test_real_interval_basics():
    iv = RealInterval(Fraction(1, 3), Fraction(1, 2))
    assert iv.mid() == Fraction(5, 12)
    assert iv.width() == Fraction(1, 6)
    assert Fraction(2, 5) in iv
    assert iv.overlaps(RealInterval(Fraction(1, 2), 2))
    assert not iv.overlaps(RealInterval(2, 3))
    assert iv.floor_pair() == (0, 0)
    with pytest.raises(ValueError):
        RealInterval(1, 0)
    with pytest.raises(ZeroDivisionError):
        RealInterval(-1, 1).inverse()


def test_real_interval_round_to_is_outward():
    iv = RealInterval(Fraction(1, 3), Fraction(2, 3))
    r = iv.round_to(16)
    assert r.lo <= iv.lo and iv.hi <= r.hi
    assert r.lo.denominator <= 1 << 16 and r.hi.denominator <= 1 << 16
    assert r.width() <= iv.width() + Fraction(2, 1 << 16)


def test_exact_fraction_farey():
    a = ExactFraction(1, 2)
    b = ExactFraction(1, 3)
    c = a.farey(3, b)
    assert c.num == 4 and c.den == 9
    anchor = ExactFraction(1, 0)
    assert anchor.formal
    assert anchor.farey(2, b) == ExactFraction(3, 3)
    # fractional coefficients must cancel to integers
    half = ExactFraction(2, 4)
    assert half.farey(Fraction(1, 2), b) == ExactFraction(2, 5)
    with pytest.raises(ValueError):
        a.farey(Fraction(1, 3), b)


def test_round_frac_directed():
    rng = random.Random(17)
    for _ in range(200):
        x = Fraction(rng.randint(1, 10 ** 12), rng.randint(1, 10 ** 12))
        up = round_frac(x, 24, True)
        dn = round_frac(x, 24, False)
        assert dn <= x <= up
        assert up - dn <= x / 2 ** 22


def test_pow_frac_brackets_exact_power():
    rng = random.Random(31)
    for _ in range(60):
        x = Fraction(rng.randint(1, 99), 100)
        n = rng.randint(0, 200)
        exact = x ** n
        assert pow_frac_down(x, n) <= exact <= pow_frac_up(x, n)


def test_frac_pow_bounds():
    lo, hi = frac_pow_bounds(Fraction(1, 3), 2, 3)
    # brackets (1/3)**(2/3): check by cubing
    assert lo ** 3 <= Fraction(1, 9) <= hi ** 3
    assert hi - lo < Fraction(1, 2 ** 32)
    t, t2 = frac_pow_bounds(Fraction(2, 5), 3, 1)
    assert t == t2 == Fraction(8, 125)


def test_log_helpers():
    assert log2_int(1) == 0.0
    assert log2_int(1 << 100) == 100.0
    big = 7 ** 500
    assert abs(log2_int(big) - 500 * math.log2(7)) < 1e-9
    assert abs(log2_frac(Fraction(3, 4)) - math.log2(0.75)) < 1e-12
    assert logaddexp2(3.0, 3.0) == 4.0
    assert logaddexp2(10.0, -math.inf) == 10.0
    assert abs(logsubexp2(4.0, 3.0) - 3.0) < 1e-12
    assert logsubexp2(5.0, -math.inf) == 5.0
    with pytest.raises(ValueError):
        logsubexp2(3.0, 3.0)
