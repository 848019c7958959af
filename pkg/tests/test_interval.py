from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgescan.errors import SingularEnclosure
from hodgescan.interval import Interval, exact_fraction, interval_gram_schmidt, interval_matrix, mul_up, round_up

fracs = st.fractions(min_value=-1000, max_value=1000, max_denominator=10 ** 6)
radii = st.fractions(min_value=0, max_value=1, max_denominator=1000)
PREC = 80  # low precision makes rounding visible


def members(c, r):
    return [c - r, c, c + r, c - r / 3]


@given(fracs, radii, fracs, radii)
def test_arithmetic_encloses_members(a, ra, b, rb):
    A, B = Interval.ball(a, ra, PREC), Interval.ball(b, rb, PREC)
    for x in members(a, ra):
        for y in members(b, rb):
            assert (A + B).contains(x + y)
            assert (A - B).contains(x - y)
            assert (A * B).contains(x * y)
            assert A.square().contains(x * x)
            if not B.contains(0):
                assert (A / B).contains(x / y)


@given(st.fractions(min_value=0, max_value=10 ** 6, max_denominator=1000))
def test_sqrt_encloses(q):
    iv = Interval.exact(q, PREC).sqrt()
    assert exact_fraction(iv.lo) ** 2 <= q <= exact_fraction(iv.hi) ** 2
    assert iv.radius < mpmath.mpf(2) ** -(PREC - 25)


def test_exact_fraction_keeps_sign():
    assert exact_fraction(mpmath.mpf(-2)) == -2
    assert exact_fraction(mpmath.mpf("-0.375")) == Fraction(-3, 8)
    assert Interval.exact(-5).contains(-5)
    assert not Interval.exact(-5).contains(5)


def test_exact_is_tight_and_contains_decimal():
    iv = Interval.exact("0.1", PREC)
    assert iv.contains(Fraction(1, 10))
    assert iv.radius < mpmath.mpf(2) ** -(PREC - 2)


def test_division_by_interval_containing_zero():
    with pytest.raises(ZeroDivisionError):
        Interval.exact(1) / Interval.ball(0, Fraction(1, 10))


def test_directed_helpers():
    x = mpmath.mpf(1) / 3
    assert round_up(x, 20) >= x
    assert mul_up(mpmath.mpf(1) / 3, mpmath.mpf(3), 10) >= 1


@given(st.integers(0, 10 ** 6))
def test_gram_schmidt_encloses_exact_orthonormalization(seed):
    import random
    rng = random.Random(seed)
    n = 3
    form = [[Fraction(int(i == j) * rng.randint(1, 4)) for j in range(n)] for i in range(n)]
    rows = [[Fraction(rng.randint(-5, 5), rng.randint(1, 5)) for _ in range(n)] for _ in range(2)]
    rows[0][0] += 7  # keep the rows independent
    rows[1][1] += 7
    enc = interval_gram_schmidt(interval_matrix(rows, None, 200), form, 200)
    # exact Gram-Schmidt on the same rows (norms are irrational, so compare squares)
    def b(u, v):
        return sum(u[i] * form[i][j] * v[j] for i in range(n) for j in range(n))
    u0 = rows[0]
    n0 = b(u0, u0)
    u1 = [x - b(rows[1], u0) / n0 * y for x, y in zip(rows[1], u0)]
    n1 = b(u1, u1)
    for k, (u, nn) in enumerate(((u0, n0), (u1, n1))):
        for j in range(n):
            e = enc[k][j]
            assert below(exact_fraction(e.lo), u[j], nn)
            assert below(-exact_fraction(e.hi), -u[j], nn)


def below(x, u, nn):
    """Exact test of ``x <= u / sqrt(nn)``."""
    if x <= 0 <= u:
        return True
    if x > 0 >= u:
        return False
    if x > 0:
        return x * x * nn <= u * u
    return x * x * nn >= u * u


def test_gram_schmidt_monotone_in_radius():
    form = [[Fraction(1), 0], [0, Fraction(1)]]
    rows = [[Fraction(3), Fraction(1)], [Fraction(1), Fraction(2)]]
    wide = interval_gram_schmidt(interval_matrix(rows, [[Fraction(1, 100)] * 2] * 2, 200), form, 200)
    narrow = interval_gram_schmidt(interval_matrix(rows, [[Fraction(1, 10 ** 6)] * 2] * 2, 200), form, 200)
    for rw, rn in zip(wide, narrow):
        for w, nn in zip(rw, rn):
            assert w.contains(nn)


def test_gram_schmidt_singular():
    form = [[Fraction(1), 0], [0, Fraction(1)]]
    rows = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    with pytest.raises(SingularEnclosure):
        interval_gram_schmidt(interval_matrix(rows, None, 100), form, 100)
    assert interval_gram_schmidt([], form, 100) == []
