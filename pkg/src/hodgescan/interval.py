"""Outward-rounded interval arithmetic on multiprecision binary floats.

Endpoints are mpmath raw floats manipulated through ``mpmath.libmp`` so every
operation can pick its rounding direction explicitly (floor for lower ends,
ceiling for upper ends).  Each interval carries its own working precision in
bits; binary operations use the larger of the two.
"""

from decimal import Decimal
from fractions import Fraction

import mpmath
from mpmath import libmp

from .errors import SingularEnclosure

DEFAULT_PREC = 512

_DOWN, _UP = libmp.round_floor, libmp.round_ceiling
_ZERO = libmp.fzero


def exact_fraction(x):
    """Exact rational value of an int, float, decimal string, Decimal or mpf."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Decimal)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(Decimal(x.strip()))
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, mpmath.mpf):
        sign, man, exp, _ = x._mpf_
        q = Fraction(man) * Fraction(2) ** exp
        return -q if sign else q
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def _from_fraction(q, prec, rnd):
    return libmp.from_rational(q.numerator, q.denominator, prec, rnd)


def _to_mpf(raw):
    return mpmath.mp.make_mpf(raw)


def _raw(x):
    if isinstance(x, tuple):
        return x
    if isinstance(x, mpmath.mpf):
        return x._mpf_
    if isinstance(x, int):
        return libmp.from_int(x)
    if isinstance(x, float):
        return libmp.from_float(x)
    raise TypeError(f"unsupported endpoint type {type(x).__name__}")


def _mul_bounds(a_lo, a_hi, b_lo, b_hi, prec):
    lows = [libmp.mpf_mul(x, y, prec, _DOWN) for x in (a_lo, a_hi) for y in (b_lo, b_hi)]
    highs = [libmp.mpf_mul(x, y, prec, _UP) for x in (a_lo, a_hi) for y in (b_lo, b_hi)]
    return min(lows, key=_to_mpf), max(highs, key=_to_mpf)


class Interval:
    """Closed interval ``[lo, hi]``; construct with :meth:`exact` or :meth:`ball`."""

    __slots__ = ("_lo", "_hi", "prec")

    def __init__(self, lo, hi, prec=DEFAULT_PREC):
        lo, hi = _raw(lo), _raw(hi)
        if lo == libmp.fnan or hi == libmp.fnan:
            raise ValueError("NaN endpoint")
        if libmp.mpf_gt(lo, hi):
            raise ValueError("empty interval: lo > hi")
        self._lo, self._hi, self.prec = lo, hi, prec

    # -- constructors -----------------------------------------------------
    @classmethod
    def exact(cls, x, prec=DEFAULT_PREC):
        """Tightest enclosure of the exact rational (or decimal string) ``x``."""
        q = exact_fraction(x)
        return cls(_from_fraction(q, prec, _DOWN), _from_fraction(q, prec, _UP), prec)

    @classmethod
    def ball(cls, center, radius, prec=DEFAULT_PREC):
        """Enclosure of ``[center - radius, center + radius]``."""
        c = exact_fraction(center)
        r = exact_fraction(radius)
        if r < 0:
            raise ValueError("negative radius")
        return cls(_from_fraction(c - r, prec, _DOWN), _from_fraction(c + r, prec, _UP), prec)

    # -- accessors --------------------------------------------------------
    @property
    def lo(self):
        return _to_mpf(self._lo)

    @property
    def hi(self):
        return _to_mpf(self._hi)

    @property
    def center(self):
        return _to_mpf(libmp.mpf_shift(libmp.mpf_add(self._lo, self._hi, self.prec + 2), -1))

    @property
    def radius(self):
        """Upper bound on the half-width."""
        w = libmp.mpf_sub(self._hi, self._lo, self.prec, _UP)
        return _to_mpf(libmp.mpf_shift(w, -1))

    def contains(self, x):
        """Exact containment test for rationals, decimal strings and floats."""
        if isinstance(x, Interval):
            return libmp.mpf_le(self._lo, x._lo) and libmp.mpf_ge(self._hi, x._hi)
        q = exact_fraction(x)
        return exact_fraction(self.lo) <= q <= exact_fraction(self.hi)

    def __contains__(self, x):
        return self.contains(x)

    def is_positive(self):
        return libmp.mpf_gt(self._lo, _ZERO)

    def __repr__(self):
        return f"Interval({mpmath.nstr(self.lo, 15)}, {mpmath.nstr(self.hi, 15)})"

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Interval):
            return other
        return Interval.exact(other, self.prec)

    def __add__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return Interval(libmp.mpf_add(self._lo, o._lo, p, _DOWN), libmp.mpf_add(self._hi, o._hi, p, _UP), p)

    __radd__ = __add__

    def __neg__(self):
        return Interval(libmp.mpf_neg(self._hi), libmp.mpf_neg(self._lo), self.prec)

    def __sub__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return Interval(libmp.mpf_sub(self._lo, o._hi, p, _DOWN), libmp.mpf_sub(self._hi, o._lo, p, _UP), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        return Interval(*_mul_bounds(self._lo, self._hi, o._lo, o._hi, p), p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if not (libmp.mpf_gt(o._lo, _ZERO) or libmp.mpf_lt(o._hi, _ZERO)):
            raise ZeroDivisionError("interval divisor contains zero")
        p = max(self.prec, o.prec)
        inv_lo = libmp.mpf_div(libmp.fone, o._hi, p, _DOWN)
        inv_hi = libmp.mpf_div(libmp.fone, o._lo, p, _UP)
        return self * Interval(inv_lo, inv_hi, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def square(self):
        """Tight square: never dips below zero when the interval straddles it."""
        p = self.prec
        lo_abs = libmp.mpf_abs(self._lo)
        hi_abs = libmp.mpf_abs(self._hi)
        big = hi_abs if libmp.mpf_ge(hi_abs, lo_abs) else lo_abs
        hi = libmp.mpf_mul(big, big, p, _UP)
        if libmp.mpf_le(self._lo, _ZERO) and libmp.mpf_ge(self._hi, _ZERO):
            return Interval(_ZERO, hi, p)
        small = lo_abs if libmp.mpf_le(lo_abs, hi_abs) else hi_abs
        return Interval(libmp.mpf_mul(small, small, p, _DOWN), hi, p)

    def sqrt(self):
        """Square root of the non-negative part; the lower end is clipped at 0."""
        if libmp.mpf_lt(self._hi, _ZERO):
            raise ValueError("square root of a negative interval")
        lo = self._lo if libmp.mpf_gt(self._lo, _ZERO) else _ZERO
        return Interval(libmp.mpf_sqrt(lo, self.prec, _DOWN), libmp.mpf_sqrt(self._hi, self.prec, _UP), self.prec)

    def hull(self, other):
        o = self._coerce(other)
        lo = self._lo if libmp.mpf_le(self._lo, o._lo) else o._lo
        hi = self._hi if libmp.mpf_ge(self._hi, o._hi) else o._hi
        return Interval(lo, hi, max(self.prec, o.prec))


def upper_sqrt(n, prec=DEFAULT_PREC):
    """Upper-rounded square root of a non-negative exact rational."""
    q = exact_fraction(n)
    return _to_mpf(libmp.mpf_sqrt(_from_fraction(q, prec, _UP), prec, _UP))


def round_up(x, prec=DEFAULT_PREC):
    return _to_mpf(_from_fraction(exact_fraction(x), prec, _UP))


def mul_up(a, b, prec=DEFAULT_PREC):
    """Product of two binary floats (or ints), rounded up."""
    return _to_mpf(libmp.mpf_mul(_raw(a), _raw(b), prec, _UP))


# ---------------------------------------------------------------------------
# Interval vectors and matrices (lists of Interval)


def interval_matrix(centers, radii=None, prec=DEFAULT_PREC):
    """Build an interval matrix from exact centers and (optional) radii."""
    if radii is None:
        return [[Interval.exact(c, prec) for c in row] for row in centers]
    return [[Interval.ball(c, r, prec) for c, r in zip(crow, rrow)] for crow, rrow in zip(centers, radii)]


def idot(u, v, prec=DEFAULT_PREC):
    """Interval dot product; either side may hold exact numbers."""
    acc = Interval.exact(0, prec)
    for a, b in zip(u, v):
        if isinstance(a, Interval):
            acc = acc + a * b
        elif isinstance(b, Interval):
            acc = acc + b * a
        elif a and b:
            acc = acc + Interval.exact(Fraction(a) * Fraction(b), prec)
    return acc


def imatvec(M, v, prec=DEFAULT_PREC):
    return [idot(row, v, prec) for row in M]


def ivecmat(v, M, prec=DEFAULT_PREC):
    if not M:
        return []
    return [idot(v, col, prec) for col in zip(*M)]


def interval_gram_schmidt(rows, form, prec=DEFAULT_PREC):
    """Orthonormalize interval rows with respect to a symmetric rational form.

    Classical Gram-Schmidt in input row order, without pivoting.  Every
    operation is an inclusion function, so the output encloses the exact
    orthonormalization of every member of the input enclosure.

    Raises :class:`SingularEnclosure` when a squared pivot norm cannot be
    certified positive.
    """
    ortho = []
    for i, row in enumerate(rows):
        u = list(row)
        for e in ortho:
            c = idot(u, ivecmat(e, form, prec), prec)
            u = [a - c * b for a, b in zip(u, e)]
        n2 = idot(u, ivecmat(u, form, prec), prec)
        if not n2.is_positive():
            raise SingularEnclosure(f"pivot {i} norm interval {n2!r} is not positive", pivot=i)
        norm = n2.sqrt()
        ortho.append([a / norm for a in u])
    return ortho
