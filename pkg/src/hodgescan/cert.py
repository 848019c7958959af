"""Interval certificate for a computed Picard lattice.

Cohomology vectors are coefficient vectors in the dual basis
``gamma_1^*..gamma_m^*``.  The cup product there is the inverse of the
homology intersection matrix, and a homology class ``x`` corresponds to the
cohomology vector ``x I``.  The rows of the real period matrix span the
plane U on which the cup product is positive; the canonical norm flips the
sign of the cup product on the part of the primitive cohomology orthogonal
to U, which makes it positive definite.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import exactlin as el
from .errors import NegativeNormEnclosure, NonpositiveNorm
from .interval import DEFAULT_PREC, Interval, idot, interval_gram_schmidt, interval_matrix, mul_up, round_up

GUARD_BITS = 64


def precision_for_digits(digits):
    """Working precision: the input's decimal precision plus guard bits."""
    if not digits:
        return DEFAULT_PREC
    return max(128, math.ceil(digits * math.log2(10)) + GUARD_BITS)


def cup_matrix(intersection):
    """Cup product on cohomology: the inverse of the intersection matrix."""
    return el.inverse(intersection)


def homology_to_cohomology(x, intersection):
    return el.vecmat(x, intersection)


@dataclass
class ProjectorEnclosure:
    """Enclosure of the orthogonal projection onto U.

    ``ortho_rows`` encloses a cup-orthonormal basis ``e_k`` of U;
    ``coefficients(v)`` encloses ``(e_k . cup . v)_k`` and ``apply(v)``
    encloses ``v_U = sum_k c_k e_k``.
    """

    ortho_rows: list
    cup: list
    prec: int = DEFAULT_PREC

    def coefficients(self, v):
        w = el.vecmat(v, self.cup)  # cup . v as an exact rational vector
        return [idot(e, w, self.prec) for e in self.ortho_rows]

    def apply(self, v):
        c = self.coefficients(v)
        m = len(self.cup)
        zero = Interval.exact(0, self.prec)
        out = []
        for j in range(m):
            acc = zero
            for ck, e in zip(c, self.ortho_rows):
                acc = acc + ck * e[j]
            out.append(acc)
        return out


def period_rows(periods, radii=0):
    """Real rows (real parts, then imaginary parts) and matching radii.

    ``periods`` is m x r of ``(re, im)`` pairs; the result is 2r x m.
    """
    from .relations import to_fraction

    m = len(periods)
    r = len(periods[0]) if periods else 0
    centers, rads = [], []
    for part in (0, 1):
        for k in range(r):
            centers.append([to_fraction(periods[i][k][part]) for i in range(m)])
            if isinstance(radii, (list, tuple)):
                rads.append([to_fraction(radii[i][k]) for i in range(m)])
            else:
                rads.append([to_fraction(radii)] * m)
    return centers, rads


def projector_enclosure(period_enclosure, intersection, prec=DEFAULT_PREC):
    """Orthonormalize the period rows under the cup product, with intervals.

    ``period_enclosure`` is an interval matrix (see
    :func:`hodgescan.interval.interval_matrix`) whose rows are the real and
    imaginary parts of the periods.
    """
    cup = cup_matrix(intersection)
    ortho = interval_gram_schmidt(period_enclosure, cup, prec)
    return ProjectorEnclosure(ortho, cup, prec)


def projector_from_periods(periods, radii, intersection, prec=DEFAULT_PREC):
    centers, rads = period_rows(periods, radii)
    return projector_enclosure(interval_matrix(centers, rads, prec), intersection, prec)


def canonical_norm_interval(v, proj, h, d):
    """Interval containing the squared canonical norm of the cohomology vector v.

    ``|v|^2 = (v.h)^2/d - v_prim.v_prim + 2 v_prim.v_U`` where
    ``v_prim = v - (v.h/d) h``; every term except ``v_U`` is exact.  The
    lower end is clipped at 0 since the norm is positive definite.
    """
    cup = proj.cup
    vh = el.bilinear(v, cup, h)
    vprim = [Fraction(a) - Fraction(vh, d) * b for a, b in zip(v, h)]
    exact = Fraction(vh * vh, d) - el.bilinear(vprim, cup, vprim)
    vU = proj.apply(v)
    cross = idot(el.vecmat(vprim, cup), vU, proj.prec)
    total = cross * 2 + exact
    if total.hi < 0:
        raise NegativeNormEnclosure("canonical norm enclosure is entirely negative", upper=str(total.hi))
    if total.lo < 0:
        total = Interval(0, total.hi, total.prec)
    return total


def dist_to_Uperp(v, proj):
    """Interval containing the distance from v to the cup-orthogonal of U.

    This is the length of ``v_U``, i.e. the Euclidean length of its
    coordinates in the orthonormal basis of U.
    """
    c = proj.coefficients(v)
    acc = Interval.exact(0, proj.prec)
    for ck in c:
        acc = acc + ck.square()
    return acc.sqrt()


def norm_equivalence_constants(basis_norm_intervals, prec=DEFAULT_PREC):
    """``(xi1, xi2)`` with ``xi1 |v| <= |v|_can <= xi2 |v|`` for all v.

    Inputs are intervals enclosing the canonical norms of the coordinate
    basis vectors.  ``xi2`` is rounded up and ``xi1`` down.
    """
    if not basis_norm_intervals:
        raise NonpositiveNorm("no basis norms given")
    up = Interval.exact(0, prec)
    inv = Interval.exact(0, prec)
    for i, iv in enumerate(basis_norm_intervals):
        if not iv.is_positive():
            raise NonpositiveNorm(f"norm interval {i} is not certified positive", index=i)
        up = up + Interval(iv.hi, iv.hi, prec).square()
        lo = Interval(iv.lo, iv.lo, prec)
        inv = inv + Interval.exact(1, prec) / lo.square()
    xi2 = up.sqrt().hi
    xi1 = (Interval.exact(1, prec) / inv.sqrt()).lo
    return xi1, xi2


@dataclass
class Certificate:
    """Half of a correctness certificate for a computed Picard lattice.

    If every generator of the true Picard group has canonical norm below
    ``B`` then it lies in the computed lattice; if no integral class of norm
    at most ``N`` lies at nonzero distance at most ``eps`` from ``U^perp``
    then the computed lattice consists of algebraic classes.  The two
    thresholds on the right-hand side are not computed here.
    """

    B: mpmath.mpf
    N: mpmath.mpf
    eps: mpmath.mpf
    xi1: mpmath.mpf
    xi2: mpmath.mpf
    B_lattice: mpmath.mpf
    norm_intervals: list = field(default_factory=list)
    dist_intervals: list = field(default_factory=list)
    basis_norm_intervals: list = field(default_factory=list)


def certificate(pl, rel, proj, d, intersection, h_homology):
    """Assemble ``(B, N, eps)`` for the lattice ``pl`` recovered as ``rel``.

    Generators and the polarization are given in homology and converted to
    cohomology through the intersection matrix.  The coordinate norm used
    for ``B_Lambda`` is that of the homology coordinates, so the
    equivalence constants come from the canonical norms of the duals of the
    homology basis vectors, which are the rows of the intersection matrix.
    """
    prec = proj.prec
    h = homology_to_cohomology(h_homology, intersection)
    basis_norms = [canonical_norm_interval(list(row), proj, h, d).sqrt() for row in intersection]
    xi1, xi2 = norm_equivalence_constants(basis_norms, prec)
    B_lattice = rel.B_bound if hasattr(rel, "B_bound") else rel
    if mpmath.isfinite(B_lattice):
        B = mul_up(xi2, round_up(B_lattice, prec), prec)
    else:
        B = mpmath.inf
    gens = pl.basis_in_homology if pl is not None else rel.lattice
    norms, dists = [], []
    N = mpmath.mpf(0)
    eps = mpmath.mpf(0)
    for g in gens:
        v = homology_to_cohomology(g, intersection)
        nv = canonical_norm_interval(v, proj, h, d).sqrt()
        dv = dist_to_Uperp(v, proj)
        norms.append(nv)
        dists.append(dv)
        N = max(N, nv.hi)
        eps = max(eps, dv.hi)
    return Certificate(B, N, eps, xi1, xi2, B_lattice, norms, dists, basis_norms)


# ---------------------------------------------------------------------------
# exact rational reference values (used to validate the enclosures)


def exact_projection(v, rows, cup):
    """Exact ``v_U`` for rational rows spanning U."""
    w = el.vecmat(v, cup)
    G = [[el.bilinear(a, cup, b) for b in rows] for a in rows]
    rhs = [el.dot(a, w) for a in rows]
    c = el.solve(G, rhs)
    return el.vecmat(c, rows)


def exact_canonical_norm_sq(v, rows, cup, h, d):
    vU = exact_projection(v, rows, cup)
    vh = el.bilinear(v, cup, h)
    vprim = [Fraction(a) - Fraction(vh, d) * b for a, b in zip(v, h)]
    return Fraction(vh * vh, d) - el.bilinear(vprim, cup, vprim) + 2 * el.bilinear(vprim, cup, vU)


def exact_dist_sq(v, rows, cup):
    vU = exact_projection(v, rows, cup)
    return el.bilinear(vU, cup, vU)
