"""Polarized Picard lattice, transcendental complement and endomorphism ring.

Homology classes are integer row vectors in the basis ``gamma_1..gamma_m``
whose intersection matrix is ``pd.intersection``.  A class ``v`` pairs with a
cohomology class with coefficient vector ``c`` (in the dual basis) as
``c . v``; its Poincare dual has coefficient vector ``v I``.
"""

import random
from math import gcd
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from . import exactlin as el
from .errors import (
    InputError,
    NonDivisible,
    NotARing,
    PolarizationNotInLattice,
)
from .interval import DEFAULT_PREC
from .relations import (
    DEFAULT_GAP_TOLERANCE,
    ScaledPeriodMatrix,
    complex_to_real_columns,
    integer_relation_lattice,
    round_half_away,
    to_fraction,
)

MIN_POLY_ATTEMPTS = 10
IMAG_TOLERANCE = mpmath.mpf("1e-20")


@dataclass
class PeriodData:
    """Homology-side inputs: intersection form, polarization and periods.

    ``periods`` is an m x r matrix of ``(re, im)`` decimal pairs, one column
    per holomorphic form; ``radii`` has the same shape (or is one number).
    """

    intersection: list
    polarization_h: list
    periods: list
    radii: object = 0
    degree_d: int = 4
    dim_n: int = 2
    decimal_digits: int = None

    def __post_init__(self):
        I = self.intersection
        m = len(I)
        el.check_rectangular(I, "intersection")
        if I and len(I[0]) != m:
            raise InputError("intersection matrix is not square")
        if not el.is_symmetric(I):
            raise InputError("intersection matrix is not symmetric")
        if len(self.polarization_h) != m:
            raise InputError("polarization has the wrong length")
        if not any(self.polarization_h):
            raise InputError("polarization is zero")
        if len(self.periods) != m:
            raise InputError("period matrix has the wrong number of rows")

    @property
    def m(self):
        return len(self.intersection)

    @property
    def r(self):
        return len(self.periods[0]) if self.periods else 0

    def h_squared(self):
        return el.bilinear(self.polarization_h, self.intersection, self.polarization_h)

    def real_periods(self):
        """m x 2r real matrix: real parts first, then imaginary parts."""
        return complex_to_real_columns(self.periods)

    def real_radii(self):
        if isinstance(self.radii, (list, tuple)):
            return [list(row) + list(row) for row in self.radii]
        return self.radii


@dataclass
class PolarizedLattice:
    gram: list
    h_coords: list
    degree_d: int = 4
    basis_in_homology: list = None

    def __post_init__(self):
        el.check_rectangular(self.gram, "gram")
        if not el.is_symmetric(self.gram):
            raise InputError("Gram matrix is not symmetric")
        if len(self.h_coords) != len(self.gram):
            raise InputError("polarization coordinates have the wrong length")

    @property
    def rank(self):
        return len(self.gram)

    def h_squared(self):
        return el.bilinear(self.h_coords, self.gram, self.h_coords)

    def dot(self, u, v):
        return el.bilinear(u, self.gram, v)


@dataclass
class EndomorphismRing:
    ambient_rank: int
    basis: list
    min_poly: list
    totally_real: bool
    totally_real_method: str = "sturm"
    generator: list = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def rank(self):
        return len(self.basis)


def assemble_hodge_lattice(pd, rel):
    """Gram matrix and polarization coordinates of the recovered lattice."""
    basis = rel.lattice if hasattr(rel, "lattice") else rel
    if basis and len(basis[0]) != pd.m:
        raise InputError("relation vectors do not live in the homology of the period data")
    if not basis:
        raise PolarizationNotInLattice("empty lattice cannot contain the polarization")
    gram = el.matmul(el.matmul(basis, pd.intersection), el.transpose(basis))
    coords = el.integer_coordinates(basis, pd.polarization_h)
    if coords is None:
        raise PolarizationNotInLattice("the polarization is not an integer combination of the generators")
    return PolarizedLattice(gram, coords, pd.degree_d, [list(r) for r in basis])


def lattice_signature(gram):
    """``(positive, negative, zero)`` inertia of an integer Gram matrix."""
    return el.signature(gram)


def transcendental_complement(pl, pd):
    """Saturated basis of the orthogonal complement of the lattice in homology."""
    basis = pl.basis_in_homology if hasattr(pl, "basis_in_homology") else pl
    if not basis:
        return el.identity(pd.m)
    # v with v I g^t = 0 for every generator g
    return el.int_kernel(el.matmul(pd.intersection, el.transpose(basis)))


# ---------------------------------------------------------------------------
# complex vectors as pairs of Fractions


def _cmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def _cdiv(a, b):
    n = b[0] * b[0] + b[1] * b[1]
    return ((a[0] * b[0] + a[1] * b[1]) / n, (a[1] * b[0] - a[0] * b[1]) / n)


def _abs2(a):
    return a[0] * a[0] + a[1] * a[1]


def normalize_vector(A):
    """Divide by the entry of largest modulus (first one on ties)."""
    A = [(to_fraction(a[0]), to_fraction(a[1])) for a in A]
    j = max(range(len(A)), key=lambda i: (_abs2(A[i]), -i))
    if _abs2(A[j]) == 0:
        raise InputError("coefficient vector is zero")
    return [_cdiv(a, A[j]) for a in A], j


def transcendental_coordinates(T_basis, pd, column=0):
    """Coordinates A of the holomorphic form in the Poincare duals of T.

    The form has coefficient vector ``a`` (its periods); ``A`` solves
    ``a = A T I``, i.e. ``A T = a I^-1``.  The system is solved exactly on
    the decimal periods through an invertible column selection of T.
    """
    Iinv = el.inverse(pd.intersection)
    a = [(to_fraction(z[0]), to_fraction(z[1])) for z in (row[column] for row in pd.periods)]
    w_re = el.vecmat([z[0] for z in a], Iinv)
    w_im = el.vecmat([z[1] for z in a], Iinv)
    # pivot columns of T give an invertible square block
    _, pivots = el.rref(T_basis)
    Tsq = [[row[c] for c in pivots] for row in T_basis]
    Tinv = el.inverse(Tsq)
    re = el.vecmat([w_re[c] for c in pivots], Tinv)
    im = el.vecmat([w_im[c] for c in pivots], Tinv)
    return list(zip(re, im))


def endomorphism_equations(A):
    """Real coefficient matrix (rows indexed by entries of M) of ``M A ~ A``.

    With ``A`` normalized so that ``A_j = 1``, the condition that ``M A`` is
    a multiple of ``A`` is ``(M A)_k - A_k (M A)_j = 0`` for ``k != j``: that
    is ``rho' - 1`` complex, so ``2 (rho' - 1)`` real, independent equations.
    Returns ``(P, j)`` with P of shape ``rho'^2 x 2(rho' - 1)``.
    """
    A, j = normalize_vector(A)
    n = len(A)
    ks = [k for k in range(n) if k != j]
    zero = (Fraction(0), Fraction(0))
    rows = []
    for i in range(n):
        for c in range(n):
            coeffs = []
            for k in ks:
                # coefficient of M[i][c] in (M A)_k - A_k (M A)_j
                t = A[c] if i == k else zero
                if i == j:
                    s = _cmul(A[k], A[c])
                    t = (t[0] - s[0], t[1] - s[1])
                coeffs.append(t)
            rows.append([t[0] for t in coeffs] + [t[1] for t in coeffs])
    return rows, j


def _unvec(x, n):
    return [list(x[i * n:(i + 1) * n]) for i in range(n)]


def _vec(M):
    return [x for row in M for x in row]


def _in_span(basis_vecs, v):
    return el.solve_left(basis_vecs, v) is not None


def check_ring(basis, n):
    """Exact check that the Q-span of ``basis`` is a unital ring."""
    vecs = [_vec(M) for M in basis]
    if not _in_span(vecs, _vec(el.identity(n))):
        return False, "identity is not in the span"
    for X in basis:
        for Y in basis:
            if not _in_span(vecs, _vec(el.matmul(X, Y))):
                return False, "span is not closed under multiplication"
    return True, ""


def minimal_polynomial(X):
    """Integer minimal polynomial of a square rational matrix (highest degree first)."""
    n = len(X)
    powers = [_vec(el.identity(n))]
    P = el.identity(n)
    while True:
        P = el.matmul(P, X)
        v = _vec(P)
        c = el.solve_left(powers, v)
        if c is not None:
            # X^k = sum c_i X^i
            coeffs = [Fraction(1)] + [-x for x in reversed(c)]
            den = 1
            for x in coeffs:
                den = den * x.denominator // gcd(den, x.denominator)
            ints = [int(x * den) for x in coeffs]
            g = 0
            for x in ints:
                g = gcd(g, x)
            return [x // g for x in ints]
        powers.append(v)


def _poly_rem(a, b):
    a = list(a)
    while len(a) >= len(b) and any(a):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def real_root_count(poly):
    """Number of distinct real roots via a Sturm sequence (exact)."""
    p = [Fraction(x) for x in poly]
    while p and p[0] == 0:
        p.pop(0)
    deg = len(p) - 1
    if deg <= 0:
        return 0
    dp = [c * (deg - i) for i, c in enumerate(p[:-1])]
    seq = [p, dp]
    while True:
        r = _poly_rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-x for x in r])

    def changes(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))

    at_pos = [q[0] for q in seq]
    at_neg = [q[0] * (-1) ** (len(q) - 1) for q in seq]
    return changes(at_neg) - changes(at_pos)


def is_totally_real(poly):
    """Exact Sturm test; falls back to numerical roots if the test fails."""
    try:
        return real_root_count(poly) == len(poly) - 1, "sturm"
    except (ZeroDivisionError, ArithmeticError):
        roots = mpmath.polyroots([int(c) for c in poly], maxsteps=200, extraprec=200)
        return all(abs(mpmath.im(r)) < IMAG_TOLERANCE for r in roots), "numeric"


def endomorphism_ring_from_vector(A, beta, gap_tolerance=DEFAULT_GAP_TOLERANCE, seed=0,
                                  prec=DEFAULT_PREC, progress=None):
    """Endomorphism ring of the line spanned by the complex vector A.

    ``A`` is a list of ``(re, im)`` pairs (decimal strings or rationals).
    """
    n = len(A)
    if n == 0:
        raise InputError("empty coefficient vector")
    if n == 1:
        basis = [[[1]]]
        return EndomorphismRing(1, basis, [1, -1], True, "sturm", [[1]], {"relation_rank": 1})
    P, j = endomorphism_equations(A)
    Q = [[round_half_away(x * beta) for x in row] for row in P]
    rel = integer_relation_lattice(ScaledPeriodMatrix(Q, int(beta)), gap_tolerance,
                                   progress=progress, prec=prec)
    basis = [_unvec(v, n) for v in el.hnf_basis(rel.lattice)]
    ok, why = check_ring(basis, n)
    if not ok:
        raise NotARing(why, rank=len(basis))
    diagnostics = {"relation_rank": rel.rho, "normalized_index": j,
                   "gap_ratio": rel.gap_ratio}
    gen, poly = _primitive_element(basis, n, seed, diagnostics)
    tr, method = is_totally_real(poly)
    return EndomorphismRing(n, basis, poly, tr, method, gen, diagnostics)


def _frobenius2(M):
    return sum(x * x for row in M for x in row)


def _primitive_element(basis, n, seed, diagnostics):
    rank = len(basis)
    ident = el.identity(n)
    non_scalar = [M for M in basis if not _is_scalar(M)]
    if not non_scalar:
        return ident, [1, -1]
    gen = min(non_scalar, key=_frobenius2)
    poly = minimal_polynomial(gen)
    rng = random.Random(seed)
    attempts = 0
    while len(poly) - 1 < rank and attempts < MIN_POLY_ATTEMPTS:
        attempts += 1
        coeffs = [rng.randint(-3, 3) for _ in basis]
        cand = [[sum(c * M[i][k] for c, M in zip(coeffs, basis)) for k in range(n)] for i in range(n)]
        cpoly = minimal_polynomial(cand)
        if len(cpoly) > len(poly):
            gen, poly = cand, cpoly
    if len(poly) - 1 < rank:
        diagnostics["warning"] = "PRIMITIVE_ELEMENT_NOT_FOUND"
    return gen, poly


def _is_scalar(M):
    n = len(M)
    return all(M[i][k] == (M[0][0] if i == k else 0) for i in range(n) for k in range(n))


def endomorphism_ring(T_basis, pd, beta, gap_tolerance=DEFAULT_GAP_TOLERANCE, seed=0,
                      prec=DEFAULT_PREC, progress=None):
    """Endomorphism ring of the transcendental part of ``pd``."""
    A = transcendental_coordinates(T_basis, pd)
    return endomorphism_ring_from_vector(A, beta, gap_tolerance, seed, prec, progress)


def charles_gap(rho, endo_rank, T_rank, totally_real):
    """Picard number bound from reduction: ``rho`` or ``rho + dim E``."""
    if endo_rank <= 0 or T_rank % endo_rank:
        raise NonDivisible(f"{endo_rank} does not divide {T_rank}", endo_rank=endo_rank, T_rank=T_rank)
    if totally_real and (T_rank // endo_rank) % 2 == 1:
        return rho + endo_rank
    return rho
