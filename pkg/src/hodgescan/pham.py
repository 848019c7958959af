"""Homology of Fermat hypersurfaces from translated Pham cycles.

For the Fermat hypersurface of degree d and even dimension n, the translates
``t^beta S`` of the Pham cycle indexed by a set B form a basis of primitive
homology; adding the class of the linear space L gives a basis of all of
middle homology.  Everything here is exact integer/rational arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import exactlin as el
from .errors import InputError, InvariantViolation, SingularPhamGram


def _check(d, n):
    if d < 2:
        raise InputError("degree must be at least 2", d=d)
    if n < 0 or n % 2:
        raise InputError("dimension must be even and non-negative", n=n)


def chi(b, d):
    """1 if b = 0 mod d, -1 if b = 1 mod d, 0 otherwise."""
    r = b % d
    if r == 0:
        return 1
    if r == 1:
        return -1
    return 0


def tau(i, d):
    """1 if i = 1 mod 2d, -1 if i = -1 mod 2d, 0 otherwise."""
    r = i % (2 * d)
    if r == 1:
        return 1
    if r == 2 * d - 1:
        return -1
    return 0


def difference_index(beta, beta_prime, n):
    """``beta''_i = beta_i - beta'_i - beta_{n+1} + beta'_{n+1}`` for i = 0..n+1."""
    shift = beta[n + 1] - beta_prime[n + 1]
    return [beta[i] - beta_prime[i] - shift for i in range(n + 2)]


def pham_intersection(beta, beta_prime, d, n):
    """Intersection number of ``t^beta S`` and ``t^beta' S``.

    The products of chi run over the coordinates ``0..n`` of the difference
    index.  Its last coordinate is identically zero and is left out: keeping
    it flips the sign of the second product, which would make every
    self-intersection 0 and the intersection matrix singular.
    """
    _check(d, n)
    if len(beta) != n + 2 or len(beta_prime) != n + 2:
        raise InputError(f"translation indices must have {n + 2} entries")
    dd = difference_index(beta, beta_prime, n)[: n + 1]
    p0, p1 = 1, 1
    for b in dd:
        p0 *= chi(b, d)
        p1 *= chi(b + 1, d)
    sign = -1 if ((n + 1) * n // 2) % 2 else 1
    return sign * (p0 - p1)


def linear_section_intersection(beta, d, n):
    """Intersection number of the linear space L with ``t^beta S``."""
    _check(d, n)
    v = tau(2 * beta[n] - 2 * beta[n + 1] - 1, d)
    for i in range(n // 2):
        v *= tau(2 * beta[2 * i] - 2 * beta[2 * i + 1] + 1, d)
    return v


def linear_section_intersections(B, d, n):
    return [linear_section_intersection(beta, d, n) for beta in B]


@dataclass
class PhamBasisData:
    d: int
    n: int
    B: list
    M_B: list
    b_BL: list
    a_BL: list
    h_coords: list
    L_squared: Fraction
    full_gram: list


def pham_gram(B, d, n):
    return [[pham_intersection(b, bp, d, n) for bp in B] for b in B]


def polarization_coefficients(B, d, n):
    """Solve for the coefficients of [L] and assemble the full intersection form.

    With ``[L] = h^(n/2) / d + sum a_beta gamma_beta`` the coefficients are
    ``a = M_B^-1 b``.  Pairing with [L] and using ``h^(n/2) . [L] = 1`` gives
    ``[L].[L] = 1/d + a . b``; the polarization in the basis
    ``(gamma_beta..., [L])`` is ``(-d a, d)``.
    """
    _check(d, n)
    B = [tuple(int(x) for x in beta) for beta in B]
    for beta in B:
        if len(beta) != n + 2:
            raise InputError(f"translation indices must have {n + 2} entries", index=list(beta))
    M = pham_gram(B, d, n)
    if not el.is_symmetric(M):
        raise InvariantViolation("Pham intersection matrix is not symmetric")
    b = linear_section_intersections(B, d, n)
    a = el.solve(M, b) if M else []
    if a is None or (M and el.rank(M) < len(M)):
        raise SingularPhamGram("the Pham intersection matrix is singular; B is not a basis")
    if el.matvec(M, a) != b:
        raise InvariantViolation("M_B a != b after the exact solve")
    L2 = Fraction(1, d) + sum(x * y for x, y in zip(a, b))
    h = [-d * x for x in a] + [Fraction(d)]
    if any(x.denominator != 1 for x in h) or L2.denominator != 1:
        raise InvariantViolation("polarization or [L]^2 is not integral; B is probably wrong")
    h = [int(x) for x in h]
    full = [list(row) + [bi] for row, bi in zip(M, b)] + [list(b) + [int(L2)]]
    return PhamBasisData(d, n, [list(beta) for beta in B], M, b, a, h, L2, full)
