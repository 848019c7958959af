"""LLL basis reduction in exact integer arithmetic.

This is the all-integer variant of LLL: instead of rational Gram-Schmidt
coefficients it keeps the integers ``d_i`` (leading Gram minors) and
``lam[k][j] = d_{j+1} * mu_{k,j}``, so every division is exact and the Lovasz
test is an integer comparison.  The same routine reduces either a basis given
by its rows or a lattice given only by a positive definite Gram matrix.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import exactlin as el
from .errors import Cancelled, DependentRows, InputError
from .interval import DEFAULT_PREC, upper_sqrt

DEFAULT_DELTA = Fraction(99, 100)

# how many main-loop iterations pass between two calls of the progress hook
_HOOK_EVERY = 256


@dataclass
class ReducedBasis:
    """Output of :func:`lll_reduce`.

    ``basis`` is ``transform * rows`` (``None`` in Gram-only mode), ``gram`` is
    the Gram matrix of the reduced basis, ``sq_norms`` the exact squared norms
    and ``norms`` their square roots rounded up.
    """

    basis: list
    transform: list
    delta: Fraction
    gram: list
    sq_norms: list
    norms: list = field(repr=False)
    swaps: int = 0


def _round_div(a, b):
    """Nearest integer to a/b for b > 0, ties rounded up."""
    q, r = divmod(2 * a + b, 2 * b)
    return q


def _check_delta(delta):
    delta = Fraction(delta)
    if not Fraction(1, 4) < delta < 1:
        raise InputError(f"delta must lie in (1/4, 1), got {delta}")
    return delta


def lll_reduce(rows=None, delta=DEFAULT_DELTA, gram=None, progress=None, prec=DEFAULT_PREC):
    """LLL-reduce the lattice spanned by ``rows`` (or with Gram matrix ``gram``).

    Exactly one of ``rows`` and ``gram`` must be given.  ``progress`` is an
    optional callable ``progress(iterations, k)``; returning a true value
    aborts with :class:`Cancelled`.

    Raises :class:`DependentRows` if the input has a nontrivial rational
    relation (checked exactly before any reduction).
    """
    delta = _check_delta(delta)
    if (rows is None) == (gram is None):
        raise InputError("give exactly one of rows or gram")
    if rows is not None:
        el.check_rectangular(rows, "rows")
        b = el.copy_matrix(rows)
        n = len(b)
        if n and el.rank(b) < n:
            raise DependentRows("input rows are linearly dependent", rows=n, rank=el.rank(b))
        G0 = None
    else:
        el.check_rectangular(gram, "gram")
        if not el.is_symmetric(gram):
            raise ValueError("gram matrix is not symmetric")
        n = len(gram)
        if n and not el.leading_minors_positive(gram):
            raise DependentRows("gram matrix is not positive definite")
        b = None
        G0 = gram

    H = el.identity(n)
    if n == 0:
        return ReducedBasis([] if b is not None else None, [], delta, [], [], [])

    p, q = delta.numerator, delta.denominator

    def inner(i, j):
        if b is not None:
            return el.dot(b[i], b[j])
        hi = H[i]
        row = [el.dot(hi, col) for col in zip(*G0)]
        return el.dot(row, H[j])

    d = [0] * (n + 1)  # d[0] = 1, d[i+1] = det of the leading (i+1) Gram minor
    d[0] = 1
    lam = [[0] * n for _ in range(n)]
    d[1] = inner(0, 0)

    def red(k, l):
        if 2 * abs(lam[k][l]) <= d[l + 1]:
            return
        r = _round_div(lam[k][l], d[l + 1])
        if b is not None:
            bk, bl = b[k], b[l]
            b[k] = [x - r * y for x, y in zip(bk, bl)]
        H[k] = [x - r * y for x, y in zip(H[k], H[l])]
        lam[k][l] -= r * d[l + 1]
        lk, ll = lam[k], lam[l]
        for i in range(l):
            lk[i] -= r * ll[i]

    def swap(k):
        if b is not None:
            b[k], b[k - 1] = b[k - 1], b[k]
        H[k], H[k - 1] = H[k - 1], H[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        lk = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + lk * lk) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - lk * t) // d[k]
            lam[i][k - 1] = (B * t + lk * lam[i][k]) // d[k + 1]
        d[k] = B

    k, kmax, iterations, swaps = 1, 0, 0, 0
    while k < n:
        iterations += 1
        if progress is not None and iterations % _HOOK_EVERY == 0 and progress(iterations, k):
            raise Cancelled("reduction cancelled by caller", iterations=iterations)
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = inner(k, j)
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DependentRows("zero Gram-Schmidt vector", index=k)
                    d[k + 1] = u
        red(k, k - 1)
        if q * d[k + 1] * d[k - 1] < p * d[k] * d[k] - q * lam[k][k - 1] ** 2:
            swap(k)
            swaps += 1
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1

    if b is not None:
        gram_out = [[el.dot(u, v) for v in b] for u in b]
    else:
        HG = el.matmul(H, G0)
        gram_out = el.matmul(HG, el.transpose(H))
    sq = [gram_out[i][i] for i in range(n)]
    norms = [upper_sqrt(s, prec) for s in sq]
    return ReducedBasis(b, H, delta, gram_out, sq, norms, swaps)


def gram_schmidt_sq_norms(gram):
    """Exact squared Gram-Schmidt norms ``|b_i*|^2`` from a Gram matrix."""
    n = len(gram)
    out, prev = [], Fraction(1)
    for i in range(1, n + 1):
        minor = el.det([row[:i] for row in gram[:i]])
        out.append(Fraction(minor) / prev)
        prev = Fraction(minor)
    return out


def is_lll_reduced(gram, delta=DEFAULT_DELTA):
    """Exact check of size reduction and the Lovasz condition from a Gram matrix."""
    delta = Fraction(delta)
    n = len(gram)
    if n == 0:
        return True
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n
    for i in range(n):
        for j in range(i):
            mu[i][j] = (Fraction(gram[i][j]) - sum(mu[j][k] * mu[i][k] * bstar[k] for k in range(j))) / bstar[j]
        bstar[i] = gram[i][i] - sum(mu[i][k] ** 2 * bstar[k] for k in range(i))
        if bstar[i] <= 0:
            return False
    for i in range(n):
        for j in range(i):
            if abs(mu[i][j]) > Fraction(1, 2):
                return False
    for k in range(1, n):
        if bstar[k] < (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            return False
    return True
