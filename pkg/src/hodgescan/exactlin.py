"""Exact linear algebra over Z and Q.

Matrices are plain lists of rows holding Python ``int`` or
``fractions.Fraction`` entries.  All functions are pure: inputs are never
mutated.  Empty matrices (no rows) are legal inputs and give empty outputs.

Row conventions are used throughout: a lattice is the Z-span of the rows of
its basis matrix, and kernels are left kernels ``{x : x M = 0}``.
"""

from fractions import Fraction
from math import gcd

from .errors import InputError


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[0] * cols for _ in range(rows)]


def copy_matrix(M):
    return [list(row) for row in M]


def shape(M):
    """Return ``(rows, cols)``; an empty matrix has shape ``(0, 0)``."""
    if not M:
        return 0, 0
    return len(M), len(M[0])


def check_rectangular(M, name="matrix"):
    if not M:
        return
    n = len(M[0])
    for i, row in enumerate(M):
        if len(row) != n:
            raise InputError(f"{name}: row {i} has {len(row)} entries, expected {n}")


def transpose(M):
    if not M:
        return []
    return [list(col) for col in zip(*M)]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def matmul(A, B):
    if not A:
        return []
    if not B:
        return [[] for _ in A]
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def vecmat(v, M):
    """Row vector times matrix."""
    if not M:
        return []
    return [dot(v, col) for col in zip(*M)]


def matvec(M, v):
    return [dot(row, v) for row in M]


def bilinear(u, G, v):
    """``u G v^t`` for row vectors ``u``, ``v``."""
    return dot(vecmat(u, G), v)


def scale(M, c):
    return [[c * x for x in row] for row in M]


def is_symmetric(M):
    n = len(M)
    return all(len(M[i]) == n for i in range(n)) and all(
        M[i][j] == M[j][i] for i in range(n) for j in range(i)
    )


def xgcd(a, b):
    """Return ``(g, x, y)`` with ``x*a + y*b = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def content(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# ---------------------------------------------------------------------------
# Hermite normal form and its consumers


def hnf(M):
    """Row Hermite normal form with transform.

    Returns ``(H, U)`` with ``H = U M``, ``U`` unimodular.  ``H`` is in row
    echelon form, pivots are positive, entries above a pivot lie in
    ``[0, pivot)`` and zero rows sit at the bottom.
    """
    check_rectangular(M)
    A = copy_matrix(M)
    n = len(A)
    U = identity(n)
    if n == 0:
        return A, U
    ncols = len(A[0])
    r = 0
    for c in range(ncols):
        if r == n:
            break
        for i in range(r + 1, n):
            b = A[i][c]
            if b == 0:
                continue
            a = A[r][c]
            if a == 0:
                A[r], A[i] = A[i], A[r]
                U[r], U[i] = U[i], U[r]
                continue
            g, x, y = xgcd(a, b)
            p, q = a // g, b // g
            rr, ri = A[r], A[i]
            A[r] = [x * s + y * t for s, t in zip(rr, ri)]
            A[i] = [p * t - q * s for s, t in zip(rr, ri)]
            ur, ui = U[r], U[i]
            U[r] = [x * s + y * t for s, t in zip(ur, ui)]
            U[i] = [p * t - q * s for s, t in zip(ur, ui)]
        piv = A[r][c]
        if piv == 0:
            continue
        if piv < 0:
            A[r] = [-x for x in A[r]]
            U[r] = [-x for x in U[r]]
            piv = -piv
        for i in range(r):
            q = A[i][c] // piv
            if q:
                A[i] = [s - q * t for s, t in zip(A[i], A[r])]
                U[i] = [s - q * t for s, t in zip(U[i], U[r])]
        r += 1
    return A, U


def hnf_basis(M):
    """Nonzero rows of the HNF: the canonical basis of the row lattice."""
    H, _ = hnf(M)
    return [row for row in H if any(row)]


def rank(M):
    """Exact rank (Bareiss elimination for integers, Gauss over Q otherwise)."""
    check_rectangular(M)
    if not M:
        return 0
    if not all(isinstance(x, int) for row in M for x in row):
        return len(rref(M)[1])
    A = copy_matrix(M)
    n, m = shape(A)
    r = 0
    prev = 1
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        for i in range(r + 1, n):
            A[i] = [(p * A[i][j] - A[i][c] * A[r][j]) // prev for j in range(m)]
        prev = p
        r += 1
        if r == n:
            break
    return r


def int_kernel(M):
    """Saturated left kernel ``{x in Z^rows : x M = 0}``, HNF-normalized.

    The returned lattice is primitive: any integer vector that is a rational
    combination of its rows is an integer combination of them.
    """
    check_rectangular(M)
    n = len(M)
    if n == 0:
        return []
    if not M[0]:
        return identity(n)
    H, U = hnf(M)
    r = sum(1 for row in H if any(row))
    return hnf_basis(U[r:])


def lattice_intersect(B1, B2):
    """Basis (HNF) of the intersection of the row lattices of B1 and B2."""
    if not B1 or not B2:
        return []
    if len(B1[0]) != len(B2[0]):
        raise InputError("lattices live in different ambient dimensions")
    K = int_kernel(B1 + B2)
    k1 = len(B1)
    return hnf_basis([vecmat(row[:k1], B1) for row in K])


def lattice_sum(B1, B2):
    return hnf_basis(list(B1) + list(B2))


def reduce_by_hnf(H, v):
    """Reduce ``v`` modulo the lattice with HNF basis ``H``; zero iff member."""
    v = list(v)
    for row in H:
        c = next(j for j, x in enumerate(row) if x)
        q = v[c] // row[c]
        if q:
            v = [s - q * t for s, t in zip(v, row)]
    return v


def in_lattice(basis, v):
    H = hnf_basis(basis) if basis else []
    if not H:
        return not any(v)
    return not any(reduce_by_hnf(H, v))


def same_lattice(B1, B2):
    return hnf_basis(B1) == hnf_basis(B2)


def saturate(B):
    """Smallest primitive lattice containing the row lattice of B."""
    if not B:
        return []
    K = int_kernel(transpose(B))
    if not K:
        return identity(len(B[0]))
    return int_kernel(transpose(K))


# ---------------------------------------------------------------------------
# Rational linear algebra


def to_fractions(M):
    return [[Fraction(x) for x in row] for row in M]


def rref(M):
    """Reduced row echelon form over Q; returns ``(R, pivot_columns)``."""
    A = to_fractions(M)
    n, m = shape(A)
    pivots = []
    r = 0
    for c in range(m):
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        A[r] = [x / p for x in A[r]]
        for i in range(n):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return A, pivots


def solve(A, b):
    """One rational solution of ``A x = b`` or ``None`` if inconsistent."""
    n, m = shape(A)
    if n == 0:
        return []
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    if m in pivots:
        return None
    x = [Fraction(0)] * m
    for i, c in enumerate(pivots):
        x[c] = R[i][m]
    return x


def solve_left(A, v):
    """One rational ``c`` with ``c A = v`` or ``None``."""
    if not A:
        return [] if not any(v) else None
    return solve(transpose(A), v)


def integer_coordinates(basis, v):
    """Coordinates ``c`` in Z with ``c basis = v``; ``None`` if none exist.

    ``basis`` must have linearly independent rows.
    """
    c = solve_left(basis, v)
    if c is None or any(x.denominator != 1 for x in c):
        return None
    return [int(x) for x in c]


def det(M):
    """Exact determinant (Bareiss for integers, Gauss for rationals)."""
    n = len(M)
    if n == 0:
        return 1
    if all(isinstance(x, int) for row in M for x in row):
        A = copy_matrix(M)
        sign = 1
        prev = 1
        for k in range(n - 1):
            if A[k][k] == 0:
                piv = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
                if piv is None:
                    return 0
                A[k], A[piv] = A[piv], A[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
            prev = A[k][k]
        return sign * A[n - 1][n - 1]
    A = to_fractions(M)
    d = Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if A[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            d = -d
        d *= A[k][k]
        for i in range(k + 1, n):
            f = A[i][k] / A[k][k]
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return d


def inverse(M):
    """Exact inverse over Q; raises ``ZeroDivisionError`` if singular."""
    n = len(M)
    aug = [list(row) + [int(i == j) for j in range(n)] for i, row in enumerate(M)]
    R, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R[:n]]


def as_integer_matrix(M):
    """Convert a rational matrix with integral entries to ``int``; else InputError."""
    out = []
    for row in M:
        new = []
        for x in row:
            x = Fraction(x)
            if x.denominator != 1:
                raise InputError(f"non-integral entry {x}")
            new.append(int(x))
        out.append(new)
    return out


def charpoly(M):
    """Characteristic polynomial ``det(x I - M)``, coefficients highest first.

    Faddeev-LeVerrier over Q.
    """
    n = len(M)
    A = to_fractions(M)
    coeffs = [Fraction(1)]
    Mk = zeros(n, n)
    for k in range(1, n + 1):
        # Mk = A (M_{k-1} + c_{k-1} I)
        prev_c = coeffs[-1]
        T = [[Mk[i][j] + (prev_c if i == j else 0) for j in range(n)] for i in range(n)]
        Mk = matmul(A, T)
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs.append(c)
    return coeffs


def sign_changes(seq):
    signs = [x > 0 for x in seq if x != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def signature(G):
    """``(positive, negative, zero)`` inertia of a symmetric rational matrix.

    Uses Descartes' rule on the exact characteristic polynomial, which is
    exact here because the polynomial of a symmetric matrix is real-rooted.
    """
    p = charpoly(G)
    n = len(p) - 1
    zero = 0
    while zero < n and p[n - zero] == 0:
        zero += 1
    q = p[: n + 1 - zero]
    pos = sign_changes(q)
    neg = sign_changes([c * (-1) ** (len(q) - 1 - i) for i, c in enumerate(q)])
    return pos, neg, zero


def leading_minors_positive(G):
    """True iff every leading principal minor is positive (Sylvester)."""
    A = to_fractions(G)
    n = len(A)
    for k in range(n):
        piv = A[k][k]
        if piv <= 0:
            return False
        for i in range(k + 1, n):
            f = A[i][k] / piv
            if f:
                A[i] = [a - f * b for a, b in zip(A[i], A[k])]
    return True


# Interval enclosures live in their own module; re-exported here so the whole
# linear-algebra substrate is reachable from one place.
from .interval import Interval, interval_gram_schmidt, interval_matrix  # noqa: E402,F401
