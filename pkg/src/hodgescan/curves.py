"""Smooth rational curve classes on polarized quartic K3 lattices.

A smooth rational curve of degree d is a class D with ``D^2 = -2`` and
``D.h = d`` that meets every smooth rational curve of lower degree
non-negatively.  The candidates are found by mapping ``D`` to
``4D - (D.h) h``, which lands in the negative definite lattice ``h^perp``,
and enumerating vectors of norm ``32 + 4 d^2`` there.
"""

import math
import time
from dataclasses import dataclass, field

from . import exactlin as el
from .errors import InputError, NotPositiveDefinite, UnsupportedDegree
from .lll import lll_reduce

METHODS = ("projection", "intersection")


def _float_ldl(G):
    """Float coefficients ``q`` with ``x G x = sum_i q[i][i] (x_i + sum_{j>i} q[i][j] x_j)^2``."""
    n = len(G)
    q = [[float(G[i][j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            q[j][i] = q[i][j]
            q[i][j] /= q[i][i]
        for k in range(i + 1, n):
            for j in range(k, n):
                q[k][j] -= q[k][i] * q[i][j]
    return q


def _short_vectors(G, target):
    """All x (up to sign) with ``x G x == target`` for a reduced PD integer form.

    Float bounds prune the search (with slack); every reported vector is
    checked in exact integer arithmetic.  The sign is fixed by making the
    last nonzero coordinate positive.
    """
    n = len(G)
    q = _float_ldl(G)
    diag = [q[i][i] for i in range(n)]
    slack = 1e-7 * max(1.0, target)
    x = [0] * n
    out = []

    def leaf_check():
        if el.bilinear(x, G, x) == target:
            out.append(list(x))

    def rec(i, remaining, zero_above):
        c = 0.0
        qi = q[i]
        for j in range(i + 1, n):
            if x[j]:
                c -= qi[j] * x[j]
        r = math.sqrt(max(remaining, 0.0) / diag[i])
        lo = math.ceil(c - r - 1e-9)
        hi = math.floor(c + r + 1e-9)
        if zero_above and lo < 0:
            lo = 0
        for xi in range(lo, hi + 1):
            t = diag[i] * (xi - c) ** 2
            rest = remaining - t
            if rest < -slack:
                continue
            x[i] = xi
            if i == 0:
                if not (zero_above and xi == 0) and rest < slack + 0.5:
                    leaf_check()
            else:
                rec(i - 1, rest, zero_above and xi == 0)
        x[i] = 0

    if n == 0:
        return out
    rec(n - 1, target + slack, True)
    return out


def _canonical_sign(v):
    for a in v:
        if a:
            return v if a > 0 else [-b for b in v]
    return v


def check_positive_definite(gram):
    el.check_rectangular(gram, "gram")
    if gram and len(gram) != len(gram[0]):
        raise InputError("Gram matrix is not square")
    if not el.is_symmetric(gram):
        raise InputError("Gram matrix is not symmetric")
    if not el.leading_minors_positive(gram):
        raise NotPositiveDefinite("Gram matrix is not positive definite")


def enumerate_norm_vectors(gram, target):
    """All integer vectors v with ``v gram v = target``, one per sign pair.

    Each vector has its first nonzero coordinate positive; the result is
    sorted.  The form is LLL-reduced first, which keeps the search tree small.
    """
    check_positive_definite(gram)
    if target < 0:
        raise InputError("target norm must be non-negative")
    n = len(gram)
    if target == 0:
        return [[0] * n]
    if n == 0:
        return []
    red = lll_reduce(gram=gram)
    found = _short_vectors(red.gram, target)
    H = red.transform
    vecs = {tuple(_canonical_sign(el.vecmat(w, H))) for w in found}
    return sorted(list(v) for v in vecs)


# ---------------------------------------------------------------------------


@dataclass
class CurveClassReport:
    classes: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    method: str = "projection"

    @property
    def counts(self):
        return {d: len(v) for d, v in sorted(self.classes.items())}


def search_lattice(gram, h, method="projection"):
    """HNF basis of ``pi(pic) = pic^0 cap (4 pic + Z h)`` with ``pi(D) = 4D - (D.h) h``.

    ``projection`` spans it by the images of the basis vectors;
    ``intersection`` intersects the two lattices.  Both give the same HNF.
    """
    rank = len(gram)
    Gh = el.matvec(gram, h)
    if method == "projection":
        images = [[4 * int(i == j) - Gh[i] * h[j] for j in range(rank)] for i in range(rank)]
        return el.hnf_basis(images)
    if method == "intersection":
        pic0 = el.int_kernel([[x] for x in Gh])
        four_pic_h = el.hnf_basis([[4 * int(i == j) for j in range(rank)] for i in range(rank)] + [list(h)])
        return el.hnf_basis(el.lattice_intersect(pic0, four_pic_h))
    raise InputError(f"unknown method {method!r}; expected one of {METHODS}")


class RationalCurveSearch:
    """Shared state for computing the sets N_1, N_2, ... of one lattice."""

    def __init__(self, pl, method="projection"):
        if method not in METHODS:
            raise InputError(f"unknown method {method!r}; expected one of {METHODS}")
        self.gram = [list(r) for r in pl.gram]
        self.h = list(pl.h_coords)
        if el.bilinear(self.h, self.gram, self.h) != 4:
            raise UnsupportedDegree("curve counting needs a polarization with h^2 = 4",
                                    h_squared=el.bilinear(self.h, self.gram, self.h))
        self.method = method
        self.Gh = el.matvec(self.gram, self.h)
        self.search_basis = search_lattice(self.gram, self.h, method)
        S = self.search_basis
        neg = [[-x for x in row] for row in el.matmul(el.matmul(S, self.gram), el.transpose(S))] if S else []
        if S:
            try:
                check_positive_definite(neg)
            except NotPositiveDefinite:
                raise NotPositiveDefinite("the form on h^perp is not negative definite") from None
            self._reduced = lll_reduce(gram=neg)
        else:
            self._reduced = None
        self.N = {}
        self._products = []  # G D' for every D' in the N sets found so far

    def candidates(self, d):
        """The set M_d: classes with ``D^2 = -2`` and ``D.h = d``."""
        target = 32 + 4 * d * d
        if self._reduced is None:
            return []
        red = self._reduced
        out = set()
        for w in _short_vectors(red.gram, target):
            c = el.vecmat(w, red.transform)
            E = el.vecmat(c, self.search_basis)
            for s in (1, -1):
                F = [s * e + d * hh for e, hh in zip(E, self.h)]
                if all(f % 4 == 0 for f in F):
                    out.add(tuple(f // 4 for f in F))
        return sorted(list(v) for v in out)

    def classes(self, d):
        if d in self.N:
            return self.N[d]
        if d < 1:
            raise InputError("degree must be positive")
        for e in range(1, d):
            self.classes(e)
        keep = []
        for D in self.candidates(d):
            if el.bilinear(D, self.gram, D) != -2 or el.dot(D, self.Gh) != d:
                raise AssertionError("candidate class violates D^2 = -2 or D.h = d")
            if all(el.dot(D, w) >= 0 for w in self._products):
                keep.append(D)
        self.N[d] = keep
        self._products.extend(el.matvec(self.gram, D) for D in keep)
        return keep


def rational_curve_classes(pl, d, method="projection"):
    """Classes of smooth rational curves of degree d (coordinates in the lattice basis)."""
    return RationalCurveSearch(pl, method).classes(d)


def count_curves(pl, d_max, method="projection", progress=None):
    """Run degrees ``1..d_max`` with shared state; returns a :class:`CurveClassReport`."""
    report = CurveClassReport(method=method)
    if d_max < 1:
        return report
    search = RationalCurveSearch(pl, method)
    for d in range(1, d_max + 1):
        t0 = time.perf_counter()
        report.classes[d] = search.classes(d)
        report.timings[d] = time.perf_counter() - t0
        if progress is not None:
            progress(d, len(report.classes[d]))
    return report


def lattice_from_generators(gram):
    """Lattice generated by classes with a (possibly degenerate) Gram matrix.

    Returns ``(basis_gram, coords)`` where ``coords[i]`` expresses the i-th
    generator in a basis of the generated lattice (the quotient of Z^k by
    the kernel of the form) and ``basis_gram`` is the Gram matrix of that
    basis.
    """
    k = len(gram)
    K = el.int_kernel(gram)
    if not K:
        return [list(r) for r in gram], el.identity(k)
    # U K^t = [I; 0] since K is saturated, so x -> (x U^t)[len(K):] kills K
    _, U = el.hnf(el.transpose(K))
    r = len(K)
    coords = [[U[j][i] for j in range(r, k)] for i in range(k)]
    V = el.inverse(el.transpose(U))
    lifts = [[int(x) for x in row] for row in V[r:]]
    basis_gram = el.matmul(el.matmul(lifts, gram), el.transpose(lifts))
    return basis_gram, coords
