"""Integer relations between approximate real vectors via LLL.

Given an m x p real matrix P known to finite precision, the relation lattice
is ``{x in Z^m : x P = 0}``.  It is recovered by reducing the rows of
``[round(beta P) | I_m]``: genuine relations give short vectors whose first p
coordinates are only rounding noise, while every other lattice vector has
norm growing like ``beta^(p/(m - rho))``.  The rank ``rho`` is read off from a
jump in the norm profile of the reduced basis.
"""

import math
import random
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction

import mpmath

from . import exactlin as el
from .errors import AmbiguousGap, GapNotFound, InputError, InsufficientPrecision
from .interval import DEFAULT_PREC
from .lll import DEFAULT_DELTA, lll_reduce

DEFAULT_GAP_TOLERANCE = 0.2
BETA_GUARD_DIGITS = 10


@dataclass
class ScaledPeriodMatrix:
    """Integer matrix ``Q = round(beta P)`` (m rows, p columns) with its scale."""

    Q: list
    beta: int

    def __post_init__(self):
        el.check_rectangular(self.Q, "Q")
        if self.beta < 2:
            raise InputError("beta must be at least 2", beta=self.beta)

    @property
    def m(self):
        return len(self.Q)

    @property
    def p(self):
        return len(self.Q[0]) if self.Q else 0


@dataclass
class RelationLatticeResult:
    lattice: list
    rho: int
    B_profile: list
    B_bound: mpmath.mpf
    eps_bound: mpmath.mpf
    kappa: mpmath.mpf
    gap_ratio: mpmath.mpf
    m: int
    p: int
    beta: int
    sq_norms: list = field(default_factory=list, repr=False)
    candidates: list = field(default_factory=list)
    gap_tolerance: float = DEFAULT_GAP_TOLERANCE


def to_fraction(x):
    """Exact rational value of a decimal string, int, Fraction or Decimal."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        try:
            return Fraction(Decimal(x.strip()))
        except Exception:
            raise InputError(f"not a decimal number: {x!r}") from None
    return Fraction(x)


def round_half_away(q):
    q = Fraction(q)
    n = (abs(q.numerator) * 2 + q.denominator) // (2 * q.denominator)
    return n if q >= 0 else -n


def round_periods(entries, beta, radii=0):
    """Scale an m x p matrix of decimals by ``beta`` and round to integers.

    ``radii`` is either one radius for all entries or a matrix of radii.
    Raises :class:`InsufficientPrecision` when a scaled radius reaches 1/2,
    since the rounding would then not be determined by the data.
    """
    beta = int(beta)
    el.check_rectangular(entries, "periods")
    Q = []
    for i, row in enumerate(entries):
        qrow = []
        for j, x in enumerate(row):
            r = to_fraction(radii[i][j] if isinstance(radii, (list, tuple)) else radii)
            if r < 0:
                raise InputError("negative error radius", row=i, col=j)
            if r * beta >= Fraction(1, 2):
                raise InsufficientPrecision(
                    f"entry ({i}, {j}): radius {float(r):.3g} times beta is not below 1/2",
                    row=i, col=j)
            qrow.append(round_half_away(to_fraction(x) * beta))
        Q.append(qrow)
    return ScaledPeriodMatrix(Q, beta)


def default_beta(digits):
    """``10^(digits - 10)``: keeps ten guard digits below the input precision."""
    return 10 ** max(1, digits - BETA_GUARD_DIGITS)


def expected_noise_norm(beta, p, m, rho, prec=DEFAULT_PREC):
    """Typical norm ``beta^(p/(m - rho))`` of a reduced vector that is not a relation."""
    if not 0 <= rho < m:
        raise ValueError("need 0 <= rho < m")
    with mpmath.workprec(prec):
        return mpmath.power(mpmath.mpf(beta), mpmath.mpf(p) / (m - rho))


def kappa(m, prec=DEFAULT_PREC):
    with mpmath.workprec(prec):
        return mpmath.power(2, -mpmath.mpf(m + 1) / 2) / m


def bounds_from_profile(profile, rho, m, beta, prec=DEFAULT_PREC):
    """Return ``(B_bound, eps_bound, kappa, gap_ratio)`` for a chosen rank.

    ``B_bound = kappa * B_{rho+1}`` with ``kappa = 2^(-(m+1)/2) / m`` bounds
    the coordinate norm below which Picard vectors must lie in the recovered
    lattice; ``eps_bound = m * B_rho / beta`` bounds how far a recovered
    relation can be from vanishing on the periods.
    """
    with mpmath.workprec(prec):
        k = kappa(m, prec)
        b_next = profile[rho] if rho < m else mpmath.inf
        b_rho = profile[rho - 1] if rho > 0 else mpmath.mpf(0)
        B_bound = k * b_next
        eps_bound = m * b_rho / mpmath.mpf(beta)
        gap_ratio = b_next / b_rho if rho > 0 else mpmath.inf
    return B_bound, eps_bound, k, gap_ratio


def gap_candidates(profile, m, p, beta, gap_tolerance=DEFAULT_GAP_TOLERANCE, prec=DEFAULT_PREC):
    """Diagnose every rank in ``0..m-1`` against the two gap conditions.

    Condition (a): ``B_rho <= 2^-m B_{rho+1}`` with ``B_0 = 0``.  Condition (b):
    ``log B_{rho+1}`` is within ``gap_tolerance`` (relative) of
    ``(p/(m - rho)) log beta``.
    """
    out = []
    with mpmath.workprec(prec):
        logb = mpmath.log(beta)
        for rho in range(m):
            b_next = profile[rho]
            b_rho = profile[rho - 1] if rho > 0 else mpmath.mpf(0)
            cond_a = b_rho <= mpmath.ldexp(b_next, -m)
            expected = mpmath.mpf(p) / (m - rho) * logb
            deviation = abs(mpmath.log(b_next) - expected) if b_next > 0 else mpmath.inf
            cond_b = deviation <= gap_tolerance * expected
            out.append({
                "rho": rho,
                "condition_a": bool(cond_a),
                "condition_b": bool(cond_b),
                "log10_norm": float(mpmath.log10(b_next)) if b_next > 0 else float("-inf"),
                "log10_expected": float(expected / mpmath.log(10)),
            })
    return out


def integer_relation_lattice(spm, gap_tolerance=DEFAULT_GAP_TOLERANCE, delta=DEFAULT_DELTA,
                             progress=None, prec=DEFAULT_PREC):
    """Recover the relation lattice of a scaled period matrix.

    Raises :class:`GapNotFound` when no rank passes both gap conditions and
    :class:`AmbiguousGap` when several do; both carry the norm profile.
    """
    m = spm.m
    if m == 0:
        raise InputError("empty period matrix")
    # identically zero columns carry no information and would distort the
    # expected noise norm, so only the others count towards p
    cols = [j for j in range(spm.p) if any(row[j] for row in spm.Q)]
    p = len(cols)
    if p == 0:
        # P vanishes to the given precision: every integer vector is a relation
        ones = [mpmath.mpf(1)] * m
        return RelationLatticeResult(
            lattice=el.identity(m), rho=m, B_profile=ones, B_bound=mpmath.inf,
            eps_bound=mpmath.mpf(m) / spm.beta, kappa=kappa(m, prec), gap_ratio=mpmath.inf,
            m=m, p=0, beta=spm.beta, sq_norms=[1] * m, gap_tolerance=gap_tolerance)
    M = [[spm.Q[i][j] for j in cols] + [int(i == k) for k in range(m)] for i in range(m)]
    red = lll_reduce(M, delta=delta, progress=progress, prec=prec)
    profile = red.norms
    cands = gap_candidates(profile, m, p, spm.beta, gap_tolerance, prec)
    hits = [c["rho"] for c in cands if c["condition_a"] and c["condition_b"]]
    log10_profile = [float(mpmath.log10(b)) for b in profile]
    if not hits:
        raise GapNotFound("no rank satisfies the gap conditions", log10_profile=log10_profile)
    if len(hits) > 1:
        raise AmbiguousGap(f"ranks {hits} all satisfy the gap conditions",
                           candidates=hits, log10_profile=log10_profile)
    rho = hits[0]
    lattice = [row[p:] for row in red.basis[:rho]]
    B_bound, eps_bound, k, ratio = bounds_from_profile(profile, rho, m, spm.beta, prec)
    return RelationLatticeResult(
        lattice=lattice, rho=rho, B_profile=profile, B_bound=B_bound, eps_bound=eps_bound,
        kappa=k, gap_ratio=ratio, m=m, p=p, beta=spm.beta, sq_norms=red.sq_norms,
        candidates=cands, gap_tolerance=gap_tolerance)


def complex_to_real_columns(periods):
    """Split an m x r matrix of complex pairs ``(re, im)`` into m x 2r reals."""
    out = []
    for row in periods:
        out.append([z[0] for z in row] + [z[1] for z in row])
    return out


# ---------------------------------------------------------------------------
# planted instances


def random_primitive_lattice(m, rank, rng, max_entry=3):
    """Random saturated sublattice of Z^m of the given rank, HNF basis."""
    if rank == 0:
        return []
    while True:
        L = [[rng.randint(-max_entry, max_entry) for _ in range(m)] for _ in range(rank)]
        if el.rank(L) == rank:
            return el.saturate(L)


def _fixed_point(q, digits):
    """Decimal string of the rational q rounded to ``digits`` places."""
    n = round_half_away(q * 10 ** digits)
    sign = "-" if n < 0 else ""
    s = str(abs(n)).rjust(digits + 1, "0")
    return f"{sign}{s[:-digits]}.{s[-digits:]}" if digits else f"{sign}{s}"


def plant_relations(m, p, target_rank, digits, seed, max_entry=3):
    """Pseudo-random m x p decimal matrix with a known relation lattice.

    A random primitive rank-``target_rank`` lattice L is drawn, and the
    columns of P are random real combinations of a basis of the orthogonal
    complement of L, written with ``digits`` places after the decimal point
    (each entry is within ``10^-digits / 2`` of the exact value).  Returns
    ``(entries, known_lattice)``; deterministic in ``seed``.
    """
    if not 0 <= target_rank <= m - p:
        raise ValueError("need 0 <= target_rank <= m - p")
    rng = random.Random(seed)
    L = random_primitive_lattice(m, target_rank, rng, max_entry)
    K = el.int_kernel(el.transpose(L)) if L else el.identity(m)
    # an LLL-reduced complement keeps the entries of P balanced
    K = lll_reduce(K).basis
    scale = 10 ** (digits + 20)
    G = [[Fraction(rng.randrange(-scale, scale + 1), scale) for _ in range(p)] for _ in K]
    P = el.matmul(el.transpose(K), G)
    entries = [[_fixed_point(x, digits) for x in row] for row in P]
    return entries, L


def required_digits(m, p, rank, relation_norm=100.0):
    """Digits after which the gap condition is expected to hold.

    Solves ``(digits - guard) * p / (m - rank) >= log10(2^m * relation_norm)``
    with a safety margin of two orders of magnitude.
    """
    need = (m * math.log10(2) + math.log10(max(relation_norm, 1.0)) + 2) * (m - rank) / p
    return BETA_GUARD_DIGITS + math.ceil(need)
