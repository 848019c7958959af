import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import planted_k3_like
from hodgescan import exactlin as el
from hodgescan.cert import (
    canonical_norm_interval,
    certificate,
    cup_matrix,
    dist_to_Uperp,
    exact_canonical_norm_sq,
    exact_dist_sq,
    homology_to_cohomology,
    norm_equivalence_constants,
    precision_for_digits,
    projector_from_periods,
)
from hodgescan.errors import NonpositiveNorm
from hodgescan.hodge import assemble_hodge_lattice
from hodgescan.interval import Interval, exact_fraction
from hodgescan.relations import default_beta, integer_relation_lattice, round_periods

DIAG = [[(1 if i < 3 else -1) * int(i == j) for j in range(6)] for i in range(6)]
H = [1, 0, 0, 0, 0, 0]


def contains_sqrt(iv, sq):
    """Exact test that sqrt(sq) lies in iv."""
    lo, hi = exact_fraction(iv.lo), exact_fraction(iv.hi)
    return (lo <= 0 or lo * lo <= sq) and hi >= 0 and hi * hi >= sq


def rational_periods(rng):
    """Rows e1 + small, e2 + small: a positive plane orthogonal to h = e0."""
    def small():
        return Fraction(rng.randint(-20, 20), 97)
    re = [0, 1, small(), small(), small(), small()]
    im = [0, small(), 1, small(), small(), small()]
    return [[(re[i], im[i])] for i in range(6)], [re, im]


@settings(max_examples=30)
@given(st.integers(0, 10 ** 9))
def test_enclosures_contain_exact_values(seed):
    rng = random.Random(seed)
    periods, rows = rational_periods(rng)
    proj = projector_from_periods(periods, 0, DIAG, 256)
    cup = cup_matrix(DIAG)
    h = homology_to_cohomology(H, DIAG)
    for _ in range(5):
        x = [rng.randint(-5, 5) for _ in range(6)]
        v = homology_to_cohomology(x, DIAG)
        if not any(v):
            continue
        assert canonical_norm_interval(v, proj, h, 1).contains(exact_canonical_norm_sq(v, rows, cup, h, 1))
        assert contains_sqrt(dist_to_Uperp(v, proj), exact_dist_sq(v, rows, cup))


def test_toy_values():
    # U = span(e1, e2), v = (0, 5/4, 0, 0, 3/4, 0): |v|^2 = 2*(25/16) - (25/16 - 9/16) = 17/8
    periods = [[(0, 0)], [(1, 0)], [(0, 1)], [(0, 0)], [(0, 0)], [(0, 0)]]
    proj = projector_from_periods(periods, 0, DIAG, 256)
    v = [0, Fraction(5, 4), 0, 0, Fraction(3, 4), 0]
    assert canonical_norm_interval(v, proj, H, 1).contains(Fraction(17, 8))
    assert contains_sqrt(dist_to_Uperp(v, proj), Fraction(25, 16))


def test_canonical_norm_is_positive_on_integer_vectors():
    rng = random.Random(2)
    periods, rows = rational_periods(rng)
    cup = cup_matrix(DIAG)
    for _ in range(200):
        v = [rng.randint(-4, 4) for _ in range(6)]
        if any(v):
            assert exact_canonical_norm_sq(v, rows, cup, H, 1) > 0


def test_norm_equivalence_constants():
    ones = [Interval.exact(1)] * 4
    xi1, xi2 = norm_equivalence_constants(ones)
    assert xi1 <= 0.5 <= xi2 and xi2 - 2 < 1e-100 and 0.5 - xi1 < 1e-100
    with pytest.raises(NonpositiveNorm):
        norm_equivalence_constants([Interval.exact(0)])


def test_certificate_on_exact_toy():
    periods = [[(0, 0)], [(1, 0)], [(0, 1)], [(0, 0)], [(0, 0)], [(0, 0)]]
    spm = round_periods([[0, 0], [1, 0], [0, 1], [0, 0], [0, 0], [0, 0]], 10 ** 20)
    rel = integer_relation_lattice(spm)
    proj = projector_from_periods(periods, 0, DIAG, 256)
    c = certificate(None, rel, proj, 1, DIAG, H)
    assert c.eps == 0
    assert c.N == 1
    assert exact_fraction(c.B) >= exact_fraction(c.B_lattice) * exact_fraction(c.xi2)
    for iv in c.basis_norm_intervals:
        assert iv.contains(1)


def test_planted_eps_is_tiny():
    pd = planted_k3_like(seed=4)
    prec = precision_for_digits(pd.decimal_digits)
    spm = round_periods(pd.real_periods(), default_beta(pd.decimal_digits), pd.real_radii())
    rel = integer_relation_lattice(spm, prec=prec)
    assert el.hnf_basis(rel.lattice) == [[1, 0, 0, 0, 0, 0], [0, 0, 0, 0, 0, 1]]
    pl = assemble_hodge_lattice(pd, rel)
    proj = projector_from_periods(pd.periods, pd.radii, pd.intersection, prec)
    c = certificate(pl, rel, proj, pd.degree_d, pd.intersection, pd.polarization_h)
    assert c.eps <= mpmath.mpf(10) ** -70
    assert c.N >= 1 and c.B > 0
