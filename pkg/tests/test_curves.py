import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import box_vectors
from hodgescan import exactlin as el
from hodgescan.curves import (
    METHODS,
    RationalCurveSearch,
    count_curves,
    enumerate_norm_vectors,
    lattice_from_generators,
    search_lattice,
)
from hodgescan.errors import InputError, NotPositiveDefinite, UnsupportedDegree
from hodgescan.hodge import PolarizedLattice


def brute_force(G, target, radius):
    out = set()
    for v in box_vectors(len(G), radius):
        if el.bilinear(v, G, v) == target:
            first = next((x for x in v if x), 0)
            out.add(v if first > 0 else tuple(-x for x in v))
    return sorted(list(v) for v in out)


def test_identity_form_norm_nine():
    vecs = enumerate_norm_vectors(el.identity(3), 9)
    assert len(vecs) == 15
    assert vecs == brute_force(el.identity(3), 9, 3)


def test_a2_form_norm_six():
    G = [[2, 1], [1, 2]]
    assert enumerate_norm_vectors(G, 6) == brute_force(G, 6, 3)


def test_target_zero_and_errors():
    assert enumerate_norm_vectors([[2]], 0) == [[0]]
    with pytest.raises(NotPositiveDefinite):
        enumerate_norm_vectors([[1, 2], [2, 1]], 2)
    with pytest.raises(InputError):
        enumerate_norm_vectors([[1]], -1)


@settings(max_examples=40)
@given(st.integers(0, 10 ** 9))
def test_enumeration_matches_box_search(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    while True:
        A = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
        G = el.matmul(A, el.transpose(A))
        if el.leading_minors_positive(G):
            break
    target = rng.randint(1, 12)
    # every coordinate of a solution is at most sqrt(target * (G^-1)_ii)
    inv = el.inverse(G)
    radius = max(int((target * inv[i][i]) ** 0.5) + 1 for i in range(n))
    assert enumerate_norm_vectors(G, target) == brute_force(G, target, radius)


def test_rank_one_lattice_has_no_curves():
    pl = PolarizedLattice([[4]], [1])
    assert count_curves(pl, 5).counts == {d: 0 for d in range(1, 6)}


def test_zero_dmax():
    pl = PolarizedLattice([[4]], [1])
    assert count_curves(pl, 0).counts == {}


def test_rejects_other_degrees():
    with pytest.raises(UnsupportedDegree):
        RationalCurveSearch(PolarizedLattice([[2]], [1]))


def test_rejects_indefinite_complement():
    # U + <4>: h^perp contains the hyperbolic plane
    G = [[0, 1, 0], [1, 0, 0], [0, 0, 4]]
    with pytest.raises(NotPositiveDefinite):
        RationalCurveSearch(PolarizedLattice(G, [0, 0, 1]))


@pytest.mark.parametrize("name", ["rank10", "rank14", "rank18"])
def test_search_methods_agree(name, request):
    pl = request.getfixturevalue(name)
    a, b = (search_lattice(pl.gram, pl.h_coords, m) for m in METHODS)
    assert a == b


def test_rank18_counts(rank18):
    report = count_curves(rank18, 3)
    assert report.counts == {1: 16, 2: 288, 3: 1536}


def test_classes_are_valid_and_pairwise_nonnegative(rank14):
    report = count_curves(rank14, 4)
    allc = [D for d in report.classes for D in report.classes[d]]
    Gh = el.matvec(rank14.gram, rank14.h_coords)
    for d, cls in report.classes.items():
        for D in cls:
            assert el.bilinear(D, rank14.gram, D) == -2
            assert el.dot(D, Gh) == d
    for i, D in enumerate(allc):
        for E in allc[:i]:
            assert el.bilinear(D, rank14.gram, E) >= 0


def test_basis_change_keeps_counts(rank14):
    rng = random.Random(3)
    n = rank14.rank
    U = el.identity(n)
    for _ in range(30):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        U[i] = [a + c * b for a, b in zip(U[i], U[j])]
    Uinv = el.as_integer_matrix(el.inverse(U))
    G2 = el.matmul(el.matmul(U, rank14.gram), el.transpose(U))
    # h has coordinates h U^-1 in the new basis
    h2 = el.vecmat(rank14.h_coords, Uinv)
    pl2 = PolarizedLattice(G2, h2)
    assert count_curves(pl2, 3).counts == count_curves(rank14, 3).counts


def test_lattice_from_generators_round_trip():
    # three vectors in a rank-2 lattice with one relation
    B = [[1, 0], [0, 1], [1, 1]]
    G0 = [[2, 1], [1, -2]]
    G = el.matmul(el.matmul(B, G0), el.transpose(B))
    gram, coords = lattice_from_generators(G)
    assert len(gram) == 2
    for i in range(3):
        for j in range(3):
            assert el.bilinear(coords[i], gram, coords[j]) == G[i][j]
    assert abs(el.det(gram)) == abs(el.det(G0))


def test_rank14_conic_count(rank14):
    # the 102 curves of the rank-14 lattice sit in degree 2
    assert count_curves(rank14, 4).counts == {1: 4, 2: 102, 3: 0, 4: 0}
