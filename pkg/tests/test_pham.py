import itertools
import random
from fractions import Fraction

import pytest

from hodgescan import exactlin as el
from hodgescan.errors import InputError, SingularPhamGram
from hodgescan.formats import fixture_path, load_pham_basis
from hodgescan.pham import (
    chi,
    linear_section_intersection,
    pham_intersection,
    polarization_coefficients,
    tau,
)

# printed values for the quartic surface example
A_BL = [0, -1, Fraction(1, 2), 0, 0, Fraction(1, 2), -1, 0, Fraction(1, 2), 0, Fraction(3, 4),
        Fraction(1, 4), Fraction(-1, 4), Fraction(-1, 2), Fraction(-1, 4), Fraction(-3, 4),
        Fraction(1, 4), 0, 0, Fraction(1, 2), Fraction(-1, 2)]
H_X = [0, 4, -2, 0, 0, -2, 4, 0, -2, 0, -3, -1, 1, 2, 1, 3, -1, 0, 0, -2, 2, 4]


@pytest.fixture(scope="module")
def quartic():
    B, d, n = load_pham_basis(fixture_path("pham_d4_n2"))
    return polarization_coefficients(B, d, n)


def test_chi_and_tau():
    assert [chi(b, 4) for b in range(-1, 5)] == [0, 1, -1, 0, 0, 1]
    assert [tau(i, 4) for i in (1, 7, 9, -1, 3)] == [1, -1, 1, -1, 0]


def test_printed_coefficients(quartic):
    assert quartic.a_BL == A_BL
    assert quartic.h_coords == H_X
    assert quartic.L_squared == -2


def test_full_gram(quartic):
    G = quartic.full_gram
    assert len(G) == 22 and el.is_symmetric(G)
    assert abs(el.det(G)) == 1
    assert el.bilinear(H_X, G, H_X) == 4
    assert el.signature(G) == (3, 19, 0)


@pytest.mark.parametrize("n", [2, 4, 6])
def test_vanishing_cycles_are_spheres(n):
    # a Pham cycle is an n-sphere: self-intersection (-1)^(n/2) * 2
    beta = [0] * (n + 2)
    assert pham_intersection(beta, beta, 3, n) == 2 * (-1) ** (n // 2)


@pytest.mark.parametrize("n,d", [(2, 3), (2, 5), (4, 3), (6, 2)])
def test_pairing_is_symmetric(n, d):
    rng = random.Random(n * 10 + d)
    for _ in range(200):
        b1 = [rng.randint(0, d - 1) for _ in range(n + 2)]
        b2 = [rng.randint(0, d - 1) for _ in range(n + 2)]
        assert pham_intersection(b1, b2, d, n) == pham_intersection(b2, b1, d, n)


def test_translation_invariance():
    # the pairing only depends on the difference of the indices
    d, n = 4, 2
    for b1, b2 in itertools.product(itertools.product(range(4), repeat=4), repeat=2):
        if sum(b1) % 3 or sum(b2) % 5:
            continue
        shift = [1, 2, 3, 0]
        s1 = [x + y for x, y in zip(b1, shift)]
        s2 = [x + y for x, y in zip(b2, shift)]
        assert pham_intersection(b1, b2, d, n) == pham_intersection(s1, s2, d, n)


def test_line_pairing_values():
    # tau(-1) * tau(1) and tau(1) * tau(1), worked by hand
    assert linear_section_intersection([0, 0, 0, 0], 4, 2) == -1
    assert linear_section_intersection([0, 0, 1, 0], 4, 2) == 1
    assert linear_section_intersection([0, 1, 2, 0], 4, 2) == tau(3, 4) * tau(-1, 4) == 0


def test_singular_basis():
    B, d, n = load_pham_basis(fixture_path("pham_d4_n2"))
    with pytest.raises(SingularPhamGram):
        polarization_coefficients(B[:-1] + [B[0]], d, n)


def test_bad_dimension():
    with pytest.raises(InputError):
        pham_intersection([0, 0, 0], [0, 0, 0], 4, 1)
    with pytest.raises(InputError):
        polarization_coefficients([[0, 0, 0]], 4, 2)
