import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hodgescan import exactlin as el


def int_matrices(max_rows=5, max_cols=5, bound=20):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def random_unimodular(n, rng, steps=12):
    U = el.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            k = rng.randint(-3, 3)
            U[i] = [a + k * b for a, b in zip(U[i], U[j])]
    return U


@given(int_matrices())
def test_hnf_transform_is_unimodular(M):
    H, U = el.hnf(M)
    assert el.matmul(U, M) == H
    assert abs(el.det(U)) == 1


@given(int_matrices())
def test_hnf_shape(M):
    H = el.hnf_basis(M)
    assert len(H) == el.rank(M)
    last = -1
    for row in H:
        p = next(i for i, x in enumerate(row) if x)
        assert p > last and row[p] > 0
        for above in H[: H.index(row)]:
            assert 0 <= above[p] < row[p]
        last = p


@given(int_matrices(max_rows=4, max_cols=4), st.integers(0, 10 ** 6))
def test_hnf_is_basis_invariant(M, seed):
    U = random_unimodular(len(M), random.Random(seed))
    assert el.hnf_basis(el.matmul(U, M)) == el.hnf_basis(M)


@given(int_matrices(max_rows=6, max_cols=4, bound=9))
def test_int_kernel_is_saturated_left_kernel(M):
    K = el.int_kernel(M)
    assert len(K) == len(M) - el.rank(M)
    for v in K:
        assert el.vecmat(v, M) == [0] * len(M[0])
    assert el.saturate(K) == el.hnf_basis(K) if K else True


def test_int_kernel_small():
    assert el.int_kernel([[2], [4]]) in ([[-2, 1]], [[2, -1]])


def test_lattice_intersect_diagonal():
    # 2Z x Z meets Z x 3Z in 2Z x 3Z
    got = el.lattice_intersect([[2, 0], [0, 1]], [[1, 0], [0, 3]])
    assert got == [[2, 0], [0, 3]]


@given(int_matrices(max_rows=3, max_cols=3, bound=6), int_matrices(max_rows=3, max_cols=3, bound=6))
def test_lattice_intersect_membership(A, B):
    n = min(len(A[0]), len(B[0]))
    A = [r[:n] for r in A]
    B = [r[:n] for r in B]
    inter = el.lattice_intersect(A, B)
    for v in inter:
        assert el.in_lattice(A, v) and el.in_lattice(B, v)


def test_det_and_inverse():
    M = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert el.det(M) == 18
    inv = el.inverse(M)
    assert el.matmul(M, inv) == el.identity(3)
    assert el.det([]) == 1


def test_signature_and_definiteness():
    assert el.signature([[1, 0], [0, -1]]) == (1, 1, 0)
    assert el.signature([[2, 1], [1, 2]]) == (2, 0, 0)
    assert el.signature([[1, 1], [1, 1]]) == (1, 0, 1)
    assert el.leading_minors_positive([[2, 1], [1, 2]])
    assert not el.leading_minors_positive([[1, 2], [2, 1]])


def test_solve_and_coordinates():
    A = [[2, 1], [1, 1]]
    assert el.solve(A, [3, 2]) == [Fraction(1), Fraction(1)]
    assert el.solve([[1, 1], [1, 1]], [1, 2]) is None
    assert el.integer_coordinates([[2, 0], [0, 1]], [4, 5]) == [2, 5]
    assert el.integer_coordinates([[2, 0], [0, 1]], [3, 5]) is None


def test_empty_inputs():
    assert el.hnf_basis([]) == []
    assert el.rank([]) == 0
    assert el.int_kernel([]) == []


def test_ragged_matrix_is_rejected():
    from hodgescan.errors import InputError
    with pytest.raises(InputError):
        el.check_rectangular([[1, 2], [3]])
