import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from adet.errors import InputError, NotOnAffineHyperplane, NotSaturated, NotSpanning, WrongRank
from adet.fixtures import CUBIC_A, CUBIC_BA, HEXAGON_BA, SQUARE_BA
from adet.intlinalg import (det2, hermite_normal_form, integer_kernel, rank, smith_invariants,
                            validate_input)


def product_is_zero(M, K):
    return not np.array(M, dtype=object).dot(np.array(K, dtype=object).T).any()


def sympy_invariants(M):
    snf = smith_normal_form(sympy.Matrix(M), domain=sympy.ZZ)
    return [abs(int(snf[k, k])) for k in range(min(snf.shape)) if snf[k, k] != 0]


def same_lattice(K1, K2):
    return (hermite_normal_form(K1) == hermite_normal_form(K2)).all()


def test_kernel_of_twisted_cubic_moment_matrix():
    M = [[1, 1, 1, 1], [0, 1, 2, 3]]
    K = integer_kernel(M)
    assert K.shape == (2, 4)
    assert product_is_zero(M, K)
    assert same_lattice(K, [[1, -2, 1, 0], [0, 1, -2, 1]])
    # saturation: K extends to a basis of Z^4
    assert sympy_invariants(K.tolist()) == [1, 1]
    # the stacked matrix is not unimodular; its determinant is fixed by M alone
    stacked = np.vstack([np.array(M, dtype=object), K])
    assert abs(sympy.Matrix(stacked.tolist()).det()) == 20


def test_kernel_of_identity_is_empty():
    assert integer_kernel([[1, 0], [0, 1]]).shape == (0, 2)


def test_kernel_of_hexagon_class_matrix():
    K = integer_kernel(HEXAGON_BA)
    assert K.shape == (4, 6)
    assert product_is_zero(HEXAGON_BA, K)


def test_kernel_is_rerun_stable():
    assert (integer_kernel(SQUARE_BA) == integer_kernel(SQUARE_BA)).all()


@pytest.mark.parametrize("v, w, expected", [
    ([1, 0], [0, 1], 1),
    ([1, 0], [1, 1], 1),
    ([1, -1], [0, -1], -1),
    ([2, 3], [2, 3], 0),
])
def test_det2(v, w, expected):
    assert det2(v, w) == expected


def test_validate_from_points_gives_cubic_relations():
    B = validate_input(A=CUBIC_A)
    assert same_lattice(B, CUBIC_BA)


def test_validate_accepts_block_matrix_unchanged():
    assert (validate_input(B=SQUARE_BA) == np.array(SQUARE_BA, dtype=object)).all()


def test_validate_rejects_nonzero_row_sums():
    with pytest.raises(InputError):
        validate_input(B=[[1, 1], [0, 1]])


def test_validate_errors_name_the_hypothesis():
    with pytest.raises(NotSpanning):
        validate_input(A=[[1, 1, 1, 1], [0, 2, 4, 6]])
    with pytest.raises(NotOnAffineHyperplane):
        validate_input(A=[[1, 0, 1, 2], [0, 1, 1, 1]])
    with pytest.raises(NotSaturated):
        validate_input(B=[[2, 0, -2], [0, 2, -2]])
    with pytest.raises(WrongRank):
        validate_input(B=[[1, -1, 0], [2, -2, 0]])
    with pytest.raises(ValueError):
        validate_input()


small_matrices = st.integers(1, 3).flatmap(
    lambda d: st.integers(d, 6).flatmap(
        lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n),
                           min_size=d, max_size=d)))


@given(small_matrices)
def test_kernel_properties(M):
    K = integer_kernel(M)
    n = len(M[0])
    r = rank(M)
    assert K.shape == (n - r, n)
    if K.shape[0]:
        assert product_is_zero(M, K)
        # saturated: the kernel basis extends to a basis of Z^n
        assert sympy_invariants(K.tolist()) == [1] * K.shape[0]
    assert rank(np.vstack([np.array(M, dtype=object), K]).tolist()) == r + K.shape[0]


@given(small_matrices, st.lists(st.integers(-3, 3), min_size=9, max_size=9))
def test_kernel_ignores_unimodular_row_changes(M, coeffs):
    d = len(M)
    # build U as a product of elementary operations, so det U = 1
    U = np.identity(d, dtype=object)
    for step, c in enumerate(coeffs):
        a, b = step % d, (step + 1) % d
        if a != b:
            U[a] = U[a] + c * U[b]
    UM = U.dot(np.array(M, dtype=object))
    assert (integer_kernel(UM) == integer_kernel(M)).all()


@given(small_matrices)
def test_smith_invariants_match_sympy(M):
    assert smith_invariants(M) == sympy_invariants(M)
