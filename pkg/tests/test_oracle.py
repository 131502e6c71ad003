import pytest
from hypothesis import given, strategies as st

from adet.errors import DegreeZero, TooLarge, UnsupportedDegree
from adet.fixtures import CUBIC_BA, hexagon_pattern, square_pattern
from adet.kasteleyn import build_K, complement_K, compute_adet, principal_adet
from adet.oracle import (from_sympy, permutation_determinant, sylvester_resultant, to_sympy,
                         univariate_EA_oracle)
from adet.polyring import SparsePoly, determinant, u, v, z

from support import relation_matrices

a0, a1, a2, a3 = v(1), v(2), v(3), v(4)


def test_linear_resultant():
    assert sylvester_resultant(["v1", "v2"], ["v3", "v4"]) == v(1) * v(4) - v(2) * v(3)


def test_cubic_resultant_with_derivative():
    res = sylvester_resultant(["v1", "v2", "v3", "v4"], ["v2", "2*v3", "3*v4"])
    inner = (18 * a0 * a1 * a2 * a3 - 4 * a1 ** 3 * a3 + a1 ** 2 * a2 ** 2
             - 4 * a0 * a2 ** 3 - 27 * a0 ** 2 * a3 ** 2)
    assert res in (a3 * inner, -(a3 * inner))


def test_resultant_of_equal_polynomials_vanishes():
    assert sylvester_resultant(["v1", "v2", "v3"], ["v1", "v2", "v3"]).is_zero()


def test_resultant_needs_positive_degree():
    with pytest.raises(DegreeZero):
        sylvester_resultant(["v1"], ["v2", "v3"])


def test_cubic_oracle():
    E = univariate_EA_oracle(3)
    assert E.exquo(v(1)) * v(1) == E
    assert E == principal_adet(CUBIC_BA)
    with pytest.raises(UnsupportedDegree):
        univariate_EA_oracle(2)


def test_permutation_determinant_examples():
    diag = [[v(1), 0, 0], [0, v(2), 0], [0, 0, v(3)]]
    assert permutation_determinant(diag) == v(1) * v(2) * v(3)
    K = build_K(hexagon_pattern()).entries
    swapped = [K[1], K[0], K[2]]
    assert permutation_determinant(swapped) == -permutation_determinant(K)
    with pytest.raises(TooLarge):
        permutation_determinant([[0] * 7 for _ in range(7)])


@pytest.mark.parametrize("K", [build_K(hexagon_pattern()), build_K(square_pattern()),
                               complement_K(build_K(square_pattern()))])
def test_oracle_matches_polyring(K):
    assert permutation_determinant(K.entries) == determinant(K.entries)


def test_sympy_roundtrip():
    p = 3 * z(2) * u(1) ** 2 - v(4) + 7
    assert from_sympy(to_sympy(p)) == p
    assert from_sympy(to_sympy(SparsePoly())).is_zero()


@given(relation_matrices(nmax=5))
def test_oracle_on_pipeline_matrices(B_A):
    res = compute_adet(B_A, newton=False)
    if res.K.size <= 5:
        assert permutation_determinant(res.K.entries) == res.K.determinant(cross_check=False)
