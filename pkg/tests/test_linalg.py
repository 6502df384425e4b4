from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from aidlab.derivations import derivation_report
from aidlab.families import g56, heisenberg
from aidlab.linalg import (
    GF,
    QQ,
    DimensionMismatch,
    Matrix,
    Subspace,
    column_space,
    contains,
    intersect,
    nullspace,
    quotient_dim,
    rank,
    rref,
    solve,
    subspace_sum,
)

from strategies import matrices, small_rationals, subspace_pairs


def e(n, i):
    return [1 if k == i - 1 else 0 for k in range(n)]


# -- rref -----------------------------------------------------------------


def test_rref_identity_is_fixed():
    R, r = rref(Matrix.identity(3))
    assert R == Matrix.identity(3) and r == 3


def test_rref_zero_matrix():
    Z = Matrix.zeros(2, 4)
    R, r = rref(Z)
    assert R == Z and r == 0


def test_rref_dependent_rows():
    R, r = rref(Matrix([[1, 2], [2, 4]]))
    assert R == Matrix([[1, 2], [0, 0]]) and r == 1


def test_rref_clears_above_pivots():
    R, r = rref(Matrix([[1, 2, 3], [0, 1, 4], [1, 3, 7]]))
    assert r == 2
    assert R == Matrix([[1, 0, -5], [0, 1, 4], [0, 0, 0]])


def test_large_integers_do_not_overflow():
    big = 10**40
    M = Matrix([[big, 1], [1, Fraction(1, big)]])
    assert rank(M) == 1
    assert rank(Matrix([[big, 1], [1, big]])) == 2


# -- nullspace and friends -------------------------------------------------


def test_nullspace_of_identity_is_zero():
    assert nullspace(Matrix.identity(4)).dim == 0


def test_nullspace_of_zero_is_full():
    assert nullspace(Matrix.zeros(3, 3)) == Subspace.full(3)


def test_nullspace_of_central_ad_matrix_is_everything():
    L = heisenberg()
    assert nullspace(L.ad_matrix(e(3, 3))) == Subspace.full(3)


def test_sum_of_coordinate_lines():
    a, b = Subspace(3, [e(3, 1)]), Subspace(3, [e(3, 2)])
    assert subspace_sum(a, b) == Subspace(3, [e(3, 1), e(3, 2)])


def test_intersection_of_coordinate_planes():
    a = Subspace(3, [e(3, 1), e(3, 2)])
    b = Subspace(3, [e(3, 2), e(3, 3)])
    assert intersect(a, b) == Subspace(3, [e(3, 2)])


def test_quotient_dim_aid_over_inn_for_g56():
    rep = derivation_report(g56())
    assert quotient_dim(rep.aid.space, rep.inn) == 1


def test_quotient_dim_requires_inclusion():
    with pytest.raises(ValueError):
        quotient_dim(Subspace(2, [e(2, 1)]), Subspace(2, [e(2, 2)]))


def test_contains_and_column_space():
    M = Matrix([[1, 0], [0, 0], [0, 1]])
    S = column_space(M)
    assert contains(S, (2, 0, -1))
    assert not contains(S, (0, 1, 0))


def test_dimension_mismatch_is_reported():
    with pytest.raises(DimensionMismatch):
        Subspace(2) + Subspace(3)
    with pytest.raises(DimensionMismatch):
        Matrix.identity(2) @ Matrix.identity(3)


def test_solve_returns_particular_solution_or_none():
    rows = [{0: QQ(1), 1: QQ(1)}, {1: QQ(1)}]
    x = solve(rows, [QQ(3), QQ(1)], 2)
    assert tuple(x) == (2, 1)
    assert solve([{0: QQ(1)}, {0: QQ(2)}], [QQ(1), QQ(3)], 1) is None


def test_finite_field_arithmetic():
    F = GF(5)
    M = Matrix([[1, 2], [3, 1]], F)  # det = 1 - 6 = -5 = 0 mod 5
    assert M.rank() == 1
    assert Matrix([[1, 2], [3, 1]]).rank() == 2
    with pytest.raises(ValueError):
        GF(4)


def test_fields_are_not_mixed():
    with pytest.raises(TypeError):
        Matrix.identity(2) + Matrix.identity(2, GF(3))


# -- properties -----------------------------------------------------------


@given(matrices())
def test_rank_equals_rank_of_transpose(M):
    assert rank(M) == rank(M.transpose())


@given(matrices())
def test_rank_nullity(M):
    assert rank(M) + nullspace(M).dim == M.ncols


@given(matrices())
def test_nullspace_vectors_are_killed(M):
    for v in nullspace(M).basis:
        assert not any(M.apply(v))


@given(matrices())
def test_rref_is_idempotent(M):
    R, r = rref(M)
    R2, r2 = rref(R)
    assert R2 == R and r2 == r


@given(subspace_pairs())
def test_canonical_form_is_idempotent(pair):
    a, _ = pair
    again = Subspace(a.ambient, a.basis)
    assert again.basis == a.basis and again == a


@given(subspace_pairs())
def test_dimension_formula(pair):
    a, b = pair
    assert (a + b).dim + (a & b).dim == a.dim + b.dim


@given(subspace_pairs())
def test_intersection_lies_in_both(pair):
    a, b = pair
    meet = a & b
    assert meet <= a and meet <= b and a <= a + b and b <= a + b


@given(small_rationals, small_rationals, st.integers(1, 50), st.integers(1, 50))
def test_fraction_sum_two_ways(a, c, b, d):
    direct = a / b + c / d
    common = (a * d + c * b) / (b * d)
    assert direct == common
    assert QQ(Fraction(int(direct.numerator), int(direct.denominator))) == common
