import pytest
from hypothesis import given
from hypothesis import strategies as st

from aidlab.derivations import compute_der, compute_inn
from aidlab.families import FAMILY_NAMES, a_family, build_family, g53, g56, gn_family, heisenberg, n4
from aidlab.lie import (
    JacobiError,
    LieAlgebra,
    abelian,
    center,
    centralizer,
    derived_length,
    derived_series,
    direct_sum,
    is_ideal,
    jacobi_violation,
    lower_central_series,
    nilpotency_class,
    quotient,
    validate_jacobi,
)
from aidlab.linalg import Matrix, Subspace, nullspace

from strategies import vectors

SAMPLE_ALGEBRAS = [heisenberg(), g53(), g56(), n4(), a_family(2, 3), a_family(0, 0), gn_family(1)]


def e(n, i):
    return tuple(1 if k == i - 1 else 0 for k in range(n))


def corrupted_g56_brackets():
    return {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}, (2, 4): {5: 1}}


# -- Jacobi ----------------------------------------------------------------


def test_heisenberg_and_abelian_satisfy_jacobi():
    assert validate_jacobi(heisenberg()) is True
    assert validate_jacobi(abelian(5)) is True


def jacobi_defects(L):
    out = {}
    n = L.dim
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                x, y, z = e(n, i), e(n, j), e(n, k)
                terms = zip(
                    L.bracket(L.bracket(x, y), z),
                    L.bracket(L.bracket(y, z), x),
                    L.bracket(L.bracket(z, x), y),
                )
                total = tuple(a + b + c for a, b, c in terms)
                if any(total):
                    out[(i, j, k)] = total
    return out


def test_corrupted_g56_is_rejected_with_first_triple():
    # [[e2,e3],e1] + [[e3,e1],e2] = [e5,e1] + [e2,e4] = e5 once [e2,e4] = e5.
    L = LieAlgebra(5, corrupted_g56_brackets(), check=False)
    bad = validate_jacobi(L)
    assert not bad
    assert bad.triple == (1, 2, 3)
    assert tuple(bad.defect) == (0, 0, 0, 0, 1)


def test_corrupted_g56_fails_on_exactly_one_triple():
    # every term of the (e1, e2, e4) expansion vanishes, so only (e1, e2, e3) fails
    defects = jacobi_defects(LieAlgebra(5, corrupted_g56_brackets(), check=False))
    assert list(defects) == [(1, 2, 3)]


def test_constructor_raises_on_violation():
    with pytest.raises(JacobiError) as info:
        LieAlgebra(5, corrupted_g56_brackets())
    assert info.value.violation.triple == (1, 2, 3)


def test_bad_bracket_input_is_rejected():
    with pytest.raises(IndexError):
        LieAlgebra(2, {(1, 3): {2: 1}})
    with pytest.raises(ValueError):
        LieAlgebra(3, {(1, 2): {3: 1}, (2, 1): {3: 1}})


@pytest.mark.parametrize("name", [n for n, sig in FAMILY_NAMES.items() if not sig])
def test_fixed_algebras_satisfy_jacobi(name):
    assert validate_jacobi(build_family(name, [])) is True


# -- brackets --------------------------------------------------------------


def test_heisenberg_bracket():
    assert heisenberg().bracket(e(3, 1), e(3, 2)) == e(3, 3)


def test_g56_bracket():
    assert g56().bracket(e(5, 2), e(5, 3)) == e(5, 5)


def test_ad_matrix_columns_are_brackets():
    L = g56()
    x = (1, 2, 0, -1, 3)
    A = L.ad_matrix(x)
    for j in range(1, 6):
        assert A.column(j - 1) == L.bracket(x, e(5, j))


@pytest.mark.parametrize("L", SAMPLE_ALGEBRAS, ids=lambda L: L.name)
@given(data=st.data())
def test_bracket_is_antisymmetric(L, data):
    x = data.draw(vectors(L.dim))
    y = data.draw(vectors(L.dim))
    assert L.bracket(x, x) == tuple([0] * L.dim)
    assert L.bracket(x, y) == tuple(-v for v in L.bracket(y, x))


@pytest.mark.parametrize("L", SAMPLE_ALGEBRAS, ids=lambda L: L.name)
@given(data=st.data())
def test_ad_is_a_homomorphism(L, data):
    x = data.draw(vectors(L.dim))
    y = data.draw(vectors(L.dim))
    assert L.ad_matrix(L.bracket(x, y)) == L.ad_matrix(x).commutator(L.ad_matrix(y))


# -- center, centralizer ---------------------------------------------------


def test_center_of_heisenberg():
    assert center(heisenberg()) == Subspace(3, [e(3, 3)])


def test_centralizer_of_e1_in_heisenberg():
    assert centralizer(heisenberg(), e(3, 1)) == Subspace(3, [e(3, 1), e(3, 3)])


def test_center_of_abelian_is_everything():
    assert center(abelian(4)) == Subspace.full(4)


@pytest.mark.parametrize("L", SAMPLE_ALGEBRAS, ids=lambda L: L.name)
def test_center_is_common_kernel_of_ad(L):
    rows = []
    for i in range(1, L.dim + 1):
        rows.extend(L.ad_matrix(e(L.dim, i)).rows)
    assert center(L) == nullspace(Matrix(rows))
    for i in range(1, L.dim + 1):
        assert center(L) <= centralizer(L, e(L.dim, i))


@pytest.mark.parametrize("L", SAMPLE_ALGEBRAS, ids=lambda L: L.name)
def test_inn_dimension_is_dim_minus_center(L):
    assert compute_inn(L).dim == L.dim - center(L).dim


# -- series ----------------------------------------------------------------


@pytest.mark.parametrize(
    "L, c, d",
    [(heisenberg(), 2, 2), (g56(), 4, 2), (abelian(5), 1, 1), (g53(), 3, 2)],
    ids=["n3", "g56", "C5", "g53"],
)
def test_class_and_derived_length(L, c, d):
    assert nilpotency_class(L) == c
    assert derived_length(L) == d


def test_non_nilpotent_algebra_has_no_class():
    L = a_family(1, 0)
    assert nilpotency_class(L) is None
    assert derived_length(L) is not None


def test_series_are_decreasing_ideals():
    L = g56()
    lcs = lower_central_series(L)
    assert [S.dim for S in lcs] == [5, 3, 2, 1, 0]
    for S in lcs + derived_series(L):
        assert is_ideal(L, S)


# -- constructions -----------------------------------------------------------


def test_direct_sum_of_heisenberg_and_plane():
    L = direct_sum(heisenberg(), abelian(2))
    assert L.dim == 5
    assert compute_inn(L).dim == 2
    assert validate_jacobi(L) is True


def test_quotient_of_g56_by_center_is_n4():
    Q, proj = quotient(g56(), center(g56()))
    assert Q.dim == 4
    assert Q.structure_constants() == {(1, 2): {3: 1}, (1, 3): {4: 1}}
    assert Q.structure_constants() == n4().structure_constants()
    assert proj.shape == (4, 5)


def test_quotient_by_zero_is_the_same_table():
    L = g53()
    Q, proj = quotient(L, Subspace.zero(5))
    assert Q.structure_constants() == L.structure_constants()
    assert proj == Matrix.identity(5)


def test_quotient_rejects_non_ideals():
    with pytest.raises(ValueError):
        quotient(heisenberg(), Subspace(3, [e(3, 1)]))


@pytest.mark.parametrize("L", SAMPLE_ALGEBRAS, ids=lambda L: L.name)
def test_projection_is_a_homomorphism(L):
    I = derived_series(L)[1]
    Q, P = quotient(L, I)
    for i in range(1, L.dim + 1):
        for j in range(1, L.dim + 1):
            x, y = e(L.dim, i), e(L.dim, j)
            assert P.apply(L.bracket(x, y)) == Q.bracket(P.apply(x), P.apply(y))


def test_der_contains_inn():
    for L in SAMPLE_ALGEBRAS:
        assert compute_inn(L) <= compute_der(L)
