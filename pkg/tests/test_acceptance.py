"""The fourteen acceptance criteria, exact arithmetic throughout.

Each test is tagged with ``criterion(k)``; the terminal summary prints one
PASS/FAIL line per criterion (see ``conftest.py``).
"""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from aidlab import goldens
from aidlab.derivations import EXACT, derivation_report
from aidlab.families import (
    a_family,
    almost_abelian,
    aqr_isomorphism_to_a1m1,
    aqr_isomorphism_to_a10,
    filiform_standard,
    free_metabelian,
    free_nilpotent,
    g53,
    g56,
    gn_certificate,
    gn_derivation,
    gn_family,
    graph_algebra,
    heisenberg,
    metabelian_filiform,
    n4,
    path_edges,
    triangular,
    verify_isomorphism,
)
from aidlab.fixed import fixed_vector_prover
from aidlab.lie import abelian, derived_length, direct_sum, nilpotency_class
from aidlab.linalg import Matrix, Subspace, column_space
from aidlab.oracle import oracle_aid
from aidlab.param import Counterexample, decide_pointwise_membership, verify_certificate
from aidlab.properties import aid_is_additive, check_report_properties

criterion = pytest.mark.criterion


def dims(rep):
    return rep.inn.dim, rep.caid.space.dim, rep.aid.space.dim, rep.der.dim


def inn_plus(rep, *mats):
    return rep.inn + Subspace(rep.inn.ambient, [M.flat() for M in mats])


def assert_aid_is_inn(L):
    rep = derivation_report(L)
    assert rep.status == EXACT, f"{L.name} only bracketed"
    assert rep.aid.space == rep.inn, f"{L.name}: AID {rep.aid.space.dim} vs Inn {rep.inn.dim}"
    return rep


@criterion(1)
def test_01_dimension_five_table():
    rows = [
        (g56(), (4, 5, 5, 8), (4, 2)),
        (g53(), (4, 5, 5, 10), (3, 2)),
        (direct_sum(heisenberg(), abelian(2)), (2, 2, 2, 16), (2, 2)),
        (abelian(5), (0, 0, 0, 25), (1, 1)),
    ]
    for L, want, cd in rows:
        rep = derivation_report(L)
        assert rep.status == EXACT
        assert dims(rep) == want
        assert (nilpotency_class(L), derived_length(L)) == cd
    for L, unit in [(g56(), Matrix.unit(5, 5, 2)), (g53(), Matrix.unit(5, 5, 3))]:
        rep = derivation_report(L)
        assert rep.aid.space == inn_plus(rep, unit)
        assert inn_plus(rep, *[g.matrix for g in rep.generators]) == inn_plus(rep, unit)


@criterion(2)
def test_02_dimension_six_rows():
    rows = [
        (direct_sum(g56(), abelian(1)), (4, 5, 5, 12)),
        (direct_sum(g53(), abelian(1)), (4, 5, 5, 15)),
        (direct_sum(heisenberg(), heisenberg()), (4, 4, 4, 16)),
        (direct_sum(n4(), abelian(2)), (3, 3, 3, 17)),
        (gn_family(1), (4, 6, 6, 17)),
    ]
    for L, want in rows:
        rep = derivation_report(L)
        assert rep.status == EXACT
        assert dims(rep) == want, L.name
    rep = derivation_report(gn_family(1))
    assert rep.aid.space.dim - rep.inn.dim == 2


@criterion(3)
def test_03_aqr_stratification():
    points = [(2, 3), (1, 0), (0, 1), (1, -1), (0, 0), (2, -2), (3, 0), (0, 0), (5, 7)]
    for q, r in points:
        rep = derivation_report(a_family(q, r))
        assert rep.status == EXACT
        assert rep.der.dim == (8 if (q, r) == (0, 0) else 7)
        assert rep.inn.dim == 4
        assert rep.aid.space.dim == (5 if q * r == 0 or q + r == 0 else 4), (q, r)


@criterion(4)
def test_04_aqr_isomorphism_matrices():
    for q in (2, 3, 5):
        assert verify_isomorphism(a_family(q, 0), a_family(1, 0), aqr_isomorphism_to_a10(q))
        assert verify_isomorphism(a_family(q, -q), a_family(1, -1), aqr_isomorphism_to_a1m1(q))
    assert not verify_isomorphism(a_family(1, 0), a_family(1, -1), Matrix.identity(5))


@criterion(5)
def test_05_graph_algebras():
    count = 0
    for v in range(1, 6):
        pairs = list(combinations(range(1, v + 1), 2))
        for mask in range(1 << len(pairs)):
            edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
            L = graph_algebra(v, edges)
            assert_aid_is_inn(L)
            assert fixed_vector_prover(L).all_fixed, (v, edges)
            count += 1
    assert count == 1 + 2 + 8 + 64 + 1024
    assert len(goldens.graph_classes(5)) == 34
    assert [len(goldens.graph_classes(v)) for v in (1, 2, 3, 4)] == [1, 2, 4, 11]


@criterion(6)
def test_06_free_nilpotent():
    for r in (2, 3, 4):
        assert_aid_is_inn(free_nilpotent(r, 2))
    for r in (2, 3):
        assert_aid_is_inn(free_nilpotent(r, 3))
    assert free_nilpotent(3, 3).dim == 14


@criterion(7)
def test_07_free_metabelian():
    for c in (2, 3, 4, 5):
        assert_aid_is_inn(free_metabelian(c))


@criterion(8)
def test_08_almost_abelian_and_standard_filiform():
    algs = [almost_abelian(b) for b in ([(0, 4)], [(1, 2), (2, 2)], [(0, 2), (0, 2)], [(1, 3)])]
    algs += [filiform_standard(n) for n in range(4, 9)]
    for L in algs:
        assert_aid_is_inn(L)
        assert fixed_vector_prover(L).all_fixed, L.name


@criterion(9)
def test_09_metabelian_filiform():
    rng = random.Random(2024)
    for n in (5, 6, 7):
        vectors = [[1] * (n - 4), [Fraction(-3, 2)] + [0] * (n - 5)]
        while len(vectors) < 5:
            cs = [Fraction(rng.randint(-7, 7), rng.randint(1, 4)) for _ in range(n - 4)]
            if any(cs):
                vectors.append(cs)
        for cs in vectors:
            rep = derivation_report(metabelian_filiform(n, cs))
            assert rep.status == EXACT
            assert rep.aid.space.dim - rep.inn.dim == 1
            assert rep.aid.space == inn_plus(rep, Matrix.unit(n, n, 2)), (n, cs)
            assert rep.caid.space == rep.aid.space


@criterion(10)
def test_10_triangular():
    for n in (2, 3, 4, 5):
        assert_aid_is_inn(triangular(n, strict=True))
        assert_aid_is_inn(triangular(n))
    assert triangular(5).dim == 15


@criterion(11)
def test_11_gn_family():
    for n in (2, 3, 4):
        L = gn_family(n)
        rep = derivation_report(L)
        assert rep.status == EXACT
        assert rep.aid.space.dim - rep.inn.dim == n
        Ds = [gn_derivation(n, i) for i in range(1, n + 1)]
        assert rep.aid.space == inn_plus(rep, *Ds)
        for i, D in enumerate(Ds, start=1):
            assert verify_certificate(L, D, gn_certificate(n, i))
        assert rep.caid.space == rep.aid.space


@criterion(12)
def test_12_structural_properties():
    algebras = goldens.catalogue() + goldens.graph_catalogue(5)
    assert len(algebras) > 90
    for L in algebras:
        assert check_report_properties(L, derivation_report(L)) == [], L.name
    rng = random.Random(12)
    pool = [g56(), g53(), heisenberg(), n4(), abelian(2), a_family(1, -1), gn_family(1), triangular(2)]
    for _ in range(5):
        L1, L2 = rng.sample(pool, 2)
        assert aid_is_additive(L1, L2), (L1.name, L2.name)


@criterion(13)
def test_13_oracle_concordance():
    algs = [heisenberg(), g53(), g56(), gn_family(2), graph_algebra(3, path_edges(3))]
    for L in algs:
        rep = derivation_report(L)
        assert rep.status == EXACT
        for p in (5, 7):
            assert oracle_aid(L, p).aid == rep.aid.space.dim, (L.name, p)


@criterion(14)
def test_14_negative_control():
    L, D = heisenberg(), Matrix.unit(3, 2, 1)
    out = decide_pointwise_membership(L, D)
    assert isinstance(out, Counterexample)
    w = out.witness
    assert not column_space(L.ad_matrix(w)).contains(D.apply(w))


def test_golden_runner_covers_every_criterion():
    assert sorted(goldens.CRITERIA) == list(range(1, 15))
    results = goldens.run_goldens()
    assert all(r.passed for r in results), [r.line() for r in results if not r.passed]
