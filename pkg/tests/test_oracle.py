import pytest

from aidlab.families import free_metabelian, g53, g56, gn_family, graph_algebra, heisenberg, path_edges
from aidlab.lie import LieAlgebra, abelian
from aidlab.linalg import GF
from aidlab.oracle import BudgetExceeded, cross_check, oracle_aid, projective_points, reduce_mod_p


def test_heisenberg_over_f5():
    rep = oracle_aid(heisenberg(), 5)
    assert (rep.aid, rep.inn) == (2, 2)


def test_heisenberg_over_f5_literal_enumeration():
    rep = oracle_aid(heisenberg(), 5, reduced=False)
    assert rep.aid == 2 and not rep.reduced


def test_g56_over_f7():
    assert oracle_aid(g56(), 7).aid == 5


def test_g56_literal_enumeration_agrees():
    assert oracle_aid(g56(), 5, reduced=False).aid == oracle_aid(g56(), 5).aid == 5


def test_abelian_over_f3():
    rep = oracle_aid(abelian(3), 3)
    assert rep.aid == 0 and rep.anomaly_prone


def test_gn2_over_f3_has_two_extra_dimensions():
    rep = oracle_aid(gn_family(2), 3)
    assert rep.aid - rep.inn == 2


def test_g53_cross_check_agrees_everywhere():
    cc = cross_check(g53(), (5, 7, 11))
    assert cc.consistent and cc.rational_aid == 5
    assert all(e.report.aid == 5 for e in cc.entries)


def test_small_characteristic_is_flagged_not_fatal():
    cc = cross_check(free_metabelian(3), (2,))
    (entry,) = cc.entries
    assert entry.report.anomaly_prone
    if not entry.agrees:
        assert "anomaly" in entry.note


@pytest.mark.parametrize("L", [heisenberg(), g56(), graph_algebra(3, path_edges(3))], ids=["n3", "g56", "P3"])
def test_oracle_sandwich_chain(L):
    rep = oracle_aid(L, 5)
    assert rep.inn <= rep.aid <= rep.der


def test_der_jump_is_detected():
    # [e1, e2] = 5 e3 degenerates to the abelian algebra mod 5
    L = LieAlgebra(3, {(1, 2): {3: 5}})
    rep = oracle_aid(L, 5, der_rational=6)
    assert rep.der == 9 and rep.der_jump


def test_budget_is_enforced():
    with pytest.raises(BudgetExceeded):
        oracle_aid(gn_family(2), 7, budget=1000)


def test_denominators_divisible_by_p_are_rejected():
    L = LieAlgebra(3, {(1, 2): {3: "1/5"}})
    with pytest.raises(ValueError):
        reduce_mod_p(L, 5)
    assert reduce_mod_p(L, 7).field == GF(7)


def test_projective_points_count_and_normalisation():
    pts = list(projective_points([0, 2], 3, 5))
    assert len(pts) == 6
    for v in pts:
        lead = next(c for c in v if c)
        assert lead == 1 and v[1] == 0
