import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from aidlab.certificates import find_certificate
from aidlab.derivations import compute_der, derivation_report, matrices
from aidlab.families import a_family, g53, g56, gn_certificate, gn_derivation, gn_family, heisenberg, n4
from aidlab.linalg import QQ, Matrix
from aidlab.param import (
    AlwaysMember,
    CertificateError,
    CertificatePiece,
    ConstraintContext,
    Counterexample,
    PiecewiseCertificate,
    Undecided,
    decide_pointwise_membership,
    is_pointwise_member,
    verify_certificate,
)
from aidlab.poly import Poly

from strategies import vectors


def var(i, n):
    return Poly.var(i - 1, n)


def zeros(n):
    return [Poly.zero(n)] * n


def g56_certificate():
    """alpha1 != 0: phi = (alpha2/alpha1) e4; alpha1 = 0: phi = e3."""
    n = 5
    a1, a2 = var(1, n), var(2, n)
    generic = zeros(n)
    generic[3] = a2
    special = zeros(n)
    special[2] = Poly.const(1, n)
    return PiecewiseCertificate.from_conditions([(a1, generic, a1), (None, special, Poly.const(1, n))])


# -- constraint contexts -----------------------------------------------------


def test_linear_equality_is_substituted():
    n = 3
    ctx = ConstraintContext(n)
    (branch,) = ctx.with_equality(var(1, n) - var(3, n))
    assert branch.is_zero(var(1, n) * var(2, n) - var(3, n) * var(2, n))
    assert not branch.is_zero(var(1, n))


def test_contradictory_inequation_is_dropped():
    n = 2
    (ctx,) = ConstraintContext(n).with_equality(var(1, n))
    assert ctx.with_inequation(var(1, n)) is None
    assert ctx.with_inequation(var(2, n)) is not None


def test_nonlinear_equality_splits_on_factors():
    n = 2
    branches = ConstraintContext(n).with_equality(var(1, n) * var(2, n))
    assert len(branches) == 2


def test_holds_at_checks_both_kinds():
    n = 2
    (ctx,) = ConstraintContext(n).with_equality(var(1, n))
    ctx = ctx.with_inequation(var(2, n))
    assert ctx.holds_at([0, 5])
    assert not ctx.holds_at([0, 0])
    assert not ctx.holds_at([1, 5])


# -- decision examples ---------------------------------------------------------


def test_g56_e52_is_always_member():
    assert isinstance(decide_pointwise_membership(g56(), Matrix.unit(5, 5, 2)), AlwaysMember)


def test_g53_e53_is_always_member():
    assert isinstance(decide_pointwise_membership(g53(), Matrix.unit(5, 5, 3)), AlwaysMember)


def test_heisenberg_e21_has_basis_witness():
    L, D = heisenberg(), Matrix.unit(3, 2, 1)
    out = decide_pointwise_membership(L, D)
    assert isinstance(out, Counterexample)
    assert tuple(out.witness) == (1, 0, 0)
    assert not is_pointwise_member(L, D, out.witness)


def test_zero_derivation_is_member():
    assert isinstance(decide_pointwise_membership(n4(), Matrix.zeros(4, 4)), AlwaysMember)


def test_tiny_depth_cap_gives_undecided_or_answer():
    out = decide_pointwise_membership(gn_family(2), gn_derivation(2, 1), depth_cap=1)
    assert isinstance(out, (Undecided, AlwaysMember))


# -- certificates --------------------------------------------------------------


def test_g56_printed_certificate_verifies():
    assert verify_certificate(g56(), Matrix.unit(5, 5, 2), g56_certificate())


def test_g56_certificate_rejected_for_other_derivation():
    assert not verify_certificate(g56(), Matrix.unit(5, 5, 3), g56_certificate())


def test_zero_certificate_for_zero_derivation():
    n = 4
    cert = PiecewiseCertificate.from_conditions([(None, zeros(n), Poly.const(1, n))])
    assert verify_certificate(n4(), Matrix.zeros(n, n), cert)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_gn_printed_certificates_verify(n):
    L = gn_family(n)
    for i in range(1, n + 1):
        assert verify_certificate(L, gn_derivation(n, i), gn_certificate(n, i))


def test_gn_certificate_with_flipped_sign_fails():
    n = 2
    cert = gn_certificate(n, 1)
    first = cert.pieces[0]
    flipped = tuple(-p for p in first.numerator)
    bad = PiecewiseCertificate((CertificatePiece(first.equalities, first.inequations, flipped, first.denominator),) + cert.pieces[1:])
    assert not verify_certificate(gn_family(n), gn_derivation(n, 1), bad)


def test_uncovered_certificate_is_rejected():
    n = 5
    a1 = var(1, n)
    only_generic = PiecewiseCertificate((CertificatePiece((), (a1,), tuple(zeros(n)), a1),))
    with pytest.raises(CertificateError):
        verify_certificate(g56(), Matrix.unit(5, 5, 2), only_generic)


def test_unjustified_denominator_is_rejected():
    n = 5
    cert = PiecewiseCertificate.from_conditions(
        [(var(1, n), zeros(n), var(2, n)), (None, zeros(n), Poly.const(1, n))]
    )
    with pytest.raises(CertificateError):
        verify_certificate(g56(), Matrix.zeros(5, 5), cert)


@pytest.mark.parametrize(
    "L, D",
    [
        (g56(), Matrix.unit(5, 5, 2)),
        (g53(), Matrix.unit(5, 5, 3)),
        (gn_family(2), gn_derivation(2, 2)),
    ],
    ids=["g56", "g53", "g2"],
)
def test_template_search_finds_verified_certificates(L, D):
    cert = find_certificate(L, D)
    assert cert is not None
    assert verify_certificate(L, D, cert)


def test_template_search_gives_up_on_non_member():
    assert find_certificate(heisenberg(), Matrix.unit(3, 2, 1)) is None


# -- properties -------------------------------------------------------------------

ALGEBRAS = [heisenberg(), g53(), g56(), n4(), a_family(1, -1), a_family(2, 3)]


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: L.name)
@given(data=st.data())
@settings(max_examples=15)
def test_inner_derivations_are_always_members(L, data):
    v = data.draw(vectors(L.dim, st.integers(-3, 3).map(QQ)))
    assert isinstance(decide_pointwise_membership(L, L.ad_matrix(v)), AlwaysMember)


def _random_point(rng, n):
    return tuple(QQ(rng.randint(-20, 20)) / rng.randint(1, 7) for _ in range(n))


@pytest.mark.parametrize("L", ALGEBRAS, ids=lambda L: L.name)
def test_decisions_on_der_basis_are_sound(L):
    rng = random.Random(7)
    for D in matrices(L, compute_der(L)):
        out = decide_pointwise_membership(L, D)
        if isinstance(out, Counterexample):
            assert not is_pointwise_member(L, D, out.witness)
        elif isinstance(out, AlwaysMember):
            assert all(is_pointwise_member(L, D, _random_point(rng, L.dim)) for _ in range(200))


@pytest.mark.parametrize("L", ALGEBRAS + [gn_family(2)], ids=lambda L: L.name)
def test_certified_generators_are_never_refuted(L):
    for g in derivation_report(L).generators:
        if g.certificate is not None:
            assert verify_certificate(L, g.matrix, g.certificate)
            assert not isinstance(decide_pointwise_membership(L, g.matrix), Counterexample)


@given(st.lists(st.integers(-4, 4), min_size=8, max_size=8))
@settings(max_examples=40)
def test_random_der_elements_of_g56_are_decided_consistently(coeffs):
    L = g56()
    mats = matrices(L, compute_der(L))
    D = Matrix.zeros(5, 5)
    for c, M in zip(coeffs, mats):
        D = D + M.scale(c)
    out = decide_pointwise_membership(L, D)
    rep_aid = derivation_report(L).aid.space
    if isinstance(out, Counterexample):
        assert not is_pointwise_member(L, D, out.witness)
        assert not rep_aid.contains(D.flat())
    else:
        assert isinstance(out, AlwaysMember)
        assert rep_aid.contains(D.flat())
