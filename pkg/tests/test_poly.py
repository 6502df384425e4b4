from hypothesis import given
from hypothesis import strategies as st

from aidlab.linalg import QQ
from aidlab.poly import Poly, factor, format_poly, parse_poly

from strategies import small_rationals

N = 3
x1, x2, x3 = (Poly.var(i, N) for i in range(N))


@st.composite
def polys(draw, nvars=N):
    terms = draw(
        st.dictionaries(
            st.tuples(*[st.integers(0, 2)] * nvars), small_rationals, max_size=4
        )
    )
    return Poly(nvars, terms)


def test_arithmetic_basics():
    p = (x1 + x2) * (x1 - x2)
    assert p == x1 * x1 - x2 * x2
    assert (p - p).is_zero()
    assert Poly.const(QQ(3), N).constant_value() == 3


def test_exact_division():
    p = (x1 + x2) * (x3 - 1)
    assert p.exact_div(x1 + x2) == x3 - 1
    assert (x1 + 1).exact_div(x2) is None


def test_substitution_and_evaluation():
    p = x1 * x2 + x3
    assert p.subs(0, x3) == x3 * x2 + x3
    assert p.evaluate([2, 3, 4]) == 10


def test_factor_returns_irreducible_parts():
    p = (x1 + x2) ** 2 * (x1 - 2 * x3)
    got = {format_poly(f) for f in factor(p)}
    assert len(got) == 2
    assert any("x2" in g and "x3" not in g for g in got)


def test_remainder_modulo_linear_polynomial():
    assert (x1 * x2 - x2 * x2).remainder([x1 - x2]).is_zero()


@given(polys())
def test_format_parse_round_trip(p):
    assert parse_poly(format_poly(p), N) == p


@given(polys(), polys(), st.lists(small_rationals, min_size=N, max_size=N))
def test_evaluation_is_a_ring_homomorphism(p, q, pt):
    assert (p * q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)
    assert (p + q).evaluate(pt) == p.evaluate(pt) + q.evaluate(pt)
