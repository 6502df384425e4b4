"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from aidlab.linalg import QQ, Matrix

small_rationals = st.builds(
    lambda a, b: QQ(Fraction(a, b)),
    st.integers(-6, 6),
    st.integers(1, 4),
)


def vectors(n: int, elements=small_rationals):
    return st.lists(elements, min_size=n, max_size=n).map(tuple)


@st.composite
def matrices(draw, max_rows: int = 5, max_cols: int = 5, sparse: bool = True):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    elements = st.one_of(st.just(QQ(0)), small_rationals) if sparse else small_rationals
    rows = [draw(st.lists(elements, min_size=c, max_size=c)) for _ in range(r)]
    return Matrix(rows)


@st.composite
def subspace_pairs(draw, ambient: int = 5, max_gens: int = 4):
    from aidlab.linalg import Subspace

    elems = st.one_of(st.just(QQ(0)), st.integers(-3, 3).map(QQ))
    gens = lambda: st.lists(vectors(ambient, elems), max_size=max_gens)
    return Subspace(ambient, draw(gens())), Subspace(ambient, draw(gens()))
