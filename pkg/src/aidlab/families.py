"""Constructors for the Lie algebra families used throughout the package.

Every constructor returns a Jacobi-checked :class:`LieAlgebra` with labelled
basis vectors.  Indices in bracket tables are 1-based.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .lie import LieAlgebra, abelian, direct_sum
from .linalg import QQ, Matrix
from .param import PiecewiseCertificate
from .poly import Poly

__all__ = [
    "heisenberg",
    "n3",
    "g53",
    "g56",
    "n4",
    "graph_algebra",
    "complete_graph_edges",
    "path_edges",
    "free_nilpotent",
    "free_metabelian",
    "almost_abelian",
    "filiform_standard",
    "metabelian_filiform",
    "a_family",
    "triangular",
    "gn_family",
    "gn_derivation",
    "gn_certificate",
    "aqr_isomorphism_to_a10",
    "aqr_isomorphism_to_a1m1",
    "verify_isomorphism",
    "SingularMatrix",
    "FAMILY_NAMES",
    "build_family",
    "abelian",
    "direct_sum",
]


def _add(br: dict, i: int, j: int, k: int, c=1) -> None:
    """Accumulate ``c e_k`` into ``[e_i, e_j]``, normalising to ``i < j``."""
    if i == j:
        return
    if i > j:
        i, j, c = j, i, -QQ(c)
    terms = br.setdefault((i, j), {})
    terms[k] = terms.get(k, 0) + QQ(c)
    if not terms[k]:
        del terms[k]


def heisenberg() -> LieAlgebra:
    return LieAlgebra(3, {(1, 2): {3: 1}}, name="n3")


n3 = heisenberg


def g53() -> LieAlgebra:
    return LieAlgebra(5, {(1, 2): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}}, name="g53")


def g56() -> LieAlgebra:
    return LieAlgebra(
        5, {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}}, name="g56"
    )


def n4() -> LieAlgebra:
    return filiform_standard(4).relabel(name="n4")


# ---------------------------------------------------------------------------
# 2-step algebras from graphs, free nilpotent algebras
# ---------------------------------------------------------------------------


def complete_graph_edges(r: int) -> list[tuple[int, int]]:
    return list(combinations(range(1, r + 1), 2))


def path_edges(r: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(1, r)]


def graph_algebra(vertices: int, edges: Iterable[tuple[int, int]], name: str | None = None) -> LieAlgebra:
    """``[x_i, x_j] = y_ij`` for each edge; edges ordered lexicographically.

    Basis: ``x_1..x_V`` followed by one ``y_ij`` per edge.
    """
    norm = []
    for e in edges:
        i, j = e
        if i == j:
            raise ValueError(f"loop at vertex {i}")
        if not (1 <= i <= vertices and 1 <= j <= vertices):
            raise ValueError(f"edge {e} uses a vertex outside 1..{vertices}")
        key = (min(i, j), max(i, j))
        if key in norm:
            raise ValueError(f"edge {key} given twice")
        norm.append(key)
    norm.sort()
    br = {}
    for idx, (i, j) in enumerate(norm):
        br[(i, j)] = {vertices + idx + 1: 1}
    labels = [f"x{i}" for i in range(1, vertices + 1)] + [f"y{i},{j}" for i, j in norm]
    if name is None:
        name = f"graph{vertices}[" + ",".join(f"{i}-{j}" for i, j in norm) + "]"
    return LieAlgebra(vertices + len(norm), br, labels=labels, name=name)


def free_nilpotent(r: int, step: int) -> LieAlgebra:
    """Free nilpotent algebra on ``r`` generators of class 2 or 3 in a Hall basis.

    Basis: generators ``e_i``, then ``y_ij = [e_i, e_j]`` (``i < j``, lex),
    then ``z_ijk = [e_i, y_jk]`` (``j < k``, ``i <= k``) ordered by
    ``(j, k, i)``.  For ``i > k`` the bracket ``[e_i, y_jk]`` is rewritten
    as ``-z_jki + z_kji`` using the Jacobi identity.
    """
    if r < 2:
        raise ValueError("need at least two generators")
    if step not in (2, 3):
        raise ValueError(f"unsupported step {step}; only 2 and 3 are implemented")
    ys = list(combinations(range(1, r + 1), 2))
    yidx = {p: r + a + 1 for a, p in enumerate(ys)}
    labels = [f"e{i}" for i in range(1, r + 1)] + [f"y{i},{j}" for i, j in ys]
    br: dict = {}
    for (i, j), k in yidx.items():
        _add(br, i, j, k)
    if step == 3:
        zs = [(i, j, k) for j, k in ys for i in range(1, k + 1)]
        zs.sort(key=lambda t: (t[1], t[2], t[0]))
        zidx = {t: r + len(ys) + a + 1 for a, t in enumerate(zs)}
        labels += [f"z{i},{j},{k}" for i, j, k in zs]
        for i in range(1, r + 1):
            for (j, k), y in yidx.items():
                if i <= k:
                    _add(br, i, y, zidx[(i, j, k)])
                else:
                    _add(br, i, y, zidx[(j, k, i)], -1)
                    _add(br, i, y, zidx[(k, j, i)], 1)
    dim = len(labels)
    return LieAlgebra(dim, br, labels=labels, name=f"f{r},{step}")


def free_metabelian(c: int) -> LieAlgebra:
    """Free metabelian nilpotent algebra of class ``c`` on two generators.

    Basis ``x1, x2`` and ``y^m_n`` (``2 <= m <= c``, ``1 <= n < m``) ordered
    by ``m`` then ``n``, with ``y^2_1 = [x2, x1]``,
    ``[y^m_n, x1] = y^{m+1}_n`` and ``[y^m_n, x2] = y^{m+1}_{n+1}``.
    """
    if c < 1:
        raise ValueError("class must be at least 1")
    ys = [(m, k) for m in range(2, c + 1) for k in range(1, m)]
    idx = {t: 3 + a for a, t in enumerate(ys)}
    br: dict = {}
    if c >= 2:
        _add(br, 2, 1, idx[(2, 1)])
    for (m, k), a in idx.items():
        if m < c:
            _add(br, a, 1, idx[(m + 1, k)])
            _add(br, a, 2, idx[(m + 1, k + 1)])
    labels = ["x1", "x2"] + [f"y{m}_{k}" for m, k in ys]
    return LieAlgebra(2 + len(ys), br, labels=labels, name=f"m2,{c}")


# ---------------------------------------------------------------------------
# almost abelian and filiform algebras
# ---------------------------------------------------------------------------


def almost_abelian(blocks: Sequence[tuple[object, int]]) -> LieAlgebra:
    """``C^n ⋊ <e_{n+1}>`` with ``ad(e_{n+1})`` on ``C^n`` in Jordan form.

    ``blocks`` lists ``(eigenvalue, size)``; inside a block
    ``[e_{n+1}, e_j] = lambda e_j + e_{j-1}`` (no ``e_{j-1}`` term for the
    first vector of the block).
    """
    if not blocks:
        raise ValueError("need at least one Jordan block")
    n = sum(size for _, size in blocks)
    t = n + 1
    br: dict = {}
    start = 1
    for lam, size in blocks:
        if size < 1:
            raise ValueError("Jordan block sizes must be positive")
        lam = QQ(lam)
        for j in range(start, start + size):
            if lam:
                _add(br, t, j, j, lam)
            if j > start:
                _add(br, t, j, j - 1, 1)
        start += size
    desc = ",".join(f"{lam}:{size}" for lam, size in blocks)
    return LieAlgebra(t, br, name=f"almost-abelian[{desc}]")


def filiform_standard(n: int) -> LieAlgebra:
    """``[e_1, e_i] = e_{i+1}`` for ``i = 2..n-1``."""
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return LieAlgebra(n, {(1, i): {i + 1: 1} for i in range(2, n)}, name=f"f{n}")


def metabelian_filiform(n: int, coeffs: Sequence) -> LieAlgebra:
    """Metabelian filiform algebra in an adapted basis.

    ``coeffs`` holds ``alpha_{2,5}, ..., alpha_{2,n}`` (length ``n - 4``,
    empty for ``n < 5``).  Brackets: ``[e_1, e_i] = e_{i+1}`` for
    ``i = 2..n-1`` and ``[e_2, e_k] = sum_{s=5}^{n-k+3} alpha_{2,s} e_{k+s-3}``
    for ``3 <= k <= n-2``.
    """
    if n < 3:
        raise ValueError("dimension must be at least 3")
    if len(coeffs) != max(n - 4, 0):
        raise ValueError(f"expected {max(n - 4, 0)} coefficients alpha_2,5..alpha_2,{n}")
    alpha = {s: QQ(c) for s, c in zip(range(5, n + 1), coeffs)}
    br: dict = {}
    for i in range(2, n):
        _add(br, 1, i, i + 1)
    for k in range(3, n - 1):
        for s in range(5, n - k + 4):
            if alpha[s]:
                _add(br, 2, k, k + s - 3, alpha[s])
    return LieAlgebra(n, br, name=f"mf{n}")


# ---------------------------------------------------------------------------
# five-dimensional solvable family, triangular algebras, g_n
# ---------------------------------------------------------------------------


def a_family(q, r) -> LieAlgebra:
    """``A(q, r)``: a five-dimensional solvable family with parameters ``q, r``."""
    q, r = QQ(q), QQ(r)
    br: dict = {}
    _add(br, 1, 5, 2)
    _add(br, 2, 5, 2, q + r)
    _add(br, 3, 4, 2)
    _add(br, 3, 5, 1)
    _add(br, 3, 5, 3, q)
    _add(br, 4, 5, 3)
    _add(br, 4, 5, 4, r)
    return LieAlgebra(5, br, name=f"A({q},{r})")


def triangular(n: int, strict: bool = False) -> LieAlgebra:
    """Upper triangular ``n×n`` matrices (strictly upper when ``strict``).

    Basis ``e_ij`` in lexicographic order with
    ``[e_ij, e_kl] = delta_jk e_il - delta_li e_kj``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    units = [(i, j) for i in range(1, n + 1) for j in range(i + (1 if strict else 0), n + 1)]
    idx = {u: a + 1 for a, u in enumerate(units)}
    br: dict = {}
    for (i, j), a in idx.items():
        for (k, l), b in idx.items():
            if a >= b:
                continue
            if j == k:
                _add(br, a, b, idx[(i, l)])
            if l == i:
                _add(br, a, b, idx[(k, j)], -1)
    labels = [f"e{i},{j}" for i, j in units]
    return LieAlgebra(len(units), br, labels=labels, name=f"{'n' if strict else 't'}{n}")


def _gn_index(n: int):
    t1, t2 = 1, 2
    x1 = {i: 2 + i for i in range(1, n + 1)}
    x2 = {i: 2 + n + i for i in range(1, n + 1)}
    y1 = {i: 2 + 2 * n + i for i in range(1, n + 1)}
    y2 = {i: 2 + 3 * n + i for i in range(1, n + 1)}
    return t1, t2, x1, x2, y1, y2


def gn_family(n: int) -> LieAlgebra:
    """2-step nilpotent algebra of dimension ``4n + 2``.

    Basis ``t1, t2, x1_1..x1_n, x2_1..x2_n, y1_1..y1_n, y2_1..y2_n`` with
    ``[t1, x1_i] = y1_i``, ``[t1, x2_i] = y2_i`` and ``[t2, x2_i] = y1_i``.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    t1, t2, x1, x2, y1, y2 = _gn_index(n)
    br: dict = {}
    for i in range(1, n + 1):
        _add(br, t1, x1[i], y1[i])
        _add(br, t1, x2[i], y2[i])
        _add(br, t2, x2[i], y1[i])
    labels = (
        ["t1", "t2"]
        + [f"x1_{i}" for i in range(1, n + 1)]
        + [f"x2_{i}" for i in range(1, n + 1)]
        + [f"y1_{i}" for i in range(1, n + 1)]
        + [f"y2_{i}" for i in range(1, n + 1)]
    )
    return LieAlgebra(4 * n + 2, br, labels=labels, name=f"g_{n}")


def gn_derivation(n: int, i: int) -> Matrix:
    """``D_i``: ``t1 -> y2_i``, every other basis vector to 0."""
    t1, _, _, _, _, y2 = _gn_index(n)
    return Matrix.unit(4 * n + 2, y2[i], t1)


def gn_certificate(n: int, i: int) -> PiecewiseCertificate:
    """The two-piece choice map of ``D_i``.

    With ``a1, a2`` the ``t1, t2`` coordinates of ``x``: if ``a1 != 0`` then
    ``phi(x) = (-a2 x1_i + a1 x2_i) / a1``, otherwise ``phi(x) = 0``.
    """
    t1, t2, x1, x2, _, _ = _gn_index(n)
    dim = 4 * n + 2
    a1, a2 = Poly.var(t1 - 1, dim), Poly.var(t2 - 1, dim)
    num = [Poly.zero(dim)] * dim
    num[x1[i] - 1] = -a2
    num[x2[i] - 1] = a1
    return PiecewiseCertificate.from_conditions(
        [(a1, num, a1), (None, [Poly.zero(dim)] * dim, Poly.const(1, dim))]
    )


# ---------------------------------------------------------------------------
# isomorphisms
# ---------------------------------------------------------------------------


class SingularMatrix(ValueError):
    pass


def verify_isomorphism(src: LieAlgebra, dst: LieAlgebra, M: Matrix) -> bool:
    """Whether ``M [x, y] = [M x, M y]`` on basis pairs (columns of ``M`` are images)."""
    n = src.dim
    if dst.dim != n or M.shape != (n, n):
        raise ValueError("dimension mismatch between algebras and matrix")
    if M.rank() != n:
        raise SingularMatrix("matrix is singular")
    cols = [M.column(j) for j in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            lhs = M.apply(src.bracket(src.basis_vector(i + 1), src.basis_vector(j + 1)))
            if tuple(lhs) != tuple(dst.bracket(cols[i], cols[j])):
                return False
    return True


def aqr_isomorphism_to_a10(q) -> Matrix:
    """Matrix of an isomorphism ``A(q, 0) -> A(1, 0)`` for ``q != 0``, as printed."""
    q = QQ(q)
    if not q:
        raise ValueError("q must be nonzero")
    rows = [
        [q * q, 0, 0, 0, 0],
        [1 - q * q, q, 0, 0, 0],
        [0, 0, q, 0, 0],
        [0, 0, 0, 1, (1 - q * q) / q],
        [0, 0, 0, 0, q],
    ]
    return Matrix(rows)


def aqr_isomorphism_to_a1m1(q) -> Matrix:
    """Matrix of an isomorphism ``A(q, -q) -> A(1, -1)`` for ``q != 0``, as printed."""
    q = QQ(q)
    if not q:
        raise ValueError("q must be nonzero")
    rows = [
        [1, 0, (q * q - 1) / q, (q * q - 1) / (q * q), 0],
        [0, q, (q * q - 1) / q, 0, 0],
        [0, 0, q, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, q],
    ]
    return Matrix(rows)


# ---------------------------------------------------------------------------
# name grammar used by the command line
# ---------------------------------------------------------------------------

FAMILY_NAMES = {
    "graph": "V EDGE... (edges as i-j, e.g. graph 3 1-2 2-3)",
    "free2": "r",
    "free3": "r",
    "metabelian-free": "c",
    "filiform": "n",
    "metabelian-filiform": "n alpha_2,5 ... alpha_2,n",
    "almost-abelian": "LAMBDA:SIZE ... (one per Jordan block)",
    "aqr": "q r",
    "triangular": "n",
    "strict-triangular": "n",
    "gn": "n",
    "n3": "",
    "g53": "",
    "g56": "",
}


def _int(s: str, what: str) -> int:
    try:
        return int(s)
    except ValueError:
        raise ValueError(f"{what} must be an integer, got {s!r}") from None


def _nargs(name: str, params: Sequence[str], k: int) -> None:
    if len(params) != k:
        raise ValueError(f"family {name} takes {k} parameter(s): {FAMILY_NAMES[name]}")


def build_family(name: str, params: Sequence[str] = ()) -> LieAlgebra:
    """Construct a family member from its command-line name and string parameters."""
    params = list(params)
    if name not in FAMILY_NAMES:
        raise ValueError(f"unknown family {name!r}; known: {', '.join(FAMILY_NAMES)}")
    if name in ("n3", "g53", "g56"):
        _nargs(name, params, 0)
        return {"n3": heisenberg, "g53": g53, "g56": g56}[name]()
    if name == "graph":
        if not params:
            raise ValueError("graph needs a vertex count")
        v = _int(params[0], "vertex count")
        edges = []
        for tok in params[1:]:
            a, sep, b = tok.partition("-")
            if not sep:
                raise ValueError(f"edge {tok!r} must look like i-j")
            edges.append((_int(a, "vertex"), _int(b, "vertex")))
        return graph_algebra(v, edges)
    if name in ("free2", "free3"):
        _nargs(name, params, 1)
        return free_nilpotent(_int(params[0], "r"), 2 if name == "free2" else 3)
    if name == "metabelian-free":
        _nargs(name, params, 1)
        return free_metabelian(_int(params[0], "c"))
    if name == "filiform":
        _nargs(name, params, 1)
        return filiform_standard(_int(params[0], "n"))
    if name == "metabelian-filiform":
        if not params:
            raise ValueError("metabelian-filiform needs n")
        n = _int(params[0], "n")
        return metabelian_filiform(n, [QQ(c) for c in params[1:]])
    if name == "almost-abelian":
        blocks = []
        for tok in params:
            lam, sep, size = tok.partition(":")
            if not sep:
                raise ValueError(f"Jordan block {tok!r} must look like LAMBDA:SIZE")
            blocks.append((QQ(lam), _int(size, "block size")))
        return almost_abelian(blocks)
    if name == "aqr":
        _nargs(name, params, 2)
        return a_family(QQ(params[0]), QQ(params[1]))
    if name in ("triangular", "strict-triangular"):
        _nargs(name, params, 1)
        return triangular(_int(params[0], "n"), strict=name == "strict-triangular")
    _nargs(name, params, 1)
    return gn_family(_int(params[0], "n"))
