"""Template search for piecewise choice maps ``phi`` with ``D(x) = [x, phi(x)]``.

The shapes tried are the ones that appear in hand constructions: on the
piece ``x_s != 0`` the map is a vector of linear forms divided by ``x_s``;
on ``x_s = 0`` either a constant vector works, or a second coordinate
``x_t`` is split off the same way before a constant finishes the job.
Every template is found by solving a linear system, and every hit is
re-checked with :func:`verify_certificate` before it is returned.
"""

from __future__ import annotations

from .lie import LieAlgebra
from .linalg import QQ, Matrix, solve
from .param import PiecewiseCertificate, verify_certificate
from .poly import Poly


def _terms_by_left(L: LieAlgebra):
    """``out[i]`` lists ``(a, k, c)`` with ``[e_i, e_a] = ... + c e_k``."""
    n = L.dim
    return [
        [(a, k, c) for a in range(n) for k, c in L.basis_bracket(i, a).items()] for i in range(n)
    ]


def _linear_template(L: LieAlgebra, D: Matrix, s: int, zeroed: frozenset, left) -> list | None:
    """Matrix ``M`` (row-major, length n^2) with ``[x, M x] = x_s D x`` on ``{x_z = 0, z in zeroed}``."""
    n = L.dim
    live = [i for i in range(n) if i not in zeroed]
    rows: list[dict] = []
    rhs: list = []
    for ii, i in enumerate(live):
        for b in live[ii:]:
            eqs: dict[int, dict] = {}
            for a, k, c in left[i]:
                r = eqs.setdefault(k, {})
                col = a * n + b
                r[col] = r.get(col, 0) + c
            if b != i:
                for a, k, c in left[b]:
                    r = eqs.setdefault(k, {})
                    col = a * n + i
                    r[col] = r.get(col, 0) + c
            for k in range(n):
                if i == s and b == s:
                    target = D.rows[k][s]
                elif i == s:
                    target = D.rows[k][b]
                elif b == s:
                    target = D.rows[k][i]
                else:
                    target = 0
                r = {col: v for col, v in eqs.get(k, {}).items() if v}
                if not r and not target:
                    continue
                if not r:
                    return None
                rows.append(r)
                rhs.append(target)
    return solve(rows, rhs, n * n, QQ)


def _constant_template(L: LieAlgebra, D: Matrix, zeroed: frozenset) -> list | None:
    """Vector ``c`` with ``[e_b, c] = D e_b`` for every ``b`` outside ``zeroed``."""
    n = L.dim
    rows, rhs = [], []
    for b in range(n):
        if b in zeroed:
            continue
        eqs: dict[int, dict] = {}
        for a in range(n):
            for k, c in L.basis_bracket(b, a).items():
                eqs.setdefault(k, {})[a] = c
        for k in range(n):
            r = eqs.get(k, {})
            if not r and not D.rows[k][b]:
                continue
            if not r:
                return None
            rows.append(r)
            rhs.append(D.rows[k][b])
    return solve(rows, rhs, n, QQ)


def _numerator(sol: list, n: int) -> list[Poly]:
    return [Poly.linear(sol[a * n:(a + 1) * n], n) for a in range(n)]


def find_certificate(L: LieAlgebra, D: Matrix, max_splits: int = 2) -> PiecewiseCertificate | None:
    """A verified :class:`PiecewiseCertificate` for ``D`` or ``None`` if no template fits."""
    n = L.dim
    left = _terms_by_left(L)
    one = Poly.const(1, n)
    X = [Poly.var(i, n) for i in range(n)]

    const = _constant_template(L, D, frozenset())
    if const is not None:
        cert = PiecewiseCertificate.from_conditions([(None, [Poly.const(v, n) for v in const], one)])
        return cert if verify_certificate(L, D, cert) else None

    for s in range(n):
        first = _linear_template(L, D, s, frozenset(), left)
        if first is None:
            continue
        piece1 = (X[s], _numerator(first, n), X[s])
        rest = _constant_template(L, D, frozenset({s}))
        if rest is not None:
            cert = PiecewiseCertificate.from_conditions(
                [piece1, (None, [Poly.const(v, n) for v in rest], one)]
            )
            if verify_certificate(L, D, cert):
                return cert
        if max_splits < 2:
            continue
        for t in range(n):
            if t == s:
                continue
            second = _linear_template(L, D, t, frozenset({s}), left)
            if second is None:
                continue
            rest = _constant_template(L, D, frozenset({s, t}))
            if rest is None:
                continue
            cert = PiecewiseCertificate.from_conditions(
                [
                    piece1,
                    (X[t], _numerator(second, n), X[t]),
                    (None, [Poly.const(v, n) for v in rest], one),
                ]
            )
            if verify_certificate(L, D, cert):
                return cert
    return None
