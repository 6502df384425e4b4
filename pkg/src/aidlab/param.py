"""Linear algebra with polynomial entries and case-splitting elimination.

The question answered here is the universally quantified membership

    for all x:  D x  lies in the column space of ad(x),

where the entries of ``ad(x)`` are linear forms in the coordinates of ``x``.
The augmented matrix ``[ad(x) | D x]`` is eliminated with polynomial
entries.  Whenever a pivot candidate is a non-constant polynomial the search
branches on "candidate != 0" (used as pivot) and "candidate = 0" (recorded as
an equality).  A leaf fails when some row with vanishing coefficient part has
a right-hand side that can be nonzero under the leaf's constraints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

from .lie import LieAlgebra
from .linalg import QQ, Matrix, column_space
from .poly import Poly, factor, format_poly

__all__ = [
    "ConstraintContext",
    "AlwaysMember",
    "Counterexample",
    "Undecided",
    "DecisionOutcome",
    "CertificatePiece",
    "PiecewiseCertificate",
    "CertificateError",
    "decide_pointwise_membership",
    "verify_certificate",
    "is_pointwise_member",
    "symbolic_bracket",
    "DEFAULT_DEPTH_CAP",
]

DEFAULT_DEPTH_CAP = 4096


# ---------------------------------------------------------------------------
# constraint contexts
# ---------------------------------------------------------------------------


class ConstraintContext:
    """Conjunction of polynomial equalities (``= 0``) and inequations (``!= 0``).

    Linear equalities are eliminated on arrival by solving for their
    highest-indexed variable; ``subs`` keeps those solutions expressed in the
    remaining free variables.  Non-linear equalities are kept as they are and
    only used for zero tests by division remainder.
    """

    __slots__ = ("nvars", "subs", "nonlinear", "inequations")

    def __init__(self, nvars: int, subs=None, nonlinear=(), inequations=()):
        self.nvars = nvars
        self.subs: dict[int, Poly] = dict(subs or {})
        self.nonlinear: tuple[Poly, ...] = tuple(nonlinear)
        self.inequations: tuple[Poly, ...] = tuple(inequations)

    @property
    def equalities(self) -> tuple[Poly, ...]:
        lin = tuple(Poly.var(v, self.nvars) - q for v, q in sorted(self.subs.items()))
        return lin + self.nonlinear

    def free_vars(self) -> list[int]:
        return [i for i in range(self.nvars) if i not in self.subs]

    def normalize(self, p: Poly) -> Poly:
        for v, q in self.subs.items():
            p = p.subs(v, q)
        return p

    def is_zero(self, p: Poly) -> bool:
        """Sound zero test: ``True`` only if ``p`` vanishes on every point of the context."""
        if p.is_zero():
            return True
        q = self.normalize(p)
        if q.is_zero():
            return True
        return bool(self.nonlinear) and q.remainder(self.nonlinear).is_zero()

    def with_inequation(self, p: Poly) -> "ConstraintContext | None":
        q = self.normalize(p)
        if self.is_zero(q):
            return None
        if q.is_constant():
            return self
        q = q.primitive()
        if q in self.inequations:
            return self
        return ConstraintContext(self.nvars, self.subs, self.nonlinear, self.inequations + (q,))

    def with_equality(self, p: Poly) -> list["ConstraintContext"]:
        """Contexts whose union is ``self ∧ p = 0`` (non-linear ``p`` splits on its factors)."""
        q = self.normalize(p)
        if self.is_zero(q):
            return [self]
        if q.is_constant():
            return []
        if q.degree() == 1:
            c = self._substitute(q)
            return [] if c is None else [c]
        out = []
        base: ConstraintContext | None = self
        for f in factor(q):
            if base is None:
                break
            if f.degree() == 1:
                branch = base._substitute(base.normalize(f))
            else:
                branch = base._add_nonlinear(f)
            if branch is not None:
                out.append(branch)
            base = base.with_inequation(f)
        return out

    def _add_nonlinear(self, f: Poly) -> "ConstraintContext | None":
        f = self.normalize(f)
        if self.is_zero(f):
            return self
        if f.is_constant():
            return None
        if f.degree() == 1:
            return self._substitute(f)
        nl = self.nonlinear + (f.primitive(),)
        if any(g.remainder(nl).is_zero() for g in self.inequations):
            return None
        return ConstraintContext(self.nvars, self.subs, nl, self.inequations)

    def _substitute(self, lin: Poly) -> "ConstraintContext | None":
        coeffs, const = lin.linear_coefficients()
        v = max(i for i, c in enumerate(coeffs) if c)
        cv = coeffs[v]
        expr = Poly.linear(
            [(-c / cv if i != v else 0) for i, c in enumerate(coeffs)], self.nvars, -const / cv
        )
        subs = {w: q.subs(v, expr) for w, q in self.subs.items()}
        subs[v] = expr
        ineqs = []
        for g in self.inequations:
            g2 = g.subs(v, expr)
            if g2.is_zero():
                return None
            if not g2.is_constant():
                g2 = g2.primitive()
                if g2 not in ineqs:
                    ineqs.append(g2)
        ctx = ConstraintContext(self.nvars, subs, (), ineqs)
        for f in self.nonlinear:
            ctx = ctx._add_nonlinear(f.subs(v, expr)) if ctx is not None else None
        if ctx is not None and ctx.nonlinear:
            if any(g.remainder(ctx.nonlinear).is_zero() for g in ctx.inequations):
                return None
        return ctx

    def holds_at(self, point: Sequence) -> bool:
        return all(not e.evaluate(point) for e in self.equalities) and all(
            g.evaluate(point) for g in self.inequations
        )

    def describe(self) -> str:
        eqs = [format_poly(e) + " = 0" for e in self.equalities]
        ins = [format_poly(g) + " != 0" for g in self.inequations]
        return ", ".join(eqs + ins) or "true"

    def __repr__(self) -> str:
        return f"ConstraintContext({self.describe()})"


# ---------------------------------------------------------------------------
# outcomes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AlwaysMember:
    leaves: int = 0
    kind = "always-member"


@dataclass(frozen=True)
class Counterexample:
    witness: tuple
    leaves: int = 0
    kind = "counterexample"


@dataclass(frozen=True)
class Undecided:
    reason: str
    leaves: int = 0
    kind = "undecided"


DecisionOutcome = Union[AlwaysMember, Counterexample, Undecided]


def is_pointwise_member(L: LieAlgebra, D: Matrix, x: Sequence) -> bool:
    """Direct exact check of ``D x in [g, x]``."""
    return column_space(L.ad_matrix(x)).contains(D.apply(x))


# ---------------------------------------------------------------------------
# the case-splitting search
# ---------------------------------------------------------------------------


def _symbolic_ad(L: LieAlgebra, X: list[Poly]) -> list[list[Poly]]:
    n = L.dim
    A = [[Poly.zero(n) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in L.basis_bracket(i, j).items():
                A[k][j] = A[k][j] + X[i] * c
    return A


class _Abort(Exception):
    pass


class _Search:
    def __init__(self, L: LieAlgebra, D: Matrix, depth_cap: int, seed: int):
        self.L, self.D, self.n = L, D, L.dim
        self.cap = depth_cap
        self.leaves = 0
        self.rng = random.Random(seed)
        self.witness: tuple | None = None
        self.unresolved: list[str] = []

    def run(self) -> DecisionOutcome:
        n = self.n
        X = [Poly.var(i, n) for i in range(n)]
        A = _symbolic_ad(self.L, X)
        b = [Poly.zero(n) for _ in range(n)]
        for k in range(n):
            for j in range(n):
                c = self.D.rows[k][j]
                if c:
                    b[k] = b[k] + X[j] * c
        M = [A[k] + [b[k]] for k in range(n)]
        try:
            self._eliminate(M, ConstraintContext(n), frozenset(), 0, Poly.const(1, n))
        except _Abort:
            if self.witness is not None:
                return Counterexample(self.witness, self.leaves)
            return Undecided(f"more than {self.cap} leaf contexts", self.leaves)
        if self.unresolved:
            return Undecided("; ".join(self.unresolved[:3]), self.leaves)
        return AlwaysMember(self.leaves)

    def _apply(self, M, ctx: ConstraintContext):
        return [[ctx.normalize(e) for e in row] for row in M]

    def _pivot(self, M, pivots, r, c, prev: Poly):
        n = self.n
        p = M[r][c]
        out = list(M)
        zero = Poly.zero(n)
        for i in range(n):
            if i == r or i in pivots:
                continue
            a = M[i][c]
            if a.is_zero():
                continue
            row = [zero] * (c + 1) + [p * M[i][j] - a * M[r][j] for j in range(c + 1, n + 1)]
            if not prev.is_constant():
                divided = [e.exact_div(prev) for e in row]
                if all(d is not None for d in divided):
                    row = divided
            out[i] = row
        return out

    def _eliminate(self, M, ctx: ConstraintContext, pivots: frozenset, col: int, prev: Poly):
        n = self.n
        while col < n:
            cand = None
            for r in range(n):
                if r in pivots:
                    continue
                e = M[r][col]
                if not ctx.is_zero(e):
                    cand = r
                    break
            if cand is None:
                col += 1
                continue
            e = M[cand][col]
            if e.is_constant():
                M = self._pivot(M, pivots, cand, col, prev)
                pivots = pivots | {cand}
                prev = e
                col += 1
                continue
            nz = ctx.with_inequation(e)
            if nz is not None:
                self._eliminate(self._pivot(M, pivots, cand, col, prev), nz, pivots | {cand}, col + 1, e)
            for zc in ctx.with_equality(e):
                self._eliminate(self._apply(M, zc), zc, pivots, col, zc.normalize(prev))
            return
        self._check_rhs(M, ctx, pivots, 0)

    def _check_rhs(self, M, ctx: ConstraintContext, pivots, start: int):
        n = self.n
        for r in range(start, n):
            if r in pivots:
                continue
            b = M[r][n]
            if ctx.is_zero(b):
                continue
            bad = ctx.with_inequation(b)
            if bad is not None:
                self._failing_leaf(bad)
            for zc in ctx.with_equality(b):
                self._check_rhs(self._apply(M, zc), zc, pivots, r + 1)
            return
        self._count_leaf()

    def _count_leaf(self):
        self.leaves += 1
        if self.leaves > self.cap:
            raise _Abort

    def _failing_leaf(self, ctx: ConstraintContext):
        self._count_leaf()
        w = find_witness(self.L, self.D, ctx, self.rng)
        if w is not None:
            self.witness = w
            raise _Abort
        self.unresolved.append(f"no rational witness found for leaf [{ctx.describe()}]")


def _candidate_points(free: list[int], rng: random.Random, tries: int):
    k = len(free)
    if k == 0:
        yield {}
        return
    for i in range(k):
        yield {v: (1 if v == free[i] else 0) for v in free}
    yield {v: 1 for v in free}
    for i in range(k):
        for j in range(i + 1, k):
            for s in (1, -1):
                yield {v: (1 if v == free[i] else s if v == free[j] else 0) for v in free}
    for _ in range(tries):
        yield {v: rng.randint(-9, 9) for v in free}


def _partial(p: Poly, values: dict[int, object]) -> Poly:
    for v, val in values.items():
        p = p.subs(v, Poly.const(val, p.nvars))
    return p


def find_witness(L: LieAlgebra, D: Matrix, ctx: ConstraintContext, rng: random.Random, tries: int = 200):
    """A rational point of ``ctx`` at which ``D x`` is not in ``[g, x]``, or None."""
    n = ctx.nvars
    for i in range(n):
        point = tuple(QQ.one if k == i else QQ.zero for k in range(n))
        if ctx.holds_at(point) and not is_pointwise_member(L, D, point):
            return point
    free = ctx.free_vars()
    solve_vars: list[tuple[Poly, int]] = []
    taken: set[int] = set()
    for eq in ctx.nonlinear:
        v = next((v for v in free if v not in taken and eq.degree_in(v) == 1), None)
        if v is None:
            return None
        taken.add(v)
        solve_vars.append((eq, v))
    chosen = [v for v in free if v not in taken]
    for assign in _candidate_points(chosen, rng, tries):
        values = {v: QQ(a) for v, a in assign.items()}
        ok = True
        for eq, v in solve_vars:
            uni = _partial(eq, values)
            if uni.variables() - {v}:
                ok = False
                break
            if uni.degree() <= 0:
                if not uni.is_zero():
                    ok = False
                    break
                values[v] = QQ(rng.randint(-9, 9))
                continue
            coeffs, const = uni.linear_coefficients()
            values[v] = -const / coeffs[v]
        if not ok or len(values) != len(free):
            continue
        point = [QQ.zero] * n
        for v, a in values.items():
            point[v] = a
        for v, q in ctx.subs.items():
            point[v] = q.evaluate(point)
        point = tuple(point)
        if not ctx.holds_at(point):
            continue
        if not is_pointwise_member(L, D, point):
            return point
    return None


def decide_pointwise_membership(
    L: LieAlgebra, D: Matrix, depth_cap: int = DEFAULT_DEPTH_CAP, seed: int = 0
) -> DecisionOutcome:
    """Decide whether ``D x`` lies in ``[g, x]`` for every ``x``.

    ``D`` is assumed to be a derivation.  Counterexamples are verified by a
    direct exact check before being returned; leaves whose constraints admit
    no rational point that the witness search can find are reported as
    :class:`Undecided` rather than guessed.
    """
    if L.field != QQ:
        raise ValueError("the parametric decision works over Q")
    if D.shape != (L.dim, L.dim):
        raise ValueError("derivation matrix has the wrong shape")
    for i in range(L.dim):
        e = L.basis_vector(i + 1)
        if not is_pointwise_member(L, D, e):
            return Counterexample(e, 0)
    return _Search(L, D, depth_cap, seed).run()


# ---------------------------------------------------------------------------
# piecewise certificates
# ---------------------------------------------------------------------------


class CertificateError(ValueError):
    pass


@dataclass(frozen=True)
class CertificatePiece:
    """``phi(x) = numerator(x) / denominator(x)`` on the set cut out by the constraints."""

    equalities: tuple[Poly, ...]
    inequations: tuple[Poly, ...]
    numerator: tuple[Poly, ...]
    denominator: Poly


@dataclass(frozen=True)
class PiecewiseCertificate:
    """Case-split choice map ``phi`` with ``D(x) = [x, phi(x)]``.

    Piece ``k`` is defined by one inequation ``c_k != 0`` together with the
    equalities ``c_1 = ... = c_{k-1} = 0``; the final piece has no
    inequation.  That shape makes the pieces cover every ``x``.
    """

    pieces: tuple[CertificatePiece, ...] = dc_field(default=())

    @classmethod
    def from_conditions(cls, entries) -> "PiecewiseCertificate":
        """``entries``: sequence of ``(condition or None, numerator, denominator)``."""
        pieces = []
        earlier: list[Poly] = []
        for cond, num, den in entries:
            ineq = () if cond is None else (cond,)
            pieces.append(CertificatePiece(tuple(earlier), ineq, tuple(num), den))
            if cond is not None:
                earlier.append(cond)
        return cls(tuple(pieces))

    @property
    def nvars(self) -> int:
        return self.pieces[0].denominator.nvars

    def check_cover(self) -> None:
        if not self.pieces:
            raise CertificateError("certificate has no pieces")
        earlier: list[Poly] = []
        for idx, piece in enumerate(self.pieces):
            last = idx == len(self.pieces) - 1
            if tuple(piece.equalities) != tuple(earlier):
                raise CertificateError(
                    f"piece {idx + 1}: equalities must be the conditions of the earlier pieces"
                )
            if last and piece.inequations:
                raise CertificateError("the last piece must not carry an inequation")
            if not last and len(piece.inequations) != 1:
                raise CertificateError(f"piece {idx + 1}: exactly one defining inequation expected")
            earlier.extend(piece.inequations)

    def phi(self, x: Sequence) -> tuple:
        """Evaluate the choice map at a rational point."""
        for piece in self.pieces:
            if any(e.evaluate(x) for e in piece.equalities):
                continue
            if any(not g.evaluate(x) for g in piece.inequations):
                continue
            den = piece.denominator.evaluate(x)
            return tuple(q.evaluate(x) / den for q in piece.numerator)
        raise CertificateError("no piece applies")


def symbolic_bracket(L: LieAlgebra, X: Sequence[Poly], Y: Sequence[Poly]) -> list[Poly]:
    n = L.dim
    nv = X[0].nvars if X else 0
    out = [Poly.zero(nv) for _ in range(n)]
    for i in range(n):
        if X[i].is_zero():
            continue
        for a in range(n):
            if Y[a].is_zero():
                continue
            t = L.basis_bracket(i, a)
            if not t:
                continue
            prod = X[i] * Y[a]
            for k, c in t.items():
                out[k] = out[k] + prod * c
    return out


def _justify_denominator(den: Poly, inequations: Sequence[Poly]) -> bool:
    if den.is_zero():
        return False
    rest = den
    progress = True
    while not rest.is_constant() and progress:
        progress = False
        for g in inequations:
            q = rest.exact_div(g)
            if q is not None:
                rest = q
                progress = True
                break
    return rest.is_constant()


def verify_certificate(L: LieAlgebra, D: Matrix, cert: PiecewiseCertificate) -> bool:
    """Check ``[x, num(x)] - den(x) D x = 0`` on every piece, modulo its equalities.

    Raises :class:`CertificateError` for a non-exhaustive cover or a
    denominator that is not a product of the piece's inequations.
    """
    n = L.dim
    cert.check_cover()
    X = [Poly.var(i, n) for i in range(n)]
    Dx = [Poly.zero(n) for _ in range(n)]
    for k in range(n):
        for j in range(n):
            c = D.rows[k][j]
            if c:
                Dx[k] = Dx[k] + X[j] * c
    for idx, piece in enumerate(cert.pieces):
        if len(piece.numerator) != n or piece.denominator.nvars != n:
            raise CertificateError(f"piece {idx + 1}: formula has the wrong size")
        if not _justify_denominator(piece.denominator, piece.inequations):
            raise CertificateError(f"piece {idx + 1}: denominator not justified by its inequations")
        ctx = ConstraintContext(n)
        for e in piece.equalities:
            branches = ctx.with_equality(e)
            if len(branches) != 1:
                # an equality that splits or is infeasible cannot be used as a single context
                if not branches:
                    ctx = None
                    break
                return False
            ctx = branches[0]
        if ctx is None:
            continue
        for g in piece.inequations:
            nxt = ctx.with_inequation(g)
            if nxt is None:
                ctx = None
                break
            ctx = nxt
        if ctx is None:
            continue
        lhs = symbolic_bracket(L, X, list(piece.numerator))
        for k in range(n):
            if not ctx.is_zero(lhs[k] - piece.denominator * Dx[k]):
                return False
    return True
