"""Lie algebras given by structure constants.

Basis indices are 1-based wherever a basis vector is *named* (bracket tables,
``basis_vector``, ``E_{i,j}``), matching the usual ``e_1, ..., e_n`` notation.
Elements themselves are plain coordinate tuples.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import QQ, Matrix, Subspace, intersect, nullspace

__all__ = [
    "LieAlgebra",
    "JacobiError",
    "JacobiViolation",
    "validate_jacobi",
    "bracket",
    "ad_matrix",
    "center",
    "centralizer",
    "bracket_spaces",
    "lower_central_series",
    "derived_series",
    "nilpotency_class",
    "derived_length",
    "direct_sum",
    "quotient",
    "is_ideal",
    "abelian",
]


@dataclass(frozen=True)
class JacobiViolation:
    triple: tuple[int, int, int]
    defect: tuple

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        i, j, k = self.triple
        return f"Jacobi identity fails for (e{i}, e{j}, e{k}); defect {list(map(str, self.defect))}"


class JacobiError(ValueError):
    def __init__(self, violation: JacobiViolation):
        super().__init__(str(violation))
        self.violation = violation


class LieAlgebra:
    """Finite-dimensional Lie algebra ``[e_i, e_j] = sum_k c_ij^k e_k``.

    ``brackets`` maps 1-based pairs ``(i, j)`` to ``{k: c}``.  Only one
    orientation of each pair may be given; the other follows by antisymmetry.
    Unlisted brackets are zero.  The Jacobi identity is checked unless
    ``check=False``.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]] | None = None,
        labels: Sequence[str] | None = None,
        field=QQ,
        name: str | None = None,
        check: bool = True,
    ):
        if dim < 0:
            raise ValueError("negative dimension")
        self.dim = dim
        self.field = field
        self.name = name
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != dim:
                raise ValueError(f"expected {dim} labels, got {len(labels)}")
        self.labels = labels or tuple(f"e{i}" for i in range(1, dim + 1))

        p = field.characteristic
        table: list[list[dict]] = [[{} for _ in range(dim)] for _ in range(dim)]
        seen = set()
        for (i, j), terms in (brackets or {}).items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise IndexError(f"bracket index ({i}, {j}) outside 1..{dim}")
            if i == j:
                if any(field(c) for c in terms.values()):
                    raise ValueError(f"[e{i}, e{i}] must vanish")
                continue
            key = (min(i, j), max(i, j))
            if key in seen:
                raise ValueError(f"bracket ({key[0]}, {key[1]}) given twice")
            seen.add(key)
            sign = 1 if i < j else -1
            for k, c in terms.items():
                if not 1 <= k <= dim:
                    raise IndexError(f"bracket target e{k} outside 1..{dim}")
                v = field(c) * sign
                if p:
                    v %= p
                if not v:
                    continue
                a, b = key[0] - 1, key[1] - 1
                table[a][b][k - 1] = v
                table[b][a][k - 1] = (-v) % p if p else -v
        self._table = table
        self._ad = tuple(self._ad_basis(i) for i in range(dim))
        if check:
            bad = jacobi_violation(self)
            if bad is not None:
                raise JacobiError(bad)

    def _ad_basis(self, i: int) -> Matrix:
        n, f = self.dim, self.field
        rows = [[f.zero] * n for _ in range(n)]
        for j in range(n):
            for k, c in self._table[i][j].items():
                rows[k][j] = c
        return Matrix._raw(tuple(tuple(r) for r in rows), f, n)

    # -- basic accessors -------------------------------------------------

    def basis_vector(self, i: int) -> tuple:
        """``e_i`` (1-based)."""
        f = self.field
        return tuple(f.one if k == i - 1 else f.zero for k in range(self.dim))

    def zero(self) -> tuple:
        return (self.field.zero,) * self.dim

    def element(self, coords: Sequence) -> tuple:
        if len(coords) != self.dim:
            raise ValueError(f"element needs {self.dim} coordinates")
        return tuple(self.field(c) for c in coords)

    def structure_constants(self) -> dict[tuple[int, int], dict[int, object]]:
        """1-based ``{(i, j): {k: c}}`` for ``i < j``, nonzero brackets only."""
        out = {}
        for a in range(self.dim):
            for b in range(a + 1, self.dim):
                t = self._table[a][b]
                if t:
                    out[(a + 1, b + 1)] = {k + 1: v for k, v in sorted(t.items())}
        return out

    def basis_bracket(self, i: int, j: int) -> dict[int, object]:
        """``[e_i, e_j]`` as a 0-based sparse dict (0-based ``i``, ``j``)."""
        return self._table[i][j]

    def ad_basis(self, i: int) -> Matrix:
        """``ad(e_{i+1})`` for a 0-based index."""
        return self._ad[i]

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        n, f = self.dim, self.field
        p = f.characteristic
        out = [f.zero] * n
        xs = [(i, a) for i, a in enumerate(x) if a]
        ys = [(j, b) for j, b in enumerate(y) if b]
        for i, a in xs:
            row = self._table[i]
            for j, b in ys:
                t = row[j]
                if t:
                    ab = a * b
                    for k, c in t.items():
                        out[k] += ab * c
        if p:
            out = [v % p for v in out]
        return tuple(out)

    def ad_matrix(self, x: Sequence) -> Matrix:
        """Matrix of ``y -> [x, y]``; column ``j`` is ``[x, e_j]``."""
        n, f = self.dim, self.field
        p = f.characteristic
        rows = [[f.zero] * n for _ in range(n)]
        for i, a in enumerate(x):
            if not a:
                continue
            trow = self._table[i]
            for j in range(n):
                for k, c in trow[j].items():
                    rows[k][j] += a * c
        if p:
            rows = [[v % p for v in r] for r in rows]
        return Matrix._raw(tuple(tuple(r) for r in rows), f, n)

    def is_abelian(self) -> bool:
        return not any(self._table[a][b] for a in range(self.dim) for b in range(self.dim))

    def relabel(self, name: str | None = None, labels: Sequence[str] | None = None) -> "LieAlgebra":
        return LieAlgebra(
            self.dim,
            self.structure_constants(),
            labels=labels if labels is not None else self.labels,
            field=self.field,
            name=name if name is not None else self.name,
            check=False,
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.field == other.field
            and self.structure_constants() == other.structure_constants()
        )

    def __hash__(self) -> int:
        return hash((self.dim, tuple(sorted((k, tuple(v.items())) for k, v in self.structure_constants().items()))))

    def __repr__(self) -> str:
        tag = f" {self.name}" if self.name else ""
        return f"<LieAlgebra{tag} dim={self.dim} over {self.field!r}>"


# ---------------------------------------------------------------------------
# module-level operations
# ---------------------------------------------------------------------------


def abelian(n: int, field=QQ) -> LieAlgebra:
    return LieAlgebra(n, {}, field=field, name=f"C^{n}" if n != 1 else "C")


def bracket(L: LieAlgebra, x: Sequence, y: Sequence) -> tuple:
    return L.bracket(x, y)


def ad_matrix(L: LieAlgebra, x: Sequence) -> Matrix:
    return L.ad_matrix(x)


def jacobi_violation(L: LieAlgebra) -> JacobiViolation | None:
    """First ``(i, j, k)`` (1-based, lexicographic, ``i<j<k``) violating Jacobi."""
    n = L.dim
    basis = [L.basis_vector(i + 1) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            eij = L.bracket(basis[i], basis[j])
            for k in range(j + 1, n):
                ejk = L.bracket(basis[j], basis[k])
                eki = L.bracket(basis[k], basis[i])
                a = L.bracket(eij, basis[k])
                b = L.bracket(ejk, basis[i])
                c = L.bracket(eki, basis[j])
                p = L.field.characteristic
                total = tuple((u + v + w) % p if p else u + v + w for u, v, w in zip(a, b, c))
                if any(total):
                    return JacobiViolation((i + 1, j + 1, k + 1), total)
    return None


def validate_jacobi(L: LieAlgebra) -> bool | JacobiViolation:
    """``True`` if the Jacobi identity holds, otherwise the first violation (falsy)."""
    bad = jacobi_violation(L)
    return True if bad is None else bad


def center(L: LieAlgebra) -> Subspace:
    rows = [r for i in range(L.dim) for r in L.ad_basis(i).rows]
    if not rows:
        return Subspace.zero(0, L.field)
    return nullspace(Matrix._raw(tuple(rows), L.field, L.dim))


def centralizer(L: LieAlgebra, x: Sequence) -> Subspace:
    return nullspace(L.ad_matrix(x))


def bracket_spaces(L: LieAlgebra, A: Subspace, B: Subspace) -> Subspace:
    """``[A, B]`` as a subspace of ``L``."""
    vecs = [L.bracket(a, b) for a in A.basis for b in B.basis]
    return Subspace(L.dim, vecs, L.field)


def _full(L: LieAlgebra) -> Subspace:
    return Subspace.full(L.dim, L.field)


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """``g = g^1 ⊇ g^2 = [g, g] ⊇ ...`` until two consecutive terms agree in dimension."""
    g = _full(L)
    series = [g]
    while True:
        nxt = bracket_spaces(L, g, series[-1])
        if nxt.dim == series[-1].dim:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def derived_series(L: LieAlgebra) -> list[Subspace]:
    series = [_full(L)]
    while True:
        cur = series[-1]
        nxt = bracket_spaces(L, cur, cur)
        if nxt.dim == cur.dim:
            return series
        series.append(nxt)
        if nxt.dim == 0:
            return series


def nilpotency_class(L: LieAlgebra) -> int | None:
    """Smallest ``c`` with ``g^{c+1} = 0`` (abelian gives 1); ``None`` if not nilpotent."""
    s = lower_central_series(L)
    if s[-1].dim != 0:
        return None
    return max(len(s) - 1, 1) if L.dim else 0


def derived_length(L: LieAlgebra) -> int | None:
    s = derived_series(L)
    if s[-1].dim != 0:
        return None
    return len(s) - 1


def is_ideal(L: LieAlgebra, I: Subspace) -> bool:
    return all(I.contains(L.bracket(L.basis_vector(i + 1), v)) for i in range(L.dim) for v in I.basis)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, name: str | None = None) -> LieAlgebra:
    if L1.field != L2.field:
        raise TypeError("direct sum of algebras over different fields")
    n1 = L1.dim
    br = dict(L1.structure_constants())
    for (i, j), terms in L2.structure_constants().items():
        br[(i + n1, j + n1)] = {k + n1: c for k, c in terms.items()}
    labels = list(L1.labels) + list(L2.labels)
    if len(set(labels)) != len(labels):
        labels = [f"{s}" for s in L1.labels] + [f"{s}'" for s in L2.labels]
    if name is None and L1.name and L2.name:
        name = f"{L1.name}+{L2.name}"
    return LieAlgebra(n1 + L2.dim, br, labels=labels, field=L1.field, name=name, check=False)


def quotient(L: LieAlgebra, I: Subspace, name: str | None = None) -> tuple[LieAlgebra, Matrix]:
    """``L / I`` on the basis vectors whose indices are not pivots of ``I``.

    Returns the quotient algebra and the projection matrix (rows: quotient
    coordinates, columns: coordinates of ``L``).
    """
    if I.ambient != L.dim:
        raise ValueError("ideal lives in the wrong ambient space")
    if not is_ideal(L, I):
        raise ValueError("subspace is not an ideal")
    keep = I.complement_indices()
    pos = {c: a for a, c in enumerate(keep)}
    f = L.field

    def project(v) -> list:
        res = I.residue(v)
        out = [f.zero] * len(keep)
        for c, val in res.items():
            out[pos[c]] = val
        return out

    proj_cols = [project(L.basis_vector(i + 1)) for i in range(L.dim)]
    proj = Matrix.from_columns(proj_cols, f) if keep else Matrix._raw((), f, L.dim)
    br = {}
    for a, ca in enumerate(keep):
        for b in range(a + 1, len(keep)):
            cb = keep[b]
            img = project(L.bracket(L.basis_vector(ca + 1), L.basis_vector(cb + 1)))
            terms = {k + 1: v for k, v in enumerate(img) if v}
            if terms:
                br[(a + 1, b + 1)] = terms
    labels = [L.labels[c] for c in keep]
    Q = LieAlgebra(len(keep), br, labels=labels, field=f, name=name, check=False)
    return Q, proj
