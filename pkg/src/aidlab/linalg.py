"""Exact linear algebra over the rationals and over prime fields.

Everything here is exact: rationals are ``gmpy2.mpq`` values and prime-field
elements are Python ints in ``range(p)``.  A matrix never mixes the two; the
scalar configuration is fixed by the ``field`` attribute at construction.

The workhorse is a sparse row-echelon routine (rows as ``{column: value}``
dicts).  Dense :class:`Matrix` values and canonical :class:`Subspace` values
are thin immutable wrappers around it.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from typing import Iterable, Sequence

from gmpy2 import mpq

__all__ = [
    "QQ",
    "GF",
    "RationalField",
    "PrimeField",
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "nullspace",
    "column_space",
    "row_space",
    "subspace_sum",
    "intersect",
    "contains",
    "quotient_dim",
    "solve",
    "echelon_rows",
    "DimensionMismatch",
]


class DimensionMismatch(ValueError):
    pass


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------


class RationalField:
    characteristic = 0
    name = "Q"

    def __call__(self, value) -> mpq:
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, str):
            text = value.strip()
            if not text:
                raise ValueError("empty rational literal")
            return mpq(text)
        if isinstance(value, Fraction):
            return mpq(value.numerator, value.denominator)
        if isinstance(value, float):
            raise TypeError("floats are not accepted as exact scalars")
        return mpq(value)

    zero = mpq(0)
    one = mpq(1)

    @staticmethod
    def inv(a):
        return 1 / a

    def __repr__(self) -> str:
        return "QQ"

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalField)

    def __hash__(self) -> int:
        return hash("QQ")


class PrimeField:
    """Residues modulo a prime ``p``; elements are ints in ``range(p)``."""

    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not a prime")
        self.characteristic = p
        self.name = f"GF({p})"
        self.zero = 0
        self.one = 1

    def __call__(self, value) -> int:
        p = self.characteristic
        if isinstance(value, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(value, int):
            return value % p
        if isinstance(value, str):
            value = mpq(value.strip())
        if isinstance(value, float):
            raise TypeError("floats are not accepted as exact scalars")
        q = mpq(value)
        num, den = int(q.numerator), int(q.denominator)
        if den % p == 0:
            raise ZeroDivisionError(f"denominator {den} vanishes mod {p}")
        return num * pow(den, -1, p) % p

    def inv(self, a: int) -> int:
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def __repr__(self) -> str:
        return f"GF({self.characteristic})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeField) and other.characteristic == self.characteristic

    def __hash__(self) -> int:
        return hash(("GF", self.characteristic))


QQ = RationalField()
_prime_fields: dict[int, PrimeField] = {}


def GF(p: int) -> PrimeField:
    if p not in _prime_fields:
        _prime_fields[p] = PrimeField(p)
    return _prime_fields[p]


# ---------------------------------------------------------------------------
# sparse elimination core
# ---------------------------------------------------------------------------


def _reduce_row(row: dict, pivots: dict, p: int) -> dict:
    """Eliminate every pivot column from ``row`` (in place); returns it."""
    heap = [c for c in row if c in pivots]
    heapq.heapify(heap)
    while heap:
        c = heapq.heappop(heap)
        f = row.get(c)
        if not f:
            continue
        for k, v in pivots[c].items():
            old = row.get(k)
            nv = (old or 0) - f * v
            if p:
                nv %= p
            if nv:
                if old is None and k in pivots:
                    heapq.heappush(heap, k)
                row[k] = nv
            elif old is not None:
                del row[k]
    return row


def echelon_rows(rows: Iterable[dict], field=QQ, reduced: bool = True) -> list[tuple[int, dict]]:
    """Row-reduce sparse rows; returns ``[(pivot_column, row), ...]`` sorted by pivot.

    Pivot entries are 1.  With ``reduced`` the pivot columns are cleared in
    every other row, which makes the result the unique reduced echelon form.
    """
    p = field.characteristic
    pivots: dict[int, dict] = {}
    for src in rows:
        row = {c: v for c, v in src.items() if v}
        if p:
            row = {c: v % p for c, v in row.items() if v % p}
        _reduce_row(row, pivots, p)
        if not row:
            continue
        lead = min(row)
        inv = field.inv(row[lead])
        if p:
            row = {c: v * inv % p for c, v in row.items()}
        else:
            row = {c: v * inv for c, v in row.items()}
        pivots[lead] = row
    order = sorted(pivots)
    if reduced:
        for idx in range(len(order) - 1, -1, -1):
            c = order[idx]
            prow = pivots[c]
            for c2 in order[:idx]:
                target = pivots[c2]
                f = target.get(c)
                if not f:
                    continue
                for k, v in prow.items():
                    nv = target.get(k, 0) - f * v
                    if p:
                        nv %= p
                    if nv:
                        target[k] = nv
                    else:
                        target.pop(k, None)
    return [(c, pivots[c]) for c in order]


def solve(rows: Sequence[dict], rhs: Sequence, ncols: int, field=QQ):
    """One solution of the sparse system ``rows · u = rhs`` (free variables 0), or None."""
    aug = ncols
    system = []
    for row, b in zip(rows, rhs):
        r = dict(row)
        if b:
            r[aug] = field(b)
        system.append(r)
    ech = echelon_rows(system, field)
    sol = [field.zero] * ncols
    for c, row in ech:
        if c == aug:
            return None
        sol[c] = row.get(aug, field.zero)
    return sol


def _dense_to_sparse(rows) -> list[dict]:
    return [{j: v for j, v in enumerate(r) if v} for r in rows]


def _sparse_to_dense(row: dict, n: int, zero) -> tuple:
    out = [zero] * n
    for c, v in row.items():
        out[c] = v
    return tuple(out)


# ---------------------------------------------------------------------------
# dense matrices
# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over ``QQ`` or ``GF(p)``."""

    __slots__ = ("rows", "nrows", "ncols", "field", "_hash")

    def __init__(self, rows, field=QQ, ncols: int | None = None):
        conv = tuple(tuple(field(v) for v in r) for r in rows)
        if not conv and ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        width = len(conv[0]) if conv else ncols
        if ncols is not None and width != ncols:
            raise DimensionMismatch("row length does not match ncols")
        if any(len(r) != width for r in conv):
            raise DimensionMismatch("ragged rows")
        object.__setattr__(self, "rows", conv)
        object.__setattr__(self, "nrows", len(conv))
        object.__setattr__(self, "ncols", width)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def _raw(cls, rows: tuple, field, ncols: int) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "nrows", len(rows))
        object.__setattr__(m, "ncols", ncols)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "_hash", None)
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field=QQ) -> "Matrix":
        z = field.zero
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), field, ncols)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        return cls._raw(
            tuple(tuple(field.one if i == j else field.zero for j in range(n)) for i in range(n)),
            field,
            n,
        )

    @classmethod
    def unit(cls, n: int, i: int, j: int, field=QQ) -> "Matrix":
        """``E_{i,j}`` (1-based): maps ``e_j`` to ``e_i`` and kills the other basis vectors."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError("unit matrix index out of range")
        return cls._raw(
            tuple(
                tuple(field.one if (a == i - 1 and b == j - 1) else field.zero for b in range(n))
                for a in range(n)
            ),
            field,
            n,
        )

    @classmethod
    def from_flat(cls, vec: Sequence, n: int, field=QQ) -> "Matrix":
        if len(vec) != n * n:
            raise DimensionMismatch("flat vector length is not n^2")
        return cls._raw(tuple(tuple(vec[a * n:(a + 1) * n]) for a in range(n)), field, n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], field=QQ) -> "Matrix":
        if not cols:
            raise ValueError("no columns")
        return cls(list(zip(*cols)), field)

    def flat(self) -> tuple:
        return tuple(v for r in self.rows for v in r)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "Matrix":
        if not self.rows:
            return Matrix._raw((), self.field, 0)
        return Matrix._raw(tuple(zip(*self.rows)), self.field, self.nrows)

    T = property(transpose)

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise TypeError("matrices over different fields")

    def _mod(self, v):
        p = self.field.characteristic
        return v % p if p else v

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix._raw(
            tuple(tuple(self._mod(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.field,
            self.ncols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self._mod(-a) for a in r) for r in self.rows), self.field, self.ncols
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        return Matrix._raw(
            tuple(tuple(self._mod(c * a) for a in r) for r in self.rows), self.field, self.ncols
        )

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check(other)
            if self.ncols != other.nrows:
                raise DimensionMismatch("inner dimensions differ")
            cols = other.transpose().rows if other.nrows else ()
            zero = self.field.zero
            out = []
            for r in self.rows:
                nz = [(k, a) for k, a in enumerate(r) if a]
                out.append(tuple(self._mod(sum((a * c[k] for k, a in nz), zero)) for c in cols))
            return Matrix._raw(tuple(out), self.field, other.ncols)
        return self.apply(other)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise DimensionMismatch("vector length does not match column count")
        nz = [(k, v) for k, v in enumerate(vec) if v]
        zero = self.field.zero
        return tuple(self._mod(sum((r[k] * v for k, v in nz), zero)) for r in self.rows)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def is_zero(self) -> bool:
        return not any(v for r in self.rows for v in r)

    def is_nilpotent(self) -> bool:
        if self.nrows != self.ncols:
            raise DimensionMismatch("nilpotency needs a square matrix")
        power = self
        for _ in range(max(self.nrows - 1, 0)):
            if power.is_zero():
                return True
            power = power @ self
        return power.is_zero()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash((self.field, self.ncols, self.rows))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(str(v) for v in r) + "]" for r in self.rows)
        return f"Matrix([{body}], {self.field!r})"

    def rref(self) -> tuple["Matrix", int]:
        return rref(self)

    def rank(self) -> int:
        return len(echelon_rows(_dense_to_sparse(self.rows), self.field, reduced=False))


# ---------------------------------------------------------------------------
# canonical subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """A subspace of ``field^ambient`` held by its reduced echelon basis.

    The basis is canonical, so ``==`` compares subspaces.
    """

    __slots__ = ("ambient", "basis", "pivots", "field", "_sparse")

    def __init__(self, ambient: int, vectors: Iterable[Sequence] = (), field=QQ):
        rows = []
        for v in vectors:
            if len(v) != ambient:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient {ambient}")
            rows.append({j: field(x) for j, x in enumerate(v) if x})
        self._set(ambient, echelon_rows(rows, field), field)

    def _set(self, ambient: int, ech: list, field):
        object.__setattr__(self, "ambient", ambient)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "pivots", tuple(c for c, _ in ech))
        object.__setattr__(self, "_sparse", tuple(r for _, r in ech))
        object.__setattr__(
            self, "basis", tuple(_sparse_to_dense(r, ambient, field.zero) for _, r in ech)
        )

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_sparse(cls, ambient: int, rows: Iterable[dict], field=QQ) -> "Subspace":
        s = object.__new__(cls)
        s._set(ambient, echelon_rows(rows, field), field)
        return s

    @classmethod
    def zero(cls, ambient: int, field=QQ) -> "Subspace":
        return cls(ambient, (), field)

    @classmethod
    def full(cls, ambient: int, field=QQ) -> "Subspace":
        return cls(ambient, Matrix.identity(ambient, field).rows, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __len__(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Subspace)
            and self.ambient == other.ambient
            and self.field == other.field
            and self.basis == other.basis
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"

    def _compat(self, other: "Subspace"):
        if self.ambient != other.ambient or self.field != other.field:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def residue(self, vec: Sequence) -> dict:
        """``vec`` reduced modulo this subspace, as a sparse dict (empty iff member)."""
        if len(vec) != self.ambient:
            raise DimensionMismatch("vector length differs from ambient dimension")
        f = self.field
        row = {j: f(x) for j, x in enumerate(vec) if x}
        return self._residue_sparse(row)

    def _residue_sparse(self, row: dict) -> dict:
        p = self.field.characteristic
        for c, prow in zip(self.pivots, self._sparse):
            a = row.get(c)
            if not a:
                continue
            for k, v in prow.items():
                nv = row.get(k, 0) - a * v
                if p:
                    nv %= p
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
        return row

    def contains(self, vec: Sequence) -> bool:
        return not self.residue(vec)

    def __contains__(self, vec) -> bool:
        return self.contains(vec)

    def coordinates(self, vec: Sequence) -> tuple:
        """Coefficients of ``vec`` in the canonical basis; raises if not a member."""
        if not self.contains(vec):
            raise ValueError("vector is not in the subspace")
        f = self.field
        return tuple(f(vec[c]) for c in self.pivots)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        self._compat(other)
        return all(not other._residue_sparse(dict(r)) for r in self._sparse)

    def complement_indices(self) -> tuple[int, ...]:
        """Coordinate indices absent from the pivot set; their unit vectors span a complement."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient) if i not in piv)

    def sparse_basis(self) -> tuple[dict, ...]:
        return tuple(dict(r) for r in self._sparse)

    def as_matrix(self) -> Matrix:
        return Matrix._raw(self.basis, self.field, self.ambient)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (zero rows kept at the bottom) and rank."""
    ech = echelon_rows(_dense_to_sparse(m.rows), m.field)
    rows = [_sparse_to_dense(r, m.ncols, m.field.zero) for _, r in ech]
    rk = len(rows)
    rows.extend([(m.field.zero,) * m.ncols] * (m.nrows - rk))
    return Matrix._raw(tuple(rows), m.field, m.ncols), rk


def rank(m: Matrix) -> int:
    return m.rank()


def _kernel_rows(ech: list, ncols: int, field) -> list[dict]:
    pivot_cols = [c for c, _ in ech]
    piv = set(pivot_cols)
    p = field.characteristic
    out = []
    for f in range(ncols):
        if f in piv:
            continue
        v = {f: field.one}
        for c, row in ech:
            a = row.get(f)
            if a:
                v[c] = (-a) % p if p else -a
        out.append(v)
    return out


def nullspace(m: Matrix) -> Subspace:
    ech = echelon_rows(_dense_to_sparse(m.rows), m.field)
    return Subspace.from_sparse(m.ncols, _kernel_rows(ech, m.ncols, m.field), m.field)


def sparse_nullspace(rows: Iterable[dict], ncols: int, field=QQ) -> Subspace:
    ech = echelon_rows(rows, field)
    return Subspace.from_sparse(ncols, _kernel_rows(ech, ncols, field), field)


def column_space(m: Matrix) -> Subspace:
    return row_space(m.transpose()) if m.nrows else Subspace.zero(0, m.field)


def row_space(m: Matrix) -> Subspace:
    return Subspace.from_sparse(m.ncols, _dense_to_sparse(m.rows), m.field)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    a._compat(b)
    return Subspace.from_sparse(a.ambient, a.sparse_basis() + b.sparse_basis(), a.field)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Intersection through the kernel of the stacked system ``sum u_i a_i - sum w_j b_j = 0``."""
    a._compat(b)
    if not a.dim or not b.dim:
        return Subspace.zero(a.ambient, a.field)
    f = a.field
    p = f.characteristic
    na = a.dim
    # columns: a-coefficients then b-coefficients; rows: ambient coordinates
    rows: list[dict] = [dict() for _ in range(a.ambient)]
    for i, vec in enumerate(a._sparse):
        for k, v in vec.items():
            rows[k][i] = v
    for j, vec in enumerate(b._sparse):
        for k, v in vec.items():
            rows[k][na + j] = (-v) % p if p else -v
    ker = sparse_nullspace(rows, na + b.dim, f)
    vectors = []
    for kv in ker._sparse:
        acc: dict = {}
        for i, coef in kv.items():
            if i >= na:
                continue
            for k, v in a._sparse[i].items():
                nv = acc.get(k, 0) + coef * v
                acc[k] = nv % p if p else nv
        vectors.append({k: v for k, v in acc.items() if v})
    return Subspace.from_sparse(a.ambient, vectors, f)


def contains(a: Subspace, v: Sequence) -> bool:
    return a.contains(v)


def quotient_dim(a: Subspace, b: Subspace) -> int:
    a._compat(b)
    if not b <= a:
        raise ValueError("quotient_dim needs b contained in a")
    return a.dim - b.dim
