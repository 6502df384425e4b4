"""Derivation spaces Der ⊇ AID ⊇ CAID ⊇ Inn of a Lie algebra.

All spaces live in the n²-dimensional space of n×n matrices, flattened row
by row (index ``a*n + b`` is the entry in row ``a``, column ``b``).  AID is
found by a sandwich: sampled necessary conditions give an upper bound,
certificates and the parametric decision give a lower bound, and
counterexamples found on the way feed back into the samples.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from math import gcd, lcm
from typing import Iterator, Sequence

from .certificates import find_certificate
from .lie import LieAlgebra, center, derived_length, nilpotency_class, quotient
from .linalg import QQ, Matrix, Subspace, _reduce_row, echelon_rows, nullspace, sparse_nullspace
from .param import (
    DEFAULT_DEPTH_CAP,
    AlwaysMember,
    Counterexample,
    DecisionOutcome,
    PiecewiseCertificate,
    decide_pointwise_membership,
)

EXACT = "exact"
BRACKETED = "bracketed"


@dataclass(frozen=True)
class AidConfig:
    """Knobs of the sandwich computation.

    ``seed`` drives the random samples, so equal configs give equal results.
    """

    seed: int = 0
    depth_cap: int = DEFAULT_DEPTH_CAP
    stable_batches: int = 2
    max_batches: int = 64
    use_templates: bool = True
    use_decision: bool = True
    structured_samples: bool = True


# ---------------------------------------------------------------------------
# Der, Inn, central part
# ---------------------------------------------------------------------------


def derivation_rows(L: LieAlgebra) -> list[dict]:
    """Sparse linear conditions on the n² entries of ``D`` expressing ``D`` is a derivation."""
    n = L.dim
    p = L.field.characteristic
    # right[j] lists (s, a, c) with [e_s, e_j] = ... + c e_a
    right = [[(s, a, c) for s in range(n) for a, c in L.basis_bracket(s, j).items()] for j in range(n)]
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            acc: dict[int, dict] = {}
            for k, c in L.basis_bracket(i, j).items():
                for a in range(n):
                    r = acc.setdefault(a, {})
                    r[a * n + k] = r.get(a * n + k, 0) + c
            for s, a, c in right[j]:
                r = acc.setdefault(a, {})
                r[s * n + i] = r.get(s * n + i, 0) - c
            for s, a, c in right[i]:
                r = acc.setdefault(a, {})
                r[s * n + j] = r.get(s * n + j, 0) + c
            for r in acc.values():
                r = {col: (v % p if p else v) for col, v in r.items()}
                r = {col: v for col, v in r.items() if v}
                if r:
                    rows.append(r)
    return rows


def compute_der(L: LieAlgebra) -> Subspace:
    return sparse_nullspace(derivation_rows(L), L.dim * L.dim, L.field)


def compute_inn(L: LieAlgebra) -> Subspace:
    n = L.dim
    return Subspace(n * n, [L.ad_basis(i).flat() for i in range(n)], L.field)


def central_derivations(L: LieAlgebra) -> Subspace:
    """Derivations whose image lies in the center."""
    n = L.dim
    f = L.field
    z = center(L)
    annihilator = nullspace(z.as_matrix()) if z.dim else Subspace.full(n, f)
    rows = derivation_rows(L)
    for w in annihilator.sparse_basis():
        for b in range(n):
            rows.append({a * n + b: v for a, v in w.items()})
    return sparse_nullspace(rows, n * n, f)


def to_matrix(L: LieAlgebra, vec: Sequence) -> Matrix:
    return Matrix.from_flat(vec, L.dim, L.field)


def matrices(L: LieAlgebra, space: Subspace) -> list[Matrix]:
    return [to_matrix(L, v) for v in space.basis]


# ---------------------------------------------------------------------------
# sampled necessary conditions
# ---------------------------------------------------------------------------


def structured_samples(L: LieAlgebra) -> Iterator[tuple]:
    """Basis vectors, pairwise sums and differences, then cancelling combinations.

    The last group contains ``beta e_j - alpha e_k`` whenever ``[e_j, e_i]``
    and ``[e_k, e_i]`` share a target ``e_l`` with coefficients ``alpha`` and
    ``beta``.
    """
    n, f = L.dim, L.field
    zero = [f.zero] * n

    def vec(pairs):
        v = list(zero)
        for i, c in pairs:
            v[i] = f(c)
        return tuple(v)

    for i in range(n):
        yield vec([(i, 1)])
    for j in range(n):
        for k in range(j + 1, n):
            yield vec([(j, 1), (k, 1)])
    for j in range(n):
        for k in range(j + 1, n):
            yield vec([(j, 1), (k, -1)])
    seen = set()
    for i in range(n):
        for j in range(n):
            tj = L.basis_bracket(j, i)
            if not tj:
                continue
            for k in range(j + 1, n):
                tk = L.basis_bracket(k, i)
                for l, alpha in tj.items():
                    beta = tk.get(l)
                    if not beta:
                        continue
                    v = vec([(j, beta), (k, -alpha)])
                    if v not in seen:
                        seen.add(v)
                        yield v


class _UpperBound:
    """Upper bound for AID, kept as the kernel of accumulated sample conditions.

    Unknowns are coordinates with respect to a fixed complement of Inn in
    Der; inner derivations satisfy every condition automatically.
    """

    def __init__(self, L: LieAlgebra, der: Subspace, inn: Subspace):
        self.L = L
        self.inn = inn
        f = L.field
        residues = [inn._residue_sparse(dict(r)) for r in der.sparse_basis()]
        self.complement = [r for _, r in echelon_rows(residues, f)]
        self.m = len(self.complement)
        self.constraints: list[dict] = []
        self._ech: dict[int, dict] = {}
        self.samples = 0

    @property
    def rank(self) -> int:
        return len(self._ech)

    @property
    def settled(self) -> bool:
        return self.rank >= self.m

    def add_sample(self, x: Sequence) -> bool:
        """Impose ``D x in [g, x]``; returns whether the bound shrank."""
        self.samples += 1
        L, n, f = self.L, self.L.dim, self.L.field
        p = f.characteristic
        left_kernel = nullspace(L.ad_matrix(x).transpose())
        before = self.rank
        for w in left_kernel.sparse_basis():
            row = {}
            for idx, comp in enumerate(self.complement):
                total = 0
                for col, v in comp.items():
                    a, b = divmod(col, n)
                    wa = w.get(a)
                    if wa and x[b]:
                        total += wa * v * x[b]
                if p:
                    total %= p
                if total:
                    row[idx] = total
            if row:
                self._insert(row)
        return self.rank > before

    def _insert(self, row: dict) -> None:
        f = self.L.field
        p = f.characteristic
        _reduce_row(row, self._ech, p)
        if not row:
            return
        lead = min(row)
        inv = f.inv(row[lead])
        self._ech[lead] = {k: (v * inv % p if p else v * inv) for k, v in row.items()}

    def space(self) -> Subspace:
        """The bound as a subspace of matrix space (contains Inn)."""
        f = self.L.field
        p = f.characteristic
        ambient = self.L.dim ** 2
        ker = sparse_nullspace(list(self._ech.values()), self.m, f) if self.m else None
        vectors = list(self.inn.sparse_basis())
        if ker is not None:
            for kv in ker.sparse_basis():
                acc: dict = {}
                for idx, coef in kv.items():
                    for col, v in self.complement[idx].items():
                        nv = acc.get(col, 0) + coef * v
                        acc[col] = nv % p if p else nv
                vectors.append({k: v for k, v in acc.items() if v})
        return Subspace.from_sparse(ambient, vectors, f)


def sample_upper_bound(
    L: LieAlgebra,
    der: Subspace,
    inn: Subspace,
    config: AidConfig = AidConfig(),
    extra: Sequence[Sequence] = (),
) -> tuple[Subspace, int]:
    """Upper bound for AID from sampled conditions; returns the bound and the sample count."""
    ub = _UpperBound(L, der, inn)
    for x in extra:
        ub.add_sample(x)
    if not ub.settled and config.structured_samples:
        for x in structured_samples(L):
            ub.add_sample(x)
            if ub.settled:
                break
    rng = random.Random(config.seed)
    n = L.dim
    stable = 0
    batches = 0
    while not ub.settled and stable < config.stable_batches and batches < config.max_batches:
        batches += 1
        shrank = False
        for _ in range(2 * n):
            x = tuple(L.field(rng.randint(-9, 9)) for _ in range(n))
            shrank |= ub.add_sample(x)
            if ub.settled:
                break
        stable = 0 if shrank else stable + 1
    return ub.space(), ub.samples


# ---------------------------------------------------------------------------
# generators modulo Inn
# ---------------------------------------------------------------------------


def _primitive_integer(row: dict) -> dict:
    den = 1
    for v in row.values():
        den = lcm(den, int(QQ(v).denominator))
    ints = {k: int(QQ(v) * den) for k, v in row.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    lead = ints[min(ints)]
    if lead < 0:
        g = -g
    return {k: QQ(v // g) for k, v in ints.items()}


def quotient_generators(space: Subspace, inn: Subspace) -> list[tuple]:
    """Integer vectors spanning ``space`` modulo ``inn`` (echelon, primitive)."""
    f = space.field
    residues = [inn._residue_sparse(dict(r)) for r in space.sparse_basis()]
    out = []
    for _, r in echelon_rows(residues, f):
        if f.characteristic == 0:
            r = _primitive_integer(r)
        v = [f.zero] * space.ambient
        for k, c in r.items():
            v[k] = c
        out.append(tuple(v))
    return out


# ---------------------------------------------------------------------------
# AID and CAID
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Generator:
    """A non-inner generator and how its almost-innerness was settled."""

    matrix: Matrix
    method: str  # "certificate", "decision" or "undecided"
    certificate: PiecewiseCertificate | None = None
    outcome: DecisionOutcome | None = None
    nilpotent: bool = False

    @property
    def certified(self) -> bool:
        return self.method in ("certificate", "decision")


@dataclass(frozen=True)
class AidResult:
    lower: Subspace
    upper: Subspace
    generators: tuple[Generator, ...]
    samples: int
    counterexamples: tuple[tuple, ...] = ()

    @property
    def status(self) -> str:
        return EXACT if self.lower == self.upper else BRACKETED

    @property
    def space(self) -> Subspace:
        """AID itself when exact; the certified lower bound otherwise."""
        return self.upper if self.status == EXACT else self.lower

    def __iter__(self):
        yield self.space
        yield self.status


def _settle(L: LieAlgebra, D: Matrix, config: AidConfig) -> tuple[str, object]:
    if config.use_templates:
        cert = find_certificate(L, D)
        if cert is not None:
            return "certificate", cert
    if config.use_decision:
        out = decide_pointwise_membership(L, D, config.depth_cap, config.seed)
        if isinstance(out, AlwaysMember):
            return "decision", out
        if isinstance(out, Counterexample):
            return "counterexample", out
        return "undecided", out
    return "undecided", None


def compute_aid(
    L: LieAlgebra,
    config: AidConfig = AidConfig(),
    der: Subspace | None = None,
    inn: Subspace | None = None,
) -> AidResult:
    """Sandwich AID between sampled conditions and certified generators."""
    if L.field != QQ:
        raise ValueError("compute_aid works over Q; use the oracle for prime fields")
    der = compute_der(L) if der is None else der
    inn = compute_inn(L) if inn is None else inn
    witnesses: list[tuple] = []
    total_samples = 0
    while True:
        upper, used = sample_upper_bound(L, der, inn, config, witnesses)
        total_samples += used
        gens: list[Generator] = []
        refuted = None
        for vec in quotient_generators(upper, inn):
            D = to_matrix(L, vec)
            method, info = _settle(L, D, config)
            if method == "counterexample":
                refuted = info.witness
                break
            gens.append(
                Generator(
                    matrix=D,
                    method=method,
                    certificate=info if method == "certificate" else None,
                    outcome=info if method != "certificate" else None,
                    nilpotent=D.is_nilpotent(),
                )
            )
        if refuted is None:
            break
        if refuted in witnesses:  # cannot happen for a sound bound; guard against looping
            raise RuntimeError("counterexample did not shrink the sampled bound")
        witnesses.append(refuted)
    lower_rows = list(inn.sparse_basis())
    for g in gens:
        if g.certified:
            lower_rows.append({k: v for k, v in enumerate(g.matrix.flat()) if v})
    lower = Subspace.from_sparse(L.dim ** 2, lower_rows, L.field)
    return AidResult(lower, upper, tuple(gens), total_samples, tuple(witnesses))


@dataclass(frozen=True)
class CaidResult:
    lower: Subspace
    upper: Subspace

    @property
    def exact(self) -> bool:
        return self.lower == self.upper

    @property
    def space(self) -> Subspace:
        return self.upper if self.exact else self.lower


def compute_caid(
    L: LieAlgebra,
    aid: AidResult | Subspace,
    inn: Subspace | None = None,
) -> CaidResult:
    """``AID ∩ (Inn + central derivations)``, bracketed when AID is."""
    inn = compute_inn(L) if inn is None else inn
    allowed = inn + central_derivations(L)
    if isinstance(aid, Subspace):
        s = aid & allowed
        return CaidResult(s, s)
    return CaidResult(aid.lower & allowed, aid.upper & allowed)


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass
class DerivationReport:
    name: str
    dim: int
    nilpotency_class: int | None
    derived_length: int | None
    der: Subspace
    inn: Subspace
    aid: AidResult
    caid: CaidResult
    seed: int = 0

    @property
    def status(self) -> str:
        return self.aid.status

    @property
    def dims(self) -> dict[str, int]:
        return {
            "inn": self.inn.dim,
            "caid": self.caid.space.dim,
            "aid": self.aid.space.dim,
            "der": self.der.dim,
        }

    def row(self) -> tuple:
        """``(c, d, Inn, CAID, AID, Der)`` as printed in dimension tables."""
        d = self.dims
        return (
            self.nilpotency_class,
            self.derived_length,
            d["inn"],
            d["caid"],
            d["aid"],
            d["der"],
        )

    @property
    def generators(self) -> tuple[Generator, ...]:
        return self.aid.generators


def derivation_report(L: LieAlgebra, config: AidConfig = AidConfig(), name: str | None = None) -> DerivationReport:
    der = compute_der(L)
    inn = compute_inn(L)
    aid = compute_aid(L, config, der=der, inn=inn)
    caid = compute_caid(L, aid, inn=inn)
    return DerivationReport(
        name=name or L.name or f"dim{L.dim}",
        dim=L.dim,
        nilpotency_class=nilpotency_class(L),
        derived_length=derived_length(L),
        der=der,
        inn=inn,
        aid=aid,
        caid=caid,
        seed=config.seed,
    )


# ---------------------------------------------------------------------------
# further operations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IdealCheck:
    holds: bool
    checked: int
    failures: tuple[tuple[int, int], ...] = dc_field(default=())


def check_ideal_conjecture(L: LieAlgebra, aid: Subspace | None = None, der: Subspace | None = None) -> IdealCheck:
    """Test ``[Der, AID] ⊆ AID`` on basis pairs (an empirical check, nothing more)."""
    der = compute_der(L) if der is None else der
    if aid is None:
        res = compute_aid(L, der=der)
        if res.status != EXACT:
            raise ValueError("AID is only bracketed; the check needs the exact space")
        aid = res.space
    Ds = matrices(L, der)
    As = matrices(L, aid)
    failures = []
    for a, D in enumerate(Ds):
        for b, A in enumerate(As):
            if not aid.contains(D.commutator(A).flat()):
                failures.append((a + 1, b + 1))
    return IdealCheck(not failures, len(Ds) * len(As), tuple(failures))


def induce_on_quotient(L: LieAlgebra, I: Subspace, D: Matrix) -> Matrix:
    """Matrix of the map induced by ``D`` on ``L / I`` (canonical complement basis)."""
    for v in I.basis:
        if not I.contains(D.apply(v)):
            raise ValueError("D does not map the ideal into itself")
    Q, proj = quotient(L, I)
    keep = I.complement_indices()
    cols = [proj.apply(D.column(c)) for c in keep]
    if not cols:
        return Matrix.zeros(0, 0, L.field)
    return Matrix.from_columns(cols, L.field)
