"""Brute-force AID over a prime field, as an independent check of the rational engine.

Over ``F_p`` there are finitely many ``x``, so the condition
``D x in [g, x]`` can be imposed for all of them and the resulting space is
exact with no certification step.  Two reductions keep the enumeration
small without dropping any condition:

* every almost inner derivation kills the center, and ``D(x + z) = D x``,
  ``[g, x + z] = [g, x]`` for central ``z``, so ``x`` only needs to range
  over a complement of the center;
* the condition is invariant under ``x -> c x`` for ``c != 0``, so one
  representative per line (first nonzero coordinate 1) suffices.

``reduced=False`` switches both off and enumerates all of ``F_p^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product
from typing import Iterator, Sequence

from .derivations import (
    EXACT,
    DerivationReport,
    _UpperBound,
    compute_der,
    compute_inn,
    derivation_report,
    derivation_rows,
)
from .lie import LieAlgebra, center
from .linalg import GF, QQ, sparse_nullspace

DEFAULT_BUDGET = 10**7
DEFAULT_PRIMES = (5, 7, 11)
ANOMALY_PRONE = frozenset({2, 3})


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleReport:
    prime: int
    der: int
    inn: int
    aid: int
    points: int
    reduced: bool
    der_rational: int | None = None
    anomaly_prone: bool = False

    @property
    def der_jump(self) -> bool:
        """``dim Der`` over ``F_p`` differs from the rational dimension."""
        return self.der_rational is not None and self.der != self.der_rational


def reduce_mod_p(L: LieAlgebra, p: int) -> LieAlgebra:
    """The same structure constants read in ``F_p`` (fails on denominators divisible by ``p``)."""
    F = GF(p)
    consts = {}
    for key, terms in L.structure_constants().items():
        try:
            consts[key] = {k: F(c) for k, c in terms.items()}
        except ZeroDivisionError:
            raise ValueError(f"prime {p} divides a structure-constant denominator") from None
    return LieAlgebra(L.dim, consts, labels=L.labels, field=F, name=L.name, check=False)


def projective_points(coords: Sequence[int], n: int, p: int) -> Iterator[tuple]:
    """One nonzero vector per line of the span of the unit vectors ``coords``, lexicographically."""
    k = len(coords)
    for lead in range(k):
        for tail in product(range(p), repeat=k - lead - 1):
            v = [0] * n
            v[coords[lead]] = 1
            for c, t in zip(coords[lead + 1:], tail):
                v[c] = t
            yield tuple(v)


def _all_points(n: int, p: int) -> Iterator[tuple]:
    yield from product(range(p), repeat=n)


def oracle_aid(
    L: LieAlgebra,
    p: int,
    budget: int = DEFAULT_BUDGET,
    reduced: bool = True,
    der_rational: int | None = None,
) -> OracleReport:
    """Exhaustive AID over ``F_p``; raises :class:`BudgetExceeded` if too many points."""
    if L.field != QQ:
        raise ValueError("oracle expects an algebra over Q")
    Lp = reduce_mod_p(L, p)
    F = Lp.field
    n = Lp.dim
    der = compute_der(Lp)
    inn = compute_inn(Lp)
    if reduced:
        z = center(Lp)
        # derivations vanishing on the center
        rows = derivation_rows(Lp)
        for v in z.sparse_basis():
            for a in range(n):
                row = {a * n + b: c for b, c in v.items()}
                if row:
                    rows.append(row)
        start = sparse_nullspace(rows, n * n, F)
        coords = z.complement_indices()
        count = (p ** len(coords) - 1) // (p - 1) if coords else 0
        points: Iterator[tuple] = projective_points(coords, n, p)
    else:
        start = der
        count = p**n
        points = _all_points(n, p)
    if count > budget:
        raise BudgetExceeded(f"{count} points exceed the enumeration budget {budget}")
    bound = _UpperBound(Lp, start, inn)
    used = 0
    for x in points:
        if bound.settled:
            break
        used += 1
        bound.add_sample(x)
    aid = bound.space()
    return OracleReport(
        prime=p,
        der=der.dim,
        inn=inn.dim,
        aid=aid.dim,
        points=used,
        reduced=reduced,
        der_rational=der_rational,
        anomaly_prone=p in ANOMALY_PRONE,
    )


@dataclass(frozen=True)
class CrossCheckEntry:
    report: OracleReport
    agrees: bool
    note: str


@dataclass
class CrossCheck:
    rational_aid: int | None
    rational_status: str
    entries: list[CrossCheckEntry] = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return all(e.agrees for e in self.entries)


def cross_check(
    L: LieAlgebra,
    primes: Sequence[int] = DEFAULT_PRIMES,
    report: DerivationReport | None = None,
    budget: int = DEFAULT_BUDGET,
) -> CrossCheck:
    """Compare oracle dimensions with the rational engine, prime by prime."""
    report = derivation_report(L) if report is None else report
    exact = report.status == EXACT
    rational = report.aid.space.dim if exact else None
    out = CrossCheck(rational, report.status)
    for p in primes:
        rep = oracle_aid(L, p, budget=budget, der_rational=report.der.dim)
        if rational is None:
            out.entries.append(CrossCheckEntry(rep, True, "rational answer only bracketed; no comparison"))
            continue
        agrees = rep.aid == rational
        if agrees:
            note = "agree"
        else:
            note = "finite-field anomaly (expected-possible): rational answer is certified"
            if rep.anomaly_prone:
                note += f"; characteristic {p} is small"
            if rep.der_jump:
                note += f"; dim Der jumps from {rep.der_rational} to {rep.der} mod {p}"
        out.entries.append(CrossCheckEntry(rep, agrees, note))
    return out


__all__ = [
    "OracleReport",
    "oracle_aid",
    "cross_check",
    "CrossCheck",
    "CrossCheckEntry",
    "BudgetExceeded",
    "reduce_mod_p",
    "projective_points",
    "DEFAULT_BUDGET",
    "DEFAULT_PRIMES",
]
