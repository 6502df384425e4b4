"""Reference results reproduced end to end.

Every criterion is a function that raises :class:`GoldenMismatch` on the
first deviation and otherwise returns a one-line summary.  ``run_goldens``
prints one pass/fail line per criterion.
"""

from __future__ import annotations

import random
import sys
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Callable, Iterable

from .derivations import EXACT, AidConfig, DerivationReport, derivation_report
from .families import (
    a_family,
    aqr_isomorphism_to_a1m1,
    aqr_isomorphism_to_a10,
    almost_abelian,
    filiform_standard,
    free_metabelian,
    free_nilpotent,
    g53,
    g56,
    gn_certificate,
    gn_derivation,
    gn_family,
    graph_algebra,
    heisenberg,
    metabelian_filiform,
    n4,
    path_edges,
    triangular,
    verify_isomorphism,
)
from .fixed import fixed_vector_prover
from .lie import LieAlgebra, abelian, derived_length, direct_sum, nilpotency_class
from .linalg import Matrix, Subspace
from .oracle import cross_check
from .param import Counterexample, decide_pointwise_membership, is_pointwise_member, verify_certificate
from .properties import aid_is_additive, check_report_properties


class GoldenMismatch(AssertionError):
    pass


def expect(cond: bool, message: str) -> None:
    if not cond:
        raise GoldenMismatch(message)


@dataclass(frozen=True)
class GoldenResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail} ({self.seconds:.1f}s)"


_CONFIG = AidConfig(seed=0)
_REPORTS: dict[str, DerivationReport] = {}


def report(L: LieAlgebra) -> DerivationReport:
    """Derivation report with the default seed, cached per structure-constant table."""
    key = f"{L.name}|{L.dim}|{L.field.name}|{sorted(L.structure_constants().items())}"
    if key not in _REPORTS:
        _REPORTS[key] = derivation_report(L, _CONFIG)
    return _REPORTS[key]


def _dims(rep: DerivationReport) -> tuple:
    d = rep.dims
    return d["inn"], d["caid"], d["aid"], d["der"]


def _span_plus(inn: Subspace, mats: Iterable[Matrix]) -> Subspace:
    return inn + Subspace(inn.ambient, [M.flat() for M in mats], inn.field)


def _same(a: Subspace, b: Subspace) -> bool:
    return a <= b and b <= a


def _expect_exact_inner(L: LieAlgebra) -> DerivationReport:
    rep = report(L)
    expect(rep.status == EXACT, f"{L.name}: status {rep.status}")
    expect(rep.aid.space.dim == rep.inn.dim, f"{L.name}: AID {rep.aid.space.dim} != Inn {rep.inn.dim}")
    return rep


# ---------------------------------------------------------------------------
# the algebras
# ---------------------------------------------------------------------------


def dim5_table() -> list[tuple[LieAlgebra, tuple, tuple]]:
    """``(algebra, (Inn, CAID, AID, Der), (c, d))`` rows of the dimension-5 table."""
    return [
        (g56(), (4, 5, 5, 8), (4, 2)),
        (g53(), (4, 5, 5, 10), (3, 2)),
        (direct_sum(heisenberg(), abelian(2), name="n3+C^2"), (2, 2, 2, 16), (2, 2)),
        (abelian(5), (0, 0, 0, 25), (1, 1)),
    ]


def dim6_rows() -> list[tuple[LieAlgebra, tuple]]:
    return [
        (direct_sum(g56(), abelian(1), name="g56+C"), (4, 5, 5, 12)),
        (direct_sum(g53(), abelian(1), name="g53+C"), (4, 5, 5, 15)),
        (direct_sum(heisenberg(), heisenberg(), name="n3+n3"), (4, 4, 4, 16)),
        (direct_sum(n4(), abelian(2), name="n4+C^2"), (3, 3, 3, 17)),
        (gn_family(1), (4, 6, 6, 17)),
    ]


AQR_POINTS = [(2, 3), (1, 0), (0, 1), (1, -1), (0, 0), (2, -2), (3, 0), (0, 0), (5, 7)]
ALMOST_ABELIAN = [[(0, 4)], [(1, 2), (2, 2)], [(0, 2), (0, 2)], [(1, 3)]]
MF_COEFFS = {5: [[1], [-3], [Fraction(2, 7)]], 6: [[1, 0], [0, 1], [2, -5]], 7: [[1, 0, 0], [0, 0, 1], [3, 1, Fraction(-1, 2)]]}


def labeled_graphs(max_vertices: int = 5) -> Iterable[tuple[int, list]]:
    for v in range(1, max_vertices + 1):
        pairs = list(combinations(range(1, v + 1), 2))
        for mask in range(1 << len(pairs)):
            yield v, [p for b, p in enumerate(pairs) if mask >> b & 1]


def graph_classes(vertices: int) -> dict[tuple, list]:
    """Isomorphism classes of simple graphs: canonical edge tuple to one representative."""
    classes: dict[tuple, list] = {}
    perms = list(permutations(range(1, vertices + 1)))
    pairs = list(combinations(range(1, vertices + 1), 2))
    for mask in range(1 << len(pairs)):
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        canon = min(
            tuple(sorted(tuple(sorted((s[a - 1], s[b - 1]))) for a, b in edges)) for s in perms
        )
        classes.setdefault(canon, edges)
    return classes


def catalogue() -> list[LieAlgebra]:
    """Every algebra named in criteria 1 to 11 except the labeled-graph sweep."""
    algs = [row[0] for row in dim5_table()] + [row[0] for row in dim6_rows()]
    algs += [a_family(q, r) for q, r in dict.fromkeys(AQR_POINTS)]
    algs += [free_nilpotent(r, 2) for r in (2, 3, 4)] + [free_nilpotent(r, 3) for r in (2, 3)]
    algs += [free_metabelian(c) for c in (2, 3, 4, 5)]
    algs += [almost_abelian(b) for b in ALMOST_ABELIAN] + [filiform_standard(n) for n in range(4, 9)]
    algs += [metabelian_filiform(n, cs[-1]) for n, cs in MF_COEFFS.items()]
    algs += [triangular(n, strict) for n in (2, 3, 4, 5) for strict in (True, False)]
    algs += [gn_family(n) for n in (2, 3, 4)]
    return algs


def graph_catalogue(max_vertices: int = 5) -> list[LieAlgebra]:
    """One graph algebra per isomorphism class on at most ``max_vertices`` vertices."""
    return [
        graph_algebra(v, edges)
        for v in range(1, max_vertices + 1)
        for edges in graph_classes(v).values()
    ]


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------


def c01_dim5_table() -> str:
    for L, dims, cd in dim5_table():
        rep = report(L)
        expect(rep.status == EXACT, f"{L.name}: status {rep.status}")
        expect(_dims(rep) == dims, f"{L.name}: dims {_dims(rep)} != {dims}")
        got = (nilpotency_class(L), derived_length(L))
        expect(got == cd, f"{L.name}: (c, d) {got} != {cd}")
    for L, (a, b) in [(g56(), (5, 2)), (g53(), (5, 3))]:
        rep = report(L)
        want = _span_plus(rep.inn, [Matrix.unit(5, a, b)])
        expect(_same(rep.aid.space, want), f"{L.name}: AID is not Inn + <E{a},{b}>")
        got = _span_plus(rep.inn, [g.matrix for g in rep.generators])
        expect(_same(got, want), f"{L.name}: generators do not span <E{a},{b}> mod Inn")
    return "4 rows match"


def c02_dim6_rows() -> str:
    for L, dims in dim6_rows():
        rep = report(L)
        expect(rep.status == EXACT, f"{L.name}: status {rep.status}")
        expect(_dims(rep) == dims, f"{L.name}: dims {_dims(rep)} != {dims}")
    rep = report(gn_family(1))
    expect(rep.aid.space.dim - rep.inn.dim == 2, "g_1: dim AID/Inn != 2")
    return "5 rows match"


def c03_aqr_stratification() -> str:
    for q, r in AQR_POINTS:
        rep = report(a_family(q, r))
        expect(rep.status == EXACT, f"A({q},{r}): status {rep.status}")
        der = 8 if (q, r) == (0, 0) else 7
        aid = 5 if q * r == 0 or q + r == 0 else 4
        got = (rep.der.dim, rep.inn.dim, rep.aid.space.dim)
        expect(got == (der, 4, aid), f"A({q},{r}): (Der, Inn, AID) {got} != {(der, 4, aid)}")
    return f"{len(AQR_POINTS)} sample points match"


def c04_aqr_isomorphisms() -> str:
    for q in (2, 3, 5):
        M = aqr_isomorphism_to_a10(q)
        expect(verify_isomorphism(a_family(q, 0), a_family(1, 0), M), f"A({q},0) -> A(1,0) rejected")
        M = aqr_isomorphism_to_a1m1(q)
        expect(verify_isomorphism(a_family(q, -q), a_family(1, -1), M), f"A({q},{-q}) -> A(1,-1) rejected")
    ident = Matrix.identity(5)
    expect(not verify_isomorphism(a_family(1, 0), a_family(1, -1), ident), "identity accepted")
    return "6 printed matrices accepted, identity rejected"


def c05_graphs() -> str:
    count = 0
    for v, edges in labeled_graphs(5):
        L = graph_algebra(v, edges)
        _expect_exact_inner(L)
        expect(fixed_vector_prover(L).all_fixed, f"graph {v} {edges}: prover inconclusive")
        count += 1
    classes = len(graph_classes(5))
    expect(classes == 34, f"{classes} isomorphism classes on 5 vertices, expected 34")
    return f"{count} labeled graphs, 34 classes on 5 vertices"


def c06_free_nilpotent() -> str:
    algs = [free_nilpotent(r, 2) for r in (2, 3, 4)] + [free_nilpotent(r, 3) for r in (2, 3)]
    for L in algs:
        _expect_exact_inner(L)
    return "f(2..4,2), f(2..3,3): AID = Inn"


def c07_free_metabelian() -> str:
    for c in (2, 3, 4, 5):
        _expect_exact_inner(free_metabelian(c))
    return "m(2,2..5): AID = Inn"


def c08_almost_abelian_filiform() -> str:
    algs = [almost_abelian(b) for b in ALMOST_ABELIAN] + [filiform_standard(n) for n in range(4, 9)]
    for L in algs:
        _expect_exact_inner(L)
        proof = fixed_vector_prover(L)
        expect(proof.all_fixed, f"{L.name}: not every basis vector proved fixed")
    return f"{len(algs)} algebras, all vectors fixed"


def c09_metabelian_filiform(seed: int = 0) -> str:
    rng = random.Random(seed)
    checked = 0
    for n, fixed_choices in MF_COEFFS.items():
        choices = list(fixed_choices)
        while len(choices) < len(fixed_choices) + 2:
            cs = [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n - 4)]
            if any(cs):
                choices.append(cs)
        for cs in choices:
            L = metabelian_filiform(n, cs)
            rep = report(L)
            expect(rep.status == EXACT, f"{L.name} {cs}: status {rep.status}")
            want = _span_plus(rep.inn, [Matrix.unit(n, n, 2)])
            expect(_same(rep.aid.space, want), f"{L.name} {cs}: AID is not Inn + <E{n},2>")
            expect(rep.caid.exact and _same(rep.caid.space, rep.aid.space), f"{L.name} {cs}: CAID != AID")
            checked += 1
    return f"{checked} coefficient vectors, AID = Inn + <E(n,2)> = CAID"


def c10_triangular() -> str:
    for n in (2, 3, 4, 5):
        _expect_exact_inner(triangular(n, strict=True))
        _expect_exact_inner(triangular(n))
    return "n_n and t_n for n = 2..5: AID = Inn"


def c11_gn() -> str:
    for n in (2, 3, 4):
        L = gn_family(n)
        rep = report(L)
        expect(rep.status == EXACT, f"{L.name}: status {rep.status}")
        expect(rep.aid.space.dim - rep.inn.dim == n, f"{L.name}: dim AID/Inn != {n}")
        Ds = [gn_derivation(n, i) for i in range(1, n + 1)]
        expect(_same(rep.aid.space, _span_plus(rep.inn, Ds)), f"{L.name}: AID != Inn + <D_i>")
        for i, D in enumerate(Ds, start=1):
            expect(verify_certificate(L, D, gn_certificate(n, i)), f"{L.name}: certificate of D_{i} rejected")
        expect(rep.caid.exact and _same(rep.caid.space, rep.aid.space), f"{L.name}: CAID != AID")
    return "g_2, g_3, g_4: n certified generators, CAID = AID"


def c12_properties(seed: int = 0) -> str:
    algs = catalogue() + graph_catalogue(5)
    for L in algs:
        failures = check_report_properties(L, report(L))
        expect(not failures, f"{L.name}: " + "; ".join(failures))
    rng = random.Random(seed)
    pool = [row[0] for row in dim5_table()] + [heisenberg(), n4(), a_family(1, -1), gn_family(1), triangular(2)]
    for _ in range(5):
        L1, L2 = rng.sample(pool, 2)
        expect(aid_is_additive(L1, L2, _CONFIG), f"AID not additive on {L1.name} + {L2.name}")
    return f"{len(algs)} algebras, 5 direct sums"


def c13_oracle() -> str:
    algs = [heisenberg(), g53(), g56(), gn_family(2), graph_algebra(3, path_edges(3), name="P3")]
    for L in algs:
        cc = cross_check(L, (5, 7), report=report(L))
        expect(cc.rational_aid is not None, f"{L.name}: rational answer not exact")
        for e in cc.entries:
            expect(e.agrees, f"{L.name} at p={e.report.prime}: {e.report.aid} != {cc.rational_aid}")
    return "5 algebras agree at p = 5, 7"


def c14_negative_control() -> str:
    L = heisenberg()
    D = Matrix.unit(3, 2, 1)
    out = decide_pointwise_membership(L, D)
    expect(isinstance(out, Counterexample), f"expected a counterexample, got {out.kind}")
    expect(not is_pointwise_member(L, D, out.witness), f"witness {out.witness} passes the direct check")
    return f"witness {tuple(str(v) for v in out.witness)} fails D x in [g, x]"


CRITERIA: dict[int, tuple[str, Callable[[], str]]] = {
    1: ("dimension-5 table", c01_dim5_table),
    2: ("dimension-6 rows", c02_dim6_rows),
    3: ("A(q,r) stratification", c03_aqr_stratification),
    4: ("A(q,r) isomorphism matrices", c04_aqr_isomorphisms),
    5: ("graph algebras", c05_graphs),
    6: ("free nilpotent algebras", c06_free_nilpotent),
    7: ("free metabelian m(2,c)", c07_free_metabelian),
    8: ("almost abelian and standard filiform", c08_almost_abelian_filiform),
    9: ("metabelian filiform", c09_metabelian_filiform),
    10: ("triangular algebras", c10_triangular),
    11: ("g_n family", c11_gn),
    12: ("structural properties", c12_properties),
    13: ("finite-field oracle concordance", c13_oracle),
    14: ("negative control", c14_negative_control),
}


def run_golden(number: int) -> GoldenResult:
    title, fn = CRITERIA[number]
    start = time.perf_counter()
    try:
        detail, passed = fn(), True
    except GoldenMismatch as exc:
        detail, passed = str(exc), False
    return GoldenResult(number, title, passed, detail, time.perf_counter() - start)


def run_goldens(only: Iterable[int] | None = None, out=None) -> list[GoldenResult]:
    numbers = sorted(set(only)) if only else sorted(CRITERIA)
    unknown = [k for k in numbers if k not in CRITERIA]
    if unknown:
        raise ValueError(f"unknown criteria {unknown}; valid are 1..{len(CRITERIA)}")
    results = []
    for k in numbers:
        res = run_golden(k)
        results.append(res)
        if out is not None:
            print(res.line(), file=out, flush=True)
    if out is not None:
        passed = sum(r.passed for r in results)
        print(f"{passed}/{len(results)} criteria passed", file=out)
    return results


if __name__ == "__main__":
    sys.exit(0 if all(r.passed for r in run_goldens(out=sys.stdout)) else 1)
