"""Structural sanity checks that every computed derivation report must pass."""

from __future__ import annotations

from .derivations import EXACT, AidConfig, DerivationReport, derivation_report, matrices
from .lie import LieAlgebra, center, direct_sum, derived_series, lower_central_series, nilpotency_class
from .linalg import Subspace


def _brackets_inside(L: LieAlgebra, left: Subspace, right: Subspace, target: Subspace) -> bool:
    A = matrices(L, left)
    B = matrices(L, right)
    return all(target.contains(a.commutator(b).flat()) for a in A for b in B)


def sampled_ideals(L: LieAlgebra) -> list[tuple[str, Subspace]]:
    out = [("center", center(L))]
    ds = derived_series(L)
    if len(ds) > 1:
        out.append(("derived", ds[1]))
    for k, term in enumerate(lower_central_series(L)[2:], start=3):
        out.append((f"lower-central-{k}", term))
    return out


def check_report_properties(L: LieAlgebra, rep: DerivationReport) -> list[str]:
    """Names of the violated properties (empty when everything holds)."""
    failures = []
    der, inn = rep.der, rep.inn
    aid, caid = rep.aid.space, rep.caid.space
    if not (inn <= caid and caid <= aid and aid <= der):
        failures.append("chain Inn <= CAID <= AID <= Der")
    if not (rep.aid.lower <= rep.aid.upper and inn <= rep.aid.lower):
        failures.append("sandwich bounds out of order")
    if not _brackets_inside(L, aid, aid, aid):
        failures.append("AID closed under brackets")
    if not _brackets_inside(L, caid, caid, caid):
        failures.append("CAID closed under brackets")
    if not _brackets_inside(L, aid, caid, caid):
        failures.append("CAID an ideal of AID")
    if not _brackets_inside(L, der, inn, inn):
        failures.append("Inn an ideal of Der")
    derived = derived_series(L)[1] if L.dim else Subspace.zero(0)
    ideals = sampled_ideals(L)
    nilpotent = nilpotency_class(L) is not None
    for D in matrices(L, aid):
        if not all(not any(D.apply(z)) for z in center(L).basis):
            failures.append("AID kills the center")
            break
        if not all(derived.contains(D.column(j)) for j in range(L.dim)):
            failures.append("AID image inside [g, g]")
            break
        bad = [name for name, I in ideals if not all(I.contains(D.apply(v)) for v in I.basis)]
        if bad:
            failures.append("AID preserves ideals: " + ", ".join(bad))
            break
        if nilpotent and not D.is_nilpotent():
            failures.append("AID matrices nilpotent")
            break
    return failures


def block_sum(n1: int, n2: int, A: Subspace, B: Subspace) -> Subspace:
    """``A (+) B`` as block-diagonal maps on ``K^(n1+n2)``, flattened row-major."""
    n = n1 + n2
    vecs = []
    for vec, size, off in [(v, n1, 0) for v in A.basis] + [(v, n2, n1) for v in B.basis]:
        out = [0] * (n * n)
        for idx, c in enumerate(vec):
            if c:
                a, b = divmod(idx, size)
                out[(a + off) * n + (b + off)] = c
        vecs.append(out)
    return Subspace(n * n, vecs, A.field)


def aid_is_additive(L1: LieAlgebra, L2: LieAlgebra, config: AidConfig = AidConfig()) -> bool:
    """AID of the direct sum equals the block sum of the two AIDs (as subspaces)."""
    r1 = derivation_report(L1, config)
    r2 = derivation_report(L2, config)
    rs = derivation_report(direct_sum(L1, L2), config)
    if not r1.status == r2.status == rs.status == EXACT:
        return False
    expected = block_sum(L1.dim, L2.dim, r1.aid.space, r2.aid.space)
    return expected <= rs.aid.space and rs.aid.space <= expected
