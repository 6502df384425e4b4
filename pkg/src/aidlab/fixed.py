"""Combinatorial proof that AID = Inn from the bracket table alone.

A basis vector ``e_i`` is *fixed* when every choice map ``phi`` of every
almost inner derivation gives the same ``i``-th coordinate of ``phi(e_j)``
for all ``e_j`` that do not commute with ``e_i``.  If every basis vector is
fixed, each almost inner derivation is inner.

Two sufficient criteria link a pair ``e_j, e_k`` (equal ``i``-th coordinates):

* two-target: ``[e_j, e_i]`` hits ``e_l`` but not ``e_m``, ``[e_k, e_i]``
  hits ``e_m`` but not ``e_l`` (``l != m``), and no other ``[e_j, e_s]`` or
  ``[e_k, e_s]`` with ``s != i`` touches ``e_l`` or ``e_m``;
* same-target: ``[e_j, e_i]`` and ``[e_k, e_i]`` both hit ``e_l`` and no
  other ``[e_j, e_s]`` or ``[e_k, e_s]`` with ``s != i`` touches ``e_l``.

``e_i`` is fixed when the pairs linked this way connect all basis vectors
outside its centralizer, or trivially when at most one such vector exists.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .lie import LieAlgebra

TWO_TARGET = "two-target"
SAME_TARGET = "same-target"


@dataclass(frozen=True)
class LinkInstance:
    """One application of a linking criterion (all indices 1-based)."""

    kind: str
    i: int
    j: int
    k: int
    l: int
    m: int | None = None


@dataclass(frozen=True)
class TriviallyFixed:
    index: int
    kind = "trivially-fixed"


@dataclass(frozen=True)
class LinkedFixed:
    index: int
    instances: tuple[LinkInstance, ...]
    kind = "linked-fixed"


@dataclass(frozen=True)
class NotProved:
    index: int
    components: tuple[tuple[int, ...], ...]
    kind = "not-proved"


FixedStatus = Union[TriviallyFixed, LinkedFixed, NotProved]


@dataclass(frozen=True)
class FixedVectorProof:
    statuses: tuple[FixedStatus, ...]

    @property
    def all_fixed(self) -> bool:
        return not any(isinstance(s, NotProved) for s in self.statuses)

    @property
    def conclusion(self) -> str:
        return "AID = Inn certified" if self.all_fixed else "inconclusive"

    def status(self, i: int) -> FixedStatus:
        """Status of the 1-based basis index ``i``."""
        return self.statuses[i - 1]


def _coeff(L: LieAlgebra, a: int, b: int, t: int):
    """Coefficient of ``e_t`` in ``[e_a, e_b]`` (1-based)."""
    return L.basis_bracket(a - 1, b - 1).get(t - 1, 0)


def check_instance(L: LieAlgebra, inst: LinkInstance) -> bool:
    """Re-verify the hypotheses of ``inst`` directly against the bracket table."""
    n = L.dim
    i, j, k, l, m = inst.i, inst.j, inst.k, inst.l, inst.m
    targets = (l,) if inst.kind == SAME_TARGET else (l, m)
    if inst.kind == TWO_TARGET:
        if m is None or l == m:
            return False
        if not _coeff(L, j, i, l) or _coeff(L, j, i, m):
            return False
        if not _coeff(L, k, i, m) or _coeff(L, k, i, l):
            return False
    elif inst.kind == SAME_TARGET:
        if not _coeff(L, j, i, l) or not _coeff(L, k, i, l):
            return False
    else:
        return False
    for s in range(1, n + 1):
        if s == i:
            continue
        for a in (j, k):
            if any(_coeff(L, a, s, t) for t in targets):
                return False
    return True


class _DSU:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[max(ra, rb)] = min(ra, rb)
        return True


def _find_link(L: LieAlgebra, i: int, j: int, k: int, touched) -> LinkInstance | None:
    """Search a linking instance for ``e_j, e_k`` relative to ``e_i`` (0-based inputs)."""
    bj = L.basis_bracket(j, i)
    bk = L.basis_bracket(k, i)
    # targets touched by [e_a, e_s] for some s != i
    tj, tk = touched(j, i), touched(k, i)
    for l in sorted(bj):
        if l in bk and l not in tj and l not in tk:
            return LinkInstance(SAME_TARGET, i + 1, j + 1, k + 1, l + 1)
    for l in sorted(bj):
        if l in bk or l in tj or l in tk:
            continue
        for m in sorted(bk):
            if m == l or m in bj or m in tj or m in tk:
                continue
            return LinkInstance(TWO_TARGET, i + 1, j + 1, k + 1, l + 1, m + 1)
    return None


def fixed_vector_prover(L: LieAlgebra) -> FixedVectorProof:
    n = L.dim
    # counts[a][t]: number of s with e_t in the support of [e_a, e_s]
    counts = []
    for a in range(n):
        c: dict[int, int] = {}
        for s in range(n):
            for t in L.basis_bracket(a, s):
                c[t] = c.get(t, 0) + 1
        counts.append(c)

    def touched(a: int, i: int) -> set:
        own = L.basis_bracket(a, i)
        return {t for t, cnt in counts[a].items() if cnt - (1 if t in own else 0) > 0}

    statuses: list[FixedStatus] = []
    for i in range(n):
        outside = [j for j in range(n) if L.basis_bracket(j, i)]
        if len(outside) <= 1:
            statuses.append(TriviallyFixed(i + 1))
            continue
        dsu = _DSU(outside)
        used: list[LinkInstance] = []
        for a, j in enumerate(outside):
            for k in outside[a + 1:]:
                if dsu.find(j) == dsu.find(k):
                    continue
                inst = _find_link(L, i, j, k, touched)
                if inst is not None and check_instance(L, inst):
                    dsu.union(j, k)
                    used.append(inst)
        roots = {}
        for j in outside:
            roots.setdefault(dsu.find(j), []).append(j + 1)
        if len(roots) == 1:
            statuses.append(LinkedFixed(i + 1, tuple(used)))
        else:
            statuses.append(NotProved(i + 1, tuple(tuple(v) for v in roots.values())))
    return FixedVectorProof(tuple(statuses))
