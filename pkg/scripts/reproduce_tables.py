"""Print the dimension tables and family results as table rows.

    python3 scripts/reproduce_tables.py [--seed S]
"""

import argparse
import time

from aidlab.cli import TABLE_HEADER, format_units
from aidlab.derivations import AidConfig, derivation_report
from aidlab.families import (
    a_family,
    almost_abelian,
    filiform_standard,
    free_metabelian,
    free_nilpotent,
    gn_family,
    metabelian_filiform,
    triangular,
)
from aidlab.goldens import AQR_POINTS, dim5_table, dim6_rows


def row(L, cfg):
    rep = derivation_report(L, cfg)
    c = "-" if rep.nilpotency_class is None else rep.nilpotency_class
    d = "-" if rep.derived_length is None else rep.derived_length
    gens = ", ".join(format_units(g.matrix) for g in rep.generators) or "0"
    dims = rep.dims
    status = "" if rep.status == "exact" else f"  [{rep.status}]"
    return f"{rep.name} | {c} | {d} | {dims['inn']} | {dims['caid']} | {dims['aid']} | {dims['der']} | {gens}{status}"


def section(title, algebras, cfg):
    print(f"\n## {title}\n{TABLE_HEADER}")
    for L in algebras:
        start = time.perf_counter()
        line = row(L, cfg)
        print(f"{line}   ({time.perf_counter() - start:.2f}s)")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    cfg = AidConfig(seed=ap.parse_args().seed)
    section("dimension 5", [r[0] for r in dim5_table()], cfg)
    section("dimension 6 (direct sums and g_1)", [r[0] for r in dim6_rows()], cfg)
    section("A(q, r) sample points", [a_family(q, r) for q, r in dict.fromkeys(AQR_POINTS)], cfg)
    section(
        "free nilpotent and free metabelian",
        [free_nilpotent(r, 2) for r in (2, 3, 4)] + [free_nilpotent(r, 3) for r in (2, 3)]
        + [free_metabelian(c) for c in (2, 3, 4, 5)],
        cfg,
    )
    section(
        "almost abelian and filiform",
        [almost_abelian(b) for b in ([(0, 4)], [(1, 2), (2, 2)], [(0, 2), (0, 2)], [(1, 3)])]
        + [filiform_standard(n) for n in range(4, 9)]
        + [metabelian_filiform(n, [1] * (n - 4)) for n in (5, 6, 7, 8)],
        cfg,
    )
    section("triangular", [triangular(n, s) for n in (2, 3, 4, 5) for s in (True, False)], cfg)
    section("g_n", [gn_family(n) for n in (1, 2, 3, 4, 5)], cfg)


if __name__ == "__main__":
    main()
