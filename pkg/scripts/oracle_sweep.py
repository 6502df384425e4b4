"""Compare the rational AID with exhaustive counts over small prime fields.

    python3 scripts/oracle_sweep.py [--primes 2 3 5 7]

Disagreements at small characteristic are reported, not treated as errors:
the rational answers are certified independently.
"""

import argparse

from aidlab.families import (
    a_family,
    free_metabelian,
    free_nilpotent,
    g53,
    g56,
    gn_family,
    graph_algebra,
    heisenberg,
    metabelian_filiform,
    n4,
    path_edges,
)
from aidlab.oracle import BudgetExceeded, cross_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5, 7])
    ap.add_argument("--budget", type=int, default=2 * 10**6)
    args = ap.parse_args()
    algebras = [
        heisenberg(),
        n4(),
        g53(),
        g56(),
        a_family(1, -1),
        a_family(1, 0),
        a_family(2, 3),
        graph_algebra(3, path_edges(3)),
        free_nilpotent(2, 3),
        free_metabelian(3),
        free_metabelian(4),
        metabelian_filiform(6, [1, 1]),
        gn_family(2),
    ]
    print("algebra | rational AID | " + " | ".join(f"p={p}" for p in args.primes))
    for L in algebras:
        cells = []
        rational = None
        for p in args.primes:
            try:
                cc = cross_check(L, [p], budget=args.budget)
            except BudgetExceeded:
                cells.append("over budget")
                continue
            except ValueError as exc:
                cells.append(f"n/a ({exc})")
                continue
            rational = cc.rational_aid
            (e,) = cc.entries
            mark = "" if e.agrees else " *"
            jump = " (Der jump)" if e.report.der_jump else ""
            cells.append(f"{e.report.aid}{mark}{jump}")
        print(f"{L.name} | {rational} | " + " | ".join(cells))
    print("* disagrees with the rational answer")


if __name__ == "__main__":
    main()
