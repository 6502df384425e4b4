"""Command-line entry point: ``python -m aidlab <command> ...``.

Exit codes: 0 success, 1 mathematical mismatch (failed golden, rejected
certificate, non-isomorphism, counterexample), 2 input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .derivations import EXACT, AidConfig, Generator, compute_der, derivation_report
from .families import FAMILY_NAMES, SingularMatrix, build_family, verify_isomorphism
from .io import FormatError, ReportFile, dump_algebra, load_algebra, load_certificate, load_matrix
from .lie import JacobiError, LieAlgebra, validate_jacobi
from .linalg import Matrix
from .oracle import DEFAULT_BUDGET, DEFAULT_PRIMES, BudgetExceeded, cross_check
from .param import (
    DEFAULT_DEPTH_CAP,
    AlwaysMember,
    CertificateError,
    Counterexample,
    decide_pointwise_membership,
    verify_certificate,
)

OK, MISMATCH, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def format_units(M: Matrix) -> str:
    """A matrix as a combination of matrix units, e.g. ``4E2,1 - E2,4``."""
    parts = []
    for a, row in enumerate(M.rows):
        for b, v in enumerate(row):
            if not v:
                continue
            unit = f"E{a + 1},{b + 1}"
            mag = -v if v < 0 else v
            coef = "" if mag == 1 else f"{mag}"
            if coef and "/" in coef:
                coef = f"({coef})"
            sign = "-" if v < 0 else "+"
            parts.append((sign, coef + unit))
    if not parts:
        return "0"
    text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


def _fmt_dim(lo: int, hi: int) -> str:
    return str(hi) if lo == hi else f"{lo}..{hi}"


def table_row(rf: ReportFile, generators: Sequence[str]) -> str:
    c = "-" if rf.c is None else str(rf.c)
    d = "-" if rf.d is None else str(rf.d)
    aid = _fmt_dim(*rf.bounds["aid"])
    caid = _fmt_dim(*rf.bounds["caid"])
    gens = ", ".join(generators) if generators else "0"
    return " | ".join([rf.name, c, d, str(rf.dims["inn"]), caid, aid, str(rf.dims["der"]), gens])


TABLE_HEADER = "name | c | d | Inn | CAID | AID | Der | non-inner generators"


def _generator_text(g: Generator) -> str:
    text = format_units(g.matrix)
    if not g.certified:
        text += " (undecided)"
    return text


# ---------------------------------------------------------------------------
# input helpers
# ---------------------------------------------------------------------------


def _load(path: str) -> LieAlgebra:
    try:
        return load_algebra(path)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    except JacobiError as exc:
        raise InputError(f"{path}: {exc}") from None


def _algebra(args) -> LieAlgebra:
    if args.family:
        name, *params = args.family
        try:
            return build_family(name, params)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from None
    if not args.path:
        raise InputError("give an algebra file or --family NAME [PARAMS...]")
    return _load(args.path)


def _matrix(path: str, n: int) -> Matrix:
    try:
        M = load_matrix(path)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    if M.shape != (n, n):
        raise InputError(f"{path}: expected a {n}x{n} matrix, got {M.nrows}x{M.ncols}")
    return M


def _config(args) -> AidConfig:
    return AidConfig(seed=args.seed, depth_cap=args.depth_cap)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args, out) -> int:
    try:
        L = load_algebra(args.path)
    except FormatError as exc:
        raise InputError(str(exc)) from None
    except JacobiError as exc:
        print(f"invalid: {exc}", file=out)
        return MISMATCH
    assert validate_jacobi(L) is True
    print(f"ok: dim {L.dim}, {len(L.structure_constants())} nonzero brackets, field {L.field.name}", file=out)
    return OK


def cmd_report(args, out) -> int:
    L = _algebra(args)
    rep = derivation_report(L, _config(args))
    rf = ReportFile.from_report(rep)
    if args.json:
        out.write(rf.to_json())
    else:
        print(TABLE_HEADER, file=out)
        print(table_row(rf, [_generator_text(g) for g in rep.generators]), file=out)
        if rep.status != EXACT:
            print(f"status: {rep.status} (AID between {rf.bounds['aid'][0]} and {rf.bounds['aid'][1]})", file=out)
    return OK


def cmd_family(args, out) -> int:
    name, *params = args.name
    try:
        L = build_family(name, params)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from None
    text = dump_algebra(L)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print(f"wrote {L.name} (dim {L.dim}) to {args.out}", file=out)
    else:
        out.write(text)
    return OK


def cmd_oracle(args, out) -> int:
    L = _algebra(args)
    primes = args.prime or list(DEFAULT_PRIMES)
    try:
        cc = cross_check(L, primes, report=derivation_report(L, _config(args)), budget=args.budget)
    except BudgetExceeded as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print(f"rational AID: {cc.rational_aid if cc.rational_aid is not None else 'bracketed'}", file=out)
    for e in cc.entries:
        r = e.report
        flags = []
        if r.anomaly_prone:
            flags.append("small characteristic")
        if r.der_jump:
            flags.append("Der jump")
        extra = f" [{', '.join(flags)}]" if flags else ""
        print(
            f"p={r.prime}: Der {r.der}, Inn {r.inn}, AID {r.aid} ({r.points} points) {e.note}{extra}",
            file=out,
        )
    return OK


def cmd_certify(args, out) -> int:
    L = _algebra(args)
    D = _matrix(args.derivation, L.dim)
    if not compute_der(L).contains(D.flat()):
        print("not a derivation", file=out)
        return MISMATCH
    if args.certificate:
        try:
            cert = load_certificate(args.certificate)
            ok = verify_certificate(L, D, cert)
        except FormatError as exc:
            raise InputError(str(exc)) from None
        except CertificateError as exc:
            print(f"certificate rejected: {exc}", file=out)
            return MISMATCH
        print("certificate verified" if ok else "certificate rejected: identity fails", file=out)
        return OK if ok else MISMATCH
    outcome = decide_pointwise_membership(L, D, args.depth_cap, args.seed)
    if isinstance(outcome, AlwaysMember):
        print(f"almost inner ({outcome.leaves} leaf contexts)", file=out)
        return OK
    if isinstance(outcome, Counterexample):
        w = ", ".join(str(v) for v in outcome.witness)
        print(f"not almost inner: counterexample x = ({w})", file=out)
        return MISMATCH
    print(f"undecided: {outcome.reason}", file=out)
    return MISMATCH


def cmd_isocheck(args, out) -> int:
    src, dst = _load(args.src), _load(args.dst)
    M = _matrix(args.matrix, src.dim)
    try:
        ok = verify_isomorphism(src, dst, M)
    except SingularMatrix as exc:
        raise InputError(str(exc)) from None
    except ValueError as exc:
        raise InputError(str(exc)) from None
    print("isomorphism" if ok else "not an isomorphism", file=out)
    return OK if ok else MISMATCH


def cmd_goldens(args, out) -> int:
    from .goldens import run_goldens

    results = run_goldens(args.only, out=out)
    return OK if all(r.passed for r in results) else MISMATCH


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_algebra_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("path", nargs="?", help="algebra file (JSON)")
    p.add_argument(
        "--family",
        nargs="+",
        metavar="NAME",
        help="build a family member instead of reading a file: NAME [PARAMS...]",
    )


def _add_engine_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="seed for random samples (default 0)")
    p.add_argument("--depth-cap", type=int, default=DEFAULT_DEPTH_CAP, help="leaf cap of the case split")


def build_parser() -> argparse.ArgumentParser:
    families = "; ".join(f"{k} {v}".strip() for k, v in FAMILY_NAMES.items())
    parser = argparse.ArgumentParser(
        prog="aidlab",
        description="Derivations, almost inner derivations and their certificates for Lie algebras.",
        epilog=f"families: {families}",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse an algebra file and check the Jacobi identity")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("report", help="dimensions of Inn, CAID, AID, Der and non-inner generators")
    _add_algebra_args(p)
    _add_engine_args(p)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable report")
    fmt.add_argument("--table", action="store_true", help="table row (default)")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("family", help="emit a family member as an algebra file")
    p.add_argument("name", nargs="+", metavar="NAME", help="family name and parameters")
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("oracle", help="exhaustive AID over prime fields versus the rational answer")
    _add_algebra_args(p)
    _add_engine_args(p)
    p.add_argument("--prime", type=int, action="append", help="prime to use (repeatable)")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="maximum points to enumerate")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("certify", help="decide whether a derivation is almost inner")
    _add_algebra_args(p)
    _add_engine_args(p)
    p.add_argument("--derivation", required=True, help="matrix file (JSON list of rows)")
    p.add_argument("--certificate", help="piecewise certificate file to verify instead of deciding")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("isocheck", help="check that a matrix is a Lie algebra isomorphism")
    p.add_argument("src")
    p.add_argument("dst")
    p.add_argument("--matrix", required=True, help="matrix file; column j is the image of e_j")
    p.set_defaults(func=cmd_isocheck)

    p = sub.add_parser("goldens", help="reproduce the reference tables and family results")
    p.add_argument("--only", type=int, action="append", help="run only this criterion (repeatable)")
    p.set_defaults(func=cmd_goldens)
    return parser


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
