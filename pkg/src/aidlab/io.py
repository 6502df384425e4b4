"""JSON formats for algebras, derivation reports, matrices and certificates.

Scalars are always written as strings (``"3/2"``) or integers, never floats.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field as dc_field
from pathlib import Path
from typing import Any

from .derivations import DerivationReport
from .lie import LieAlgebra
from .linalg import GF, QQ, Matrix
from .param import CertificatePiece, PiecewiseCertificate
from .poly import format_poly, parse_poly

FORMAT_VERSION = 1


class FormatError(ValueError):
    """Malformed input; the message names the offending location."""


def _scalar_str(v) -> str:
    return str(v)


def _parse_scalar(value: Any, where: str, field=QQ):
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise FormatError(f"{where}: coefficient must be an integer or a string like \"3/2\"")
    try:
        return field(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"{where}: bad coefficient {value!r} ({exc})") from None


def _load_json(text: str, source: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _read(path: str | Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror}") from None


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------


def _field_from_name(name: Any, where: str):
    if name == "Q":
        return QQ
    if isinstance(name, str) and name.startswith("GF(") and name.endswith(")"):
        try:
            return GF(int(name[3:-1]))
        except ValueError as exc:
            raise FormatError(f"{where}: {exc}") from None
    raise FormatError(f"{where}: field must be \"Q\" or \"GF(p)\", got {name!r}")


def algebra_to_dict(L: LieAlgebra) -> dict:
    brackets = [
        {"i": i, "j": j, "terms": [{"k": k, "coeff": _scalar_str(c)} for k, c in terms.items()]}
        for (i, j), terms in sorted(L.structure_constants().items())
    ]
    out = {
        "format_version": FORMAT_VERSION,
        "dim": L.dim,
        "field": L.field.name,
        "brackets": brackets,
        "labels": list(L.labels),
    }
    if L.name:
        out["name"] = L.name
    return out


def algebra_from_dict(doc: Any, source: str = "<algebra>") -> LieAlgebra:
    if not isinstance(doc, dict):
        raise FormatError(f"{source}: top level must be an object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise FormatError(f"{source}: format_version must be {FORMAT_VERSION}, got {version!r}")
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 0:
        raise FormatError(f"{source}: dim must be a non-negative integer")
    field = _field_from_name(doc.get("field", "Q"), f"{source}: field")
    raw = doc.get("brackets", [])
    if not isinstance(raw, list):
        raise FormatError(f"{source}: brackets must be a list")
    brackets: dict = {}
    for a, rec in enumerate(raw):
        where = f"{source}: brackets[{a}]"
        if not isinstance(rec, dict):
            raise FormatError(f"{where}: must be an object with i, j, terms")
        i, j = rec.get("i"), rec.get("j")
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (i, j)):
            raise FormatError(f"{where}: i and j must be integers")
        if not 1 <= i < j <= dim:
            raise FormatError(f"{where}: need 1 <= i < j <= {dim}, got i={i}, j={j}")
        if (i, j) in brackets:
            raise FormatError(f"{where}: duplicate bracket ({i}, {j})")
        terms = {}
        tlist = rec.get("terms", [])
        if not isinstance(tlist, list):
            raise FormatError(f"{where}.terms: must be a list")
        for b, term in enumerate(tlist):
            twhere = f"{where}.terms[{b}]"
            if not isinstance(term, dict):
                raise FormatError(f"{twhere}: must be an object with k, coeff")
            k = term.get("k")
            if isinstance(k, bool) or not isinstance(k, int) or not 1 <= k <= dim:
                raise FormatError(f"{twhere}: k must be an integer in 1..{dim}")
            if k in terms:
                raise FormatError(f"{twhere}: target e{k} repeated")
            terms[k] = _parse_scalar(term.get("coeff"), f"{twhere}.coeff", field)
        brackets[(i, j)] = terms
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise FormatError(f"{source}: labels must be a list of {dim} strings")
    return LieAlgebra(dim, brackets, labels=labels, field=field, name=doc.get("name"))


def dump_algebra(L: LieAlgebra) -> str:
    return json.dumps(algebra_to_dict(L), indent=2) + "\n"


def loads_algebra(text: str, source: str = "<algebra>") -> LieAlgebra:
    """Parse an algebra document; raises :class:`FormatError` or :class:`JacobiError`."""
    return algebra_from_dict(_load_json(text, source), source)


def load_algebra(path: str | Path) -> LieAlgebra:
    return loads_algebra(_read(path), str(path))


def save_algebra(L: LieAlgebra, path: str | Path) -> None:
    Path(path).write_text(dump_algebra(L))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------


def matrix_to_list(M: Matrix) -> list[list[str]]:
    return [[_scalar_str(v) for v in row] for row in M.rows]


def matrix_from_list(doc: Any, source: str = "<matrix>", field=QQ) -> Matrix:
    if not isinstance(doc, list) or not doc or not all(isinstance(r, list) for r in doc):
        raise FormatError(f"{source}: a matrix is a non-empty list of rows")
    width = len(doc[0])
    rows = []
    for a, r in enumerate(doc):
        if len(r) != width:
            raise FormatError(f"{source}: row {a + 1} has {len(r)} entries, expected {width}")
        rows.append([_parse_scalar(v, f"{source}: entry ({a + 1}, {b + 1})", field) for b, v in enumerate(r)])
    return Matrix(rows, field)


def load_matrix(path: str | Path, field=QQ) -> Matrix:
    return matrix_from_list(_load_json(_read(path), str(path)), str(path), field)


def dump_matrix(M: Matrix) -> str:
    return json.dumps(matrix_to_list(M)) + "\n"


# ---------------------------------------------------------------------------
# certificates
# ---------------------------------------------------------------------------


def certificate_to_dict(cert: PiecewiseCertificate) -> dict:
    return {
        "nvars": cert.nvars,
        "pieces": [
            {
                "equalities": [format_poly(e) for e in p.equalities],
                "inequations": [format_poly(g) for g in p.inequations],
                "numerator": [format_poly(q) for q in p.numerator],
                "denominator": format_poly(p.denominator),
            }
            for p in cert.pieces
        ],
    }


def certificate_from_dict(doc: Any, source: str = "<certificate>") -> PiecewiseCertificate:
    if not isinstance(doc, dict) or not isinstance(doc.get("pieces"), list):
        raise FormatError(f"{source}: expected an object with nvars and pieces")
    n = doc.get("nvars")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise FormatError(f"{source}: nvars must be a positive integer")

    def poly(text, where):
        if not isinstance(text, str):
            raise FormatError(f"{where}: polynomial must be a string")
        try:
            return parse_poly(text, n)
        except Exception as exc:  # sympy raises a zoo of exception types
            raise FormatError(f"{where}: cannot parse {text!r} ({exc})") from None

    pieces = []
    for a, p in enumerate(doc["pieces"]):
        where = f"{source}: pieces[{a}]"
        if not isinstance(p, dict):
            raise FormatError(f"{where}: must be an object")
        pieces.append(
            CertificatePiece(
                tuple(poly(e, f"{where}.equalities") for e in p.get("equalities", [])),
                tuple(poly(g, f"{where}.inequations") for g in p.get("inequations", [])),
                tuple(poly(q, f"{where}.numerator") for q in p.get("numerator", [])),
                poly(p.get("denominator", "1"), f"{where}.denominator"),
            )
        )
    return PiecewiseCertificate(tuple(pieces))


def load_certificate(path: str | Path) -> PiecewiseCertificate:
    return certificate_from_dict(_load_json(_read(path), str(path)), str(path))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


def _basis(space) -> list[list[str]]:
    return [[_scalar_str(v) for v in vec] for vec in space.basis]


@dataclass
class GeneratorRecord:
    matrix: list[list[str]]
    method: str
    nilpotent: bool
    outcome: str | None = None
    certificate: dict | None = None


@dataclass
class ReportFile:
    """Plain-data rendering of a derivation report; equality is field-wise."""

    name: str
    dim: int
    c: int | None
    d: int | None
    dims: dict[str, int]
    status: str
    caid_exact: bool
    seed: int
    bases: dict[str, list[list[str]]]
    generators: list[GeneratorRecord] = dc_field(default_factory=list)
    bounds: dict[str, list[int]] = dc_field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    @classmethod
    def from_report(cls, rep: DerivationReport) -> "ReportFile":
        gens = []
        for g in rep.generators:
            outcome = None
            if g.outcome is not None:
                outcome = g.outcome.kind
                reason = getattr(g.outcome, "reason", None)
                if reason:
                    outcome += f": {reason}"
            gens.append(
                GeneratorRecord(
                    matrix=matrix_to_list(g.matrix),
                    method=g.method,
                    nilpotent=g.nilpotent,
                    outcome=outcome,
                    certificate=certificate_to_dict(g.certificate) if g.certificate else None,
                )
            )
        return cls(
            name=rep.name,
            dim=rep.dim,
            c=rep.nilpotency_class,
            d=rep.derived_length,
            dims=rep.dims,
            status=rep.status,
            caid_exact=rep.caid.exact,
            seed=rep.seed,
            bases={
                "der": _basis(rep.der),
                "inn": _basis(rep.inn),
                "caid": _basis(rep.caid.space),
                "aid": _basis(rep.aid.space),
                "aid_upper": _basis(rep.aid.upper),
                "caid_upper": _basis(rep.caid.upper),
            },
            generators=gens,
            bounds={
                "aid": [rep.aid.lower.dim, rep.aid.upper.dim],
                "caid": [rep.caid.lower.dim, rep.caid.upper.dim],
            },
        )

    def to_dict(self) -> dict:
        return asdict(self)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> "ReportFile":
        doc = dict(doc)
        doc["generators"] = [GeneratorRecord(**g) for g in doc.get("generators", [])]
        return cls(**doc)

    @classmethod
    def from_json(cls, text: str, source: str = "<report>") -> "ReportFile":
        doc = _load_json(text, source)
        if not isinstance(doc, dict):
            raise FormatError(f"{source}: top level must be an object")
        try:
            return cls.from_dict(doc)
        except TypeError as exc:
            raise FormatError(f"{source}: {exc}") from None


__all__ = [
    "FormatError",
    "algebra_to_dict",
    "algebra_from_dict",
    "dump_algebra",
    "loads_algebra",
    "load_algebra",
    "save_algebra",
    "matrix_to_list",
    "matrix_from_list",
    "load_matrix",
    "dump_matrix",
    "certificate_to_dict",
    "certificate_from_dict",
    "load_certificate",
    "ReportFile",
    "GeneratorRecord",
]
