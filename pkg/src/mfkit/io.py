"""JSON envelopes for factorisations, morphisms, and module presentations.

Loading is deliberately permissive about mathematical validity: a
structurally well-formed envelope always loads, and verify_mf reports any
per-cell violations afterwards, so tampered files are diagnosed rather than
rejected at parse time.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .fields import QQ, Field
from .mf import MatrixFactorization, verify_mf
from .homs import MFMorphism
from .mf import shift_mf
from .poly import GradedMatrix, PolyRing, format_poly
from .resolutions import Presentation

_FIELD_RATIONAL = {"q", "qq", "rational", "rationals", "0"}


def parse_field_token(token) -> Field:
    """Lenient field spec: Q/QQ/rationals, or a prime via GF(p), Fp:p, F_p, p."""
    if isinstance(token, Field):
        return token
    if isinstance(token, int):
        return QQ if token == 0 else Field(token)
    text = str(token).strip().lower()
    if text in _FIELD_RATIONAL:
        return QQ
    m = re.fullmatch(r"(?:gf|fp|f)?[_:(\s]*([0-9]+)\s*\)?", text)
    if not m:
        raise ParseError(f"unrecognised field spec {token!r}")
    p = int(m.group(1))
    if p == 0:
        return QQ
    try:
        return Field(p)
    except Exception as exc:
        raise ParseError(f"unrecognised field spec {token!r}: {exc}") from exc


def field_name(field: Field) -> str:
    return "QQ" if field.char == 0 else f"GF({field.char})"


def ring_to_dict(ring: PolyRing) -> dict:
    return {"vars": list(ring.vars), "field": field_name(ring.field), "char": ring.field.char}


def ring_from_dict(data) -> PolyRing:
    if not isinstance(data, dict):
        raise ParseError("ring must be an object with vars/field/char")
    field = parse_field_token(data.get("field", data.get("char", "QQ")))
    if "char" in data and int(data["char"]) != field.char:
        raise ParseError("ring char does not match the field spec")
    names = tuple(data.get("vars", ("X", "Y", "Z")))
    return PolyRing(field, names)


def _matrix_rows(mat: GradedMatrix) -> list[list[str]]:
    return [[format_poly(e) for e in row] for row in mat.entries]


def _matrix_from_rows(ring: PolyRing, target, source, rows) -> GradedMatrix:
    if not isinstance(rows, list) or any(not isinstance(r, list) for r in rows):
        raise ParseError("matrix must be a list of rows of polynomial strings")
    if len(rows) != len(target) or any(len(r) != len(source) for r in rows):
        raise ParseError(
            f"matrix shape {len(rows)}x{len(rows[0]) if rows else 0} does not match twists "
            f"{len(target)}x{len(source)}"
        )
    return GradedMatrix.from_strings(ring, list(target), list(source), rows)


def _int_list(value, what: str) -> list[int]:
    if not isinstance(value, list) or any(not isinstance(v, int) for v in value):
        raise ParseError(f"{what} must be a list of integers")
    return list(value)


def mf_to_dict(M: MatrixFactorization) -> dict:
    return {
        "ring": ring_to_dict(M.ring),
        "f": format_poly(M.f),
        "d": 3,
        "p0_twists": list(M.p0),
        "p1_twists": list(M.p1),
        "alpha": _matrix_rows(M.alpha),
        "beta": _matrix_rows(M.beta),
    }


def mf_from_dict(data) -> MatrixFactorization:
    if not isinstance(data, dict):
        raise ParseError("factorisation envelope must be a JSON object")
    for key in ("ring", "f", "p0_twists", "p1_twists", "alpha", "beta"):
        if key not in data:
            raise ParseError(f"factorisation envelope is missing {key!r}")
    if data.get("d", 3) != 3:
        raise ParseError("only potentials of degree d = 3 are supported")
    ring = ring_from_dict(data["ring"])
    try:
        f = ring.parse(data["f"])
    except Exception as exc:
        raise ParseError(f"cannot parse potential: {exc}") from exc
    p0 = _int_list(data["p0_twists"], "p0_twists")
    p1 = _int_list(data["p1_twists"], "p1_twists")
    try:
        alpha = _matrix_from_rows(ring, p1, p0, data["alpha"])
        beta = _matrix_from_rows(ring, [a - 3 for a in p0], p1, data["beta"])
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"cannot parse matrix entries: {exc}") from exc
    return MatrixFactorization(ring, f, alpha, beta)


def morphism_to_dict(phi: MFMorphism, shift: int = 0) -> dict:
    return {
        "source": mf_to_dict(phi.source),
        "target": mf_to_dict(phi.target),
        "shift": shift,
        "f0": _matrix_rows(phi.f0),
        "f1": _matrix_rows(phi.f1),
    }


def morphism_from_dict(data) -> MFMorphism:
    if not isinstance(data, dict):
        raise ParseError("morphism envelope must be a JSON object")
    for key in ("source", "target", "f0", "f1"):
        if key not in data:
            raise ParseError(f"morphism envelope is missing {key!r}")
    source = mf_from_dict(data["source"])
    target = mf_from_dict(data["target"])
    k = data.get("shift", 0)
    if not isinstance(k, int):
        raise ParseError("shift must be an integer")
    if k:
        source = shift_mf(source, k)
    ring = source.ring
    if ring != target.ring:
        raise ParseError("morphism source and target use different rings")
    try:
        f0 = _matrix_from_rows(ring, target.p0, source.p0, data["f0"])
        f1 = _matrix_from_rows(ring, target.p1, source.p1, data["f1"])
    except ParseError:
        raise
    except Exception as exc:
        raise ParseError(f"cannot parse morphism matrices: {exc}") from exc
    return MFMorphism(source, target, f0, f1)


def presentation_to_dict(P: Presentation) -> dict:
    return {
        "ring": ring_to_dict(P.ring),
        "f": format_poly(P.f),
        "ambient_twists": list(P.ambient),
        "relation_twists": list(P.relations.source_twists),
        "relations": _matrix_rows(P.relations),
    }


def presentation_from_dict(data) -> Presentation:
    if not isinstance(data, dict):
        raise ParseError("presentation envelope must be a JSON object")
    for key in ("ring", "f", "ambient_twists", "relations"):
        if key not in data:
            raise ParseError(f"presentation envelope is missing {key!r}")
    ring = ring_from_dict(data["ring"])
    try:
        f = ring.parse(data["f"])
    except Exception as exc:
        raise ParseError(f"cannot parse potential: {exc}") from exc
    ambient = _int_list(data["ambient_twists"], "ambient_twists")
    rows = data["relations"]
    if not isinstance(rows, list):
        raise ParseError("relations must be a list of rows")
    if "relation_twists" in data:
        src = _int_list(data["relation_twists"], "relation_twists")
        rel = _matrix_from_rows(ring, ambient, src, rows)
    else:
        if len(rows) != len(ambient):
            raise ParseError("relations row count does not match ambient twists")
        parsed = [[ring.parse(s) for s in row] for row in rows]
        ncols = len(rows[0]) if rows else 0
        src = []
        for j in range(ncols):
            twist = 0
            for i in range(len(ambient)):
                e = parsed[i][j]
                if not e.is_zero():
                    twist = e.homogeneous_degree() + ambient[i]
                    break
            src.append(twist)
        rel = GradedMatrix(ring, list(ambient), src, parsed)
    try:
        return Presentation(ring, f, ambient, rel)
    except Exception as exc:
        raise ParseError(f"invalid presentation: {exc}") from exc


def catalog_entry_dict(kind: str, curve, point, M: MatrixFactorization) -> dict:
    meta = {
        "kind": kind,
        "curve": {"a": str(curve.a), "b": str(curve.b)},
        "point": None if point is None else [str(point.lam), str(point.mu)],
        "verified": not verify_mf(M),
    }
    out = mf_to_dict(M)
    out.update(meta)
    return out
