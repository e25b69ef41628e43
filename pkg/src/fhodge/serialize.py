"""Canonical JSON documents for every object the tools exchange.

Envelope: {"format_version": 1, "kind": ..., "field": "Q(i)", "payload": ...}
with kind one of mhs1, fhs1, motive, morphism, sequence.  Scalars travel
as exact strings, integer matrices as plain integer rows, subspaces as
basis row lists.  Column counts that an empty matrix cannot carry are
recovered from the surrounding dimension fields.  Unknown or missing keys
are rejected everywhere.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import MalformedInput
from .fhs import FHS1Morphism, FHS1Object
from .lattices import FgAbGroup, IntMatrix, LatticeMap
from .linalg import Matrix, Subspace
from .mhs import MHS1, MHSMorphism
from .motives import Motive, MotiveMorphism
from .scalars import format_scalar, parse_scalar

FORMAT_VERSION = 1
FIELD_TAG = "Q(i)"

KINDS = ("mhs1", "fhs1", "motive", "morphism", "sequence")


@dataclass(frozen=True)
class SequenceDoc:
    """A composable chain of morphisms plus the short-exactness flag."""

    category: str
    morphisms: tuple
    short: bool


def _take(d: dict, required: tuple, optional: tuple = ()) -> None:
    if not isinstance(d, dict):
        raise MalformedInput("expected a JSON object")
    for k in required:
        if k not in d:
            raise MalformedInput(f"missing field {k!r}")
    for k in d:
        if k not in required and k not in optional:
            raise MalformedInput(f"unknown field {k!r}")


def _int(v, what: str) -> int:
    if not isinstance(v, int) or isinstance(v, bool):
        raise MalformedInput(f"{what} must be an integer")
    return v


def _scalar_rows(m: Matrix) -> list:
    return [[format_scalar(x) for x in row] for row in m.rows]


def _parse_matrix(rows, nrows: int | None, ncols: int | None, what: str) -> Matrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput(f"{what} must be a list of rows")
    if nrows is not None and len(rows) != nrows:
        raise MalformedInput(f"{what} must have {nrows} rows")
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    parsed = []
    for r in rows:
        if len(r) != ncols:
            raise MalformedInput(f"{what} has ragged rows")
        try:
            parsed.append(tuple(parse_scalar(x) for x in r))
        except (ValueError, TypeError) as exc:
            raise MalformedInput(f"{what}: {exc}") from exc
    return Matrix(tuple(parsed), ncols)


def _int_rows(m: IntMatrix) -> list:
    return [list(r) for r in m.rows]


def _parse_int_matrix(rows, nrows: int | None, ncols: int | None, what: str) -> IntMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise MalformedInput(f"{what} must be a list of rows")
    if nrows is not None and len(rows) != nrows:
        raise MalformedInput(f"{what} must have {nrows} rows")
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    out = []
    for r in rows:
        if len(r) != ncols:
            raise MalformedInput(f"{what} has ragged rows")
        out.append(tuple(_int(x, what) for x in r))
    return IntMatrix(tuple(out), ncols)


def _basis_rows(s: Subspace) -> list:
    return [[format_scalar(x) for x in v] for v in s.basis]


def _parse_subspace(rows, ambient: int, what: str) -> Subspace:
    if not isinstance(rows, list):
        raise MalformedInput(f"{what} must be a list of vectors")
    vecs = []
    for r in rows:
        if not isinstance(r, list) or len(r) != ambient:
            raise MalformedInput(f"{what} vectors must have length {ambient}")
        try:
            vecs.append(tuple(parse_scalar(x) for x in r))
        except (ValueError, TypeError) as exc:
            raise MalformedInput(f"{what}: {exc}") from exc
    return Subspace.span(ambient, vecs)


# -- mhs1 ----------------------------------------------------------------------


def mhs_payload(h: MHS1) -> dict:
    return {
        "lattice_rank": h.lattice.rank,
        "torsion": list(h.lattice.torsion),
        "w_m2": _basis_rows(h.w_m2),
        "w_m1": _basis_rows(h.w_m1),
        "f0": _basis_rows(h.f0),
        "tate_tag": h.tate_tag,
    }


def parse_mhs(p: dict) -> MHS1:
    _take(p, ("lattice_rank", "torsion", "w_m2", "w_m1", "f0", "tate_tag"))
    rank = _int(p["lattice_rank"], "lattice_rank")
    if not isinstance(p["torsion"], list):
        raise MalformedInput("torsion must be a list")
    tors = tuple(_int(t, "torsion") for t in p["torsion"])
    return MHS1(
        FgAbGroup(rank, tors),
        _parse_subspace(p["w_m2"], rank, "w_m2"),
        _parse_subspace(p["w_m1"], rank, "w_m1"),
        _parse_subspace(p["f0"], rank, "f0"),
        _int(p["tate_tag"], "tate_tag"),
    )


# -- fhs1 ----------------------------------------------------------------------


def fhs_payload(x: FHS1Object) -> dict:
    return {
        "h0_dim": x.h0_dim,
        "het": mhs_payload(x.het),
        "v_dim": x.v_dim,
        "v0": _basis_rows(x.v0),
        "v1": _basis_rows(x.v1),
        "v0_map": _scalar_rows(x.v0_map),
        "vz_map": _scalar_rows(x.vz_map),
        "sigma": _scalar_rows(x.sigma),
    }


def parse_fhs(p: dict) -> FHS1Object:
    _take(p, ("h0_dim", "het", "v_dim", "v0", "v1", "v0_map", "vz_map", "sigma"))
    het = parse_mhs(p["het"])
    v = _int(p["v_dim"], "v_dim")
    s = _int(p["h0_dim"], "h0_dim")
    v0 = _parse_subspace(p["v0"], v, "v0")
    v1 = _parse_subspace(p["v1"], v, "v1")
    return FHS1Object(
        s,
        het,
        v,
        v0,
        v1,
        _parse_matrix(p["v0_map"], v, s, "v0_map"),
        _parse_matrix(p["vz_map"], v, het.lattice.ngens, "vz_map"),
        _parse_matrix(p["sigma"], v - v0.dim, het.rank - het.f0.dim, "sigma"),
    )


# -- motive --------------------------------------------------------------------


def motive_payload(m: Motive) -> dict:
    return {
        "lie_f0_dim": m.lie_f0_dim,
        "fet_rank": m.fet_rank,
        "lie_g_dim": m.lie_g_dim,
        "add": _basis_rows(m.add),
        "toradd": _basis_rows(m.toradd),
        "lambda": _scalar_rows(m.lam),
        "ell": _scalar_rows(m.ell),
        "u0": _scalar_rows(m.u0),
        "polarization": None if m.polarization is None else _int_rows(m.polarization),
    }


def parse_motive(p: dict) -> Motive:
    _take(
        p,
        (
            "lie_f0_dim",
            "fet_rank",
            "lie_g_dim",
            "add",
            "toradd",
            "lambda",
            "ell",
            "u0",
            "polarization",
        ),
    )
    s = _int(p["lie_f0_dim"], "lie_f0_dim")
    r = _int(p["fet_rank"], "fet_rank")
    n = _int(p["lie_g_dim"], "lie_g_dim")
    pol = p["polarization"]
    return Motive(
        s,
        r,
        n,
        _parse_subspace(p["add"], n, "add"),
        _parse_subspace(p["toradd"], n, "toradd"),
        _parse_matrix(p["lambda"], n, None, "lambda"),
        _parse_matrix(p["ell"], n, r, "ell"),
        _parse_matrix(p["u0"], n, s, "u0"),
        None if pol is None else _parse_int_matrix(pol, None, None, "polarization"),
    )


# -- morphisms -----------------------------------------------------------------


def morphism_payload(phi) -> dict:
    if isinstance(phi, FHS1Morphism):
        return {
            "category": "fhs1",
            "source": fhs_payload(phi.source),
            "target": fhs_payload(phi.target),
            "f0": _scalar_rows(phi.f0),
            "fz": _int_rows(phi.fz.matrix),
            "g": _scalar_rows(phi.g),
        }
    if isinstance(phi, MotiveMorphism):
        return {
            "category": "motive",
            "source": motive_payload(phi.source),
            "target": motive_payload(phi.target),
            "f0": _scalar_rows(phi.f0),
            "fet": _int_rows(phi.fet),
            "g": _scalar_rows(phi.g),
        }
    if isinstance(phi, MHSMorphism):
        return {
            "category": "mhs1",
            "source": mhs_payload(phi.source),
            "target": mhs_payload(phi.target),
            "f": _int_rows(phi.f.matrix),
        }
    raise MalformedInput("unsupported morphism type")


def parse_morphism(p: dict):
    if not isinstance(p, dict) or "category" not in p:
        raise MalformedInput("morphism payload needs a category")
    cat = p["category"]
    if cat == "fhs1":
        _take(p, ("category", "source", "target", "f0", "fz", "g"))
        src = parse_fhs(p["source"])
        tgt = parse_fhs(p["target"])
        fz = LatticeMap(
            src.lattice,
            tgt.lattice,
            _parse_int_matrix(p["fz"], tgt.lattice.ngens, src.lattice.ngens, "fz"),
        )
        return FHS1Morphism(
            src,
            tgt,
            _parse_matrix(p["f0"], tgt.h0_dim, src.h0_dim, "f0"),
            fz,
            _parse_matrix(p["g"], tgt.v_dim, src.v_dim, "g"),
        )
    if cat == "motive":
        _take(p, ("category", "source", "target", "f0", "fet", "g"))
        src = parse_motive(p["source"])
        tgt = parse_motive(p["target"])
        return MotiveMorphism(
            src,
            tgt,
            _parse_matrix(p["f0"], tgt.lie_f0_dim, src.lie_f0_dim, "f0"),
            _parse_int_matrix(p["fet"], tgt.fet_rank, src.fet_rank, "fet"),
            _parse_matrix(p["g"], tgt.lie_g_dim, src.lie_g_dim, "g"),
        )
    if cat == "mhs1":
        _take(p, ("category", "source", "target", "f"))
        src = parse_mhs(p["source"])
        tgt = parse_mhs(p["target"])
        f = LatticeMap(
            src.lattice,
            tgt.lattice,
            _parse_int_matrix(p["f"], tgt.lattice.ngens, src.lattice.ngens, "f"),
        )
        return MHSMorphism(src, tgt, f)
    raise MalformedInput(f"unknown morphism category {cat!r}")


def sequence_payload(seq: SequenceDoc) -> dict:
    return {
        "category": seq.category,
        "morphisms": [morphism_payload(p) for p in seq.morphisms],
        "short": seq.short,
    }


def parse_sequence(p: dict) -> SequenceDoc:
    _take(p, ("category", "morphisms", "short"))
    if p["category"] not in ("fhs1", "motive", "mhs1"):
        raise MalformedInput(f"unknown sequence category {p['category']!r}")
    if not isinstance(p["morphisms"], list) or not p["morphisms"]:
        raise MalformedInput("sequence needs a nonempty morphism list")
    if not isinstance(p["short"], bool):
        raise MalformedInput("short must be a boolean")
    ms = []
    for q in p["morphisms"]:
        phi = parse_morphism(q)
        if q.get("category") != p["category"]:
            raise MalformedInput("sequence mixes morphism categories")
        ms.append(phi)
    return SequenceDoc(p["category"], tuple(ms), p["short"])


# -- envelope ------------------------------------------------------------------

_PAYLOAD_BUILDERS = {
    MHS1: ("mhs1", mhs_payload),
    FHS1Object: ("fhs1", fhs_payload),
    Motive: ("motive", motive_payload),
    FHS1Morphism: ("morphism", morphism_payload),
    MotiveMorphism: ("morphism", morphism_payload),
    MHSMorphism: ("morphism", morphism_payload),
    SequenceDoc: ("sequence", sequence_payload),
}

_PARSERS = {
    "mhs1": parse_mhs,
    "fhs1": parse_fhs,
    "motive": parse_motive,
    "morphism": parse_morphism,
    "sequence": parse_sequence,
}


def to_document(obj) -> dict:
    for klass, (kind, build) in _PAYLOAD_BUILDERS.items():
        if isinstance(obj, klass):
            return {
                "format_version": FORMAT_VERSION,
                "kind": kind,
                "field": FIELD_TAG,
                "payload": build(obj),
            }
    raise MalformedInput(f"cannot serialize {type(obj).__name__}")


def load_document(doc: dict):
    """(kind, object) from an envelope dict; every field is validated."""
    _take(doc, ("format_version", "kind", "field", "payload"))
    if doc["format_version"] != FORMAT_VERSION:
        raise MalformedInput(f"unsupported format_version {doc['format_version']!r}")
    if doc["field"] != FIELD_TAG:
        raise MalformedInput(f"unsupported scalar field {doc['field']!r}")
    kind = doc["kind"]
    if kind not in _PARSERS:
        raise MalformedInput(f"unknown kind {kind!r}")
    return kind, _PARSERS[kind](doc["payload"])


def dumps_document(obj) -> str:
    return json.dumps(to_document(obj), sort_keys=True, indent=2) + "\n"


def loads_document(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    return load_document(doc)
