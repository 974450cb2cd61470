"""JSON instance, family and report documents.

Matrix entries are integers or exact rational strings such as ``"3/4"``.
Paths are lists of arrow ids in traversal order; evaluation multiplies the
arrow matrices in reverse list order.
"""
from __future__ import annotations

import hashlib
import json
from fractions import Fraction

import jsonschema

from .datum import BlockMatrixFamily, FamilyMember, QuiverDatum, SigmaSplit
from .errors import QuiverEdmondsError
from .quiver import Path, Quiver, Relation, Representation
from .rational import RationalMatrix

FAMILY_FORMAT = "quiver-edmonds/block-matrix-family/v1"

_ENTRY = {"oneOf": [{"type": "integer"},
                    {"type": "string", "pattern": r"^\s*-?\d+(\s*/\s*\d+)?\s*$"}]}
_ENTRY_INEXACT = {"anyOf": [_ENTRY, {"type": "number"}]}


def instance_schema(inexact: bool = False) -> dict:
    entry = _ENTRY_INEXACT if inexact else _ENTRY
    vid = {"type": ["string", "integer"]}
    return {
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "type": "object",
        "additionalProperties": False,
        "required": ["quiver", "dimension_vector", "weight", "representation"],
        "properties": {
            "quiver": {
                "type": "object",
                "additionalProperties": False,
                "required": ["vertices", "arrows"],
                "properties": {
                    "vertices": {"type": "array", "items": vid},
                    "arrows": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "additionalProperties": False,
                            "required": ["id", "tail", "head"],
                            "properties": {"id": vid, "tail": vid, "head": vid},
                        },
                    },
                },
            },
            "dimension_vector": {"type": "object",
                                 "additionalProperties": {"type": "integer", "minimum": 0}},
            "weight": {"type": "object", "additionalProperties": {"type": "integer"}},
            "representation": {
                "type": "object",
                "additionalProperties": {
                    "type": "array", "items": {"type": "array", "items": entry}},
            },
            "relations": {
                "type": "array",
                "items": {
                    "type": "array",
                    "items": {
                        "type": "object",
                        "additionalProperties": False,
                        "required": ["coeff", "path"],
                        "properties": {"coeff": entry, "path": {"type": "array", "items": vid}},
                    },
                },
            },
        },
    }


class InstanceError(QuiverEdmondsError):
    """Invalid instance document; the message names the offending line or field."""


def _entry(x, inexact):
    if isinstance(x, float):
        if not inexact:
            raise InstanceError("float entry requires --inexact")
        return Fraction(x)
    return Fraction(x) if isinstance(x, int) else Fraction(x.strip())


def _matrix(rows, r, c, inexact, where):
    rows = rows or []
    if len(rows) != r or any(len(row) != c for row in rows):
        raise InstanceError(f"{where}: expected a {r}x{c} matrix")
    return RationalMatrix(r, c, tuple(_entry(x, inexact) for row in rows for x in row))


def parse_instance(text: str, inexact: bool = False) -> QuiverDatum:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    return instance_from_dict(doc, inexact)


def instance_from_dict(doc: dict, inexact: bool = False) -> QuiverDatum:
    try:
        jsonschema.validate(doc, instance_schema(inexact))
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise InstanceError(f"field {where}: {exc.message}") from None
    try:
        qd = doc["quiver"]
        q = Quiver(tuple(qd["vertices"]),
                   tuple((a["id"], a["tail"], a["head"]) for a in qd["arrows"]))
        beta = {str(k): v for k, v in doc["dimension_vector"].items()}
        sigma = {str(k): v for k, v in doc["weight"].items()}
        reps = {str(k): v for k, v in doc["representation"].items()}
        maps = {}
        for a in q.arrows:
            if a.id not in reps:
                raise InstanceError(f"field representation/{a.id}: missing matrix")
            maps[a.id] = _matrix(reps[a.id], beta.get(a.head, 0), beta.get(a.tail, 0),
                                 inexact, f"field representation/{a.id}")
        extra = set(reps) - {a.id for a in q.arrows}
        if extra:
            raise InstanceError(f"field representation: unknown arrows {sorted(extra)}")
        W = Representation(q, beta, maps)
        rels = tuple(
            Relation(tuple((_entry(t["coeff"], inexact), q.path([str(x) for x in t["path"]]))
                           for t in rel))
            for rel in doc.get("relations", [])
        )
        return QuiverDatum(W, sigma, rels)
    except InstanceError:
        raise
    except QuiverEdmondsError as exc:
        raise InstanceError(str(exc)) from None


def _entry_str(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def matrix_to_json(m: RationalMatrix) -> list:
    return [[_entry_str(x) for x in row] for row in m.to_rows()]


def instance_to_dict(d: QuiverDatum) -> dict:
    q = d.quiver
    doc = {
        "quiver": {"vertices": list(q.vertices),
                   "arrows": [{"id": a.id, "tail": a.tail, "head": a.head} for a in q.arrows]},
        "dimension_vector": dict(d.beta),
        "weight": dict(d.weight),
        "representation": {a.id: matrix_to_json(d.rep[a.id]) for a in q.arrows},
    }
    if d.relations:
        doc["relations"] = [[{"coeff": _entry_str(c), "path": list(p.arrows)} for c, p in r.terms]
                            for r in d.relations]
    return doc


def family_to_dict(F: BlockMatrixFamily, dense: bool = False) -> dict:
    split = F.split
    doc = {
        "format": FAMILY_FORMAT,
        "N": F.N,
        "row_heights": list(F.row_heights),
        "col_widths": list(F.col_widths),
        "size": len(F),
        "matrices": [],
    }
    if split is not None:
        doc["split"] = {**split.summary(), "family_size": len(F),
                        "positives": list(split.positives), "sigma_plus": list(split.sigma_plus),
                        "negatives": list(split.negatives), "sigma_minus": list(split.sigma_minus)}
    for k, m in enumerate(F.members):
        i, j, p, qb, rb = m.index
        item = {"index": {"i": i, "j": j, "path": list(p.arrows), "source": p.source,
                          "target": p.target, "q": qb, "r": rb},
                "block": {"row_offset": m.row_offset, "col_offset": m.col_offset,
                          "rows": m.block.rows, "cols": m.block.cols,
                          "entries": matrix_to_json(m.block)}}
        if dense:
            item["dense"] = matrix_to_json(F.dense(k))
        doc["matrices"].append(item)
    return doc


def family_from_dict(doc: dict) -> BlockMatrixFamily:
    if doc.get("format") != FAMILY_FORMAT:
        raise InstanceError(f"not a family document (format {doc.get('format')!r})")
    members = []
    for item in doc["matrices"]:
        ix, blk = item["index"], item["block"]
        block = _matrix(blk["entries"], blk["rows"], blk["cols"], False, "block")
        path = Path(tuple(ix["path"]), ix["source"], ix["target"])
        members.append(FamilyMember((ix["i"], ix["j"], path, ix["q"], ix["r"]), block,
                                    blk["row_offset"], blk["col_offset"]))
    return BlockMatrixFamily(doc["N"], tuple(members), tuple(doc["row_heights"]),
                             tuple(doc["col_widths"]))


def sha256_text(text: str) -> str:
    return hashlib.sha256(text.encode("utf-8")).hexdigest()


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, default=_default)


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, SigmaSplit):
        return x.summary()
    raise TypeError(f"not serialisable: {type(x).__name__}")
