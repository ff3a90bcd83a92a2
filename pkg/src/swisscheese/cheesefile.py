"""CheeseFileV1: canonical JSON encoding of a cheese description.

Top-level keys, in emitted order::

    format_version   1
    provenance       flat object, keys sorted, scalar values
    outer            {center_x, center_y, radius}
    stages           [{m, delta, epsilon, N, trunc_discs, trunc_subdiscs}]
    deletions        [{stage, parent_index, center_x, center_y, radius}]
    bound_table      {block_boundaries: [int], entries: [{k, A}]}

Every rational is an object {"num": "<int>", "den": "<int>"} in lowest terms
with a positive denominator.  Output is UTF-8, two-space indented, with a
trailing newline; ``emit(parse(b)) == b`` for every canonical ``b``.
Certificates and reports use the same rational encoding.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .geometry import QDisc, QPoint
from .schedule import BoundTable, CheeseDescription, Deletion, StageParams, verify_schedule

FORMAT_VERSION = 1
_INT = re.compile(r"-?(0|[1-9][0-9]*)\Z")


class MalformedDocument(ValueError):
    pass


class InvariantViolation(ValueError):
    pass


class UnsupportedVersion(ValueError):
    pass


def encode_rational(q: Fraction) -> dict:
    return {"num": str(q.numerator), "den": str(q.denominator)}


def decode_rational(obj) -> Fraction:
    if not isinstance(obj, dict) or set(obj) != {"num", "den"}:
        raise MalformedDocument(f"expected a rational object, got {obj!r}")
    num, den = obj["num"], obj["den"]
    if not (isinstance(num, str) and isinstance(den, str) and _INT.match(num) and _INT.match(den)):
        raise MalformedDocument(f"rational fields must be decimal integer strings: {obj!r}")
    n, d = int(num), int(den)
    if d <= 0:
        raise InvariantViolation(f"denominator must be positive: {obj!r}")
    if gcd(n, d) != 1:
        raise InvariantViolation(f"rational not in lowest terms: {obj!r}")
    return Fraction(n, d)


def _disc_fields(d: QDisc) -> dict:
    return {
        "center_x": encode_rational(d.center.x),
        "center_y": encode_rational(d.center.y),
        "radius": encode_rational(d.radius),
    }


def to_document(c: CheeseDescription) -> dict:
    return {
        "format_version": FORMAT_VERSION,
        "provenance": {k: c.provenance[k] for k in sorted(c.provenance)},
        "outer": _disc_fields(c.outer),
        "stages": [
            {
                "m": s.m,
                "delta": encode_rational(s.delta),
                "epsilon": encode_rational(s.epsilon),
                "N": s.N,
                "trunc_discs": s.trunc_discs,
                "trunc_subdiscs": s.trunc_subdiscs,
            }
            for s in c.stage_records
        ],
        "deletions": [
            {"stage": d.stage, "parent_index": d.parent_index, **_disc_fields(d.disc)} for d in c.deletions
        ],
        "bound_table": {
            "block_boundaries": list(c.bound_table.block_boundaries),
            "entries": [{"k": k, "A": encode_rational(v)} for k, v in sorted(c.bound_table.entries.items())],
        },
    }


def dumps_canonical(doc) -> bytes:
    return (json.dumps(doc, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def emit(c: CheeseDescription) -> bytes:
    return dumps_canonical(to_document(c))


def _field(obj, key, kind):
    if not isinstance(obj, dict) or key not in obj:
        raise MalformedDocument(f"missing field {key!r}")
    v = obj[key]
    if kind is int:
        if type(v) is not int:
            raise MalformedDocument(f"field {key!r} must be an integer")
    elif not isinstance(v, kind):
        raise MalformedDocument(f"field {key!r} has the wrong type")
    return v


def _keys(obj, expected: list[str], where: str) -> None:
    if not isinstance(obj, dict) or list(obj) != expected:
        got = list(obj) if isinstance(obj, dict) else type(obj).__name__
        raise MalformedDocument(f"{where}: expected keys {expected}, got {got}")


def _disc(obj, kind: str) -> QDisc:
    center = QPoint(decode_rational(obj["center_x"]), decode_rational(obj["center_y"]))
    r = decode_rational(obj["radius"])
    if r <= 0:
        raise InvariantViolation(f"nonpositive radius {r}")
    return QDisc(center, r, kind)


def from_document(doc) -> CheeseDescription:
    if not isinstance(doc, dict):
        raise MalformedDocument("top level must be an object")
    version = _field(doc, "format_version", int)
    if version != FORMAT_VERSION:
        raise UnsupportedVersion(f"format_version {version} (supported: {FORMAT_VERSION})")
    _keys(doc, ["format_version", "provenance", "outer", "stages", "deletions", "bound_table"], "document")
    prov = _field(doc, "provenance", dict)
    for k, v in prov.items():
        if not (v is None or isinstance(v, (str, int, bool))):
            raise MalformedDocument(f"provenance value for {k!r} must be a scalar")
    _keys(doc["outer"], ["center_x", "center_y", "radius"], "outer")
    outer = _disc(doc["outer"], "closed")
    stages = []
    for s in _field(doc, "stages", list):
        _keys(s, ["m", "delta", "epsilon", "N", "trunc_discs", "trunc_subdiscs"], "stage")
        stages.append(StageParams(
            _field(s, "m", int), decode_rational(s["delta"]), decode_rational(s["epsilon"]),
            _field(s, "N", int), _field(s, "trunc_discs", int), _field(s, "trunc_subdiscs", int),
        ))
    deletions = []
    for d in _field(doc, "deletions", list):
        _keys(d, ["stage", "parent_index", "center_x", "center_y", "radius"], "deletion")
        deletions.append(Deletion(_field(d, "stage", int), _field(d, "parent_index", int), _disc(d, "open")))
    bt = _field(doc, "bound_table", dict)
    _keys(bt, ["block_boundaries", "entries"], "bound_table")
    bounds = _field(bt, "block_boundaries", list)
    if any(type(b) is not int for b in bounds):
        raise MalformedDocument("block boundaries must be integers")
    entries = {}
    for e in _field(bt, "entries", list):
        _keys(e, ["k", "A"], "bound table entry")
        k = _field(e, "k", int)
        if k in entries:
            raise InvariantViolation(f"duplicate bound table index {k}")
        a = decode_rational(e["A"])
        if a <= 0:
            raise InvariantViolation(f"A_{k} must be positive")
        entries[k] = a
    return CheeseDescription(outer, deletions, stages, BoundTable(entries, list(bounds)), dict(prov))


def parse(data: bytes | str, check: bool = True) -> CheeseDescription:
    """Decode CheeseFileV1 and, with ``check``, re-verify every construction invariant."""
    try:
        text = data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data
        doc = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedDocument(str(exc)) from exc
    c = from_document(doc)
    if check:
        report = verify_schedule(c)
        if not report.ok:
            names = ", ".join(f.name for f in report.failures())
            raise InvariantViolation(f"failed checks: {names}")
    return c


def certificate_document(cert, provenance: dict | None = None) -> dict:
    return {
        "format": "continuity-certificate",
        "format_version": FORMAT_VERSION,
        "provenance": {k: (provenance or {})[k] for k in sorted(provenance or {})},
        "z": {"x": encode_rational(cert.z.x), "y": encode_rational(cert.z.y)},
        "w": {"x": encode_rational(cert.w.x), "y": encode_rational(cert.w.y)},
        "stage": cert.stage,
        "enumeration_index": cert.enumeration_index,
        "disc": _disc_fields(cert.disc),
    }


def certificate_from_document(doc):
    from .certificates import ContinuityCertificate

    if not isinstance(doc, dict) or doc.get("format") != "continuity-certificate":
        raise MalformedDocument("not a continuity certificate")
    if doc.get("format_version") != FORMAT_VERSION:
        raise UnsupportedVersion(f"certificate version {doc.get('format_version')}")
    try:
        z = QPoint(decode_rational(doc["z"]["x"]), decode_rational(doc["z"]["y"]))
        w = QPoint(decode_rational(doc["w"]["x"]), decode_rational(doc["w"]["y"]))
        disc = _disc(doc["disc"], "open")
        return ContinuityCertificate(z, w, _field(doc, "stage", int), disc, _field(doc, "enumeration_index", int))
    except (KeyError, TypeError) as exc:
        raise MalformedDocument(f"incomplete certificate: {exc}") from exc
