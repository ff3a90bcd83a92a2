import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from swisscheese.certificates import find_certificate
from swisscheese.cheesefile import (
    InvariantViolation,
    MalformedDocument,
    UnsupportedVersion,
    certificate_document,
    certificate_from_document,
    decode_rational,
    dumps_canonical,
    emit,
    encode_rational,
    parse,
)
from swisscheese.geometry import QPoint
from swisscheese.schedule import build_cheese

F = Fraction


def _mutate(data: bytes, fn) -> bytes:
    doc = json.loads(data)
    fn(doc)
    return dumps_canonical(doc)


def test_round_trip(cheese2):
    data = emit(cheese2)
    back = parse(data)
    assert back == cheese2
    assert emit(back) == data


def test_empty_cheese_document(empty_cheese):
    data = emit(empty_cheese)
    doc = json.loads(data)
    assert doc["deletions"] == [] and doc["stages"] == []
    assert parse(data) == empty_cheese


def test_key_order(cheese1):
    doc = json.loads(emit(cheese1))
    assert list(doc) == ["format_version", "provenance", "outer", "stages", "deletions", "bound_table"]
    assert list(doc["deletions"][0]) == ["stage", "parent_index", "center_x", "center_y", "radius"]
    assert doc["bound_table"]["entries"][0] == {"k": 1, "A": {"num": "45", "den": "2"}}


def test_deterministic_builds():
    assert emit(build_cheese(1)) == emit(build_cheese(1))


def test_canonical_bytes(cheese1):
    data = emit(cheese1)
    assert data.endswith(b"\n")
    assert data.decode("utf-8")


@given(st.fractions(max_denominator=10**30))
def test_rational_codec(q):
    enc = encode_rational(q)
    assert decode_rational(enc) == q
    assert all(isinstance(v, str) for v in enc.values())


def test_truncated_stream(cheese1):
    with pytest.raises(MalformedDocument):
        parse(emit(cheese1)[:-40])
    with pytest.raises(MalformedDocument):
        parse(b"\xff\xfe")


@pytest.mark.parametrize("num, den, error", [
    ("1", "0", InvariantViolation),
    ("2", "4", InvariantViolation),
    ("1", "-3", InvariantViolation),
    ("1.5", "2", MalformedDocument),
    (1, "2", MalformedDocument),
    ("01", "2", MalformedDocument),
])
def test_bad_rationals(cheese1, num, den, error):
    def fn(doc):
        doc["deletions"][0]["radius"] = {"num": num, "den": den}
    with pytest.raises(error):
        parse(_mutate(emit(cheese1), fn))


def test_unsupported_version(cheese1):
    def fn(doc):
        doc["format_version"] = 2
    with pytest.raises(UnsupportedVersion):
        parse(_mutate(emit(cheese1), fn))


def test_missing_or_extra_keys(cheese1):
    def drop(doc):
        del doc["bound_table"]
    with pytest.raises(MalformedDocument):
        parse(_mutate(emit(cheese1), drop))

    def extra(doc):
        doc["stages"][0]["colour"] = "red"
    with pytest.raises(MalformedDocument):
        parse(_mutate(emit(cheese1), extra))

    def boolean(doc):
        doc["stages"][0]["m"] = True
    with pytest.raises(MalformedDocument):
        parse(_mutate(emit(cheese1), boolean))


def test_budget_violation_names_check(cheese1):
    def fn(doc):
        doc["deletions"][0]["radius"] = {"num": "1", "den": "3"}
    with pytest.raises(InvariantViolation, match="stage 1 budget"):
        parse(_mutate(emit(cheese1), fn))
    # without re-validation the document still loads
    assert parse(_mutate(emit(cheese1), fn), check=False).deletions[0].disc.radius == F(1, 3)


def test_certificate_round_trip(cheese2):
    cert = find_certificate(cheese2, QPoint(0, F(1, 2)), QPoint(0, F(-1, 2)))
    doc = json.loads(dumps_canonical(certificate_document(cert, {"seed": 0})))
    assert certificate_from_document(doc) == cert
    with pytest.raises(MalformedDocument):
        certificate_from_document({"format": "other"})
    doc["format_version"] = 9
    with pytest.raises(UnsupportedVersion):
        certificate_from_document(doc)
