"""JSON envelope stability: print, parse, print again, byte for byte."""

import json

import pytest

from fhodge.errors import MalformedInput
from fhodge.generator import FHS_PROFILES, MOTIVE_PROFILES, gen, gen_fhs_morphism
from fhodge.realize import arrow_morphism
from fhodge.serialize import (
    SequenceDoc,
    dumps_document,
    load_document,
    loads_document,
    to_document,
)

ALL_KINDS = (
    FHS_PROFILES
    + tuple("motive-" + p for p in MOTIVE_PROFILES)
    + ("mhs-free", "mhs-torsion", "morphism")
)


def roundtrip(obj):
    text = dumps_document(obj)
    _, back = loads_document(text)
    assert dumps_document(back) == text
    return back


def test_roundtrip_every_kind():
    for kind in ALL_KINDS:
        for seed in range(8):
            roundtrip(gen(kind, seed))


def test_roundtrip_all_morphism_categories():
    from fhodge.mhs import MHSMorphism

    for seed in range(6):
        phi = gen_fhs_morphism(seed)
        roundtrip(phi)
        if phi.source.is_free() and phi.target.is_free():
            roundtrip(arrow_morphism(phi))
        h = gen("mhs-torsion", seed)
        roundtrip(MHSMorphism.identity(h))


def test_roundtrip_sequence():
    from fhodge.fhs import seq_around_v0

    left, right = seq_around_v0(gen("general", 2))
    doc = SequenceDoc("fhs1", (left, right), True)
    back = roundtrip(doc)
    assert back.category == "fhs1"
    assert back.short is True
    assert len(back.morphisms) == 2


def test_envelope_fields_checked():
    doc = to_document(gen("etale", 0))
    for corrupt in (
        {**doc, "format_version": 99},
        {**doc, "field": "Q(sqrt2)"},
        {**doc, "kind": "fhs9"},
        {k: v for k, v in doc.items() if k != "payload"},
        {**doc, "extra": 1},
    ):
        with pytest.raises(MalformedInput):
            load_document(corrupt)


def test_payload_fields_checked():
    doc = to_document(gen("general", 1))
    payload = doc["payload"]
    some_key = sorted(payload)[0]
    with pytest.raises(MalformedInput):
        load_document(
            {**doc, "payload": {k: v for k, v in payload.items() if k != some_key}}
        )
    with pytest.raises(MalformedInput):
        load_document({**doc, "payload": {**payload, "stray": []}})


def test_bad_json_text():
    with pytest.raises(MalformedInput):
        loads_document("{not json")
    with pytest.raises(MalformedInput):
        loads_document("[1, 2]")


def test_bad_scalar_and_shape():
    doc = to_document(gen("motive-connected", 4))

    def mutate(fn):
        copy = json.loads(json.dumps(doc))
        fn(copy["payload"])
        with pytest.raises(MalformedInput):
            load_document(copy)

    mutate(lambda p: p.__setitem__("lie_g_dim", "2"))
    mutate(lambda p: p.__setitem__("lie_g_dim", True))
    mutate(lambda p: p.__setitem__("lie_g_dim", -1))


def test_dumps_is_canonical_json():
    text = dumps_document(gen("special", 3))
    doc = json.loads(text)
    assert text == json.dumps(doc, sort_keys=True, indent=2) + "\n"
