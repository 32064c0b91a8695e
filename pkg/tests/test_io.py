import json

import pytest
from gmpy2 import mpq

from dmodclass.borel import borel_algebra
from dmodclass.errors import InputError
from dmodclass.io import (
    SCHEMA,
    borel_rep_from_json,
    borel_rep_to_json,
    canonical_class_to_json,
    dumps_canonical,
    encode_matrix,
    lie_algebra_from_json,
    lie_algebra_to_json,
    load_document,
    parse_matrix,
    representation_from_json,
    representation_to_json,
    torus_rep_from_json,
    torus_rep_to_json,
)
from dmodclass.lie import heisenberg
from dmodclass.matrix import Matrix
from dmodclass.scalars import gr
from dmodclass.torus import TorusRep
from dmodclass.unipotent import CanonicalClass

from conftest import borel_defining, h3_rep, rng_for


def test_dumps_canonical_is_byte_stable():
    obj = {"b": [1, 2], "a": {"y": "1/2", "x": "0"}}
    s1 = dumps_canonical(obj)
    s2 = dumps_canonical(json.loads(s1))
    assert s1 == s2
    assert s1 == '{"a":{"x":"0","y":"1/2"},"b":[1,2]}'
    with pytest.raises(ValueError):
        dumps_canonical({"v": float("nan")})


def test_matrix_round_trip_exact():
    m = Matrix.from_rows(
        [[gr(1), gr(mpq(-3, 2))], [gr(0, mpq(1, 4)), gr(mpq(2, 7), mpq(-1, 3))]]
    )
    enc = encode_matrix(m)
    assert parse_matrix(enc) == m
    assert parse_matrix(enc).mode == "exact"


def test_matrix_round_trip_approx():
    m = Matrix.from_numpy(__import__("numpy").array([[0.5 + 0.25j, -1.0], [0.0, 3.5]]))
    back = parse_matrix(encode_matrix(m))
    assert back.mode == "approx"
    assert (back - m).is_zero(1e-15)


def test_matrix_parse_rejects_bad_shape():
    with pytest.raises(InputError):
        parse_matrix([["0", "1"], ["2"]])
    with pytest.raises(InputError):
        parse_matrix([])


def test_lie_algebra_round_trip():
    h3 = heisenberg()
    doc = lie_algebra_to_json(h3)
    assert doc["schema"] == SCHEMA
    back = lie_algebra_from_json(doc)
    assert back == h3


def test_lie_algebra_rejects_wrong_schema():
    doc = lie_algebra_to_json(heisenberg())
    doc["schema"] = "dmod/v0"
    with pytest.raises(InputError):
        lie_algebra_from_json(doc)


def test_lie_algebra_missing_schema_tolerated():
    doc = lie_algebra_to_json(heisenberg())
    del doc["schema"]
    assert lie_algebra_from_json(doc) == heisenberg()


def test_lie_algebra_rejects_approx_structure_constants():
    doc = lie_algebra_to_json(heisenberg())
    doc["brackets"][0]["c"]["2"] = [1.0, 0.0]
    with pytest.raises(InputError):
        lie_algebra_from_json(doc)


def test_representation_round_trip():
    rho = h3_rep(rng_for("io"))
    doc = representation_to_json(rho)
    back = representation_from_json(doc)
    assert back.algebra == rho.algebra
    assert back.rank == rho.rank
    assert back.images == rho.images


def test_representation_algebra_file_ref(tmp_path):
    rho = h3_rep(rng_for("io-ref"))
    alg_doc = lie_algebra_to_json(rho.algebra)
    (tmp_path / "alg.json").write_text(dumps_canonical(alg_doc))
    doc = representation_to_json(rho)
    doc["algebra"] = "alg.json"
    back = representation_from_json(doc, base_dir=tmp_path)
    assert back.images == rho.images


def test_representation_rank_mismatch_rejected():
    rho = h3_rep(rng_for("io-bad"))
    doc = representation_to_json(rho)
    doc["rank"] = 2
    with pytest.raises(InputError):
        representation_from_json(doc)


def test_torus_rep_round_trip():
    a = Matrix.from_rows([[gr(mpq(1, 2)), gr(1)], [gr(0), gr(mpq(1, 2))]])
    b = Matrix.identity(2, "exact").scale(gr(mpq(-3, 4)))
    rho = TorusRep(2, (a, b))
    back = torus_rep_from_json(torus_rep_to_json(rho))
    assert back.l == 2
    assert back.matrices == rho.matrices


def test_borel_rep_round_trip_omits_zero_images():
    rho = borel_defining(2)
    b2 = borel_algebra(2)
    doc = borel_rep_to_json(rho, b2)
    assert set(doc["images"]) == {"E_1_1", "E_1_2", "E_2_2"}
    back, borel = borel_rep_from_json(doc)
    assert borel.l == 2
    assert back.images == rho.images


def test_borel_rep_rejects_unknown_keys():
    doc = borel_rep_to_json(borel_defining(2), borel_algebra(2))
    doc["images"]["E_2_1"] = doc["images"]["E_1_2"]
    with pytest.raises(InputError):
        borel_rep_from_json(doc)


def test_canonical_class_serialization_is_stable():
    cls = CanonicalClass(2, 2, ((gr(0), gr(1)), (gr(mpq(1, 2)), gr(0, 1))))
    doc = canonical_class_to_json(cls)
    s = dumps_canonical(doc)
    assert dumps_canonical(canonical_class_to_json(cls)) == s
    assert doc["l"] == 2 and doc["n"] == 2


def test_load_document(tmp_path):
    p = tmp_path / "doc.json"
    p.write_text(dumps_canonical({"schema": SCHEMA, "dim": 1, "basis": ["e"]}))
    assert load_document(p)["dim"] == 1
    with pytest.raises(InputError):
        load_document(tmp_path / "missing.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(InputError):
        load_document(bad)
