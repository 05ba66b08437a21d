import random

import pytest

from sidecond import documents as docs
from sidecond.errors import DocumentError
from sidecond.fixtures import M0_TRACE, data_text, golden_amalgam, p1, q1, u1, w_example
from sidecond.harness.catalog import gen_condition, gen_qcondition
from sidecond.single_forcing import PCondition
from sidecond.universe import SetE, generate_universe

U = u1()


def roundtrip_universe(text):
    return docs.dumps(docs.universe_to_doc(docs.universe_from_doc(docs.loads(text))))


def roundtrip_p(text, u):
    return docs.dumps(docs.pcond_to_doc(u, docs.pcond_from_doc(docs.loads(text), u)))


def roundtrip_q(text, u):
    return docs.dumps(docs.qcond_to_doc(u, docs.qcond_from_doc(docs.loads(text), u)))


def test_bundled_documents_match_the_fixtures():
    assert data_text("U1.json") == docs.dumps(docs.universe_to_doc(U))
    assert data_text("p1.json") == docs.dumps(docs.pcond_to_doc(U, p1()))
    assert data_text("w.json") == docs.dumps(docs.pcond_to_doc(U, w_example()))
    assert data_text("amalgam.json") == docs.dumps(docs.pcond_to_doc(U, golden_amalgam()))
    assert data_text("q1.json") == docs.dumps(docs.qcond_to_doc(U, q1()))


def test_bundled_documents_roundtrip_byte_exact():
    assert roundtrip_universe(data_text("U1.json")) == data_text("U1.json")
    for name in ("p1.json", "w.json", "amalgam.json"):
        assert roundtrip_p(data_text(name), U) == data_text(name)
    assert roundtrip_q(data_text("q1.json"), U) == data_text("q1.json")


def test_parsed_values_equal_the_originals():
    assert docs.universe_from_doc(docs.universe_to_doc(U)).countables == U.countables
    assert docs.pcond_from_doc(docs.pcond_to_doc(U, p1()), U) == p1()
    assert docs.qcond_from_doc(docs.qcond_to_doc(U, q1()), U) == q1()


def test_kappa_is_written_as_a_string():
    p = PCondition(f={SetE(M0_TRACE): ()}, a={"M0"})
    doc = docs.pcond_to_doc(U, p)
    assert doc["fMap"][0]["key"]["witness"] == {"model": "M0", "alpha": "kappa"}
    assert docs.pcond_from_doc(doc, U) == p


def test_generated_artifacts_roundtrip():
    count = 0
    for seed in range(34):
        u = generate_universe(seed)
        text = docs.dumps(docs.universe_to_doc(u))
        assert roundtrip_universe(text) == text
        rng = random.Random(seed)
        p = gen_condition(u, rng)["p"]
        ptext = docs.dumps(docs.pcond_to_doc(u, p))
        assert roundtrip_p(ptext, u) == ptext
        q = gen_qcondition(u, rng)["p"]
        qtext = docs.dumps(docs.qcond_to_doc(u, q))
        assert roundtrip_q(qtext, u) == qtext
        count += 3
    assert count >= 100


@pytest.mark.parametrize("text,where", [
    ("{", "line 1"),
    ('{"sIndex": "union", "fMap": [], "gMap": []}', "aSet"),
    ('{"sIndex": "union", "fMap": [{"key": {"kind": "ordS", "alpha": -1}, "value": []}], "gMap": [], "aSet": []}',
     "fMap[0].key.alpha"),
    ('{"sIndex": "union", "fMap": [], "gMap": [], "aSet": [], "extra": 1}', "extra"),
])
def test_parse_errors_name_the_field(text, where):
    with pytest.raises(DocumentError, match=r".*" + where.replace("[", r"\[").replace("]", r"\]")):
        docs.pcond_from_doc(docs.loads(text))


def test_witness_must_represent_the_set():
    doc = docs.pcond_to_doc(U, p1())
    doc["fMap"][1]["key"]["witness"]["alpha"] = 28
    with pytest.raises(DocumentError, match="witness"):
        docs.pcond_from_doc(doc, U)


def test_missing_file_is_a_document_error(tmp_path):
    with pytest.raises(DocumentError):
        docs.read_json(str(tmp_path / "nope.json"))
