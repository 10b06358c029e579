import io as stdio
import json
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nodalcurves import classify, decompose, enumerate_data, is_isomorphic, make_curve, realize
from nodalcurves import io
from nodalcurves.cli import run_cli
from nodalcurves.equivalence import random_certificate
from nodalcurves.errors import DocumentSyntaxError, InvariantViolation, SchemaError
from nodalcurves.fields import QQ, ExactField
from nodalcurves.fixtures import CHAIN1, FIXTURE_NAMES, NODAL, fixture_data

ROOT = Path(__file__).resolve().parent.parent
FIXTURES = ROOT / "fixtures"
F101 = ExactField(101)


def _text(name):
    return (FIXTURES / f"{name}.json").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixture_round_trip_and_golden_report(name):
    text = _text(name)
    doc = io.parse_document(text)
    assert io.emit_document(doc) == text
    golden = (FIXTURES / "golden" / f"{name}.report.json").read_text(encoding="utf-8")
    assert io.emit_document(io.make_document(classify(doc.payload), doc.curve, doc.field)) == golden
    assert io.parse_document(golden).payload == classify(doc.payload)


def test_long_word_fixture():
    w = io.parse_document(_text("W34")).payload.word
    assert w.closed and len(w.letters) == 40


def test_unknown_marked_point():
    obj = json.loads(_text("W0"))
    obj["payload"]["word"]["letters"][0]["a"] = "q"
    with pytest.raises(SchemaError):
        io.parse_document(json.dumps(obj))
    obj = json.loads(_text("WO"))
    obj["payload"]["word"]["letters"][0]["a"] = "0"  # L1 of a chain carries only infinity
    with pytest.raises(SchemaError):
        io.parse_document(json.dumps(obj))


def test_unknown_fields_are_rejected():
    obj = json.loads(_text("W0"))
    obj["payload"]["colour"] = "blue"
    with pytest.raises(SchemaError):
        io.parse_document(json.dumps(obj))


def test_syntax_errors_report_positions():
    with pytest.raises(DocumentSyntaxError) as err:
        io.parse_document('{\n  "curve": ,\n}')
    assert (err.value.line, err.value.column) == (2, 12)


def test_invariants_checked_on_load():
    obj = json.loads(_text("W0"))
    obj["payload"]["eigenvalue"] = "0"
    with pytest.raises(InvariantViolation):
        io.parse_document(json.dumps(obj))
    rep = realize(fixture_data("W0"), QQ)
    obj = json.loads(io.emit_document(io.make_document(rep, NODAL, QQ)))
    obj["payload"]["sites"][0]["blocks"][0]["rows"] = [["0"]]
    with pytest.raises(InvariantViolation):
        io.parse_document(json.dumps(obj))


POOL = [d for c in (NODAL, CHAIN1, make_curve("cycle", 1))
        for d in enumerate_data(c, 10, 2, F101, multiplicities=(1, 2))]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(POOL), st.integers(0, 100))
def test_documents_round_trip(d, seed):
    for payload in (d, realize(d, F101), classify(d)):
        text = io.emit_document(io.make_document(payload, d.config, F101))
        assert io.emit_document(io.parse_document(text)) == text
    rep = realize(d, F101)
    cert = random_certificate(rep, seed)
    text = io.emit_document(io.make_document(cert, d.config, F101))
    assert io.parse_document(text).payload == cert
    back = io.parse_document(io.emit_document(io.make_document(decompose(rep), d.config, F101)))
    assert is_isomorphic(back.payload.summands[0][0], d)


# ---------------------------------------------------------------------------
# command line

def cli(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_cli([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


def test_classify_rank_two_bundle():
    code, out, _ = cli("classify", FIXTURES / "W31.json")
    payload = json.loads(out)["payload"]
    assert code == 0 and payload["vector_bundle"] is True and payload["rank"] == {"X": 2}


def test_equiv_exit_codes(tmp_path):
    code, out, err = cli("equiv", FIXTURES / "W0.json", FIXTURES / "W31.json")
    assert code == 1 and json.loads(out)["equivalent"] is False and "differ" in err
    code, out, _ = cli("equiv", FIXTURES / "W31.json", FIXTURES / "W31.json")
    assert code == 0 and json.loads(out)["equivalent"] is True
    # certificate-checked equivalence between realized documents
    rep = realize(fixture_data("W32", field=F101), F101)
    from nodalcurves import apply_certificate
    cert = random_certificate(rep, 1)
    for name, payload in (("a", rep), ("b", apply_certificate(rep, cert)), ("c", cert)):
        (tmp_path / f"{name}.json").write_text(io.emit_document(io.make_document(payload, NODAL, F101)))
    code, out, _ = cli("equiv", tmp_path / "a.json", tmp_path / "b.json", "--certificate", tmp_path / "c.json")
    assert code == 0
    code, _, _ = cli("equiv", tmp_path / "a.json", tmp_path / "b.json")
    assert code == 0
    code, _, _ = cli("equiv", tmp_path / "b.json", tmp_path / "b.json", "--certificate", tmp_path / "c.json")
    assert code == 1


def test_empty_enumeration():
    code, out, _ = cli("enumerate", "--curve", "nodal-cubic", "--max-letters", 0, "--max-degree", 2)
    assert code == 0 and json.loads(out)["payload"] == {"type": "list", "items": []}


def test_usage_and_io_errors(tmp_path):
    assert cli()[0] == 2
    assert cli("frobnicate")[0] == 2
    assert cli("classify", tmp_path / "missing.json")[0] == 2
    (tmp_path / "bad.json").write_text("{ nope")
    code, _, err = cli("classify", tmp_path / "bad.json")
    assert code == 2 and "line 1" in err
    assert cli("curve", "chain:0")[0] == 2
    assert cli("realize", FIXTURES / "W0.json", "--field", "F4")[0] == 2


def test_invariant_failures_are_rejections(tmp_path):
    obj = json.loads(_text("W0"))
    obj["payload"]["eigenvalue"] = "0"
    (tmp_path / "zero.json").write_text(json.dumps(obj))
    assert cli("classify", tmp_path / "zero.json")[0] == 1
    obj = json.loads(_text("W0"))
    obj["payload"] = {"type": "word", "word": {"letters": obj["payload"]["word"]["letters"][:2],
                                               "links": "~", "closed": False}}
    (tmp_path / "word.json").write_text(json.dumps(obj))
    code, _, err = cli("validate", tmp_path / "word.json")
    assert code == 1 and "letter" in err


def test_every_subcommand_runs(tmp_path, monkeypatch):
    w0, w32, wk0 = (FIXTURES / f"{n}.json" for n in ("W0", "W32", "WK0"))
    assert cli("curve", "cycle:2")[0] == 0
    assert cli("validate", w32)[0] == 0
    code, out, _ = cli("realize", w0, "--field", "F7")
    assert code == 0 and json.loads(out)["field"] == {"kind": "Fp", "p": 7}
    assert cli("realize", wk0, "--window", 3)[0] == 0
    assert cli("canon", w32)[0] == 0
    code, out, _ = cli("realize", w32)
    (tmp_path / "rep.json").write_text(out)
    code, out, _ = cli("decompose", tmp_path / "rep.json")
    assert code == 0 and len(json.loads(out)["payload"]["summands"]) == 1
    code, out, _ = cli("tensor", w0, w0)
    assert code == 0 and json.loads(out)["payload"]["summands"][0]["datum"]["eigenvalue"] == "4"
    assert cli("tensor", wk0, w0)[0] == 1
    assert cli("tensor", wk0, w0, "--window", 3)[0] == 1  # tailed data are not tensored
    code, out, _ = cli("render", w32, "--dot")
    assert code == 0 and out.startswith("graph word {") and "dashed" in out
    monkeypatch.setenv("NODALCURVES_FIELD", "F5")
    code, out, _ = cli("enumerate", "--curve", "nodal-cubic", "--max-letters", 4, "--max-degree", 0,
                       "--filter", "vector-bundle")
    assert code == 0 and json.loads(out)["field"] == {"kind": "Fp", "p": 5}
    assert len(json.loads(out)["payload"]["items"]) == 3


def test_output_is_deterministic():
    runs = [cli("enumerate", "--curve", "chain:1", "--max-letters", 8, "--max-degree", 1) for _ in range(2)]
    assert runs[0] == runs[1]
    runs = [cli("decompose", FIXTURES / "W32.json") for _ in range(2)]
    assert runs[0] == runs[1]
