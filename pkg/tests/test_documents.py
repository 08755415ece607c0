import json
import logging
import random
from decimal import Decimal
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from builders import random_project
from fpnfr.counting import compute_ufp
from fpnfr.documents import (
    DocumentError,
    dump_project,
    dump_weight_profile,
    dumps_exact,
    loads_exact,
    parse_project,
    parse_project_file,
    parse_records,
    parse_weight_profile,
    resolve_profile,
)
from fpnfr.model import Complexity, FunctionType, GscId, NfrId, WeightProfile

REPO = Path(__file__).resolve().parents[1]
SCHEMA = json.loads((REPO / "schema" / "project.schema.json").read_text())


def minimal_doc(**overrides) -> dict:
    doc = {
        "format_version": 1,
        "meta": {"name": "minimal"},
        "inventory": {},
        "gsc": {g.value: 0 for g in GscId},
        "nfr": {n.value: 0 for n in NfrId},
    }
    doc.update(overrides)
    return doc


def as_text(doc: dict) -> str:
    return json.dumps(doc, indent=2)


def test_minimal_document_parses():
    p = parse_project(as_text(minimal_doc()))
    assert p.name == "minimal"
    assert p.weight_profile_name == "ifpug-standard"
    assert compute_ufp(p.inventory, resolve_profile()) == 0
    assert set(p.gsc.ratings.values()) == {0}


def test_di_out_of_range_is_located():
    doc = minimal_doc()
    doc["nfr"]["security"] = 7
    text = as_text(doc)
    with pytest.raises(DocumentError) as exc:
        parse_project(text, source="p.json")
    err = exc.value
    assert err.kind == "di_out_of_range"
    assert "DI out of range 0..5" in str(err)
    assert err.field == "nfr.security"
    assert '"security": 7' in text.splitlines()[err.line - 1]


def test_missing_nfr_section_is_named():
    doc = minimal_doc()
    del doc["nfr"]
    with pytest.raises(DocumentError) as exc:
        parse_project(as_text(doc))
    assert exc.value.kind == "missing_section"
    assert exc.value.field == "nfr"
    assert "nfr" in str(exc.value)


def test_malformed_syntax_reports_line():
    with pytest.raises(DocumentError) as exc:
        parse_project('{\n  "format_version": 1,\n  "meta": {,\n}')
    assert exc.value.kind == "syntax"
    assert exc.value.line == 3


@pytest.mark.parametrize(
    "section, key",
    [("gsc", "latency"), ("nfr", "usability"), ("inventory", "external_input.huge"), ("inventory", "widgets")],
)
def test_unknown_identifier_keys(section, key):
    doc = minimal_doc()
    doc[section][key] = 1
    with pytest.raises(DocumentError) as exc:
        parse_project(as_text(doc))
    assert exc.value.kind == "unknown_key"
    assert exc.value.field == f"{section}.{key}"


def test_error_kinds_are_distinct():
    kinds = set()
    for mutate in (
        lambda d: d["nfr"].update(security=7),
        lambda d: d["gsc"].update(latency=1),
        lambda d: d.pop("gsc"),
        lambda d: d["gsc"].pop("reusability"),
        lambda d: d["gsc"].update(reusability="high"),
        lambda d: d.update(format_version=2),
    ):
        doc = minimal_doc()
        mutate(doc)
        with pytest.raises(DocumentError) as exc:
            parse_project(as_text(doc))
        kinds.add(exc.value.kind)
    assert kinds == {"di_out_of_range", "unknown_key", "missing_section", "missing_key", "invalid_value", "format_version"}
    with pytest.raises(DocumentError) as exc:
        parse_project("[1, 2")
    assert exc.value.kind == "syntax"


def test_unknown_fields_strict_vs_lenient(caplog):
    doc = minimal_doc(owner="ops")
    doc["meta"]["colour"] = "blue"
    with pytest.raises(DocumentError) as exc:
        parse_project(as_text(doc), strict=True)
    assert exc.value.kind == "unknown_field"
    with caplog.at_level(logging.WARNING):
        p = parse_project(as_text(doc))
    assert p.name == "minimal"
    assert "'owner'" in caplog.text and "'colour'" in caplog.text


def test_floats_and_booleans_are_not_ratings():
    for bad in (2.0, True):
        doc = minimal_doc()
        doc["gsc"]["performance"] = bad
        with pytest.raises(DocumentError):
            parse_project(as_text(doc))


@given(st.integers(0, 10**9))
def test_canonical_round_trip(seed):
    p = random_project(random.Random(seed))
    text = dump_project(p)
    assert parse_project(text) == p
    assert dump_project(parse_project(text)) == text


def test_parse_render_parse_is_idempotent_on_sample():
    first = parse_project_file(REPO / "samples" / "payroll.json")
    assert parse_project(dump_project(first)) == first
    assert first.nfr.rationale[NfrId.SECURITY].startswith("Salary data")
    assert first.metadata == {"owner": "finance"}


@given(st.integers(0, 10**9))
def test_canonical_documents_satisfy_shipped_schema(seed):
    jsonschema.validate(json.loads(dump_project(random_project(random.Random(seed)))), SCHEMA)


def test_sample_satisfies_schema():
    jsonschema.validate(json.loads((REPO / "samples" / "payroll.json").read_text()), SCHEMA)


def test_exact_json_numbers_and_strings():
    obj = {"a": Decimal("0.65"), "b": [Decimal("100.00"), 3], "c": "0.65"}
    assert dumps_exact(obj, indent=None) == '{"a": 0.65, "b": [100.00, 3], "c": "0.65"}\n'
    assert dumps_exact(obj, indent=None, decimal_strings=True) == '{"a": "0.65", "b": ["100.00", 3], "c": "0.65"}\n'
    assert loads_exact('{"a": 0.65}')["a"] == Decimal("0.65")
    with pytest.raises(TypeError):
        dumps_exact({"x": 0.1})


# --- weight profiles -----------------------------------------------------


def test_shipped_profile_round_trips():
    w = resolve_profile("ifpug-standard")
    assert w.weight((FunctionType.INTERNAL_LOGICAL_FILE, Complexity.HIGH)) == 15
    assert parse_weight_profile(dump_weight_profile(w)) == w


def test_profile_from_file_and_search_path(tmp_path, monkeypatch):
    custom = WeightProfile.uniform(Decimal("2.5"), name="half-tens")
    path = tmp_path / "half-tens.json"
    path.write_text(dump_weight_profile(custom))
    assert resolve_profile(str(path)) == custom
    with pytest.raises(DocumentError) as exc:
        resolve_profile("half-tens")
    assert exc.value.kind == "not_found"
    monkeypatch.setenv("FPNFR_PROFILE_PATH", str(tmp_path))
    assert resolve_profile("half-tens") == custom


def test_profile_with_inverted_ladder_is_rejected():
    doc = json.loads(dump_weight_profile(WeightProfile.uniform(1, name="x")))
    doc["weights"]["external_output.low"] = "9"
    with pytest.raises(DocumentError):
        parse_weight_profile(json.dumps(doc))


# --- calibration records -------------------------------------------------


def test_records_embedded_and_by_file(tmp_path):
    (tmp_path / "p.json").write_text(as_text(minimal_doc()))
    text = json.dumps(
        {
            "format_version": 1,
            "records": [
                {"name": "a", "actual_effort": "400", "project_file": "p.json"},
                {"name": "b", "actual_effort": 250.5, "project": minimal_doc()},
            ],
        }
    )
    a, b = parse_records(text, base_dir=tmp_path)
    assert (a.name, a.actual_effort, a.project.name) == ("a", Decimal(400), "minimal")
    assert b.actual_effort == Decimal("250.5")


@pytest.mark.parametrize("effort", ["0", "-3", None, "lots"])
def test_records_reject_bad_effort(effort):
    text = json.dumps({"format_version": 1, "records": [{"actual_effort": effort, "project": minimal_doc()}]})
    with pytest.raises(DocumentError):
        parse_records(text)
