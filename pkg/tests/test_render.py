import csv
import io
import json
import random
import re

import pytest
from hypothesis import given
from hypothesis import strategies as st

from builders import UNIT, make_project, random_profile, random_project
from fpnfr.adjustment import estimate
from fpnfr.analysis import tornado
from fpnfr.model import NfrId
from fpnfr.render import CSV_COLUMNS, parse_report, render_csv, render_mapping, render_report, render_rubric, render_sensitivity
from fpnfr.rubric import default_mapping, default_rubrics


def _report(**kw):
    return estimate(make_project(**kw), UNIT)


def test_json_has_exact_vaf_at_zero():
    text = render_report(_report(units=100), "json")
    assert '"vaf_extended": 0.65' in text
    assert '"vaf_extended": 0.65,' in text  # not 0.6500000000000001


def test_text_shows_zero_delta():
    r = _report(units=100, gsc=3)
    assert r.fp_classic == r.fp_extended
    assert "delta: 0\n" in render_report(r, "text")


def test_text_and_markdown_list_warnings():
    r = _report(units=10, nfr={NfrId.SECURITY: 5})
    for fmt in ("text", "markdown"):
        out = render_report(r, fmt)
        assert "nfr security rated 5" in out
        assert "delta" in out


def test_csv_header_is_fixed_and_deterministic():
    a = render_csv([_report(units=1)])
    b = render_csv([_report(units=99, gsc=4)])
    assert a.splitlines()[0] == b.splitlines()[0] == ",".join(CSV_COLUMNS)
    assert render_report(_report(units=5), "csv") == render_report(_report(units=5), "csv")


def test_csv_one_row_per_project():
    reports = [_report(units=u, name=f"p,{u}") for u in (1, 2, 3)]
    rows = list(csv.reader(io.StringIO(render_csv(reports))))
    assert len(rows) == 4
    assert [r[0] for r in rows[1:]] == ["p,1", "p,2", "p,3"]


@given(st.integers(0, 10**9), st.booleans())
def test_json_round_trip_is_lossless(seed, as_strings):
    rng = random.Random(seed)
    r = estimate(random_project(rng), random_profile(rng))
    text = render_report(r, "json", decimal_strings=as_strings)
    assert parse_report(text) == r
    # every decimal is written in plain positional notation
    assert not re.search(r"\d[eE][-+]?\d", text)


def test_decimal_strings_flag():
    doc = json.loads(render_report(_report(units=100), "json", decimal_strings=True))
    assert doc["vaf_extended"] == "0.65"
    assert doc["fp_extended"] == "65.00"


def test_unknown_format():
    with pytest.raises(ValueError):
        render_report(_report(), "yaml")


def test_rubric_rendering_marks_truncation():
    out = render_rubric(default_rubrics(), NfrId.SECURITY, "text")
    assert out.splitlines()[5].endswith("requiring [text truncated in source]")
    assert render_rubric(default_rubrics(), NfrId.SCALABILITY, "text") == "scalability: (no rubric in source)\n"
    doc = json.loads(render_rubric(default_rubrics(), NfrId.SECURITY, "json"))
    assert doc["guidelines"][5]["complete"] is False


def test_mapping_rendering():
    doc = json.loads(render_mapping(default_mapping(), "json"))
    assert doc["reliability"] == ["operational_ease"]
    assert "operational_ease (GSC-12)" in render_mapping(default_mapping(), "text")


@pytest.mark.parametrize("fmt", ["json", "csv", "text", "markdown"])
def test_tornado_renders_all_factors(fmt):
    out = render_sensitivity(tornado(make_project(units=10), UNIT), fmt)
    assert "nfr:capacity" in out and "gsc:data_communications" in out
