"""Exit criteria. Each test carries an ``acceptance`` marker; the terminal
summary prints one PASS/FAIL line per criterion. All tolerances are exact
unless a numeric bound is written in the assertion.
"""

import json
import random
import subprocess
import sys
from decimal import Decimal
from fractions import Fraction
from importlib import resources
from pathlib import Path

import pytest

from builders import UNIT, make_project, random_profile, random_project
from fpnfr.adjustment import compute_adi, compute_fp, compute_vaf, estimate
from fpnfr.analysis import CalibrationRecord, Model, calibrate
from fpnfr.counting import compute_ufp
from fpnfr.documents import parse_project_file, resolve_profile
from fpnfr.model import Complexity, FunctionType, GscId, NfrId, NfrRatingSheet, all_factors
from fpnfr.render import parse_report
from fpnfr.rubric import default_rubrics, guideline, mapped_gscs

D = Decimal
SAMPLE = Path(__file__).resolve().parents[1] / "samples" / "payroll.json"
N_RANDOM = 1000


@pytest.mark.acceptance(1, "extreme values: TDI_N 0 -> VAF 0.65, TDI_N 105 -> VAF 1.70")
def test_extreme_value_reproduction():
    low = estimate(make_project(gsc=0, nfr=0, units=100), UNIT)
    assert low.tdi_n == 0
    assert low.vaf_extended == D("0.65")
    assert str(low.vaf_extended) == "0.65"
    high = estimate(make_project(gsc=5, nfr=5, units=100), UNIT)
    assert high.tdi_n == 105
    assert high.vaf_extended == D("1.70")
    assert str(high.vaf_extended) == "1.70"


@pytest.mark.acceptance(2, "ADI bounds 0 and 35")
def test_adi_bounds():
    assert compute_adi(NfrRatingSheet.uniform(0)) == 0
    assert compute_adi(NfrRatingSheet.uniform(5)) == 35


@pytest.mark.acceptance(3, "VAF sweep t = 0..105 exact")
def test_vaf_table_sweep():
    for t in range(106):
        expected = Fraction(65, 100) + Fraction(1, 100) * t
        assert Fraction(compute_vaf(t)) == expected, t
        assert compute_vaf(t) == D("0.65") + D("0.01") * t


@pytest.mark.acceptance(4, "midrange symmetry at UFP = 1000: both sides exactly 525")
def test_midrange_symmetry():
    ufp = D(1000)
    mid = D("1.175") * ufp
    top = estimate(make_project(gsc=5, nfr=5, units=1000), UNIT).fp_extended
    bottom = estimate(make_project(gsc=0, nfr=0, units=1000), UNIT).fp_extended
    assert top - mid == 525
    assert mid - bottom == 525
    assert compute_fp(ufp, compute_vaf(105)) - mid == mid - compute_fp(ufp, compute_vaf(0))


@pytest.mark.acceptance(5, "classic reduction over 1000 random projects")
def test_classic_reduction():
    rng = random.Random(5)
    for _ in range(N_RANDOM):
        r = estimate(random_project(rng, nfr_zero=True), random_profile(rng))
        assert r.fp_extended == r.fp_classic
        assert str(r.fp_extended) == str(r.fp_classic)


@pytest.mark.acceptance(6, "unit step adds exactly 0.01 * UFP over 1000 random pairs")
def test_unit_step():
    rng = random.Random(6)
    factors = list(all_factors())
    for _ in range(N_RANDOM):
        p, w, factor = random_project(rng), random_profile(rng), rng.choice(factors)
        if p.rating(factor) == 5:
            p = p.with_rating(factor, rng.randint(0, 4))
        before = estimate(p, w)
        after = estimate(p.with_rating(factor, p.rating(factor) + 1), w)
        assert after.fp_extended - before.fp_extended == D("0.01") * before.ufp


def _naive_ufp(inv, w) -> Fraction:
    total = Fraction(0)
    for ft in FunctionType:
        for cx in Complexity:
            total += inv.counts[ft, cx] * Fraction(str(w.weights[ft, cx]))
    return total


@pytest.mark.acceptance(7, "UFP equals naive double-loop oracle over 1000 random cases")
def test_ufp_oracle_equivalence():
    rng = random.Random(7)
    for _ in range(N_RANDOM):
        p, w = random_project(rng), random_profile(rng)
        assert Fraction(compute_ufp(p.inventory, w)) == _naive_ufp(p.inventory, w)


@pytest.mark.acceptance(8, "rubric fidelity: 24 entries byte-exact, spot texts, truncation flag")
def test_rubric_fidelity():
    raw = json.loads(resources.files("fpnfr").joinpath("data", "rubrics.json").read_bytes())["rubrics"]
    tabled = (NfrId.RESPONSE_TIME, NfrId.SECURITY, NfrId.AVAILABILITY, NfrId.CAPACITY)
    count = 0
    for nfr in tabled:
        for di in range(6):
            assert guideline(nfr, di).encode("utf-8") == raw[nfr.value][str(di)]["text"].encode("utf-8")
            count += 1
    assert count == len(default_rubrics().entries) == 24
    assert guideline(NfrId.RESPONSE_TIME, 0).startswith("Batch processing or a stand alone PC")
    assert "fully automated data recovery procedures" in guideline(NfrId.AVAILABILITY, 5)
    assert guideline(NfrId.CAPACITY, 3) == "Several differing sites with daily peak times."
    assert default_rubrics().entry(NfrId.SECURITY, 5).complete is False


@pytest.mark.acceptance(9, "mapping fidelity for all seven NFRs")
def test_mapping_fidelity():
    G = GscId
    assert {n: mapped_gscs(n) for n in NfrId} == {
        NfrId.RELIABILITY: (G.OPERATIONAL_EASE,),
        NfrId.RESPONSE_TIME: (G.DATA_COMMUNICATIONS, G.DISTRIBUTED_DATA_PROCESSING, G.PERFORMANCE),
        NfrId.PERFORMANCE: (G.PERFORMANCE, G.ONLINE_UPDATE, G.ONLINE_DATA_ENTRY),
        NfrId.SECURITY: (G.MULTIPLE_SITES, G.ONLINE_UPDATE),
        NfrId.AVAILABILITY: (G.ONLINE_DATA_ENTRY, G.OPERATIONAL_EASE),
        NfrId.SCALABILITY: (G.TRANSACTION_RATE,),
        NfrId.CAPACITY: (G.TRANSACTION_RATE, G.MULTIPLE_SITES),
    }


@pytest.mark.acceptance(10, "calibration on 50 synthetic projects: a = 3.5 +- 1e-9, MMRE <= 1e-9, PRED(0.25) = 1")
def test_calibration_soundness():
    rng = random.Random(10)
    records = []
    for i in range(50):
        p, w = random_project(rng), UNIT
        p = make_project(inventory=p.inventory, gsc=dict(p.gsc.ratings), nfr=dict(p.nfr.ratings))
        if compute_ufp(p.inventory, w) == 0:
            p = make_project(units=1, gsc=dict(p.gsc.ratings), nfr=dict(p.nfr.ratings))
        fp_extended = estimate(p, w).fp_extended
        records.append(CalibrationRecord(f"synthetic-{i}", p, D("3.5") * fp_extended))
    result = calibrate(records, UNIT, Model.LINEAR)
    assert abs(result.params["a"] - 3.5) <= 1e-9
    assert result.mmre_extended <= 1e-9
    assert result.pred_extended == 1


@pytest.mark.acceptance(11, "CLI json report re-parses to the in-process report; runs byte-identical")
def test_cli_round_trip():
    cmd = [sys.executable, "-m", "fpnfr.cli", "estimate", str(SAMPLE), "--format", "json"]
    runs = [subprocess.run(cmd, capture_output=True, check=True).stdout for _ in range(3)]
    assert runs[0] == runs[1] == runs[2]
    project = parse_project_file(SAMPLE)
    assert parse_report(runs[0]) == estimate(project, resolve_profile(project.weight_profile_name))
