"""Rating sensitivity and effort-model calibration against historical actuals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from types import MappingProxyType
from typing import Mapping, Sequence

from fpnfr.adjustment import compute_adi, compute_fp, compute_tdi, compute_tdi_n, compute_vaf
from fpnfr.counting import compute_ufp
from fpnfr.model import (
    DI_LEVELS,
    DI_MAX,
    DI_MIN,
    Factor,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    ValidationError,
    WeightProfile,
    all_factors,
    validate_project,
    validate_weight_profile,
)


class Vary(str, Enum):
    GSC_ONLY = "gsc"
    NFR_ONLY = "nfr"
    ALL = "all"


class Model(str, Enum):
    LINEAR = "linear"
    POWER = "power"


def _check(p: Project, w: WeightProfile) -> None:
    violations = validate_project(p) + validate_weight_profile(w)
    if violations:
        raise ValidationError(violations)


def _fp_pair(p: Project, w: WeightProfile) -> tuple[Decimal, Decimal]:
    """(classic, extended) adjusted FP with ``w`` applied regardless of the profile the project names."""
    ufp = compute_ufp(p.inventory, w)
    tdi = compute_tdi(p.gsc)
    tdi_n = compute_tdi_n(tdi, compute_adi(p.nfr))
    return compute_fp(ufp, compute_vaf(tdi)), compute_fp(ufp, compute_vaf(tdi_n))


def _fp_extended(p: Project, w: WeightProfile) -> Decimal:
    return _fp_pair(p, w)[1]


def _forced(p: Project, vary: Vary, di: int) -> Project:
    gsc = GscRatingSheet.uniform(di) if vary in (Vary.GSC_ONLY, Vary.ALL) else p.gsc
    nfr = p.nfr
    if vary in (Vary.NFR_ONLY, Vary.ALL):
        nfr = NfrRatingSheet({n: di for n in NfrId}, p.nfr.rationale)
    return Project(p.name, p.inventory, gsc, nfr, p.weight_profile_name, p.metadata)


def fp_bounds(p: Project, w: WeightProfile, vary: Vary | str = Vary.ALL) -> tuple[Decimal, Decimal]:
    """Extended FP with the chosen rating group forced to all-minimum and all-maximum."""
    _check(p, w)
    vary = Vary(vary)
    return _fp_extended(_forced(p, vary, DI_MIN), w), _fp_extended(_forced(p, vary, DI_MAX), w)


@dataclass(frozen=True)
class SensitivityResult:
    factor: Factor
    baseline_fp: Decimal
    fp_at_di: Mapping[int, Decimal]
    swing: Decimal


def one_way_sensitivity(p: Project, w: WeightProfile, factor: Factor) -> SensitivityResult:
    _check(p, w)
    curve = {di: _fp_extended(p.with_rating(factor, di), w) for di in DI_LEVELS}
    return SensitivityResult(
        factor=factor,
        baseline_fp=_fp_extended(p, w),
        fp_at_di=MappingProxyType(curve),
        swing=max(curve.values()) - min(curve.values()),
    )


def tornado(p: Project, w: WeightProfile) -> list[SensitivityResult]:
    """One sweep per GSC and NFR, widest swing first.

    ``sorted`` is stable and the input is in enumeration order, so ties keep
    GSCs ahead of NFRs and lower ordinals first.
    """
    results = [one_way_sensitivity(p, w, f) for f in all_factors()]
    return sorted(results, key=lambda r: -r.swing)


def parse_factor(name: str) -> Factor:
    """Resolve a factor name; ``gsc:`` / ``nfr:`` prefixes disambiguate ``performance``."""
    kind, sep, ident = name.partition(":")
    if sep:
        if kind == "gsc":
            return GscId(ident)
        if kind == "nfr":
            return NfrId(ident)
        raise ValueError(f"unknown factor kind {kind!r}; use gsc: or nfr:")
    gsc = {g.value: g for g in GscId}.get(name)
    nfr = {n.value: n for n in NfrId}.get(name)
    if gsc and nfr:
        raise ValueError(f"{name!r} is both a GSC and an NFR; write gsc:{name} or nfr:{name}")
    if gsc or nfr:
        return gsc or nfr
    raise ValueError(f"unknown factor {name!r}")


def factor_name(factor: Factor) -> str:
    kind = "gsc" if isinstance(factor, GscId) else "nfr"
    return f"{kind}:{factor.value}"


# --- calibration -----------------------------------------------------------


class CalibrationError(ValueError):
    pass


@dataclass(frozen=True)
class CalibrationRecord:
    name: str
    project: Project
    actual_effort: Decimal  # person-hours


@dataclass(frozen=True)
class CalibrationResult:
    model: Model
    params: Mapping[str, float]
    params_classic: Mapping[str, float]
    mmre_classic: float
    mmre_extended: float
    pred_classic: float
    pred_extended: float
    pred_level: float
    n: int


def magnitudes_of_relative_error(actual: Sequence[float], predicted: Sequence[float]) -> list[float]:
    return [abs(a - p) / a for a, p in zip(actual, predicted, strict=True)]


def mmre(actual: Sequence[float], predicted: Sequence[float]) -> float:
    mres = magnitudes_of_relative_error(actual, predicted)
    return math.fsum(mres) / len(mres)


def pred(actual: Sequence[float], predicted: Sequence[float], q: float = 0.25) -> float:
    """Share of estimates within ``q`` relative error of the actual."""
    mres = magnitudes_of_relative_error(actual, predicted)
    return sum(1 for m in mres if m <= q) / len(mres)


def fit_linear(sizes: Sequence[float], efforts: Sequence[float]) -> dict[str, float]:
    """Least squares for effort = a * size with no intercept."""
    sxx = math.fsum(x * x for x in sizes)
    if sxx == 0:
        raise CalibrationError("every project has zero size; the linear fit is undefined")
    return {"a": math.fsum(x * y for x, y in zip(sizes, efforts)) / sxx}


def fit_power(sizes: Sequence[float], efforts: Sequence[float]) -> dict[str, float]:
    """Ordinary least squares of log(effort) on log(size) for effort = c * size ** b."""
    if any(x <= 0 for x in sizes):
        raise CalibrationError("power-law fitting needs every project size to be positive")
    if len(set(sizes)) < 2:
        raise CalibrationError("power-law fitting needs at least two distinct project sizes")
    lx = [math.log(x) for x in sizes]
    ly = [math.log(y) for y in efforts]
    n = len(lx)
    mx, my = math.fsum(lx) / n, math.fsum(ly) / n
    sxx = math.fsum((x - mx) ** 2 for x in lx)
    sxy = math.fsum((x - mx) * (y - my) for x, y in zip(lx, ly))
    b = sxy / sxx
    return {"c": math.exp(my - b * mx), "b": b}


def predict(model: Model, params: Mapping[str, float], size: float) -> float:
    if model is Model.LINEAR:
        return params["a"] * size
    return params["c"] * size ** params["b"]


def calibrate(
    records: Sequence[CalibrationRecord],
    w: WeightProfile,
    model: Model | str = Model.LINEAR,
    *,
    pred_level: float = 0.25,
) -> CalibrationResult:
    """Fit the effort model to classic and to extended FP and score each fit.

    ``params`` is the fit against extended FP; ``params_classic`` the fit
    against classic FP. Both go through the same code path.
    """
    model = Model(model)
    if not records:
        raise CalibrationError("no calibration records given")
    efforts = []
    classic, extended = [], []
    for rec in records:
        if not Decimal(rec.actual_effort) > 0:
            raise CalibrationError(f"record {rec.name!r}: actual effort must be positive, got {rec.actual_effort}")
        _check(rec.project, w)
        fp_c, fp_e = _fp_pair(rec.project, w)
        classic.append(float(fp_c))
        extended.append(float(fp_e))
        efforts.append(float(rec.actual_effort))

    fit = fit_linear if model is Model.LINEAR else fit_power
    scores = {}
    for label, sizes in (("classic", classic), ("extended", extended)):
        params = fit(sizes, efforts)
        predicted = [predict(model, params, x) for x in sizes]
        scores[label] = (params, mmre(efforts, predicted), pred(efforts, predicted, pred_level))

    return CalibrationResult(
        model=model,
        params=MappingProxyType(scores["extended"][0]),
        params_classic=MappingProxyType(scores["classic"][0]),
        mmre_classic=scores["classic"][1],
        mmre_extended=scores["extended"][1],
        pred_classic=scores["classic"][2],
        pred_extended=scores["extended"][2],
        pred_level=pred_level,
        n=len(records),
    )
