"""Degree-of-influence totals, value adjustment factor and adjusted FP.

The extended total adds the seven NFR ratings to the classic 14-GSC total,
and the classic VAF formula is applied to whichever total is passed in::

    TDI_N = TDI + ADI
    VAF   = 0.65 + 0.01 * TDI_N
    FP    = UFP * VAF

All arithmetic is decimal and exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from typing import Any

from fpnfr.counting import compute_ufp
from fpnfr.model import (
    DI_MAX,
    EXACT,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    ValidationError,
    WeightProfile,
    validate_project,
    validate_weight_profile,
)
from fpnfr.rubric import consistency_warnings

TDI_MAX = DI_MAX * len(GscId)
ADI_MAX = DI_MAX * len(NfrId)
TDI_N_MAX = TDI_MAX + ADI_MAX

VAF_BASE = Decimal("0.65")
VAF_STEP = Decimal("0.01")
VAF_MIN = VAF_BASE
VAF_MAX = VAF_BASE + VAF_STEP * TDI_N_MAX


class PreconditionError(ValueError):
    """An argument fell outside its legal range."""

    def __init__(self, field: str, value: Any, legal: str):
        self.field = field
        self.value = value
        self.legal = legal
        super().__init__(f"{field} = {value} is outside the legal range {legal}")


def _require_int_range(name: str, value: Any, lo: int, hi: int) -> None:
    if isinstance(value, bool) or not isinstance(value, int) or not lo <= value <= hi:
        raise PreconditionError(name, value, f"[{lo}, {hi}]")


def compute_tdi(g: GscRatingSheet) -> int:
    return sum(g.ratings[gsc] for gsc in GscId)


def compute_adi(n: NfrRatingSheet) -> int:
    return sum(n.ratings[nfr] for nfr in NfrId)


def compute_tdi_n(tdi: int, adi: int) -> int:
    _require_int_range("tdi", tdi, 0, TDI_MAX)
    _require_int_range("adi", adi, 0, ADI_MAX)
    return tdi + adi


def compute_vaf(tdi_like: int) -> Decimal:
    """0.65 + 0.01 * ``tdi_like``, for a classic TDI or an extended TDI_N."""
    _require_int_range("tdi_like", tdi_like, 0, TDI_N_MAX)
    return EXACT.add(VAF_BASE, EXACT.multiply(VAF_STEP, Decimal(tdi_like)))


def compute_fp(ufp: Decimal, vaf: Decimal) -> Decimal:
    ufp, vaf = Decimal(ufp), Decimal(vaf)
    if ufp < 0:
        raise PreconditionError("ufp", ufp, "[0, inf)")
    if not VAF_MIN <= vaf <= VAF_MAX:
        raise PreconditionError("vaf", vaf, f"[{VAF_MIN}, {VAF_MAX}]")
    return EXACT.multiply(ufp, vaf)


@dataclass(frozen=True)
class EstimateReport:
    ufp: Decimal
    tdi: int
    adi: int
    tdi_n: int
    vaf_classic: Decimal
    vaf_extended: Decimal
    fp_classic: Decimal
    fp_extended: Decimal
    warnings: tuple = field(default=())
    project: str = ""

    @property
    def delta(self) -> Decimal:
        """Extended minus classic adjusted size."""
        return self.fp_extended - self.fp_classic


class ProfileMismatchError(ValueError):
    pass


def estimate(p: Project, w: WeightProfile, *, threshold: int = 2) -> EstimateReport:
    """Full classic-vs-extended estimate for one project.

    Raises :class:`ValidationError` carrying every violation if the project or
    profile is malformed, and :class:`ProfileMismatchError` if ``w`` is not the
    profile the project names.
    """
    violations = validate_project(p) + validate_weight_profile(w)
    if violations:
        raise ValidationError(violations)
    if p.weight_profile_name != w.name:
        raise ProfileMismatchError(
            f"project {p.name!r} names weight profile {p.weight_profile_name!r}, got {w.name!r}"
        )

    ufp = compute_ufp(p.inventory, w)
    tdi = compute_tdi(p.gsc)
    adi = compute_adi(p.nfr)
    tdi_n = compute_tdi_n(tdi, adi)
    vaf_classic = compute_vaf(tdi)
    vaf_extended = compute_vaf(tdi_n)
    return EstimateReport(
        ufp=ufp,
        tdi=tdi,
        adi=adi,
        tdi_n=tdi_n,
        vaf_classic=vaf_classic,
        vaf_extended=vaf_extended,
        fp_classic=compute_fp(ufp, vaf_classic),
        fp_extended=compute_fp(ufp, vaf_extended),
        warnings=tuple(consistency_warnings(p, threshold=threshold)),
        project=p.name,
    )
