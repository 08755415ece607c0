"""NFR-to-GSC mapping, DI guideline rubrics and the rating consistency lint.

Both tables ship as JSON under ``fpnfr/data`` and are loaded once. Guideline
text is returned exactly as stored; a source row that stops mid-sentence is
kept as-is and flagged rather than completed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Any, Mapping

from fpnfr.model import DI_LEVELS, GscId, GscRatingSheet, NfrId, Project

NO_RUBRIC = "(no rubric in source)"
TRUNCATED_SUFFIX = " [text truncated in source]"
DEFAULT_THRESHOLD = 2


def _data_text(name: str) -> str:
    return resources.files("fpnfr").joinpath("data", name).read_text(encoding="utf-8")


@dataclass(frozen=True)
class MappingEntry:
    nfr: NfrId
    gscs: tuple[GscId, ...]
    # "existing" for mappings adopted from prior practice, "extended" for the newly mapped NFRs
    source: str


@dataclass(frozen=True)
class MappingTable:
    entries: Mapping[NfrId, MappingEntry]

    @classmethod
    def from_json(cls, raw: Mapping[str, Any]) -> MappingTable:
        entries = {}
        for key, body in raw["mappings"].items():
            nfr = NfrId(key)
            gscs = tuple(GscId(g) for g in body["gscs"])
            if not gscs:
                raise ValueError(f"mapping for {key} is empty")
            entries[nfr] = MappingEntry(nfr, gscs, body["source"])
        missing = set(NfrId) - entries.keys()
        if missing:
            raise ValueError(f"mapping table lacks {sorted(n.value for n in missing)}")
        return cls(MappingProxyType({n: entries[n] for n in NfrId}))

    def mapped_gscs(self, nfr: NfrId) -> tuple[GscId, ...]:
        return self.entries[nfr].gscs


@dataclass(frozen=True)
class RubricEntry:
    nfr: NfrId
    di: int
    text: str
    complete: bool = True

    def display(self) -> str:
        return self.text if self.complete else self.text + TRUNCATED_SUFFIX


@dataclass(frozen=True)
class RubricTable:
    entries: Mapping[tuple[NfrId, int], RubricEntry]

    @classmethod
    def from_json(cls, raw: Mapping[str, Any]) -> RubricTable:
        entries = {}
        for key, levels in raw["rubrics"].items():
            nfr = NfrId(key)
            for level, body in levels.items():
                di = int(level)
                if di not in DI_LEVELS:
                    raise ValueError(f"rubric level out of range for {key}: {level}")
                if not body["text"]:
                    raise ValueError(f"empty guideline for {key} DI {di}")
                entries[nfr, di] = RubricEntry(nfr, di, body["text"], body.get("complete", True))
        return cls(MappingProxyType(entries))

    def with_overrides(self, raw: Mapping[str, Any]) -> RubricTable:
        """Replace guideline wording from an override document of the shipped shape.

        Only already-rubriced (NFR, DI) pairs may be overridden.
        """
        merged = dict(self.entries)
        for (nfr, di), entry in RubricTable.from_json(raw).entries.items():
            if (nfr, di) not in merged:
                raise ValueError(f"override for {nfr.value} DI {di} has no shipped rubric to replace")
            merged[nfr, di] = entry
        return RubricTable(MappingProxyType(merged))

    def has_rubric(self, nfr: NfrId) -> bool:
        return (nfr, DI_LEVELS[0]) in self.entries

    def rubriced(self) -> tuple[NfrId, ...]:
        return tuple(n for n in NfrId if self.has_rubric(n))

    def entry(self, nfr: NfrId, di: int) -> RubricEntry | None:
        return self.entries.get((nfr, di))

    def guideline(self, nfr: NfrId, di: int) -> str:
        entry = self.entry(nfr, di)
        return NO_RUBRIC if entry is None else entry.text


@lru_cache(maxsize=None)
def default_mapping() -> MappingTable:
    return MappingTable.from_json(json.loads(_data_text("mapping.json")))


@lru_cache(maxsize=None)
def default_rubrics() -> RubricTable:
    return RubricTable.from_json(json.loads(_data_text("rubrics.json")))


def load_rubrics(override: str | Path | None = None) -> RubricTable:
    table = default_rubrics()
    if override is None:
        return table
    return table.with_overrides(json.loads(Path(override).read_text(encoding="utf-8")))


def mapped_gscs(nfr: NfrId) -> tuple[GscId, ...]:
    return default_mapping().mapped_gscs(nfr)


def guideline(nfr: NfrId, di: int) -> str:
    """Verbatim guideline text, or :data:`NO_RUBRIC` for NFRs without a table."""
    return default_rubrics().guideline(nfr, di)


def suggest_nfr_di(nfr: NfrId, g: GscRatingSheet) -> int:
    """Mean DI of the NFR's mapped GSCs, rounded half away from zero."""
    values = [g[gsc] for gsc in mapped_gscs(nfr)]
    n = len(values)
    # ratings are non-negative, so half-up integer rounding equals half-away-from-zero
    return (2 * sum(values) + n) // (2 * n)


@dataclass(frozen=True)
class ConsistencyWarning:
    nfr: NfrId
    nfr_di: int
    mapped_gsc_dis: tuple[tuple[GscId, int], ...]
    suggested_di: int
    message: str


def consistency_warnings(p: Project, threshold: int = DEFAULT_THRESHOLD) -> list[ConsistencyWarning]:
    """Flag NFRs rated at least ``threshold`` away from their mapped GSCs' mean."""
    if threshold < 1:
        raise ValueError(f"threshold must be >= 1, got {threshold}")
    out = []
    for nfr in NfrId:
        rated = p.nfr[nfr]
        suggested = suggest_nfr_di(nfr, p.gsc)
        if abs(rated - suggested) < threshold:
            continue
        gsc_dis = tuple((gsc, p.gsc[gsc]) for gsc in mapped_gscs(nfr))
        shown = ", ".join(f"{gsc.value}={di}" for gsc, di in gsc_dis)
        out.append(
            ConsistencyWarning(
                nfr=nfr,
                nfr_di=rated,
                mapped_gsc_dis=gsc_dis,
                suggested_di=suggested,
                message=(
                    f"nfr {nfr.value} rated {rated} but its mapped GSCs ({shown}) "
                    f"suggest {suggested}; the overlap may be double-counted"
                ),
            )
        )
    return out
