"""Domain types shared across the toolkit.

Every type here is an immutable value. Constructors do not reject bad
ratings or missing cells: a malformed project must still be representable
so that :func:`validate_project` can report *all* of its problems at once.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
import decimal
from decimal import Decimal
from enum import Enum
from types import MappingProxyType
from typing import Any, Iterator, Mapping

DI_MIN = 0
DI_MAX = 5
DI_LEVELS = tuple(range(DI_MIN, DI_MAX + 1))

# Traps Inexact so any rounding in size arithmetic fails loudly instead of drifting.
EXACT = decimal.Context(
    prec=60,
    traps=[decimal.Inexact, decimal.InvalidOperation, decimal.DivisionByZero, decimal.Overflow],
)


class GscId(Enum):
    """The 14 general system characteristics, in their conventional order."""

    DATA_COMMUNICATIONS = "data_communications"
    DISTRIBUTED_DATA_PROCESSING = "distributed_data_processing"
    PERFORMANCE = "performance"
    HEAVILY_USED_CONFIGURATION = "heavily_used_configuration"
    TRANSACTION_RATE = "transaction_rate"
    ONLINE_DATA_ENTRY = "online_data_entry"
    END_USER_EFFICIENCY = "end_user_efficiency"
    ONLINE_UPDATE = "online_update"
    COMPLEX_PROCESSING = "complex_processing"
    REUSABILITY = "reusability"
    INSTALLATION_EASE = "installation_ease"
    OPERATIONAL_EASE = "operational_ease"
    MULTIPLE_SITES = "multiple_sites"
    FACILITATE_CHANGE = "facilitate_change"

    @property
    def ordinal(self) -> int:
        return _GSC_ORDINALS[self]

    @classmethod
    def from_ordinal(cls, ordinal: int) -> GscId:
        return list(cls)[ordinal - 1]

    @property
    def label(self) -> str:
        return self.value.replace("_", " ").capitalize()


_GSC_ORDINALS = {gsc: i for i, gsc in enumerate(GscId, start=1)}


class NfrId(Enum):
    RELIABILITY = "reliability"
    RESPONSE_TIME = "response_time"
    PERFORMANCE = "performance"
    SECURITY = "security"
    AVAILABILITY = "availability"
    SCALABILITY = "scalability"
    CAPACITY = "capacity"

    @property
    def label(self) -> str:
        return self.value.replace("_", " ").capitalize()


class FunctionType(Enum):
    EXTERNAL_INPUT = "external_input"
    EXTERNAL_OUTPUT = "external_output"
    EXTERNAL_INQUIRY = "external_inquiry"
    INTERNAL_LOGICAL_FILE = "internal_logical_file"
    EXTERNAL_INTERFACE_FILE = "external_interface_file"


class Complexity(Enum):
    LOW = "low"
    AVERAGE = "average"
    HIGH = "high"


Cell = tuple[FunctionType, Complexity]
Factor = GscId | NfrId

CELLS: tuple[Cell, ...] = tuple((ft, cx) for ft in FunctionType for cx in Complexity)


def cell_key(cell: Cell) -> str:
    """Serialized form of an inventory/weight cell, e.g. ``external_input.low``."""
    ft, cx = cell
    return f"{ft.value}.{cx.value}"


def parse_cell_key(key: str) -> Cell:
    ft, sep, cx = key.partition(".")
    if not sep:
        raise ValueError(f"cell key must look like '<type>.<complexity>': {key!r}")
    return FunctionType(ft), Complexity(cx)


def _frozen(mapping: Mapping[Any, Any] | None) -> Mapping[Any, Any]:
    return MappingProxyType(dict(mapping or {}))


@dataclass(frozen=True)
class FunctionInventory:
    counts: Mapping[Cell, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "counts", _frozen(self.counts))

    @classmethod
    def zeros(cls) -> FunctionInventory:
        return cls({cell: 0 for cell in CELLS})

    @classmethod
    def of(cls, **counts: int) -> FunctionInventory:
        """Build a full inventory from ``type__complexity=n`` keywords; the rest are zero.

        >>> FunctionInventory.of(external_input__low=2).count(
        ...     (FunctionType.EXTERNAL_INPUT, Complexity.LOW))
        2
        """
        cells = {cell: 0 for cell in CELLS}
        for key, n in counts.items():
            cells[parse_cell_key(key.replace("__", "."))] = n
        return cls(cells)

    def count(self, cell: Cell) -> int:
        return self.counts[cell]

    def total(self) -> int:
        return sum(self.counts.values())

    def __add__(self, other: FunctionInventory) -> FunctionInventory:
        return FunctionInventory({c: self.counts[c] + other.counts[c] for c in CELLS})

    def scaled(self, k: int) -> FunctionInventory:
        return FunctionInventory({c: k * n for c, n in self.counts.items()})


@dataclass(frozen=True)
class WeightProfile:
    name: str
    weights: Mapping[Cell, Decimal]
    description: str = ""

    def __post_init__(self) -> None:
        object.__setattr__(self, "weights", _frozen(self.weights))

    @classmethod
    def uniform(cls, weight: Decimal | int = 1, name: str = "uniform") -> WeightProfile:
        return cls(name, {cell: Decimal(weight) for cell in CELLS})

    def weight(self, cell: Cell) -> Decimal:
        return self.weights[cell]


@dataclass(frozen=True)
class GscRatingSheet:
    ratings: Mapping[GscId, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratings", _frozen(self.ratings))

    @classmethod
    def uniform(cls, di: int) -> GscRatingSheet:
        return cls({g: di for g in GscId})

    def __getitem__(self, gsc: GscId) -> int:
        return self.ratings[gsc]

    def replace(self, **changes: int) -> GscRatingSheet:
        return GscRatingSheet({**self.ratings, **{GscId(k): v for k, v in changes.items()}})

    def with_rating(self, gsc: GscId, di: int) -> GscRatingSheet:
        return GscRatingSheet({**self.ratings, gsc: di})


@dataclass(frozen=True)
class NfrRatingSheet:
    ratings: Mapping[NfrId, int]
    rationale: Mapping[NfrId, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "ratings", _frozen(self.ratings))
        object.__setattr__(self, "rationale", _frozen(self.rationale))

    @classmethod
    def uniform(cls, di: int) -> NfrRatingSheet:
        return cls({n: di for n in NfrId})

    def __getitem__(self, nfr: NfrId) -> int:
        return self.ratings[nfr]

    def replace(self, **changes: int) -> NfrRatingSheet:
        ratings = {**self.ratings, **{NfrId(k): v for k, v in changes.items()}}
        return NfrRatingSheet(ratings, self.rationale)

    def with_rating(self, nfr: NfrId, di: int) -> NfrRatingSheet:
        return NfrRatingSheet({**self.ratings, nfr: di}, self.rationale)


DEFAULT_PROFILE = "ifpug-standard"


@dataclass(frozen=True)
class Project:
    name: str
    inventory: FunctionInventory
    gsc: GscRatingSheet
    nfr: NfrRatingSheet
    weight_profile_name: str = DEFAULT_PROFILE
    metadata: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "metadata", _frozen(self.metadata))

    def rating(self, factor: Factor) -> int:
        if isinstance(factor, GscId):
            return self.gsc[factor]
        return self.nfr[factor]

    def with_rating(self, factor: Factor, di: int) -> Project:
        """Copy of the project with one GSC or NFR rating changed."""
        if isinstance(factor, GscId):
            return replace(self, gsc=self.gsc.with_rating(factor, di))
        return replace(self, nfr=self.nfr.with_rating(factor, di))


def all_factors() -> Iterator[Factor]:
    """GSCs in ordinal order, then NFRs in declaration order."""
    yield from GscId
    yield from NfrId


@dataclass(frozen=True)
class Violation:
    field: str
    value: Any
    message: str

    def __str__(self) -> str:
        return self.message


class ValidationError(ValueError):
    """Raised by operations whose input failed :func:`validate_project`."""

    def __init__(self, violations: list[Violation]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _check_ratings(
    kind: str, ids: type[Enum], ratings: Mapping[Any, Any], out: list[Violation]
) -> None:
    for key in ratings:
        if key not in set(ids):
            out.append(Violation(kind, key, f"unknown {kind} identifier: {key!r}"))
    for ident in ids:
        path = f"{kind}.{ident.value}"
        if ident not in ratings:
            out.append(Violation(path, None, f"missing {kind} rating: {ident.value}"))
            continue
        di = ratings[ident]
        if not _is_int(di):
            out.append(Violation(path, di, f"DI must be an integer for {kind} {ident.value}: {di!r}"))
        elif not DI_MIN <= di <= DI_MAX:
            out.append(
                Violation(path, di, f"DI out of range {DI_MIN}..{DI_MAX} for {kind} {ident.value}: {di}")
            )


def validate_project(p: Project) -> list[Violation]:
    """Return every structural violation in ``p``; an empty list means valid.

    Never raises for anything built from the public types, however broken.
    """
    out: list[Violation] = []
    if not isinstance(p.name, str) or not p.name.strip():
        out.append(Violation("name", p.name, "project name must be a non-empty string"))
    if not isinstance(p.weight_profile_name, str) or not p.weight_profile_name.strip():
        out.append(
            Violation("weight_profile_name", p.weight_profile_name, "weight profile name must be non-empty")
        )

    counts = p.inventory.counts
    for key in counts:
        if key not in CELLS:
            out.append(Violation("inventory", key, f"unknown inventory cell: {key!r}"))
    for cell in CELLS:
        path = f"inventory.{cell_key(cell)}"
        if cell not in counts:
            out.append(Violation(path, None, f"missing inventory cell: {cell_key(cell)}"))
            continue
        n = counts[cell]
        if not _is_int(n) or n < 0:
            out.append(Violation(path, n, f"count must be a non-negative integer for {cell_key(cell)}: {n!r}"))

    _check_ratings("gsc", GscId, p.gsc.ratings, out)
    _check_ratings("nfr", NfrId, p.nfr.ratings, out)

    for key, note in p.nfr.rationale.items():
        if key not in set(NfrId):
            out.append(Violation("rationale", key, f"rationale for unknown nfr: {key!r}"))
        elif not isinstance(note, str):
            out.append(Violation(f"rationale.{key.value}", note, "rationale must be text"))
    for key, value in p.metadata.items():
        if not isinstance(key, str) or not isinstance(value, str):
            out.append(Violation("metadata", key, f"metadata entries must map text to text: {key!r}"))
    return out


def validate_weight_profile(w: WeightProfile) -> list[Violation]:
    out: list[Violation] = []
    if not isinstance(w.name, str) or not w.name.strip():
        out.append(Violation("name", w.name, "weight profile name must be non-empty"))
    for cell in CELLS:
        path = f"weights.{cell_key(cell)}"
        if cell not in w.weights:
            out.append(Violation(path, None, f"missing weight: {cell_key(cell)}"))
            continue
        value = w.weights[cell]
        if not isinstance(value, (Decimal, int)) or isinstance(value, bool) or not value > 0:
            out.append(Violation(path, value, f"weight must be a positive number for {cell_key(cell)}: {value!r}"))
    for ft in FunctionType:
        ladder = [w.weights.get((ft, cx)) for cx in Complexity]
        if all(isinstance(x, (Decimal, int)) for x in ladder) and not ladder[0] <= ladder[1] <= ladder[2]:
            out.append(
                Violation(
                    f"weights.{ft.value}",
                    ladder,
                    f"weights for {ft.value} must satisfy low <= average <= high",
                )
            )
    for key in w.weights:
        if key not in CELLS:
            out.append(Violation("weights", key, f"unknown weight cell: {key!r}"))
    return out
