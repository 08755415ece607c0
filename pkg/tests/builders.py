"""Project and profile builders shared by the tests."""

from __future__ import annotations

import random
from decimal import Decimal

from fpnfr.model import (
    CELLS,
    FunctionInventory,
    GscId,
    GscRatingSheet,
    NfrId,
    NfrRatingSheet,
    Project,
    WeightProfile,
)

UNIT = WeightProfile.uniform(1, name="unit")


def make_project(
    *,
    gsc: int | dict = 0,
    nfr: int | dict = 0,
    units: int = 0,
    inventory: FunctionInventory | None = None,
    profile: str = "unit",
    name: str = "demo",
) -> Project:
    """Project builder; ``units`` puts that many items in external_input.low (UFP = units under UNIT)."""
    gsc_sheet = GscRatingSheet.uniform(gsc) if isinstance(gsc, int) else GscRatingSheet({g: 0 for g in GscId} | gsc)
    nfr_sheet = NfrRatingSheet.uniform(nfr) if isinstance(nfr, int) else NfrRatingSheet({n: 0 for n in NfrId} | nfr)
    if inventory is None:
        inventory = FunctionInventory.of(external_input__low=units)
    return Project(name, inventory, gsc_sheet, nfr_sheet, profile)


def random_project(rng: random.Random, *, nfr_zero: bool = False) -> Project:
    return Project(
        name=f"p{rng.randrange(10**6)}",
        inventory=FunctionInventory({c: rng.randint(0, 30) for c in CELLS}),
        gsc=GscRatingSheet({g: rng.randint(0, 5) for g in GscId}),
        nfr=NfrRatingSheet({n: 0 if nfr_zero else rng.randint(0, 5) for n in NfrId}),
        weight_profile_name="random",
    )


def random_profile(rng: random.Random) -> WeightProfile:
    weights = {}
    for ft_cells in (CELLS[i : i + 3] for i in range(0, 15, 3)):
        ladder = sorted(Decimal(rng.randint(1, 400)) / 20 for _ in range(3))
        weights.update(zip(ft_cells, ladder))
    return WeightProfile("random", weights)
