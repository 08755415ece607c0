"""Unadjusted function point count."""

from __future__ import annotations

from decimal import Decimal

from fpnfr.model import CELLS, EXACT, FunctionInventory, WeightProfile


def compute_ufp(inv: FunctionInventory, w: WeightProfile) -> Decimal:
    """Weighted sum of the 15 inventory cells. No rounding is applied."""
    total = Decimal(0)
    for cell in CELLS:
        total = EXACT.add(total, EXACT.multiply(Decimal(inv.count(cell)), Decimal(w.weight(cell))))
    return total
