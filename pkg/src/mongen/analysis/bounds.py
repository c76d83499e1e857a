"""Bounds on the least interval length needed to generate the monotone language."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from mongen.core import Complex
from mongen.analysis.families import FamilyId, K5_BASE, K7_BASE, family_complex
from mongen.analysis.scripts import (
    ScriptedRefutation, refute_short_intervals, short_interval_bound,
)

# Known exact values for small sizes; None marks the open case.
_EXACT = {1: 1, 2: 1, 3: 2, 4: 3, 5: 4, 6: None, 7: 5, 8: 6}


@dataclass(frozen=True)
class MuResult:
    n: int
    lower: int
    upper: int
    exact: Optional[int]
    witness: Complex
    witness_family: str
    certificate: Optional[ScriptedRefutation] = None

    def max_witness_interval(self) -> int:
        return max(len(s) for s in self.witness.maximal)


def _witness(n: int) -> tuple[Complex, str]:
    if n == 1:
        return Complex.of(1, [[0]]), "single cell"
    if n <= 4 or n == 6:
        fid = FamilyId("k2", n, (0, 1))
        return family_complex(fid), str(fid)
    if n == 5:
        return K5_BASE, "k5 base"
    if n == 7:
        return K7_BASE, "k7 base"
    k = (3 * n + 3) // 4                       # ceil(3n/4)
    anchors = tuple((t + 1) * (n - k) for t in range(4))
    fid = FamilyId("k8", n, anchors)
    return family_complex(fid), str(fid)


def mu_bounds(n: int, certify: bool = False) -> MuResult:
    """Lower/upper bounds with a generating witness achieving the best known
    interval length; optionally attaches the lower-bound refutation trace."""
    if n < 1:
        raise ValueError("size must be positive")
    lower = short_interval_bound(n)            # floor((3n+1)/4)
    upper = (3 * n + 3) // 4                   # ceil(3n/4)
    exact = _EXACT.get(n, lower if lower == upper else None)
    witness, family = _witness(n)
    certificate = None
    if certify and n >= 3:
        certificate = refute_short_intervals(n)
    return MuResult(n, lower, upper, exact, witness, family, certificate)
