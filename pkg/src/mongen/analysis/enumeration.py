"""Bounded enumeration of interval complexes and minimal generating ones.

Candidates are antichains of proper arcs, one representative per dihedral
orbit (the lexicographically least serialization over the orbit).  Minimal
complexes in the search space suffice because minimal generating complexes of
the monotone language are always interval complexes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from mongen.core import (
    Complex, Interval, Symmetry, dihedral_apply, serialize_complex,
)
from mongen.language import mon
from mongen.prover.data import Budget
from mongen.analysis.families import FamilyId, classify
from mongen.analysis.minimality import (
    GEN, NOGEN, UNKNOWN, GenerationOracle, minimality_check,
)


ENUMERATION_BOUND = 7


def _contains_arc(s1: int, l1: int, s2: int, l2: int, n: int) -> bool:
    """Arc (s2, l2) inside arc (s1, l1)."""
    return (s2 - s1) % n + l2 <= l1


def is_orbit_representative(k: Complex) -> bool:
    me = serialize_complex(k)
    return all(serialize_complex(dihedral_apply(g, k)) >= me
               for g in Symmetry.group(k.n))


def enumerate_interval_complexes(n: int, max_interval_len: int,
                                 bound: int = ENUMERATION_BOUND) -> Iterator[Complex]:
    """All antichains of proper arcs with lengths <= max_interval_len, one per
    dihedral orbit."""
    if n > bound:
        raise ValueError(f"enumeration size {n} exceeds the configured bound {bound}")
    if n < 1:
        raise ValueError("size must be positive")
    top = min(max_interval_len, n - 1) if n > 1 else 1
    chosen: list[tuple[int, int]] = []

    def emit() -> Optional[Complex]:
        if not chosen:
            return None
        k = Complex.of(n, [Interval(n, s, l) for s, l in chosen])
        return k if is_orbit_representative(k) else None

    def rec(start: int) -> Iterator[Complex]:
        if start == n:
            k = emit()
            if k is not None:
                yield k
            return
        yield from rec(start + 1)
        for length in range(1, top + 1):
            if any(_contains_arc(s, l, start, length, n) or
                   _contains_arc(start, length, s, l, n) for s, l in chosen):
                continue
            chosen.append((start, length))
            yield from rec(start + 1)
            chosen.pop()

    yield from rec(0)


@dataclass(frozen=True)
class EnumEntry:
    complex: Complex
    status: str                      # GEN | NOGEN | UNKNOWN
    minimal: str                     # YES | NO | UNKNOWN
    family: Optional[FamilyId]

    def report_line(self) -> str:
        fam = str(self.family) if self.family is not None else "-"
        return (f"{serialize_complex(self.complex)} | status={self.status} | "
                f"minimal={self.minimal} | family={fam}")


def enumerate_minimal(n: int, report_mode: Optional[bool] = None,
                      budget: Budget = Budget()) -> list[EnumEntry]:
    """Classify every orbit representative; exact for n <= 5.

    In report mode (default for n >= 6) refutations come from scripts only and
    unresolved complexes stay Unknown; below that every entry is decided.
    """
    if report_mode is None:
        report_mode = n >= 6
    oracle = GenerationOracle(allow_saturate=not report_mode, budget=budget)
    entries = []
    for k in enumerate_interval_complexes(n, n - 1 if n > 1 else 1):
        decision = oracle.decide(k)
        fam = classify(k)
        fid = fam[0] if fam else None
        if decision.status == NOGEN:
            entries.append(EnumEntry(k, NOGEN, "NO", fid))
            continue
        if decision.status == UNKNOWN:
            entries.append(EnumEntry(k, UNKNOWN, "UNKNOWN", fid))
            continue
        mres = minimality_check(k, mon(n), budget, oracle=oracle)
        minimal = {"MINIMAL": "YES", "NOT_MINIMAL": "NO"}.get(mres.kind, "UNKNOWN")
        entries.append(EnumEntry(k, GEN, minimal, fid))
    return entries


def minimal_generating(n: int, budget: Budget = Budget()) -> list[tuple[Complex, Optional[FamilyId]]]:
    """The minimal generating complexes up to symmetry (exact for n <= 5)."""
    return [(e.complex, e.family) for e in enumerate_minimal(n, budget=budget)
            if e.minimal == "YES"]
