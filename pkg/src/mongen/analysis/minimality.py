"""Generation decisions and minimality checking for the monotone language.

The decision procedure is one-sided by design: YES comes from an explicit
generating witness (a family member inside the complex), NO from a validated
refutation (scripted or found by saturation).  Anything else is reported
Unknown rather than guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from mongen.core import Complex, Simplex, Symmetry, dihedral_apply, serialize_complex
from mongen.genfunc import conjugate, generates
from mongen.language import Language, mon
from mongen.prover.data import Budget, Conflict
from mongen.prover.engine import saturate
from mongen.analysis.families import (
    FamilyId, generating_member_inside, witness_function,
)
from mongen.analysis.scripts import (
    MonScript, ScriptError, ScriptedRefutation, arc_vertices,
    script_missing_five, script_missing_pair, script_missing_triple,
    script_missing_vertex, short_interval_bound, technical_intervals,
)
from mongen.prover.engine import EngineOpError


GEN = "GEN"
NOGEN = "NOGEN"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Decision:
    status: str
    family: Optional[tuple[FamilyId, Symmetry]] = None
    refutation: Optional[ScriptedRefutation] = None
    note: str = ""


def _arc_span(s: Simplex, n: int) -> int:
    """Size of the smallest arc containing the simplex."""
    vs = set(s.vertices)
    if len(vs) == n:
        return n
    return min(max((v - start) % n for v in vs) + 1 for start in vs)


def refute_complex(k: Complex, allow_saturate: bool = True,
                   budget: Budget = Budget()) -> Optional[ScriptedRefutation]:
    """Try the scripted refutations, then saturation; None when all fail."""
    n = k.n
    # Uncovered vertex.
    for x in range(n):
        if not any(x in s for s in k.maximal):
            try:
                return script_missing_vertex(k, x)
            except (ScriptError, EngineOpError):
                break
    # All simplices fit in short arcs.
    kl = short_interval_bound(n)
    if n >= 4 and 3 * kl >= 2 * n + 1 and kl < n and \
            all(_arc_span(s, n) <= kl - 1 for s in k.maximal):
        try:
            script = MonScript(k)
            j0 = 2 * kl - n - 1
            gamma_star = script.gamma_short(kl - 1, 0, kl)
            alpha_star = script.gamma_short(j0, n, kl)
            verdict = script.engine.conflict_verdict(alpha_star, gamma_star)
            return ScriptedRefutation(k, verdict, "short-intervals script")
        except (ScriptError, EngineOpError):
            pass
    # The five-interval exclusion, up to symmetry.
    if n >= 5:
        for g in Symmetry.group(n):
            gk = dihedral_apply(g, k)
            for i in range(2, n - 2):
                for j in range(i + 1, n - 1):
                    five = technical_intervals(n, i, j)
                    if any(gk.member(Simplex.of(f.vertices())) for f in five):
                        continue
                    try:
                        ref = script_missing_five(gk, i, j)
                        return ScriptedRefutation(gk, ref.conflict, ref.method,
                                                  symmetry=g)
                    except (ScriptError, EngineOpError):
                        continue
    # A missing pair next to a missing coface.
    for a in range(n):
        coface = Simplex.of(set(range(n)) - {a})
        if k.member(coface):
            continue
        for b in range(n):
            if b == a or k.member(Simplex.of([a, b])):
                continue
            try:
                return script_missing_pair(k, a, b)
            except (ScriptError, EngineOpError):
                continue
    # Three excluded anchored intervals, up to symmetry.
    for g in Symmetry.group(n):
        gk = dihedral_apply(g, k)
        for i in range(1, n):
            for j in range(1, n):
                s1 = arc_vertices(n, 0, j)
                s2 = arc_vertices(n, i, 0)
                s3 = arc_vertices(n, (j + 1) % n, 0) | arc_vertices(n, 0, (i - 1) % n)
                if len(s3) == n or gk.member(Simplex.of(s1)) or \
                        gk.member(Simplex.of(s2)) or gk.member(Simplex.of(s3)):
                    continue
                try:
                    ref = script_missing_triple(gk, i, j)
                    return ScriptedRefutation(gk, ref.conflict, ref.method,
                                              symmetry=g)
                except (ScriptError, EngineOpError):
                    continue
    if allow_saturate:
        verdict = saturate(k, mon(n), budget)
        if isinstance(verdict, Conflict):
            return ScriptedRefutation(k, verdict, "saturation")
    return None


class GenerationOracle:
    """Caching decision service for 'does this complex generate Mon_n'."""

    def __init__(self, allow_saturate: bool = True, budget: Budget = Budget(),
                 verify_witness: bool = True):
        self.allow_saturate = allow_saturate
        self.budget = budget
        self.verify_witness = verify_witness
        self._cache: dict[str, Decision] = {}

    def decide(self, k: Complex) -> Decision:
        key = serialize_complex(k)
        if key in self._cache:
            return self._cache[key]
        decision = self._decide(k)
        self._cache[key] = decision
        return decision

    def _decide(self, k: Complex) -> Decision:
        found = generating_member_inside(k)
        if found is not None:
            fid, g = found
            if self.verify_witness:
                f = witness_function(fid)
                assert f is not None
                fg = conjugate(f, g)
                if not generates(fg, mon(k.n), k):
                    return Decision(UNKNOWN, note=f"witness for {fid} failed")
            return Decision(GEN, family=found)
        ref = refute_complex(k, self.allow_saturate, self.budget)
        if ref is not None:
            return Decision(NOGEN, refutation=ref, note=ref.method)
        return Decision(UNKNOWN, note="no witness found, no refutation found")


MINIMAL = "MINIMAL"
NOT_MINIMAL = "NOT_MINIMAL"


@dataclass(frozen=True)
class MinimalityResult:
    kind: str                                   # MINIMAL | NOT_MINIMAL | UNKNOWN
    witness: Optional[Complex] = None           # generating proper subcomplex
    certificates: tuple = ()                    # (subcomplex, evidence) pairs
    note: str = ""


def immediate_subcomplexes(k: Complex) -> list[Optional[Complex]]:
    """Remove one maximal simplex at a time, keeping its facets.

    Generation is upward closed, so these predecessors decide minimality.
    A None entry stands for the empty complex.
    """
    out = []
    for s in k.maximal:
        rest = [t for t in k.maximal if t != s]
        if len(s) > 1:
            rest.extend(Simplex.of(set(s.vertices) - {v}) for v in s.vertices)
        if rest:
            out.append(Complex.of(k.n, rest))
        else:
            out.append(None)
    return out


def minimality_check(k: Complex, lang: Language, budget: Budget = Budget(),
                     oracle: Optional[GenerationOracle] = None) -> MinimalityResult:
    """Decide whether no proper subcomplex generates the language.

    Only the monotone language is supported; other languages would need their
    own witness constructions.
    """
    if lang != mon(k.n):
        raise ValueError("minimality checking is implemented for mon:<n> only")
    oracle = oracle or GenerationOracle(budget=budget)
    own = oracle.decide(k)
    if own.status == NOGEN:
        return MinimalityResult(NOT_MINIMAL, None,
                                ((k, own.refutation),),
                                "the complex itself does not generate")
    certificates = []
    unknown = []
    for sub in immediate_subcomplexes(k):
        if sub is None:
            certificates.append((None, "empty complex cannot generate"))
            continue
        dec = oracle.decide(sub)
        if dec.status == GEN:
            return MinimalityResult(NOT_MINIMAL, sub, (),
                                    f"subcomplex generates via {dec.family[0]}")
        if dec.status == NOGEN:
            certificates.append((sub, dec.refutation))
        else:
            unknown.append(sub)
    if unknown:
        return MinimalityResult(UNKNOWN, None, tuple(certificates),
                                f"{len(unknown)} subcomplexes unresolved")
    if own.status != GEN:
        return MinimalityResult(UNKNOWN, None, tuple(certificates),
                                "all subcomplexes refuted; generation unconfirmed")
    return MinimalityResult(MINIMAL, None, tuple(certificates),
                            f"generates via {own.family[0]}" if own.family else "")


def insertion_preserves_minimality(k: Complex, i: int) -> bool:
    """True when inserting at i provably keeps a minimal complex minimal.

    Requires that every maximal interval containing one insertion neighbor
    contains the other (in at least one direction).
    """
    from mongen.core import is_interval_complex
    if not is_interval_complex(k):
        raise ValueError("the complex must have interval simplices")
    n = k.n
    lo, hi = (i - 1) % n, i % n
    fwd = all(lo in s for s in k.maximal if hi in s)
    bwd = all(hi in s for s in k.maximal if lo in s)
    return fwd or bwd
