from mongen.analysis.bounds import MuResult, mu_bounds
from mongen.analysis.enumeration import (
    EnumEntry, enumerate_interval_complexes, enumerate_minimal, minimal_generating,
)
from mongen.analysis.families import (
    FamilyId, classify, family_complex, family_complex_via_insertions,
    family_members, parse_family_id, witness_function,
)
from mongen.analysis.minimality import (
    Decision, GenerationOracle, MinimalityResult, immediate_subcomplexes,
    insertion_preserves_minimality, minimality_check, refute_complex,
)
from mongen.analysis.scripts import (
    MonScript, Rotation, ScriptError, ScriptedRefutation, missing_five_complex,
    refute_missing_five, refute_short_intervals, short_interval_bound,
    short_intervals_complex, technical_intervals,
)

__all__ = [
    "MuResult", "mu_bounds",
    "EnumEntry", "enumerate_interval_complexes", "enumerate_minimal",
    "minimal_generating",
    "FamilyId", "classify", "family_complex", "family_complex_via_insertions",
    "family_members", "parse_family_id", "witness_function",
    "Decision", "GenerationOracle", "MinimalityResult", "immediate_subcomplexes",
    "insertion_preserves_minimality", "minimality_check", "refute_complex",
    "MonScript", "Rotation", "ScriptError", "ScriptedRefutation",
    "missing_five_complex", "refute_missing_five", "refute_short_intervals",
    "short_interval_bound", "short_intervals_complex", "technical_intervals",
]
