"""Local generation of monotone binary languages over communication complexes.

The package provides circular-interval complexes, explicit binary languages,
table-compiled generating functions with visibility analysis, a saturation
prover emitting replayable refutation traces, scripted derivations for the
interval-length bounds, family classification, and a command-line front end.
"""

from mongen.core import (
    Complex,
    Interval,
    Simplex,
    Symmetry,
    angle_union,
    complex_member,
    delete_vertex,
    dihedral_apply,
    insert_vertex,
    interval_from_endpoints,
    is_interval_complex,
    parse_complex,
    pushforward,
    serialize_complex,
)
from mongen.language import (
    Language,
    PartialSeq,
    Rule,
    close,
    decomposes,
    extensions,
    mon,
    rules_of,
    u,
)

__version__ = "0.1.0"

__all__ = [
    "Complex", "Interval", "Simplex", "Symmetry",
    "angle_union", "complex_member", "delete_vertex", "dihedral_apply",
    "insert_vertex", "interval_from_endpoints", "is_interval_complex",
    "parse_complex", "pushforward", "serialize_complex",
    "Language", "PartialSeq", "Rule",
    "close", "decomposes", "extensions", "mon", "rules_of", "u",
    "__version__",
]
