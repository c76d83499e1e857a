from mongen.prover.audit import AuditError, AuditReport, soundness_audit
from mongen.prover.checker import TraceCheckResult, check_trace, check_trace_report
from mongen.prover.data import (
    Budget, BudgetExhausted, Conflict, Derivation, Saturated, Trace, TraceNode,
    parse_trace,
)
from mongen.prover.engine import Engine, EngineOpError, prover_window, saturate

__all__ = [
    "AuditError", "AuditReport", "soundness_audit",
    "TraceCheckResult", "check_trace", "check_trace_report",
    "Budget", "BudgetExhausted", "Conflict", "Derivation", "Saturated",
    "Trace", "TraceNode", "parse_trace",
    "Engine", "EngineOpError", "prover_window", "saturate",
]
