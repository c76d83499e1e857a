"""Independent replay of derivation traces.

The checker re-executes every rule application from scratch using only the
complex, the language, and plain dict/set arithmetic; it shares no state with
the engine, so a trace accepted here is evidence independent of the search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from mongen.core import Complex
from mongen.language import Language, PartialSeq, close
from mongen.prover.data import (
    AXIOM, CLOSE, JOIN, RESTRICT, Trace, TraceNode, TraceParseError, parse_trace,
)


@dataclass(frozen=True)
class TraceCheckResult:
    ok: bool
    failed_node: int = -1
    reason: str = ""

    def __bool__(self):
        return self.ok


def _fail(cid: int, reason: str) -> TraceCheckResult:
    return TraceCheckResult(False, cid, reason)


def _alpha_compatible(a: dict[int, str], b: dict[int, str]) -> bool:
    return all(b[j] == w for j, w in a.items() if j in b)


def _close_dict(out: dict[int, int], lang: Language) -> Optional[dict[int, int]]:
    p = PartialSeq.of(lang.n, out)
    c = close(p, lang)
    if c is None:
        return None
    return c.entries()


def check_trace_report(trace: Union[Trace, str], k: Complex,
                       lang: Language) -> TraceCheckResult:
    if isinstance(trace, str):
        try:
            trace = parse_trace(trace, k)
        except TraceParseError as exc:
            return TraceCheckResult(False, -1, f"parse error: {exc}")
    if k.n != lang.n or trace.n != k.n:
        return TraceCheckResult(False, -1, "dimension mismatch")
    words = set(lang.sorted_words())
    stars = [frozenset(j for j, s in enumerate(k.maximal) if v in s)
             for v in range(k.n)]
    m = len(k.maximal)

    seen: dict[int, TraceNode] = {}
    alphas: dict[int, dict[int, str]] = {}
    outs: dict[int, dict[int, int]] = {}
    for node in trace.nodes:
        if node.cid in seen:
            return _fail(node.cid, "duplicate constraint id")
        for p in node.parents:
            if p not in seen:
                return _fail(node.cid, f"parent #{p} does not precede the node")
        alpha = dict(node.alpha)
        out = dict(node.out)
        if any(not 0 <= j < m for j in alpha):
            return _fail(node.cid, "input cell out of range")
        if any(w not in words for w in alpha.values()):
            return _fail(node.cid, "input value outside the language")
        if any(not 0 <= t < k.n for t in out):
            return _fail(node.cid, "output position out of range")

        if node.rule == AXIOM:
            if node.parents:
                return _fail(node.cid, "axiom with parents")
            vals = set(alpha.values())
            if len(alpha) != m or len(vals) != 1:
                return _fail(node.cid, "axiom input is not a full diagonal")
            w = vals.pop()
            if out != {t: int(ch) for t, ch in enumerate(w)}:
                return _fail(node.cid, "axiom output differs from its word")
        elif node.rule == RESTRICT:
            if len(node.parents) != 1:
                return _fail(node.cid, "restriction needs one parent")
            par = node.parents[0]
            cell = node.cell
            if not 0 <= cell < k.n:
                return _fail(node.cid, "restriction cell out of range")
            pout = outs[par]
            if cell not in pout:
                return _fail(node.cid, "restriction cell unassigned in parent")
            expect_alpha = {j: w for j, w in alphas[par].items() if j in stars[cell]}
            if alpha != expect_alpha:
                return _fail(node.cid, "restricted input does not match the window")
            expect_out = _close_dict({cell: pout[cell]}, lang)
            if out != expect_out:
                return _fail(node.cid, "restricted output is not the closure")
        elif node.rule == JOIN:
            if len(node.parents) != 2:
                return _fail(node.cid, "join needs two parents")
            pa, pb = node.parents
            if not _alpha_compatible(alphas[pa], alphas[pb]):
                return _fail(node.cid, "joined inputs are incompatible")
            merged = dict(alphas[pa])
            merged.update(alphas[pb])
            if alpha != merged:
                return _fail(node.cid, "joined input is not the union")
            oa, ob = outs[pa], outs[pb]
            if any(t in ob and ob[t] != v for t, v in oa.items()):
                return _fail(node.cid, "joined outputs are incompatible")
            union = dict(oa)
            union.update(ob)
            expect_out = _close_dict(union, lang)
            if expect_out is None or out != expect_out:
                return _fail(node.cid, "joined output is not the closure")
        elif node.rule == CLOSE:
            if len(node.parents) != 1:
                return _fail(node.cid, "closure needs one parent")
            par = node.parents[0]
            if alpha != alphas[par]:
                return _fail(node.cid, "closure must keep the input")
            expect_out = _close_dict(outs[par], lang)
            if expect_out is None or out != expect_out:
                return _fail(node.cid, "output is not the parent closure")
        else:
            return _fail(node.cid, f"unknown rule {node.rule!r}")
        seen[node.cid] = node
        alphas[node.cid] = alpha
        outs[node.cid] = out

    term = trace.terminal
    if term[0] == "SATURATED":
        return TraceCheckResult(True)
    _, a, b, cell = term
    if a not in seen or b not in seen:
        return TraceCheckResult(False, -1, "conflict references missing constraints")
    if not _alpha_compatible(alphas[a], alphas[b]):
        return TraceCheckResult(False, -1, "conflict pair has incompatible inputs")
    if cell not in outs[a] or cell not in outs[b] or outs[a][cell] == outs[b][cell]:
        return TraceCheckResult(False, -1, "conflict pair does not clash at the cell")
    return TraceCheckResult(True)


def check_trace(trace: Union[Trace, str], k: Complex, lang: Language) -> bool:
    """True iff every node replays exactly and the terminal clash is genuine."""
    return check_trace_report(trace, k, lang).ok
