"""Constraint, derivation and verdict types, plus the trace text format.

A trace line is

    #<id> [<RULE>] parents=<id,...> [cell=<i>] in={<simplex>:<word>,...} out={<pos>:<bit>,...}

with RULE one of AXIOM, RESTRICT, JOIN, CLOSE; the cell field is present on
RESTRICT lines only.  A trace ends with either ``SATURATED count=<n>`` or
``CONFLICT #<a> #<b> cell=<i>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from mongen.core import Complex, Simplex


AXIOM = "AXIOM"
RESTRICT = "RESTRICT"
JOIN = "JOIN"
CLOSE = "CLOSE"


@dataclass(frozen=True)
class Derivation:
    rule: str
    parents: tuple[int, ...] = ()
    cell: int = -1


@dataclass(frozen=True)
class TraceNode:
    cid: int
    rule: str
    parents: tuple[int, ...]
    cell: int                      # restriction cell, -1 otherwise
    alpha: tuple[tuple[int, str], ...]   # (input cell index, word), ascending
    out: tuple[tuple[int, int], ...]     # (position, bit), ascending


@dataclass(frozen=True)
class Trace:
    n: int
    nodes: tuple[TraceNode, ...]
    terminal: tuple                 # ("SATURATED", count) | ("CONFLICT", a, b, cell)

    def is_conflict(self) -> bool:
        return self.terminal[0] == "CONFLICT"

    def render(self, k: Complex) -> str:
        simplex_names = [_simplex_text(s, k.n) for s in k.maximal]
        lines = []
        for node in self.nodes:
            parts = [f"#{node.cid}", f"[{node.rule}]",
                     "parents=" + ",".join(str(p) for p in node.parents)]
            if node.rule == RESTRICT:
                parts.append(f"cell={node.cell}")
            alpha = ",".join(f"{simplex_names[j]}:{w}" for j, w in node.alpha)
            out = ",".join(f"{p}:{b}" for p, b in node.out)
            parts.append("in={" + alpha + "}")
            parts.append("out={" + out + "}")
            lines.append(" ".join(parts))
        t = self.terminal
        if t[0] == "SATURATED":
            lines.append(f"SATURATED count={t[1]}")
        else:
            lines.append(f"CONFLICT #{t[1]} #{t[2]} cell={t[3]}")
        return "\n".join(lines) + "\n"


def _simplex_text(s: Simplex, n: int) -> str:
    arc = s.as_interval(n)
    if arc is not None:
        return f"[{arc.start},{arc.end}]"
    return "{" + ",".join(map(str, s.vertices)) + "}"


# -- verdicts ----------------------------------------------------------------

@dataclass(frozen=True)
class Conflict:
    trace: Trace
    first: int
    second: int
    cell: int
    constraints: int

    kind = "CONFLICT"


@dataclass(frozen=True)
class Saturated:
    constraints: int

    kind = "SATURATED"


@dataclass(frozen=True)
class BudgetExhausted:
    constraints: int
    reason: str

    kind = "BUDGET"


Verdict = object  # Conflict | Saturated | BudgetExhausted


@dataclass(frozen=True)
class Budget:
    max_constraints: int = 1_000_000
    max_input_domain: Optional[int] = None   # None = all input cells
    full_join: bool = False                  # keep joins that force nothing new
    subsumption: bool = True                 # drop dominated constraints


# -- parsing -----------------------------------------------------------------

_LINE_RE = re.compile(
    r"^#(\d+)\s+\[(AXIOM|RESTRICT|JOIN|CLOSE)\]\s+parents=([\d,]*)"
    r"(?:\s+cell=(\d+))?\s+in=\{(.*)\}\s+out=\{(.*)\}$")
_CONFLICT_RE = re.compile(r"^CONFLICT\s+#(\d+)\s+#(\d+)\s+cell=(\d+)$")
_SATURATED_RE = re.compile(r"^SATURATED\s+count=(\d+)$")


class TraceParseError(ValueError):
    pass


def parse_trace(text: str, k: Complex) -> Trace:
    simplex_index = {_simplex_text(s, k.n): j for j, s in enumerate(k.maximal)}
    nodes = []
    terminal = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if terminal is not None:
            raise TraceParseError("content after terminal line")
        m = _SATURATED_RE.match(line)
        if m:
            terminal = ("SATURATED", int(m.group(1)))
            continue
        m = _CONFLICT_RE.match(line)
        if m:
            terminal = ("CONFLICT", int(m.group(1)), int(m.group(2)), int(m.group(3)))
            continue
        m = _LINE_RE.match(line)
        if not m:
            raise TraceParseError(f"malformed trace line: {line!r}")
        cid = int(m.group(1))
        rule = m.group(2)
        parents = tuple(int(p) for p in m.group(3).split(",") if p)
        cell = int(m.group(4)) if m.group(4) is not None else -1
        alpha = []
        if m.group(5):
            for part in m.group(5).split(","):
                # Simplex text may contain commas inside [] or {}; re-join.
                alpha.append(part)
            alpha = _rejoin_alpha(alpha, simplex_index)
        out = []
        if m.group(6):
            for part in m.group(6).split(","):
                pos, _, bit = part.partition(":")
                out.append((int(pos), int(bit)))
        nodes.append(TraceNode(cid, rule, parents, cell, tuple(alpha), tuple(out)))
    if terminal is None:
        raise TraceParseError("missing terminal line")
    return Trace(k.n, tuple(nodes), terminal)


def _rejoin_alpha(parts: list[str], simplex_index: dict[str, int]):
    """Re-assemble simplex:word entries that were split on inner commas."""
    entries = []
    buf = ""
    depth = 0
    for part in parts:
        buf = part if not buf else buf + "," + part
        depth += part.count("[") + part.count("{") - part.count("]") - part.count("}")
        if depth == 0 and ":" in buf:
            key, _, word = buf.rpartition(":")
            if key not in simplex_index:
                raise TraceParseError(f"unknown input cell {key!r}")
            entries.append((simplex_index[key], word))
            buf = ""
    if buf:
        raise TraceParseError(f"dangling alpha entry {buf!r}")
    return sorted(entries)
