"""Scripted refutation derivations for the monotone language.

Each script drives the inference engine through a fixed pattern of axiom,
restriction and join applications, validating every intermediate constraint
against its expected input domain and output, and ends in a genuine conflict
pair.  Scripts run directly on any complex satisfying their applicability
predicate; the emitted traces replay under the independent checker.

The walks are written once in "abstract" coordinates and instantiated through
rotate-with-flip transports, so a single chain covers all anchor positions and
value parities.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from mongen.core import Complex, Interval, Simplex, Symmetry, all_intervals
from mongen.language import mon
from mongen.prover.checker import check_trace
from mongen.prover.data import Conflict
from mongen.prover.engine import Engine, EngineOpError, saturate


class ScriptError(RuntimeError):
    """A scripted derivation step produced an unexpected constraint."""


@dataclass(frozen=True)
class Rotation:
    """Word transport by a power of the rotate-with-flip generator.

    Exponents live in [0, 2n): exponent n is the global bit complement.
    Abstract position p maps to cell (p + exp) mod n; its bit flips once for
    every wrap past the seam.
    """

    n: int
    exp: int

    def cell(self, p: int) -> int:
        return (p + self.exp) % self.n

    def flip(self, p: int) -> int:
        return ((p % self.n + self.exp % (2 * self.n)) // self.n) & 1

    def bit(self, p: int, b: int) -> int:
        return b ^ self.flip(p)

    def word(self, w: str) -> str:
        out = ["?"] * self.n
        for p, ch in enumerate(w):
            out[self.cell(p)] = str(int(ch) ^ self.flip(p))
        return "".join(out)


def arc_vertices(n: int, a: int, b: int) -> frozenset[int]:
    """Vertices of the arc from a to b inclusive (length 1 + (b-a mod n))."""
    return frozenset((a + t) % n for t in range(1 + (b - a) % n))


class MonScript:
    """Frame-aware derivation helper bound to one complex and Mon_n."""

    def __init__(self, k: Complex):
        self.k = k
        self.n = k.n
        self.lang = mon(k.n)
        self.engine = Engine(k, self.lang)
        self._gamma_memo: dict[tuple[int, int], int] = {}

    # -- helpers ---------------------------------------------------------------

    def star_cells(self, vertices: frozenset[int]) -> frozenset[int]:
        return frozenset(j for j, s in enumerate(self.k.maximal)
                         if vertices <= frozenset(s.vertices))

    def expect(self, node: int, dom: frozenset[int], cell: int, value: int,
               context: str):
        if frozenset(self.engine.alpha_domain(node)) != dom:
            raise ScriptError(
                f"{context}: domain {set(self.engine.alpha_domain(node))} "
                f"differs from expected {set(dom)}")
        mask, bits = self.engine.out_pair(node)
        if mask != 1 << cell or bits != value << cell:
            raise ScriptError(
                f"{context}: output {self.engine.out_entries(node)} is not "
                f"cell {cell} = {value}")

    def _op(self, context: str, fn, *args) -> int:
        try:
            return fn(*args)
        except EngineOpError as exc:
            raise ScriptError(f"{context}: {exc}") from exc

    # -- the generic two-anchor chain -------------------------------------------

    def chain(self, ca: int, xa: int, cb: int, xb: int, target: int,
              context: str) -> int:
        """Derive the target-cell constraint carried by two anchored constraints.

        Walks the cyclic arc from xa to xb one cell at a time, restricting the
        running join at each step, then shrinks the anchor back to the target;
        the result's input lives on the stars of the two arcs (xa..target) and
        (target..xb).
        """
        n = self.n

        def walk(start_node: int, far: int, stop: int) -> int:
            node = self._op(context, self.engine.restrict,
                            self._op(context, self.engine.join, start_node, far), xa)
            t = xa
            while t != stop:
                t = (t + 1) % n
                node = self._op(context, self.engine.restrict,
                                self._op(context, self.engine.join, node, far), t)
            return node

        node = walk(ca, cb, xb)
        m = xb
        while m != target:
            m = (m - 1) % n
            node = walk(ca, node, m)
        return node

    # -- anchored single-cell constraints ---------------------------------------

    def main_tool(self, i: int, j: int, v: int) -> int:
        """Constraint forcing cell j to v on the stars of [i+1, j] and [j, i].

        Derived from the diagonal axiom of a transported constant word by the
        chain walk around the whole circle.
        """
        n = self.n
        t_abs = (j - i - 1) % n
        frame = None
        for chi in (0, 1):
            cand = Rotation(n, ((i + 1) % n + n * chi) % (2 * n))
            if cand.bit(t_abs, 0) == v:
                frame = cand
                break
        assert frame is not None
        ax = self._op("main_tool axiom", self.engine.axiom, frame.word("0" * n))
        node = self.chain(ax, frame.cell(0), ax, frame.cell(n - 1), j,
                          f"main_tool(i={i}, j={j}, v={v})")
        dom = self.star_cells(arc_vertices(n, (i + 1) % n, j)) | \
            self.star_cells(arc_vertices(n, j, i % n))
        self.expect(node, dom, j, v, f"main_tool(i={i}, j={j}, v={v})")
        return node

    # -- the short-interval induction -------------------------------------------

    def gamma_short(self, j: int, exp: int, k_len: int) -> int:
        """Induction constraint of the short-interval refutation.

        In the frame of the given exponent it anchors abstract cell 0 and
        spans the stars of abstract arcs [0, j] and [j+1, b+j+1], where
        b = 2(n - k_len).
        """
        key = (j, exp % (2 * self.n))
        if key in self._gamma_memo:
            return self._gamma_memo[key]
        n = self.n
        b = 2 * (n - k_len)
        j0 = 2 * k_len - n - 1
        frame = Rotation(n, exp % (2 * n))
        ctx = f"gamma(j={j}, exp={exp})"
        if j == j0:
            # Base: the anchored constraint of the whole-circle chain.
            node = None
            for chi in (0, 1):
                g = Rotation(n, (exp + j0 + 1 + n * chi) % (2 * n))
                if g.bit(n - 1 - j0, 0) == frame.bit(0, 0):
                    ax = self._op(ctx, self.engine.axiom, g.word("0" * n))
                    node = self.chain(ax, g.cell(0), ax, g.cell(n - 1),
                                      g.cell(n - 1 - j0), ctx)
                    break
            assert node is not None
        else:
            if not j0 < j <= k_len - 1:
                raise ScriptError(f"{ctx}: induction index out of range")
            sub = Rotation(n, (exp + 1) % (2 * n))
            a = n - k_len
            ca = self.gamma_short(j - 1, (exp + 1 + a + n) % (2 * n), k_len)
            cb = self.gamma_short(j - 1, (exp + 1) % (2 * n), k_len)
            if frozenset(self.engine.alpha_domain(ca)) & \
               frozenset(self.engine.alpha_domain(cb)):
                raise ScriptError(f"{ctx}: induction anchors share input cells")
            node = self.chain(ca, sub.cell(a), cb, sub.cell(0), sub.cell(n - 1),
                              ctx)
        dom = self.star_cells(frozenset(frame.cell(p % n) for p in range(j + 1))) | \
            self.star_cells(frozenset(frame.cell(p % n)
                                      for p in range(j + 1, b + j + 2)))
        self.expect(node, dom, frame.cell(0), frame.bit(0, 0), ctx)
        self._gamma_memo[key] = node
        return node


@dataclass(frozen=True)
class ScriptedRefutation:
    """A conflict trace for a specific complex, plus how it was obtained."""

    complex: Complex
    conflict: Conflict
    method: str
    symmetry: Optional[Symmetry] = None   # maps the original complex to `complex`

    @property
    def trace(self):
        return self.conflict.trace

    def render(self) -> str:
        return self.conflict.trace.render(self.complex)

    def check(self) -> bool:
        return check_trace(self.conflict.trace, self.complex, mon(self.complex.n))


def short_interval_bound(n: int) -> int:
    """Least interval length that any generating complex must contain."""
    return (3 * n + 1) // 4


def short_intervals_complex(n: int) -> Complex:
    k = short_interval_bound(n)
    return Complex.of(n, all_intervals(n, k - 1))


def refute_short_intervals(n: int) -> ScriptedRefutation:
    """Conflict trace for the complex of all intervals shorter than the bound.

    For n >= 7 the trace is a scripted induction walking the anchor around the
    circle; smaller n fall back to plain saturation.  By upward closure the
    trace covers every complex whose simplices fit in such short intervals.
    """
    if n < 3:
        raise ValueError("meaningful only for n >= 3")
    k_len = short_interval_bound(n)
    target = short_intervals_complex(n)
    if n <= 6:
        verdict = saturate(target, mon(n))
        if not isinstance(verdict, Conflict):
            raise ScriptError(f"saturation fallback did not refute (n={n})")
        return ScriptedRefutation(target, verdict, "saturation")
    script = MonScript(target)
    j0 = 2 * k_len - n - 1
    gamma_star = script.gamma_short(k_len - 1, 0, k_len)
    alpha_star = script.gamma_short(j0, script.n, k_len)
    try:
        verdict = script.engine.conflict_verdict(alpha_star, gamma_star)
    except EngineOpError as exc:
        raise ScriptError(f"final clash failed: {exc}") from exc
    return ScriptedRefutation(target, verdict, "short-intervals script")


def technical_intervals(n: int, i: int, j: int) -> tuple[Interval, ...]:
    """The five intervals, at least one of which every generating complex has."""
    if not 1 < i < j < n - 1:
        raise ValueError("parameters must satisfy 1 < i < j < n-1")
    return (
        Interval(n, 0, 1 + j % n),
        Interval(n, (j + 1) % n, 1 + (i - j - 1) % n),
        Interval(n, (i + 1) % n, 1 + (1 - i - 1) % n),
        Interval(n, i % n, 1 + (0 - i) % n),
        Interval(n, 1, n - 1),
    )


def missing_five_complex(n: int, i: int, j: int) -> Complex:
    """Largest complex containing none of the five intervals as a member."""
    forbidden = [f.vertices() for f in technical_intervals(n, i, j)]
    transversals: list[frozenset[int]] = []
    for size in range(1, 6):
        for combo in itertools.combinations(range(n), size):
            h = frozenset(combo)
            if any(h > t or h == t for t in transversals):
                continue
            if all(h & f for f in forbidden):
                transversals.append(h)
    sims = [Simplex.of(set(range(n)) - h) for h in transversals]
    return Complex.of(n, sims)


def script_missing_five(k: Complex, i: int, j: int) -> ScriptedRefutation:
    """Refute a complex that avoids all five technical intervals."""
    n = k.n
    five = technical_intervals(n, i, j)
    for f in five:
        if k.member(Simplex.of(f.vertices())):
            raise ScriptError(f"complex contains {f}; script does not apply")
    script = MonScript(k)
    alpha = script.main_tool(i, 0, 1)
    beta = script.main_tool(j, 1, 0)
    gamma = script.chain(beta, 1, alpha, 0, i, f"missing-five(i={i}, j={j})")
    script.expect(gamma, script.star_cells(arc_vertices(n, 1, j)), i, 0,
                  f"missing-five gamma(i={i}, j={j})")
    delta = script.main_tool(n - 1, i, 1)
    try:
        verdict = script.engine.conflict_verdict(gamma, delta)
    except EngineOpError as exc:
        raise ScriptError(f"final clash failed: {exc}") from exc
    return ScriptedRefutation(k, verdict, f"missing-five(i={i},j={j})")


def refute_missing_five(n: int, i: int, j: int) -> ScriptedRefutation:
    """Scripted conflict for the maximal complex avoiding the five intervals."""
    return script_missing_five(missing_five_complex(n, i, j), i, j)


def script_missing_pair(k: Complex, a: int, b: int) -> ScriptedRefutation:
    """Refute a complex missing both the arc a..b (hence the pair {a, b}) and
    the coface of a."""
    n = k.n
    if k.member(Simplex.of([a, b])):
        raise ScriptError("complex contains the pair; script does not apply")
    if k.member(Simplex.of(set(range(n)) - {a})):
        raise ScriptError("complex contains the coface; script does not apply")
    script = MonScript(k)
    alpha = script.main_tool((a - 1) % n, b, 0)
    beta = script.main_tool(a, b, 1)
    verdict = script.engine.conflict_verdict(alpha, beta)
    return ScriptedRefutation(k, verdict, f"missing-pair(a={a},b={b})")


def script_missing_triple(k: Complex, i: int, j: int) -> ScriptedRefutation:
    """Refute a complex missing [0,j], [i,0] and the union arc [j+1, i-1]."""
    n = k.n
    script = MonScript(k)
    alpha = script.main_tool((i - 1) % n, 0, 0)
    beta = script.main_tool(j, 0, 1)
    verdict = script.engine.conflict_verdict(alpha, beta)
    return ScriptedRefutation(k, verdict, f"missing-triple(i={i},j={j})")


def script_missing_vertex(k: Complex, x: int) -> ScriptedRefutation:
    """Refute a complex in which some vertex occurs in no simplex."""
    if any(x in s for s in k.maximal):
        raise ScriptError(f"vertex {x} is covered; script does not apply")
    script = MonScript(k)
    alpha = script.main_tool((x - 1) % k.n, x, 0)
    beta = script.main_tool((x - 1) % k.n, x, 1)
    verdict = script.engine.conflict_verdict(alpha, beta)
    return ScriptedRefutation(k, verdict, f"missing-vertex({x})")
