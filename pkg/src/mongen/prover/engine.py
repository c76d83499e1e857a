"""Saturation engine over canonical-shape constraints.

Input cells are the maximal simplices of the complex, each holding a word of
the language; a constraint (alpha, out) asserts that every total input
extending alpha produces an output word extending out.  The engine closes the
axiom set under restriction and join, with language closure applied eagerly,
and reports either a replayable conflict trace, a saturation fixpoint, or
budget exhaustion.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable, Optional

import numpy as np

from mongen._accel import kernels
from mongen.core import Complex, Simplex
from mongen.language import Language
from mongen.prover.data import (
    AXIOM, JOIN, RESTRICT,
    Budget, BudgetExhausted, Conflict, Derivation, Saturated, Trace, TraceNode,
)


class EngineOpError(ValueError):
    """A manual rule application was invalid (range, compatibility, closure)."""


def prover_window(k: Complex, i: int) -> tuple[Simplex, ...]:
    """Input cells usable by output cell i: the maximal simplices containing i.

    This over-approximates the true window of any canonical-shape generator
    whose readers of an input cell stay inside that cell's simplex.
    """
    if not 0 <= i < k.n:
        raise ValueError(f"cell {i} not in [0, {k.n - 1}]")
    return k.star(i)


def _closure_table(lang: Language) -> Optional[np.ndarray]:
    """Dense closure table for small n: index (mask << n) | bits."""
    n = lang.n
    if n > 10:
        return None
    full = 1 << n
    table = np.full(full * full, -1, dtype=np.int64)
    codes = lang.codes
    for mask in range(full):
        groups: dict[int, list[int]] = {}
        for c in codes:
            groups.setdefault(c & mask, []).append(c)
        for bsel, members in groups.items():
            all_one = all_zero = -1
            for c in members:
                all_one &= c
                all_zero &= ~c
            forced = (all_one | all_zero) & (full - 1)
            table[(mask << n) | bsel] = (forced << n) | (all_one & forced)
    return table


class Engine:
    def __init__(self, k: Complex, lang: Language, budget: Budget = Budget()):
        if k.n != lang.n:
            raise EngineOpError(f"dimension mismatch: complex n={k.n}, language n={lang.n}")
        self.k = k
        self.lang = lang
        self.budget = budget
        self.n = k.n
        self.m = len(k.maximal)
        self.words = lang.sorted_words()
        self.codes = lang.codes
        if len(self.words) >= 255:
            raise EngineOpError("language too large for the row encoding")
        self.full_mask = (1 << self.n) - 1
        # star masks as boolean rows over input cells
        self._star = np.zeros((self.n, self.m), dtype=np.uint8)
        for j, s in enumerate(k.maximal):
            for v in s.vertices:
                self._star[v, j] = 1
        self._table = _closure_table(lang)
        cap = 1024
        self._alphas = np.zeros((cap, self.m), dtype=np.uint8)
        self._masks = np.zeros(cap, dtype=np.int64)
        self._bits = np.zeros(cap, dtype=np.int64)
        self._alive = np.zeros(cap, dtype=np.uint8)
        self._derivations: list[Derivation] = []
        self._dedup: dict[tuple[bytes, int, int], int] = {}
        self.count = 0

    # -- closure -------------------------------------------------------------

    def close_out(self, mask: int, bits: int) -> Optional[tuple[int, int]]:
        bits &= mask
        if self._table is not None:
            v = int(self._table[(mask << self.n) | bits])
            if v < 0:
                return None
            return (v >> self.n, v & self.full_mask)
        return self.lang.close_codes(mask, bits)

    # -- storage -------------------------------------------------------------

    def _grow(self):
        cap = len(self._masks) * 2
        self._alphas = np.resize(self._alphas, (cap, self.m))
        self._masks = np.resize(self._masks, cap)
        self._bits = np.resize(self._bits, cap)
        self._alive = np.resize(self._alive, cap)

    def _store(self, row: np.ndarray, mask: int, bits: int, deriv: Derivation) -> int:
        if self.count == len(self._masks):
            self._grow()
        cid = self.count
        self._alphas[cid] = row
        self._masks[cid] = mask
        self._bits[cid] = bits
        self._alive[cid] = 1
        self._derivations.append(deriv)
        self._dedup[(row.tobytes(), mask, bits)] = cid
        self.count += 1
        return cid

    def _lookup(self, row: np.ndarray, mask: int, bits: int) -> Optional[int]:
        return self._dedup.get((row.tobytes(), mask, bits))

    # -- inspection ----------------------------------------------------------

    def alpha_entries(self, cid: int) -> tuple[tuple[int, str], ...]:
        row = self._alphas[cid]
        return tuple((j, self.words[row[j] - 1]) for j in range(self.m) if row[j])

    def out_entries(self, cid: int) -> tuple[tuple[int, int], ...]:
        mask, bits = int(self._masks[cid]), int(self._bits[cid])
        return tuple((t, bits >> t & 1) for t in range(self.n) if mask >> t & 1)

    def out_pair(self, cid: int) -> tuple[int, int]:
        return int(self._masks[cid]), int(self._bits[cid])

    def alpha_domain(self, cid: int) -> tuple[int, ...]:
        row = self._alphas[cid]
        return tuple(int(j) for j in np.nonzero(row)[0])

    def derivation(self, cid: int) -> Derivation:
        return self._derivations[cid]

    def clash_cell(self, a: int, b: int) -> Optional[int]:
        """Cell where the outputs of two input-compatible constraints differ."""
        ra, rb = self._alphas[a], self._alphas[b]
        if not bool((((ra == 0) | (rb == 0)) | (ra == rb)).all()):
            return None
        diff = (int(self._bits[a]) ^ int(self._bits[b])) & \
            int(self._masks[a]) & int(self._masks[b])
        if diff == 0:
            return None
        return (diff & -diff).bit_length() - 1

    # -- manual rule applications ---------------------------------------------

    def axiom(self, word: str) -> int:
        """Diagonal axiom: every input cell holds the word, the output is it."""
        try:
            widx = self.words.index(word)
        except ValueError:
            raise EngineOpError(f"{word!r} is not in the language")
        row = np.full(self.m, widx + 1, dtype=np.uint8)
        mask, bits = self.full_mask, self.codes[widx]
        existing = self._lookup(row, mask, bits)
        if existing is not None:
            return existing
        return self._store(row, mask, bits, Derivation(AXIOM))

    def restrict(self, cid: int, cell: int) -> int:
        """Project the input to the star of an assigned output cell."""
        if not 0 <= cell < self.n:
            raise EngineOpError(f"cell {cell} out of range")
        mask, bits = self.out_pair(cid)
        if not mask >> cell & 1:
            raise EngineOpError(f"cell {cell} not assigned in constraint #{cid}")
        row = self._alphas[cid] * self._star[cell]
        closed = self.close_out(1 << cell, bits & (1 << cell))
        assert closed is not None  # a closed parent output is extendable
        existing = self._lookup(row, *closed)
        if existing is not None:
            return existing
        return self._store(row, closed[0], closed[1],
                           Derivation(RESTRICT, (cid,), cell))

    def join(self, a: int, b: int) -> int:
        """Join two compatible constraints and close the merged output."""
        ra, rb = self._alphas[a], self._alphas[b]
        if not bool((((ra == 0) | (rb == 0)) | (ra == rb)).all()):
            raise EngineOpError(f"constraints #{a} and #{b} have incompatible inputs")
        ma, ba = self.out_pair(a)
        mb, bb = self.out_pair(b)
        if (ba ^ bb) & ma & mb:
            raise EngineOpError(f"constraints #{a} and #{b} have clashing outputs")
        row = np.maximum(ra, rb)
        closed = self.close_out(ma | mb, ba | bb)
        if closed is None:
            raise EngineOpError(
                f"joined output of #{a} and #{b} has no extension in the language")
        existing = self._lookup(row, *closed)
        if existing is not None:
            return existing
        return self._store(row, closed[0], closed[1], Derivation(JOIN, (a, b)))

    # -- trace extraction ------------------------------------------------------

    def _trace_nodes(self, roots: Iterable[int]) -> tuple[TraceNode, ...]:
        needed = set()
        stack = list(roots)
        while stack:
            cid = stack.pop()
            if cid in needed:
                continue
            needed.add(cid)
            stack.extend(self._derivations[cid].parents)
        nodes = []
        for cid in sorted(needed):
            d = self._derivations[cid]
            nodes.append(TraceNode(cid, d.rule, d.parents, d.cell,
                                   self.alpha_entries(cid), self.out_entries(cid)))
        return tuple(nodes)

    def conflict_verdict(self, a: int, b: int) -> Conflict:
        cell = self.clash_cell(a, b)
        if cell is None:
            raise EngineOpError(f"constraints #{a} and #{b} do not clash")
        trace = Trace(self.n, self._trace_nodes((a, b)), ("CONFLICT", a, b, cell))
        return Conflict(trace, a, b, cell, self.count)

    # -- saturation -------------------------------------------------------------

    def _add_auto(self, row: np.ndarray, mask: int, bits: int,
                  deriv: Derivation, queue: deque) -> None:
        existing = self._lookup(row, mask, bits)
        if existing is not None:
            return
        if self.budget.subsumption:
            if kernels.subsumed_by_existing(self._alphas, self._masks, self._bits,
                                            self._alive, self.count, row, mask, bits):
                return
            victims = kernels.rows_subsumed_by(self._alphas, self._masks, self._bits,
                                               self._alive, self.count,
                                               row, mask, bits)
            for v in victims:
                self._alive[v] = 0
        cid = self._store(row, mask, bits, deriv)
        queue.append(cid)

    def saturate(self) -> object:
        """Close the axioms under restriction and join; report the outcome.

        Joins are kept only when language closure strengthens the merged
        output (unless the budget requests full joins); an unextendable merge
        is materialized into a direct clash between two derived constraints.
        """
        queue: deque[int] = deque()
        for w in self.words:
            cid = self.axiom(w)
            queue.append(cid)
        max_dom = self.budget.max_input_domain
        skipped_domain = False
        while queue:
            if self.count > self.budget.max_constraints:
                return BudgetExhausted(self.count, "max_constraints")
            cid = queue.popleft()
            if not self._alive[cid]:
                continue
            row = self._alphas[cid]
            mask, bits = self.out_pair(cid)
            idx = kernels.conflict_scan(self._alphas, self._masks, self._bits,
                                        self._alive, self.count, row, mask, bits)
            if idx >= 0 and idx != cid:
                return self.conflict_verdict(int(idx), cid)
            # Restriction at every assigned cell.
            for cell in range(self.n):
                if mask >> cell & 1:
                    prow = row * self._star[cell]
                    closed = self.close_out(1 << cell, bits & (1 << cell))
                    self._add_auto(prow, closed[0], closed[1],
                                   Derivation(RESTRICT, (cid,), cell), queue)
            # Joins with every compatible partner.
            partners = kernels.join_scan(self._alphas, self._masks, self._bits,
                                         self._alive, self.count, row, mask, bits)
            for p in partners:
                p = int(p)
                if p == cid:
                    continue
                urow = np.maximum(row, self._alphas[p])
                if max_dom is not None and int(np.count_nonzero(urow)) > max_dom:
                    skipped_domain = True
                    continue
                pm, pb = self.out_pair(p)
                umask, ubits = mask | pm, bits | pb
                closed = self.close_out(umask, ubits)
                if closed is None:
                    a, b = self._materialize_clash(cid, p)
                    return self.conflict_verdict(a, b)
                if not self.budget.full_join and closed == (umask, ubits):
                    continue
                self._add_auto(urow, closed[0], closed[1],
                               Derivation(JOIN, (cid, p)), queue)
        if skipped_domain:
            return BudgetExhausted(self.count, "max_input_domain")
        return Saturated(self.count)

    def _materialize_clash(self, a: int, b: int) -> tuple[int, int]:
        """Turn an unextendable compatible merge into a direct output clash.

        Works over a minimal unextendable position set E of the merged output:
        the closure of E minus one position forces the complement value there,
        which clashes with the single-cell restriction of the parent that
        assigned it.  Progressive joins of the single-cell restrictions either
        reach that closure or clash on the way.
        """
        ma, ba = self.out_pair(a)
        mb, bb = self.out_pair(b)
        umask, ubits = ma | mb, ba | bb
        positions = [t for t in range(self.n) if umask >> t & 1]
        emask = umask
        for t in positions:
            drop = emask & ~(1 << t)
            if self.close_out(drop, ubits & drop) is None:
                emask = drop
        epos = [t for t in range(self.n) if emask >> t & 1]
        pivot = next(t for t in epos if ma >> t & 1)
        singles = {}
        for t in epos:
            parent = a if ma >> t & 1 else b
            singles[t] = self.restrict(parent, t)
        cur = None
        for t in epos:
            if t == pivot:
                continue
            if cur is None:
                cur = singles[t]
                continue
            if self.clash_cell(cur, singles[t]) is not None:
                return cur, singles[t]
            cur = self.join(cur, singles[t])
        assert cur is not None  # minimal unextendable sets have >= 2 positions
        assert self.clash_cell(cur, singles[pivot]) is not None
        return cur, singles[pivot]


def saturate(k: Complex, lang: Language, budget: Budget = Budget()) -> object:
    """Run the inference system on (k, lang) from the diagonal axioms."""
    return Engine(k, lang, budget).saturate()
