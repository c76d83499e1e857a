"""Empirical soundness check of the inference system against real generators.

Any function whose image is the language and whose communication complex fits
in the target complex induces a canonical-shape function (inputs = maximal
simplices, values = language words, diagonals fixed).  Every constraint the
engine derives must hold for that induced function, exhaustively over all its
inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from mongen.core import Complex
from mongen.genfunc import GenFunction, generates
from mongen.language import Language, word_to_bits
from mongen.prover.data import Budget, Conflict
from mongen.prover.engine import Engine


class AuditError(AssertionError):
    pass


@dataclass(frozen=True)
class AuditReport:
    verdict_kind: str
    constraints_checked: int
    canonical_inputs: int

    def __bool__(self):
        return True


def canonicalize(f: GenFunction, k: Complex, lang: Language) -> np.ndarray:
    """Evaluate the induced canonical-shape function on its whole input space.

    Returns an int64 array of output word codes indexed by the mixed-radix
    canonical input (one digit per maximal simplex, most significant first,
    each digit a language word index).

    Every original input cell is attached to the first maximal simplex
    containing its reader set, and receives the value that cell holds in a
    fixed preimage of the attached simplex's word.
    """
    m = len(k.maximal)
    words = lang.sorted_words()
    diagram = f.essential_windows()
    # Attach each input cell to a carrying simplex.
    attach = []
    for j in range(len(f.inputs)):
        readers = frozenset(i for i in range(f.out_n) if diagram.matrix[i][j])
        carrier = 0
        for idx, s in enumerate(k.maximal):
            if readers <= frozenset(s.vertices):
                carrier = idx
                break
        else:
            if readers:
                raise AuditError(
                    f"input {f.inputs[j].name} is read outside every simplex")
        attach.append(carrier)
    # Fixed preimage per word: first assignment in enumeration order.
    preimage: dict[str, tuple[int, ...]] = {}
    for assignment in f.assignments():
        w = f.evaluate(assignment)
        if w not in preimage:
            preimage[w] = assignment
        if len(preimage) == len(words):
            break
    missing = [w for w in words if w not in preimage]
    if missing:
        raise AuditError(f"function never outputs {missing[0]}")

    out = np.empty(len(words) ** m, dtype=np.int64)
    for idx, combo in enumerate(itertools.product(range(len(words)), repeat=m)):
        assignment = tuple(preimage[words[combo[attach[j]]]][j]
                           for j in range(len(f.inputs)))
        out[idx] = word_to_bits(f.evaluate(assignment))
    return out


def soundness_audit(f: GenFunction, k: Complex, lang: Language,
                    budget: Budget = Budget()) -> AuditReport:
    """Saturate (must not conflict) and verify every constraint against f."""
    if not generates(f, lang, k):
        raise AuditError("precondition failed: the function does not "
                         "generate the language within the complex")
    engine = Engine(k, lang, budget)
    verdict = engine.saturate()
    if isinstance(verdict, Conflict):
        raise AuditError(
            f"saturation found a conflict (#{verdict.first}, #{verdict.second}) "
            f"against a witnessed generator")
    values = canonicalize(f, k, lang)
    m = len(k.maximal)
    nwords = len(lang)
    strides = [nwords ** (m - 1 - j) for j in range(m)]
    checked = 0
    for cid in range(engine.count):
        row = engine._alphas[cid]
        mask, bits = engine.out_pair(cid)
        base = 0
        free = []
        for j in range(m):
            if row[j]:
                base += (int(row[j]) - 1) * strides[j]
            else:
                free.append(strides[j])
        idxs = np.zeros(1, dtype=np.int64) + base
        for st in free:
            idxs = (idxs[:, None] + np.arange(nwords, dtype=np.int64)[None, :] * st
                    ).reshape(-1)
        got = values[idxs]
        if (((got ^ bits) & mask) != 0).any():
            bad = int(idxs[int(np.argmax(((got ^ bits) & mask) != 0))])
            raise AuditError(
                f"constraint #{cid} {engine.alpha_entries(cid)} => "
                f"{engine.out_entries(cid)} violated at canonical input {bad} "
                f"(derivation {engine.derivation(cid)})")
        checked += 1
    return AuditReport(verdict.kind, checked, len(values))
