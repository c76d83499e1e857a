"""Pure-Python (numpy) implementations of the saturation hot loops.

The compiled extension mirrors these signatures exactly; both backends must
return identical results in identical order.

Row encoding: a partial input is one uint8 row (0 = unset, word index + 1
otherwise); a partial output is a (mask, bits) pair of int64 with bit t
holding position t.
"""

from __future__ import annotations

import numpy as np

BACKEND = "python"


def _alpha_compat(alphas, count, ca):
    rows = alphas[:count]
    return ((rows == 0) | (rows == ca) | (ca == 0)).all(axis=1)


def conflict_scan(alphas, masks, bits, alive, count, ca, cm, cb):
    """First alive row with compatible alpha and clashing output, else -1."""
    if count == 0:
        return -1
    ok = _alpha_compat(alphas, count, ca) & (alive[:count] != 0)
    clash = ((bits[:count] ^ cb) & masks[:count] & cm) != 0
    hits = ok & clash
    idx = int(np.argmax(hits))
    return idx if hits[idx] else -1


def join_scan(alphas, masks, bits, alive, count, ca, cm, cb):
    """Alive rows with compatible alpha and compatible output, ascending."""
    if count == 0:
        return np.empty(0, dtype=np.int64)
    ok = _alpha_compat(alphas, count, ca) & (alive[:count] != 0)
    compat = ((bits[:count] ^ cb) & masks[:count] & cm) == 0
    return np.nonzero(ok & compat)[0].astype(np.int64)


def subsumed_by_existing(alphas, masks, bits, alive, count, ca, cm, cb):
    """True iff some alive row is at least as strong as the candidate.

    A row (alpha, p) subsumes (alpha', p') when alpha' extends alpha and p
    extends p'.
    """
    if count == 0:
        return False
    rows = alphas[:count]
    weaker_alpha = ((rows == 0) | (rows == ca)).all(axis=1)
    stronger_out = ((masks[:count] & cm) == cm) & (((bits[:count] ^ cb) & cm) == 0)
    return bool((weaker_alpha & stronger_out & (alive[:count] != 0)).any())


def rows_subsumed_by(alphas, masks, bits, alive, count, ca, cm, cb):
    """Alive rows the candidate subsumes (their alpha extends the candidate's
    and the candidate's output extends theirs), ascending."""
    if count == 0:
        return np.empty(0, dtype=np.int64)
    rows = alphas[:count]
    stronger_alpha = ((ca == 0) | (rows == ca)).all(axis=1)
    weaker_out = ((masks[:count] & cm) == masks[:count]) & \
        (((bits[:count] ^ cb) & masks[:count]) == 0)
    hits = stronger_alpha & weaker_out & (alive[:count] != 0)
    return np.nonzero(hits)[0].astype(np.int64)
