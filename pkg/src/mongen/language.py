"""Binary languages as explicit word sets, partial sequences, and rules.

Words are strings over {0,1}; a partial sequence fixes a subset of positions.
Internally both are mirrored as (mask, bits) integer pairs with bit t of the
integer holding position t, which keeps compatibility and closure cheap.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from typing import Iterable, Optional


def word_to_bits(word: str) -> int:
    bits = 0
    for t, ch in enumerate(word):
        if ch == "1":
            bits |= 1 << t
        elif ch != "0":
            raise ValueError(f"non-binary character {ch!r} in word")
    return bits


def bits_to_word(bits: int, n: int) -> str:
    return "".join("1" if bits >> t & 1 else "0" for t in range(n))


@dataclass(frozen=True, order=True)
class PartialSeq:
    """Partial assignment of bits to positions in [0, n-1]."""

    n: int
    mask: int = 0
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("length must be positive")
        if self.mask >> self.n:
            raise ValueError(f"positions exceed length {self.n}")
        object.__setattr__(self, "bits", self.bits & self.mask)

    @classmethod
    def of(cls, n: int, entries: dict[int, int]) -> "PartialSeq":
        mask = bits = 0
        for pos, val in entries.items():
            if not 0 <= pos < n:
                raise ValueError(f"position {pos} not in [0, {n - 1}]")
            mask |= 1 << pos
            if val:
                bits |= 1 << pos
        return cls(n, mask, bits)

    @classmethod
    def total(cls, word: str) -> "PartialSeq":
        return cls(len(word), (1 << len(word)) - 1, word_to_bits(word))

    @classmethod
    def empty(cls, n: int) -> "PartialSeq":
        return cls(n, 0, 0)

    def entries(self) -> dict[int, int]:
        return {t: self.bits >> t & 1 for t in range(self.n) if self.mask >> t & 1}

    def domain(self) -> frozenset[int]:
        return frozenset(t for t in range(self.n) if self.mask >> t & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __getitem__(self, pos: int) -> Optional[int]:
        if self.mask >> pos & 1:
            return self.bits >> pos & 1
        return None

    def compatible(self, other: "PartialSeq") -> bool:
        """True iff the two agree on their common domain."""
        self._check(other)
        return (self.bits ^ other.bits) & self.mask & other.mask == 0

    def union(self, other: "PartialSeq") -> "PartialSeq":
        self._check(other)
        if not self.compatible(other):
            raise ValueError("cannot unite incompatible partial sequences")
        return PartialSeq(self.n, self.mask | other.mask, self.bits | other.bits)

    def restrict(self, positions: Iterable[int]) -> "PartialSeq":
        m = 0
        for p in positions:
            m |= 1 << p
        return PartialSeq(self.n, self.mask & m, self.bits & m)

    def extends(self, other: "PartialSeq") -> bool:
        """True iff this assigns everything other does, with the same values."""
        self._check(other)
        return (self.mask & other.mask) == other.mask and \
            (self.bits ^ other.bits) & other.mask == 0

    def matches_word(self, word_bits: int) -> bool:
        return (word_bits ^ self.bits) & self.mask == 0

    def _check(self, other: "PartialSeq"):
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} != {other.n}")

    def __repr__(self):
        inner = ",".join(f"{t}:{v}" for t, v in sorted(self.entries().items()))
        return "{" + inner + "}"


@dataclass(frozen=True)
class Rule:
    """Forcing rule premise -> conclusion between partial sequences.

    A partial sequence respects the rule when, if it extends the premise, it
    does not contradict the conclusion.  On total words this is the usual
    implication.
    """

    premise: PartialSeq
    conclusion: PartialSeq

    def __post_init__(self):
        if not self.premise.compatible(self.conclusion):
            raise ValueError("rule premise and conclusion must be compatible")
        # Normalized form: the conclusion only mentions fresh positions.
        overlap = self.premise.mask & self.conclusion.mask
        if overlap:
            object.__setattr__(
                self, "conclusion",
                PartialSeq(self.conclusion.n,
                           self.conclusion.mask & ~self.premise.mask,
                           self.conclusion.bits & ~self.premise.mask))
        if self.conclusion.mask == 0:
            raise ValueError("rule conclusion is vacuous")

    def respected_by(self, p: PartialSeq) -> bool:
        if not p.extends(self.premise):
            return True
        return p.compatible(self.conclusion)


class Language:
    """Nonempty set of equal-length binary words."""

    def __init__(self, n: int, words: Iterable[str]):
        if n < 1:
            raise ValueError("length must be positive")
        codes = set()
        for w in words:
            if len(w) != n:
                raise ValueError(f"word {w!r} does not have length {n}")
            codes.add(word_to_bits(w))
        if not codes:
            raise ValueError("language must be nonempty")
        self.n = n
        self.codes: tuple[int, ...] = tuple(sorted(codes))
        self._lock = threading.Lock()
        self._closure_cache: dict[tuple[int, int], Optional[tuple[int, int]]] = {}

    @property
    def words(self) -> frozenset[str]:
        return frozenset(bits_to_word(c, self.n) for c in self.codes)

    def sorted_words(self) -> list[str]:
        return [bits_to_word(c, self.n) for c in self.codes]

    def __len__(self) -> int:
        return len(self.codes)

    def __contains__(self, word: str) -> bool:
        return len(word) == self.n and word_to_bits(word) in set(self.codes)

    def __eq__(self, other) -> bool:
        return isinstance(other, Language) and self.n == other.n and \
            self.codes == other.codes

    def __hash__(self):
        return hash((self.n, self.codes))

    def __repr__(self):
        return f"Language(n={self.n}, {len(self.codes)} words)"

    # -- extension machinery -------------------------------------------------

    def extension_codes(self, p: PartialSeq) -> list[int]:
        if p.n != self.n:
            raise ValueError(f"length mismatch: {p.n} != {self.n}")
        return [c for c in self.codes if (c ^ p.bits) & p.mask == 0]

    def close_codes(self, mask: int, bits: int) -> Optional[tuple[int, int]]:
        """Closure of a partial assignment given as (mask, bits); None if empty."""
        key = (mask, bits & mask)
        with self._lock:
            if key in self._closure_cache:
                return self._closure_cache[key]
        exts = [c for c in self.codes if (c ^ bits) & mask == 0]
        if not exts:
            result = None
        else:
            all_one = all_zero = -1
            for c in exts:
                all_one &= c
                all_zero &= ~c
            full = (1 << self.n) - 1
            forced = (all_one | all_zero) & full
            result = (forced, all_one & forced)
        with self._lock:
            self._closure_cache[key] = result
        return result


def extensions(p: PartialSeq, lang: Language) -> set[str]:
    """All words of the language extending p."""
    return {bits_to_word(c, lang.n) for c in lang.extension_codes(p)}


def close(p: PartialSeq, lang: Language) -> Optional[PartialSeq]:
    """Fix every position on which all extensions of p agree; None if p has none."""
    if p.n != lang.n:
        raise ValueError(f"length mismatch: {p.n} != {lang.n}")
    res = lang.close_codes(p.mask, p.bits)
    if res is None:
        return None
    return PartialSeq(lang.n, res[0], res[1])


def mon(n: int) -> Language:
    """Non-decreasing and non-increasing binary words of length n."""
    if n < 1:
        raise ValueError("length must be positive")
    ws = {"0" * (n - k) + "1" * k for k in range(n)}
    ws |= {"1" * (n - k) + "0" * k for k in range(n)}
    return Language(n, ws)


def u(n: int) -> Language:
    """Words of length n containing exactly one 1."""
    if n < 1:
        raise ValueError("length must be positive")
    return Language(n, {"0" * t + "1" + "0" * (n - 1 - t) for t in range(n)})


def rules_of(lang: Language) -> set[Rule]:
    """Minimal-premise forcing rules determining the language.

    Built from the minimal unextendable partial assignments: dropping any one
    position of such an assignment gives an extendable premise that forces the
    complement value at the dropped position.  A partial sequence respects all
    returned rules iff it has an extension in the language.
    """
    n = lang.n
    rules: set[Rule] = set()
    # Enumerate partial assignments grouped by domain, smallest domains first.
    from itertools import combinations, product

    minimal_bad: list[PartialSeq] = []
    for size in range(1, n + 1):
        for dom in combinations(range(n), size):
            dmask = 0
            for t in dom:
                dmask |= 1 << t
            for vals in product((0, 1), repeat=size):
                bits = 0
                for t, v in zip(dom, vals):
                    if v:
                        bits |= 1 << t
                if lang.close_codes(dmask, bits) is not None:
                    continue
                p = PartialSeq(n, dmask, bits)
                # Enumeration is by increasing domain size, so p is minimal
                # exactly when it extends no smaller unextendable assignment.
                if any(p.extends(b) for b in minimal_bad):
                    continue
                minimal_bad.append(p)
                for t in dom:
                    premise = PartialSeq(n, dmask & ~(1 << t), bits & ~(1 << t))
                    forced_val = 0 if bits >> t & 1 else 1
                    conclusion = PartialSeq.of(n, {t: forced_val})
                    rules.add(Rule(premise, conclusion))
    return rules


def decomposes(x: Iterable[int], y: Iterable[int], lang: Language) -> bool:
    """True iff membership is determined by the restrictions to x and to y.

    Checked by brute force: every word whose restrictions to both parts extend
    into the language must itself belong to it.
    """
    n = lang.n
    xmask = ymask = 0
    for v in x:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        xmask |= 1 << v
    for v in y:
        if not 0 <= v < n:
            raise ValueError(f"vertex {v} out of range")
        ymask |= 1 << v
    if xmask | ymask != (1 << n) - 1:
        raise ValueError("the two parts must cover all positions")
    xproj = {c & xmask for c in lang.codes}
    yproj = {c & ymask for c in lang.codes}
    members = set(lang.codes)
    for w in range(1 << n):
        if w & xmask in xproj and w & ymask in yproj and w not in members:
            return False
    return True


# ---------------------------------------------------------------------------
# File format: first line n=<int>, then one word per line.
# ---------------------------------------------------------------------------

def parse_language(text: str) -> Language:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise ValueError("expected first line 'n=<int>'")
    n = int(lines[0][2:])
    return Language(n, lines[1:])


def serialize_language(lang: Language) -> str:
    return "\n".join([f"n={lang.n}"] + lang.sorted_words()) + "\n"


def language_selector(selector: str) -> Language:
    """CLI selector: mon:<n>, u:<n>, or file:<path>."""
    kind, _, arg = selector.partition(":")
    if kind == "mon":
        return mon(int(arg))
    if kind == "u":
        return u(int(arg))
    if kind == "file":
        with open(arg, "r", encoding="utf-8") as fh:
            return parse_language(fh.read())
    raise ValueError(f"unknown language selector {selector!r}")
