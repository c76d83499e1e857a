"""Circular intervals, simplicial complexes and dihedral symmetries.

Vertices live on Z/nZ.  A complex is stored as the antichain of its maximal
simplices, always normalized (deduplicated, subsumption-free, sorted), so that
equality is structural.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Union


class ComplexParseError(ValueError):
    """Raised when a complex string does not match the grammar."""

    def __init__(self, message: str, position: int = -1):
        super().__init__(message if position < 0 else f"{message} (at char {position})")
        self.position = position


@dataclass(frozen=True, order=True)
class Interval:
    """Arc of consecutive residues on Z/nZ, stored as (start, length).

    A length-n interval is the full vertex set and is canonicalized to
    start 0, which removes the start ambiguity for full arcs.
    """

    n: int
    start: int
    length: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"modulus must be positive, got {self.n}")
        if not 1 <= self.length <= self.n:
            raise ValueError(f"interval length {self.length} not in [1, {self.n}]")
        object.__setattr__(self, "start", self.start % self.n)
        if self.length == self.n:
            object.__setattr__(self, "start", 0)

    @property
    def end(self) -> int:
        return (self.start + self.length - 1) % self.n

    def vertices(self) -> frozenset[int]:
        return frozenset((self.start + t) % self.n for t in range(self.length))

    def __contains__(self, v: int) -> bool:
        return (v - self.start) % self.n < self.length

    def is_full(self) -> bool:
        return self.length == self.n

    def __repr__(self):
        return f"[{self.start},{self.end}]~{self.n}"


def interval_from_endpoints(a: int, b: int, n: int) -> Interval:
    """The arc from a to b; its size is 1 + ((b - a) mod n)."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    return Interval(n, a % n, 1 + ((b - a) % n))


def angle_union(i: Interval, j: Interval) -> Optional[Interval]:
    """Union of two arcs when the first overlaps into the second end-to-start.

    Present exactly when representatives a <= b <= c <= d < a+n exist with
    i = [a,c] and j = [b,d]; the result is then [a,d], whose vertex set is
    i | j.  Returns None otherwise.
    """
    if i.n != j.n:
        raise ValueError(f"modulus mismatch: {i.n} != {j.n}")
    n = i.n
    # Full arcs admit every start as a representative.
    starts_i = range(n) if i.is_full() else (i.start,)
    for a in starts_i:
        c = a + i.length - 1
        b = a + ((j.start - a) % n) if not j.is_full() else None
        bs = (a + t for t in range(n)) if j.is_full() else (b,)
        for b_ in bs:
            d = b_ + j.length - 1
            if a <= b_ <= c <= d < a + n:
                return Interval(n, a % n, d - a + 1)
    return None


@dataclass(frozen=True, order=True)
class Simplex:
    """Nonempty set of vertices, kept sorted."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        vs = tuple(sorted(set(self.vertices)))
        if not vs:
            raise ValueError("simplex must be nonempty")
        object.__setattr__(self, "vertices", vs)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> "Simplex":
        return cls(tuple(vertices))

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def issubset(self, other: "Simplex") -> bool:
        return set(self.vertices) <= set(other.vertices)

    def as_interval(self, n: int) -> Optional[Interval]:
        """The arc with this vertex set, or None if the set is not an arc."""
        vs = set(self.vertices)
        if len(vs) == n:
            return Interval(n, 0, n)
        starts = [v for v in vs if (v - 1) % n not in vs]
        if len(starts) != 1:
            return None
        s = starts[0]
        if all((s + t) % n in vs for t in range(len(vs))):
            return Interval(n, s, len(vs))
        return None

    def __repr__(self):
        return "{" + ",".join(map(str, self.vertices)) + "}"


SimplexLike = Union[Simplex, Interval, Iterable[int]]


def _as_simplex(s: SimplexLike) -> Simplex:
    if isinstance(s, Simplex):
        return s
    if isinstance(s, Interval):
        return Simplex.of(s.vertices())
    return Simplex.of(s)


@dataclass(frozen=True)
class Complex:
    """Simplicial complex over [0, n-1], as its antichain of maximal simplices."""

    n: int
    maximal: tuple[Simplex, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"vertex count must be positive, got {self.n}")
        for s in self.maximal:
            if s.vertices[0] < 0 or s.vertices[-1] >= self.n:
                raise ValueError(f"simplex {s} out of range for n={self.n}")
        # Antichain normalization: dedupe, drop subsumed members, sort.
        uniq = sorted(set(self.maximal), key=lambda s: s.vertices)
        final = [s for s in uniq if not any(s != t and s.issubset(t) for t in uniq)]
        object.__setattr__(self, "maximal", tuple(final))

    @classmethod
    def of(cls, n: int, simplices: Iterable[SimplexLike]) -> "Complex":
        return cls(n, tuple(_as_simplex(s) for s in simplices))

    @classmethod
    def full(cls, n: int) -> "Complex":
        return cls.of(n, [range(n)])

    def member(self, s: SimplexLike) -> bool:
        return complex_member(self, s)

    def star(self, v: int) -> tuple[Simplex, ...]:
        """Maximal simplices containing vertex v."""
        return tuple(s for s in self.maximal if v in s)

    def star_of_set(self, vs: Iterable[int]) -> tuple[Simplex, ...]:
        vset = set(vs)
        return tuple(s for s in self.maximal if vset <= set(s.vertices))

    def __len__(self) -> int:
        return len(self.maximal)

    def __repr__(self):
        return f"<{serialize_complex(self)}>"


def complex_member(k: Complex, s: SimplexLike) -> bool:
    """True iff s is contained in some maximal simplex of k."""
    sx = _as_simplex(s)
    if sx.vertices[0] < 0 or sx.vertices[-1] >= k.n:
        raise ValueError(f"simplex {sx} out of range for n={k.n}")
    return any(sx.issubset(t) for t in k.maximal)


def is_interval_complex(k: Complex) -> bool:
    """True iff every maximal simplex is an arc of Z/nZ."""
    return all(s.as_interval(k.n) is not None for s in k.maximal)


def all_intervals(n: int, size: int) -> list[Interval]:
    """All intervals of the given size; a single full interval when size = n."""
    if size == n:
        return [Interval(n, 0, n)]
    return [Interval(n, s, size) for s in range(n)]


# ---------------------------------------------------------------------------
# Dihedral symmetries
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Symmetry:
    """Element of the dihedral action on Z/nZ: i -> (shift +/- i) mod n.

    The paired string action of the rotation generator maps x[0..n-1] to
    flip(x[n-1]) x[0] .. x[n-2]; the reflection reverses the string.  String
    actions of two symmetries compose up to a global bit complement (the n-th
    rotation power), which every language in scope is closed under; the vertex
    and complex actions compose exactly.
    """

    n: int
    shift: int
    reflect: bool = False

    def __post_init__(self):
        object.__setattr__(self, "shift", self.shift % self.n)

    @classmethod
    def identity(cls, n: int) -> "Symmetry":
        return cls(n, 0, False)

    @classmethod
    def rotation(cls, n: int, k: int = 1) -> "Symmetry":
        return cls(n, k, False)

    @classmethod
    def reflection(cls, n: int) -> "Symmetry":
        # i -> n-1-i
        return cls(n, n - 1, True)

    @classmethod
    def group(cls, n: int) -> list["Symmetry"]:
        """All 2n vertex symmetries."""
        return [cls(n, s, r) for r in (False, True) for s in range(n)]

    def vertex(self, i: int) -> int:
        if self.reflect:
            return (self.shift - i) % self.n
        return (self.shift + i) % self.n

    def compose(self, other: "Symmetry") -> "Symmetry":
        """self after other (vertex action)."""
        if self.n != other.n:
            raise ValueError("modulus mismatch")
        if self.reflect:
            return Symmetry(self.n, self.shift - other.shift, not other.reflect)
        return Symmetry(self.n, self.shift + other.shift, other.reflect)

    def inverse(self) -> "Symmetry":
        if self.reflect:
            return Symmetry(self.n, self.shift, True)
        return Symmetry(self.n, -self.shift, False)

    def apply_string(self, word: str) -> str:
        """Paired action on binary words (rotation steps flip the wrapped bit).

        A reflecting element (shift=c) is reversal followed by c+1 rotation
        steps, matching the vertex action i -> c - i.
        """
        if len(word) != self.n:
            raise ValueError(f"word length {len(word)} != n={self.n}")
        w = word[::-1] if self.reflect else word
        steps = (self.shift + 1) % self.n if self.reflect else self.shift
        for _ in range(steps):
            w = ("1" if w[-1] == "0" else "0") + w[:-1]
        return w


def dihedral_apply(g: Symmetry, obj):
    """Vertexwise image of a complex/simplex/interval, or the string action."""
    if isinstance(obj, str):
        return g.apply_string(obj)
    if isinstance(obj, Simplex):
        return Simplex.of(g.vertex(v) for v in obj)
    if isinstance(obj, Interval):
        img = Simplex.of(g.vertex(v) for v in obj.vertices())
        arc = img.as_interval(g.n)
        assert arc is not None  # symmetries map arcs to arcs
        return arc
    if isinstance(obj, Complex):
        if obj.n != g.n:
            raise ValueError(f"modulus mismatch: {obj.n} != {g.n}")
        return Complex.of(obj.n, (dihedral_apply(g, s) for s in obj.maximal))
    raise TypeError(f"cannot apply symmetry to {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Vertex insertion / deletion
# ---------------------------------------------------------------------------

def _rho_plus(i: int):
    return lambda j: j if j < i else j + 1


def _rho_minus(i: int):
    return lambda j: j if j < i else j - 1


def insert_vertex(k: Complex, i: int) -> Complex:
    """Insert a fresh vertex at position i in [0, n].

    The new vertex joins every maximal simplex meeting {i-1 mod n, i mod n};
    remaining vertices are renamed upward.
    """
    n = k.n
    if not 0 <= i <= n:
        raise ValueError(f"insertion position {i} not in [0, {n}]")
    up = _rho_plus(i)
    neighbors = {(i - 1) % n, i % n}
    out = []
    for s in k.maximal:
        vs = [up(v) for v in s.vertices]
        if neighbors & set(s.vertices):
            vs.append(i)
        out.append(Simplex.of(vs))
    return Complex.of(n + 1, out)


def delete_vertex(k: Complex, i: int) -> Complex:
    """Remove vertex i and rename the remaining vertices downward."""
    n = k.n
    if n < 2:
        raise ValueError("cannot delete from a single-vertex complex")
    if not 0 <= i < n:
        raise ValueError(f"vertex {i} not in [0, {n - 1}]")
    down = _rho_minus(i)
    out = []
    for s in k.maximal:
        vs = [down(v) for v in s.vertices if v != i]
        if vs:
            out.append(Simplex.of(vs))
    if not out:
        raise ValueError("deletion leaves an empty complex")
    return Complex.of(n - 1, out)


def pushforward(wmap: dict[int, Iterable[int]], k: Complex,
                out_n: Optional[int] = None) -> Complex:
    """Image complex induced by per-input reader sets.

    wmap[j] lists the output cells reading source vertex j; a source simplex S
    maps to the union of wmap[j] over j in S.  out_n defaults to one past the
    largest referenced output cell.
    """
    readers = {j: frozenset(vs) for j, vs in wmap.items()}
    for s in k.maximal:
        for v in s.vertices:
            if v not in readers:
                raise ValueError(f"no reader set for source vertex {v}")
    if out_n is None:
        out_n = max((max(vs) for vs in readers.values() if vs), default=-1) + 1
        if out_n == 0:
            raise ValueError("cannot infer output size from empty reader sets")
    for j, vs in readers.items():
        if any(v < 0 or v >= out_n for v in vs):
            raise ValueError(f"reader set of {j} exceeds output range [0, {out_n - 1}]")
    images = []
    for s in k.maximal:
        img = frozenset().union(*(readers[v] for v in s.vertices))
        if img:
            images.append(Simplex.of(img))
    if not images:
        raise ValueError("pushforward image is empty")
    return Complex.of(out_n, images)


# ---------------------------------------------------------------------------
# Text grammar:  n=<int>; then whitespace-separated [a,b] or {v1,v2,...}
# ---------------------------------------------------------------------------

_HEAD_RE = re.compile(r"^\s*n\s*=\s*(\d+)\s*;")
_INT_RE = re.compile(r"\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]")
_SET_RE = re.compile(r"\{\s*(-?\d+(?:\s*,\s*-?\d+)*)\s*\}")


def parse_complex(text: str) -> Complex:
    m = _HEAD_RE.match(text)
    if not m:
        raise ComplexParseError("expected header 'n=<int>;'", 0)
    n = int(m.group(1))
    if n < 1:
        raise ComplexParseError("n must be positive", m.start(1))
    pos = m.end()
    simplices = []
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] == "[":
            mi = _INT_RE.match(text, pos)
            if not mi:
                raise ComplexParseError("malformed interval", pos)
            simplices.append(interval_from_endpoints(int(mi.group(1)), int(mi.group(2)), n))
            pos = mi.end()
        elif text[pos] == "{":
            ms = _SET_RE.match(text, pos)
            if not ms:
                raise ComplexParseError("malformed vertex set", pos)
            vs = [int(v) for v in ms.group(1).split(",")]
            if any(v < 0 or v >= n for v in vs):
                raise ComplexParseError(f"vertex out of range [0, {n - 1}]", pos)
            simplices.append(Simplex.of(vs))
            pos = ms.end()
        else:
            raise ComplexParseError(f"unexpected character {text[pos]!r}", pos)
    if not simplices:
        raise ComplexParseError("complex has no simplices", len(text))
    return Complex.of(n, simplices)


def serialize_complex(k: Complex) -> str:
    """Normalized form; arcs are written [a,b], other sets {v1,...}."""
    parts = []
    for s in k.maximal:
        arc = s.as_interval(k.n)
        if arc is not None:
            parts.append(f"[{arc.start},{arc.end}]")
        else:
            parts.append("{" + ",".join(map(str, s.vertices)) + "}")
    return f"n={k.n}; " + " ".join(parts)
