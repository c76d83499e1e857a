"""Families of generating complexes: constructors, witnesses, classification.

Every family springs from a base complex by vertex insertions (and circular
permutations); members carry enough parameters to rebuild both the complex
and a concrete generating function, except the six-cell base whose generation
status is open.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from mongen.core import (
    Complex, Symmetry, dihedral_apply, insert_vertex, interval_from_endpoints,
    parse_complex, serialize_complex,
)
from mongen.genfunc import GenFunction, builtin, conjugate, k2_generator, lift_insert
from mongen.language import mon


K5_BASE = parse_complex("n=5; [0,2] [1,3] [2,4] [3,1]")
K6_BASE = parse_complex("n=6; [0,3] [1,4] [2,5] [3,0] [4,1] [5,2]")
K7_BASE = parse_complex("n=7; [0,4] [1,5] [2,6] [4,1] [5,2]")
K8_BASE = parse_complex("n=8; [0,5] [2,7] [4,1] [6,3]")


@dataclass(frozen=True)
class FamilyId:
    """Identifier of a family member.

    tag k2: params (a, b); k5: (i, j); k6/k7: insertion schedule; k8: the four
    anchor offsets.
    """

    tag: str
    n: int
    params: tuple[int, ...]

    def __str__(self):
        if self.tag in ("k6", "k7"):
            inner = "ins=" + ",".join(map(str, self.params)) if self.params else "ins="
        elif self.tag == "k2":
            inner = f"a={self.params[0]},b={self.params[1]}"
        elif self.tag == "k5":
            inner = f"i={self.params[0]},j={self.params[1]}"
        else:
            inner = "a=" + ",".join(map(str, self.params))
        return f"{self.tag}(n={self.n},{inner})"


def parse_family_id(text: str) -> FamilyId:
    text = text.strip()
    tag, _, rest = text.partition("(")
    if not rest.endswith(")"):
        raise ValueError(f"malformed family id {text!r}")
    fields = {}
    for part in rest[:-1].split(";"):
        for item in part.split(","):
            if "=" in item:
                key, _, val = item.partition("=")
                fields[key] = [val] if val else []
            else:
                fields[key].append(item)
    n = int(fields.pop("n")[0])
    if tag == "k2":
        return FamilyId("k2", n, (int(fields["a"][0]), int(fields["b"][0])))
    if tag == "k5":
        return FamilyId("k5", n, (int(fields["i"][0]), int(fields["j"][0])))
    if tag in ("k6", "k7"):
        sched = tuple(int(x) for x in fields.get("ins", []) if x != "")
        return FamilyId(tag, n, sched)
    if tag == "k8":
        return FamilyId("k8", n, tuple(int(x) for x in fields["a"]))
    raise ValueError(f"unknown family tag {tag!r}")


def family_complex(fid: FamilyId) -> Complex:
    """The complex a family identifier denotes."""
    n = fid.n
    if fid.tag == "k2":
        a, b = fid.params
        if a == b or not (0 <= a < n and 0 <= b < n) or n < 2:
            raise ValueError(f"invalid parameters for {fid}")
        return Complex.of(n, [set(range(n)) - {a}, set(range(n)) - {b}])
    if fid.tag == "k5":
        i, j = fid.params
        if not (1 < i < j < n - 1):
            raise ValueError(f"invalid parameters for {fid}")
        return Complex.of(n, [
            interval_from_endpoints(1, n - 1, n),
            interval_from_endpoints(0, j - 1, n),
            interval_from_endpoints(j + 1, i - 1, n),
            interval_from_endpoints(i + 1, 0, n),
        ])
    if fid.tag in ("k6", "k7"):
        cur = K6_BASE if fid.tag == "k6" else K7_BASE
        for pos in fid.params:
            cur = insert_vertex(cur, pos)
        if cur.n != n:
            raise ValueError(f"schedule of {fid} reaches n={cur.n}, not {n}")
        return cur
    if fid.tag == "k8":
        a0, a1, a2, a3 = fid.params
        if not (a1 - a0 >= 2 and a2 - a1 >= 2 and a3 - a2 >= 2 and a3 - a0 <= n - 2):
            raise ValueError(f"invalid parameters for {fid}")
        return Complex.of(n, [
            interval_from_endpoints(a3, a2 - 1, n),
            interval_from_endpoints(a2, a1 - 1, n),
            interval_from_endpoints(a1, a0 - 1, n),
            interval_from_endpoints(a0, a3 - 1, n),
        ])
    raise ValueError(f"unknown family tag {fid.tag!r}")


def k5_insertion_schedule(fid: FamilyId) -> tuple[tuple[int, int], ...]:
    """(position, repetitions) insertion phases from the five-cell base."""
    i, j = fid.params
    n = fid.n
    return ((2, i - 2), (i + 1, j - i - 1), (j + 1, n - j - 2))


def family_complex_via_insertions(fid: FamilyId) -> Complex:
    """Rebuild a k5 or k8 member by replaying its insertion schedule."""
    if fid.tag == "k5":
        g3 = Symmetry.rotation(5, 3)
        cur = dihedral_apply(g3, K5_BASE)      # the (2,3) member at n=5
        for pos, reps in k5_insertion_schedule(fid):
            for _ in range(reps):
                cur = insert_vertex(cur, pos)
        return cur
    if fid.tag == "k8":
        n = fid.n
        shift = (n - fid.params[3]) % n
        a0, a1, a2, a3 = (x + shift for x in fid.params)
        while a3 > n:
            a0, a1, a2, a3 = a0 - n, a1 - n, a2 - n, a3 - n
        cur = K8_BASE
        pos = 1
        for anchor, gap in ((a0, None), (a1, a0), (a2, a1), (n, a2)):
            reps = (anchor - 2) if gap is None else (anchor - gap - 2)
            for _ in range(reps):
                cur = insert_vertex(cur, pos)
            pos += reps + 2
        back = Symmetry.rotation(n, (-shift) % n)
        return dihedral_apply(back, cur)
    raise ValueError(f"no insertion replay for tag {fid.tag!r}")


def witness_function(fid: FamilyId) -> Optional[GenFunction]:
    """A generating function for the member, or None when unknown (k6)."""
    if fid.tag == "k6":
        return None
    if fid.tag == "k2":
        return k2_generator(fid.n, *fid.params)
    if fid.tag == "k5":
        f = conjugate(builtin("k5"), Symmetry.rotation(5, 3))
        for pos, reps in k5_insertion_schedule(fid):
            for _ in range(reps):
                f = lift_insert(f, pos)
        return f
    if fid.tag == "k7":
        f = builtin("k7")
        for pos in fid.params:
            f = lift_insert(f, pos)
        return f
    if fid.tag == "k8":
        n = fid.n
        shift = (n - fid.params[3]) % n
        a0, a1, a2, a3 = (x + shift for x in fid.params)
        while a3 > n:
            a0, a1, a2, a3 = a0 - n, a1 - n, a2 - n, a3 - n
        f = builtin("k8")
        pos = 1
        for anchor, gap in ((a0, None), (a1, a0), (a2, a1), (n, a2)):
            reps = (anchor - 2) if gap is None else (anchor - gap - 2)
            for _ in range(reps):
                f = lift_insert(f, pos)
            pos += reps + 2
        if shift:
            f = conjugate(f, Symmetry.rotation(n, (-shift) % n))
        return f
    raise ValueError(f"unknown family tag {fid.tag!r}")


# ---------------------------------------------------------------------------
# Enumerating members at a fixed size
# ---------------------------------------------------------------------------

def _k2_ids(n: int) -> Iterator[FamilyId]:
    if n < 2:
        return
    for a in range(n):
        for b in range(a + 1, n):
            yield FamilyId("k2", n, (a, b))


def _k5_ids(n: int) -> Iterator[FamilyId]:
    for i in range(2, n - 2):
        for j in range(i + 1, n - 1):
            yield FamilyId("k5", n, (i, j))


def _k8_ids(n: int) -> Iterator[FamilyId]:
    # Anchored form with a3 = n; rotations come from the symmetry search.
    for a0 in range(2, n - 3):
        for a1 in range(a0 + 2, n - 1):
            for a2 in range(a1 + 2, n - 1):
                if n - a2 >= 2:
                    yield FamilyId("k8", n, (a0, a1, a2, n))


@lru_cache(maxsize=None)
def _insertion_family(tag: str, n: int) -> tuple[tuple[str, FamilyId], ...]:
    """All complexes reachable from the k6/k7 base by insertions, at size n.

    Returns (serialized complex, id-with-first-schedule) pairs.
    """
    base = K6_BASE if tag == "k6" else K7_BASE
    if n < base.n:
        return ()
    layer = {serialize_complex(base): ()}
    size = base.n
    while size < n:
        nxt: dict[str, tuple[int, ...]] = {}
        for text, sched in sorted(layer.items()):
            k = parse_complex(text)
            for pos in range(size + 1):
                grown = insert_vertex(k, pos)
                key = serialize_complex(grown)
                if key not in nxt:
                    nxt[key] = sched + (pos,)
        layer = nxt
        size += 1
    return tuple((text, FamilyId(tag, n, sched))
                 for text, sched in sorted(layer.items()))


def family_members(n: int) -> Iterator[tuple[FamilyId, Complex]]:
    """All family members at size n, in deterministic order (k6 included)."""
    for fid in _k2_ids(n):
        yield fid, family_complex(fid)
    if n >= 5:
        for fid in _k5_ids(n):
            yield fid, family_complex(fid)
    if n >= 6:
        for text, fid in _insertion_family("k6", n):
            yield fid, parse_complex(text)
    if n >= 7:
        for text, fid in _insertion_family("k7", n):
            yield fid, parse_complex(text)
    if n >= 8:
        for fid in _k8_ids(n):
            yield fid, family_complex(fid)


def classify(k: Complex) -> Optional[tuple[FamilyId, Symmetry]]:
    """Match the complex against the families up to dihedral symmetry.

    Returns (id, g) with dihedral_apply(g, k) == family_complex(id); the
    first hit in family order (k2, k5, k6, k7, k8), then symmetry order.
    """
    n = k.n
    members = list(family_members(n))
    for g in Symmetry.group(n):
        gk = dihedral_apply(g, k)
        for fid, member in members:
            if gk == member:
                return fid, g
    return None


def generating_member_inside(k: Complex) -> Optional[tuple[FamilyId, Symmetry]]:
    """A family member (excluding k6) contained in k, with its symmetry.

    Returns (id, g) such that dihedral_apply(g, family_complex(id)) is a
    subcomplex of k; members of known-generating families only.
    """
    n = k.n
    for fid, member in family_members(n):
        if fid.tag == "k6":
            continue
        for g in Symmetry.group(n):
            image = dihedral_apply(g, member)
            if all(k.member(s) for s in image.maximal):
                return fid, g
    return None
