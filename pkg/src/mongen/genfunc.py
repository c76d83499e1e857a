"""Generating functions as compiled local rule tables.

A function has an ordered list of input cells (bit-valued or word-valued) and
one bit-valued output cell per position.  Every output cell carries a window
(subset of input cells) and a flat lookup table over the window's assignment
space, so evaluation is pure table lookup; chained rule definitions are
compiled away at construction time.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional

from mongen.core import Complex, Simplex, Symmetry
from mongen.language import Language, mon, u


class ResourceLimitError(RuntimeError):
    """Raised when an exhaustive enumeration would exceed the configured bound."""


DEFAULT_INPUT_BOUND = 1 << 20

BITS = ("0", "1")


def maj(x: int, y: int, z: int) -> int:
    return 1 if x + y + z >= 2 else 0


@dataclass(frozen=True)
class InputCell:
    name: str
    alphabet: tuple[str, ...]

    def __post_init__(self):
        if not self.alphabet:
            raise ValueError("input alphabet must be nonempty")
        if len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("input alphabet has duplicates")

    @classmethod
    def bit(cls, name: str) -> "InputCell":
        return cls(name, BITS)

    @classmethod
    def words(cls, name: str, lang: Language) -> "InputCell":
        return cls(name, tuple(lang.sorted_words()))


@dataclass(frozen=True)
class OutputCell:
    window: tuple[int, ...]      # input indices, ascending
    table: tuple[int, ...]       # bit per window assignment, lexicographic

    def __post_init__(self):
        if tuple(sorted(set(self.window))) != self.window:
            raise ValueError("window must be strictly ascending input indices")


@dataclass(frozen=True)
class VisibilityDiagram:
    """Boolean matrix: rows are output cells, columns input cells."""

    out_n: int
    input_names: tuple[str, ...]
    matrix: tuple[tuple[bool, ...], ...]

    def reads(self, i: int) -> tuple[str, ...]:
        return tuple(nm for nm, bit in zip(self.input_names, self.matrix[i]) if bit)

    def pairs(self) -> frozenset[tuple[int, int]]:
        return frozenset((i, j) for i, row in enumerate(self.matrix)
                         for j, bit in enumerate(row) if bit)

    def render(self) -> str:
        width = max((len(nm) for nm in self.input_names), default=1)
        head = "     " + " ".join(nm.rjust(width) for nm in self.input_names)
        lines = [head]
        for i, row in enumerate(self.matrix):
            cells = " ".join(("#" if bit else ".").rjust(width) for bit in row)
            lines.append(f"{i:>4} {cells}")
        return "\n".join(lines)


class GenFunction:
    def __init__(self, out_n: int, inputs: Iterable[InputCell],
                 cells: Iterable[OutputCell]):
        self.out_n = out_n
        self.inputs = tuple(inputs)
        self.cells = tuple(cells)
        if len(self.cells) != out_n:
            raise ValueError(f"expected {out_n} output cells, got {len(self.cells)}")
        sizes = [len(c.alphabet) for c in self.inputs]
        for cell in self.cells:
            space = 1
            for j in cell.window:
                if j >= len(self.inputs):
                    raise ValueError(f"window references missing input {j}")
                space *= sizes[j]
            if len(cell.table) != space:
                raise ValueError(
                    f"table size {len(cell.table)} != window space {space}")
        # Mixed-radix strides per cell, leftmost window entry most significant.
        self._strides = []
        for cell in self.cells:
            strides = []
            acc = 1
            for j in reversed(cell.window):
                strides.append(acc)
                acc *= sizes[j]
            self._strides.append(tuple(reversed(strides)))

    # -- evaluation ----------------------------------------------------------

    def input_space(self) -> int:
        space = 1
        for c in self.inputs:
            space *= len(c.alphabet)
        return space

    def assignments(self) -> Iterator[tuple[int, ...]]:
        return itertools.product(*(range(len(c.alphabet)) for c in self.inputs))

    def evaluate(self, assignment: tuple[int, ...]) -> str:
        out = []
        for cell, strides in zip(self.cells, self._strides):
            idx = 0
            for j, st in zip(cell.window, strides):
                idx += assignment[j] * st
            out.append("1" if cell.table[idx] else "0")
        return "".join(out)

    def evaluate_named(self, values: dict[str, str]) -> str:
        assignment = tuple(c.alphabet.index(values[c.name]) for c in self.inputs)
        return self.evaluate(assignment)

    # -- analysis ------------------------------------------------------------

    def essential_windows(self, bound: int = DEFAULT_INPUT_BOUND) -> VisibilityDiagram:
        """Per output cell, the inputs it genuinely depends on.

        An input is essential for a cell when two window assignments differing
        only there give different bits; the minimal determining set is exactly
        the set of essential inputs.
        """
        if self.input_space() > bound:
            raise ResourceLimitError(
                f"input space {self.input_space()} exceeds bound {bound}")
        sizes = [len(c.alphabet) for c in self.inputs]
        rows = []
        for cell, strides in zip(self.cells, self._strides):
            essential = [False] * len(self.inputs)
            for pos, j in enumerate(cell.window):
                other = [range(sizes[w]) for k, w in enumerate(cell.window) if k != pos]
                stride = strides[pos]
                found = False
                for rest in itertools.product(*other):
                    base = 0
                    it = iter(rest)
                    for k, st in enumerate(strides):
                        if k != pos:
                            base += next(it) * st
                    vals = {cell.table[base + v * stride] for v in range(sizes[j])}
                    if len(vals) > 1:
                        found = True
                        break
                essential[j] = found
            rows.append(tuple(essential))
        return VisibilityDiagram(self.out_n, tuple(c.name for c in self.inputs),
                                 tuple(rows))

    def comm_complex(self, bound: int = DEFAULT_INPUT_BOUND) -> Complex:
        """Complex over output cells induced by shared essential inputs."""
        diagram = self.essential_windows(bound)
        readers = []
        for j in range(len(self.inputs)):
            vs = [i for i in range(self.out_n) if diagram.matrix[i][j]]
            if vs:
                readers.append(Simplex.of(vs))
        if not readers:
            # Constant function: every output cell still is a vertex.
            readers = [Simplex.of([i]) for i in range(self.out_n)]
        return Complex.of(self.out_n, readers)

    def image(self, bound: int = DEFAULT_INPUT_BOUND) -> Language:
        if self.input_space() > bound:
            raise ResourceLimitError(
                f"input space {self.input_space()} exceeds bound {bound}")
        return Language(self.out_n, {self.evaluate(a) for a in self.assignments()})


def essential_windows(f: GenFunction, bound: int = DEFAULT_INPUT_BOUND) -> VisibilityDiagram:
    return f.essential_windows(bound)


def comm_complex(f: GenFunction, bound: int = DEFAULT_INPUT_BOUND) -> Complex:
    return f.comm_complex(bound)


def image(f: GenFunction, bound: int = DEFAULT_INPUT_BOUND) -> Language:
    return f.image(bound)


def generates(f: GenFunction, lang: Language, k: Complex,
              bound: int = DEFAULT_INPUT_BOUND) -> bool:
    """True iff the image is exactly lang and the communication complex fits in k."""
    if f.image(bound) != lang:
        return False
    kf = f.comm_complex(bound)
    if kf.n != k.n:
        return False
    return all(k.member(s) for s in kf.maximal)


# ---------------------------------------------------------------------------
# Table compilation helpers
# ---------------------------------------------------------------------------

def _compile_cell(inputs: tuple[InputCell, ...], window: tuple[int, ...],
                  fn: Callable[[tuple[str, ...]], int]) -> OutputCell:
    """Tabulate fn over the window assignment space; fn sees window values."""
    spaces = [inputs[j].alphabet for j in window]
    table = []
    for combo in itertools.product(*spaces):
        table.append(1 if fn(combo) else 0)
    return OutputCell(window, tuple(table))


def _bit_cells(names: str) -> tuple[InputCell, ...]:
    return tuple(InputCell.bit(nm) for nm in names)


# ---------------------------------------------------------------------------
# Builtins
# ---------------------------------------------------------------------------

def _bits_cell(inputs, window, fn) -> OutputCell:
    return _compile_cell(inputs, window, lambda v: fn(*map(int, v)))


def _builtin_k5() -> GenFunction:
    """Five-cell majority corrector over inputs a..e.

    Cells A..E read their own input and its neighbors and vote, except that B
    reuses the computed value A and D reuses the computed value E.
    """
    inputs = _bit_cells("abcde")
    a, b, c, d, e = range(5)

    def A(e_, a_, b_):
        return maj(1 - e_, a_, b_)

    def E(d_, e_, a_):
        return maj(d_, e_, 1 - a_)

    cells = [
        _bits_cell(inputs, (a, b, e), lambda a_, b_, e_: A(e_, a_, b_)),
        _bits_cell(inputs, (a, b, c, e),
                   lambda a_, b_, c_, e_: maj(A(e_, a_, b_), b_, c_)),
        _bits_cell(inputs, (b, c, d), lambda b_, c_, d_: maj(b_, c_, d_)),
        _bits_cell(inputs, (a, c, d, e),
                   lambda a_, c_, d_, e_: maj(c_, d_, E(d_, e_, a_))),
        _bits_cell(inputs, (a, d, e), lambda a_, d_, e_: E(d_, e_, a_)),
    ]
    return GenFunction(5, inputs, cells)


def _builtin_k7() -> GenFunction:
    """Seven-cell majority corrector over inputs a, b, d, f, g."""
    inputs = _bit_cells("abdfg")
    a, b, d, f, g = range(5)

    def A(g_, a_, b_):
        return maj(1 - g_, a_, b_)

    def D(b_, d_, f_):
        return maj(b_, d_, f_)

    def G(f_, g_, a_):
        return maj(f_, g_, 1 - a_)

    cells = [
        _bits_cell(inputs, (a, b, g), lambda a_, b_, g_: A(g_, a_, b_)),
        _bits_cell(inputs, (a, b, d, g),
                   lambda a_, b_, d_, g_: maj(A(g_, a_, b_), b_, d_)),
        _bits_cell(inputs, (a, b, d, f),
                   lambda a_, b_, d_, f_: maj(a_, b_, D(b_, d_, f_))),
        _bits_cell(inputs, (b, d, f), lambda b_, d_, f_: D(b_, d_, f_)),
        _bits_cell(inputs, (b, d, f, g),
                   lambda b_, d_, f_, g_: maj(D(b_, d_, f_), f_, g_)),
        _bits_cell(inputs, (a, d, f, g),
                   lambda a_, d_, f_, g_: maj(d_, f_, G(f_, g_, a_))),
        _bits_cell(inputs, (a, f, g), lambda a_, f_, g_: G(f_, g_, a_)),
    ]
    return GenFunction(7, inputs, cells)


SIGMA = ("00", "01", "10", "11")


def _flip_block(x: str) -> str:
    return "".join("1" if ch == "0" else "0" for ch in x)


def block_correction(x: str, y: str, z: str) -> str:
    """Correction rule on paired blocks, by the count of constant blocks."""
    consts = [w for w in (x, y, z) if w in ("00", "11")]
    k = len(consts)
    if k in (0, 3):
        p = maj(int(x[0]), int(y[0]), int(z[0]))
        return f"{p}{p}"
    if k == 1:
        return consts[0]
    if y in ("00", "11"):
        return y
    return x[0] + z[0]


def _builtin_k8() -> GenFunction:
    """Eight-cell generator over the paired-block alphabet {00,01,10,11}."""
    inputs = (InputCell("ab", SIGMA), InputCell("cd", SIGMA),
              InputCell("ef", SIGMA), InputCell("gh", SIGMA))
    ab, cd, ef, gh = range(4)

    def pair_cells(window, fn):
        hi = _compile_cell(inputs, window, lambda v: int(fn(v)[0]))
        lo = _compile_cell(inputs, window, lambda v: int(fn(v)[1]))
        return [hi, lo]

    cells = []
    cells += pair_cells((ab, cd, gh),
                        lambda v: block_correction(_flip_block(v[2]), v[0], v[1]))
    cells += pair_cells((ab, cd, ef),
                        lambda v: block_correction(v[0], v[1], v[2]))
    cells += pair_cells((cd, ef, gh),
                        lambda v: block_correction(v[0], v[1], v[2]))
    cells += pair_cells((ab, ef, gh),
                        lambda v: block_correction(v[1], v[2], _flip_block(v[0])))
    return GenFunction(8, inputs, cells)


def k8_bit_adapter() -> GenFunction:
    """The eight-cell generator re-exposed over eight bit inputs."""
    paired = _builtin_k8()
    inputs = _bit_cells("abcdefgh")
    pair_of = {0: (0, 1), 1: (2, 3), 2: (4, 5), 3: (6, 7)}
    cells = []
    for cell in paired.cells:
        window = tuple(sorted(itertools.chain.from_iterable(
            pair_of[j] for j in cell.window)))

        def fn(v, cell=cell, window=window):
            by_bit = dict(zip(window, v))
            assignment = []
            for j in cell.window:
                hi, lo = pair_of[j]
                assignment.append(SIGMA.index(str(by_bit[hi]) + str(by_bit[lo])))
            idx = 0
            sizes = [4] * len(cell.window)
            for val, _ in zip(assignment, sizes):
                idx = idx * 4 + val
            return cell.table[idx]

        cells.append(_compile_cell(inputs, window, fn))
    return GenFunction(8, inputs, cells)


_BUILTINS = {"k5": _builtin_k5, "k7": _builtin_k7, "k8": _builtin_k8}


def builtin(name: str) -> GenFunction:
    """The packaged generators: k5, k7, or k8 (paired-block form)."""
    try:
        return _BUILTINS[name]()
    except KeyError:
        raise ValueError(f"unknown builtin {name!r}; expected one of "
                         + ", ".join(sorted(_BUILTINS)))


# ---------------------------------------------------------------------------
# Two-cell construction
# ---------------------------------------------------------------------------

def _monotone_through(n: int, a: int, ua: int, b: int, vb: int) -> str:
    """Canonical monotone word with the given values at a and b.

    For differing values, the switch sits at max(a, b); for equal values the
    word is constant.
    """
    if ua == vb:
        return str(ua) * n
    cut = max(a, b)
    low_val = ua if a < b else vb
    high_val = vb if a < b else ua
    return str(low_val) * cut + str(high_val) * (n - cut)


def k2_generator(n: int, a: int, b: int) -> GenFunction:
    """Generator for the two-(n-1)-interval complex over positions a and b.

    Two word-valued inputs carry full candidate words; cell a copies from the
    first, cell b from the second, and every other cell follows the first word
    unless the two disagree at b, in which case it falls back to the canonical
    monotone word through (a, first) and (b, second).
    """
    if n < 2:
        raise ValueError("need at least two positions")
    if not (0 <= a < n and 0 <= b < n):
        raise ValueError("positions out of range")
    if a == b:
        raise ValueError("positions must be distinct")
    lang = mon(n)
    inputs = (InputCell.words("p", lang), InputCell.words("q", lang))
    cells = []
    for i in range(n):
        if i == a:
            cells.append(_compile_cell(inputs, (0,), lambda v, i=i: int(v[0][i])))
        elif i == b:
            cells.append(_compile_cell(inputs, (1,), lambda v, i=i: int(v[0][i])))
        else:
            def fn(v, i=i):
                wp, wq = v
                if wq[b] == wp[b]:
                    return int(wp[i])
                m = _monotone_through(n, a, int(wp[a]), b, int(wq[b]))
                return int(m[i])

            cells.append(_compile_cell(inputs, (0, 1), fn))
    return GenFunction(n, inputs, cells)


# ---------------------------------------------------------------------------
# Insertion lift
# ---------------------------------------------------------------------------

class LiftPreconditionError(ValueError):
    def __init__(self, message: str, witness: Optional[str] = None):
        super().__init__(message if witness is None else f"{message}: {witness}")
        self.witness = witness


def _fresh_name(taken: set[str]) -> str:
    for base in ("p", "q", "r", "s", "t"):
        if base not in taken:
            return base
    k = 0
    while f"p{k}" in taken:
        k += 1
    return f"p{k}"


def lift_insert(f: GenFunction, i: int, bound: int = DEFAULT_INPUT_BOUND) -> GenFunction:
    """Extend a monotone-language generator by one output position.

    The new cell evaluates its two cyclic neighbor outputs and emits either
    the forced monotone-preserving bit or, when both insertions stay monotone,
    a fresh input bit.  At the seam (i = 0 or i = n) agreeing neighbors leave
    the bit free; in the interior a disagreement (the switch point) does.
    """
    n = f.out_n
    if not 0 <= i <= n:
        raise ValueError(f"insertion position {i} not in [0, {n}]")
    img = f.image(bound)
    target = mon(n)
    if img != target:
        missing = sorted(target.words - img.words)
        extra = sorted(img.words - target.words)
        witness = (missing or extra)[0]
        raise LiftPreconditionError(
            "function does not generate the monotone language", witness)

    pred, succ = (i - 1) % n, i % n
    fresh = len(f.inputs)
    fresh_cell = InputCell.bit(_fresh_name({c.name for c in f.inputs}))
    inputs = f.inputs + (fresh_cell,)

    merged = tuple(sorted(set(f.cells[pred].window) | set(f.cells[succ].window)))
    window = merged + (fresh,)

    def eval_sub(cell: OutputCell, values: dict[int, str]) -> int:
        idx = 0
        for j in cell.window:
            idx = idx * len(f.inputs[j].alphabet) + f.inputs[j].alphabet.index(values[j])
        return cell.table[idx]

    def new_rule(v):
        values = dict(zip(window, v))
        bit = int(values[fresh])
        u_ = eval_sub(f.cells[pred], values)
        v_ = eval_sub(f.cells[succ], values)
        if i == 0:
            return bit if u_ == v_ else v_
        if i == n:
            return bit if u_ == v_ else u_
        return u_ if u_ == v_ else bit

    new_cell = _compile_cell(inputs, window, new_rule)
    cells = list(f.cells)
    cells.insert(i, new_cell)
    return GenFunction(n + 1, inputs, cells)


def conjugate(f: GenFunction, g: Symmetry) -> GenFunction:
    """Post-compose with a dihedral symmetry of the output word."""
    if g.n != f.out_n:
        raise ValueError(f"symmetry modulus {g.n} != output length {f.out_n}")
    flips = g.apply_string("0" * f.out_n)
    cells: list[Optional[OutputCell]] = [None] * f.out_n
    for i, cell in enumerate(f.cells):
        target = g.vertex(i)
        if flips[target] == "1":
            cells[target] = OutputCell(cell.window,
                                       tuple(1 - b for b in cell.table))
        else:
            cells[target] = cell
    return GenFunction(f.out_n, f.inputs, tuple(cells))


# ---------------------------------------------------------------------------
# File format
# ---------------------------------------------------------------------------

def _alphabet_tag(alphabet: tuple[str, ...]) -> str:
    if alphabet == BITS:
        return "01"
    width = len(alphabet[0])
    if all(len(w) == width for w in alphabet):
        try:
            if tuple(mon(width).sorted_words()) == alphabet:
                return f"mon:{width}"
            if tuple(u(width).sorted_words()) == alphabet:
                return f"u:{width}"
        except ValueError:
            pass
    return "{" + "|".join(alphabet) + "}"


def _parse_alphabet(tag: str) -> tuple[str, ...]:
    if tag == "01":
        return BITS
    if tag.startswith("mon:"):
        return tuple(mon(int(tag[4:])).sorted_words())
    if tag.startswith("u:"):
        return tuple(u(int(tag[2:])).sorted_words())
    if tag.startswith("{") and tag.endswith("}"):
        return tuple(tag[1:-1].split("|"))
    raise ValueError(f"unknown alphabet tag {tag!r}")


def serialize_function(f: GenFunction) -> str:
    lines = [f"out_n={f.out_n}"]
    lines.append("inputs=" + ",".join(
        f"{c.name}:{_alphabet_tag(c.alphabet)}" for c in f.inputs))
    for i, cell in enumerate(f.cells):
        names = ",".join(f.inputs[j].name for j in cell.window)
        table = "".join(map(str, cell.table))
        lines.append(f"cell {i}: window={names} table={table}")
    return "\n".join(lines) + "\n"


_CELL_RE = re.compile(r"^cell\s+(\d+):\s*window=([^\s]*)\s+table=([01]+)$")


def parse_function(text: str) -> GenFunction:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("out_n="):
        raise ValueError("expected first line 'out_n=<int>'")
    out_n = int(lines[0][6:])
    if len(lines) < 2 or not lines[1].startswith("inputs="):
        raise ValueError("expected second line 'inputs=...'")
    inputs = []
    for part in lines[1][7:].split(","):
        # Word alphabets may themselves contain no commas; split on first colon.
        name, _, tag = part.partition(":")
        inputs.append(InputCell(name, _parse_alphabet(tag)))
    cells: dict[int, OutputCell] = {}
    name_to_idx = {c.name: j for j, c in enumerate(inputs)}
    for ln in lines[2:]:
        m = _CELL_RE.match(ln)
        if not m:
            raise ValueError(f"malformed cell line: {ln!r}")
        idx = int(m.group(1))
        window = tuple(name_to_idx[nm] for nm in m.group(2).split(",") if nm)
        table = tuple(int(ch) for ch in m.group(3))
        cells[idx] = OutputCell(window, table)
    if sorted(cells) != list(range(out_n)):
        raise ValueError("cell lines must cover 0..out_n-1 exactly")
    return GenFunction(out_n, inputs, [cells[i] for i in range(out_n)])


def function_selector(selector: str) -> GenFunction:
    """CLI selector: builtin:<name>, k2:<n>,<a>,<b>, or file:<path>."""
    kind, _, arg = selector.partition(":")
    if kind == "builtin":
        return builtin(arg)
    if kind == "k2":
        n, a, b = (int(x) for x in arg.split(","))
        return k2_generator(n, a, b)
    if kind == "file":
        with open(arg, "r", encoding="utf-8") as fh:
            return parse_function(fh.read())
    raise ValueError(f"unknown function selector {selector!r}")
