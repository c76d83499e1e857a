import itertools

import pytest

from mongen.core import Complex, Symmetry, dihedral_apply, insert_vertex, parse_complex
from mongen.genfunc import (
    SIGMA, GenFunction, InputCell, LiftPreconditionError, OutputCell,
    block_correction, builtin, comm_complex, conjugate, essential_windows,
    function_selector, generates, image, k2_generator, k8_bit_adapter,
    lift_insert, maj, parse_function, serialize_function,
)
from mongen.language import mon, u

K5 = parse_complex("n=5; [0,2] [1,3] [2,4] [3,1]")
K7 = parse_complex("n=7; [0,4] [1,5] [2,6] [4,1] [5,2]")
K8 = parse_complex("n=8; [0,5] [2,7] [4,1] [6,3]")


def bit_identity(n):
    return GenFunction(n, [InputCell.bit(f"x{i}") for i in range(n)],
                       [OutputCell((i,), (0, 1)) for i in range(n)])


def flip_word(w):
    return "".join("1" if ch == "0" else "0" for ch in w)


class TestBuiltinK5:
    def test_image_and_complex(self):
        f = builtin("k5")
        assert image(f) == mon(5)
        assert comm_complex(f) == K5
        assert generates(f, mon(5), K5)

    def test_fixed_point_on_monotone(self):
        f = builtin("k5")
        for w in mon(5).sorted_words():
            assert f.evaluate(tuple(int(c) for c in w)) == w

    def test_negation_equivariance(self):
        f = builtin("k5")
        for a in f.assignments():
            out = f.evaluate(a)
            assert f.evaluate(tuple(1 - x for x in a)) == flip_word(out)

    def test_visibility_diagram(self):
        d = essential_windows(builtin("k5"))
        expected = {0: "abe", 1: "abce", 2: "bcd", 3: "acde", 4: "ade"}
        for i, names in expected.items():
            assert "".join(sorted(d.reads(i))) == names

    def test_partial_evaluation_column(self):
        # With a = 0 and e = 0 the cells reduce to A=b, B=b, C=maj(b,c,d),
        # D=d, E=d.
        f = builtin("k5")
        for b, c, d in itertools.product((0, 1), repeat=3):
            out = f.evaluate((0, b, c, d, 0))
            assert out == f"{b}{b}{maj(b, c, d)}{d}{d}"


class TestBuiltinK7:
    def test_image_and_complex(self):
        f = builtin("k7")
        assert image(f) == mon(7)
        assert generates(f, mon(7), K7)

    def test_reachability_rows(self):
        f = builtin("k7")
        rows = {
            "00000": "0000000", "00001": "0000001", "00010": "0000011",
            "00011": "0000111", "00110": "0001111", "01011": "0011111",
            "01111": "0111111",
        }
        for inp, out in rows.items():
            assert f.evaluate(tuple(int(c) for c in inp)) == out

    def test_fixed_point_on_monotone_inputs(self):
        # A monotone input yields a monotone word that keeps the input's
        # values at the five read positions.  (Full reproduction is not
        # possible: words cut at an unread position share a projection.)
        f = builtin("k7")
        read_positions = (0, 1, 3, 5, 6)
        for v in mon(5).sorted_words():
            out = f.evaluate(tuple(int(c) for c in v))
            assert out in mon(7).words, v
            assert "".join(out[p] for p in read_positions) == v, (v, out)

    def test_partial_evaluation_g1_a0(self):
        # With g = 1 and a = 0: F = d or f, G = 1.
        f = builtin("k7")
        for b, d, fv in itertools.product((0, 1), repeat=3):
            out = f.evaluate((0, b, d, fv, 1))
            assert out[5] == str(d | fv)
            assert out[6] == "1"

    def test_visibility_diagram(self):
        d = essential_windows(builtin("k7"))
        expected = {0: "abg", 1: "abdg", 2: "abdf", 3: "bdf", 4: "bdfg",
                    5: "adfg", 6: "afg"}
        for i, names in expected.items():
            assert "".join(sorted(d.reads(i))) == names

    def test_negation_equivariance(self):
        f = builtin("k7")
        for a in f.assignments():
            assert f.evaluate(tuple(1 - x for x in a)) == flip_word(f.evaluate(a))


class TestBuiltinK8:
    def test_image_over_all_256_inputs(self):
        f = builtin("k8")
        assert f.input_space() == 256
        assert image(f) == mon(8)
        assert generates(f, mon(8), K8)

    def test_visibility_diagram_paired(self):
        d = essential_windows(builtin("k8"))
        pair_rows = {(0, 1): ("ab", "cd", "gh"), (2, 3): ("ab", "cd", "ef"),
                     (4, 5): ("cd", "ef", "gh"), (6, 7): ("ab", "ef", "gh")}
        for cells, names in pair_rows.items():
            for i in cells:
                assert tuple(sorted(d.reads(i))) == names

    def test_block_fixed_point(self):
        f = builtin("k8")
        for w in mon(4).sorted_words():
            blocks = tuple(SIGMA.index(ch * 2) for ch in w)
            assert f.evaluate(blocks) == "".join(ch * 2 for ch in w)

    def test_correction_rule_cases(self):
        # one constant block: its value wins
        assert block_correction("01", "00", "10") == "00"
        assert block_correction("01", "11", "10") == "11"
        # two constant blocks, middle constant: keep the middle
        assert block_correction("00", "11", "01") == "11"
        # two constant blocks, middle free: endpoints' first bits
        assert block_correction("00", "01", "11") == "01"
        # zero or three constants: majority of first bits, duplicated
        assert block_correction("01", "10", "01") == "00"
        assert block_correction("00", "11", "00") == "00"

    def test_monotone_core_fixes_monotone_words(self):
        def phi0(x, y, z, t):
            return (maj(1 - t, x, y), maj(x, y, z), maj(y, z, t), maj(z, t, 1 - x))
        for w in mon(4).sorted_words():
            bits = tuple(int(c) for c in w)
            assert phi0(*bits) == bits

    def test_bit_adapter_matches(self):
        f = builtin("k8")
        fb = k8_bit_adapter()
        assert image(fb) == mon(8)
        assert comm_complex(fb) == comm_complex(f) == K8
        for bits in itertools.product((0, 1), repeat=8):
            blocks = tuple(SIGMA.index(f"{bits[2*i]}{bits[2*i+1]}") for i in range(4))
            assert fb.evaluate(bits) == f.evaluate(blocks)
        out = fb.evaluate(tuple(int(c) for c in "00110000"))
        assert out in mon(8).words


class TestEssentialWindows:
    def test_constant_function(self):
        f = GenFunction(2, [InputCell.bit("x")],
                        [OutputCell((0,), (1, 1)), OutputCell((), (0,))])
        d = essential_windows(f)
        assert d.matrix == ((False,), (False,))

    def test_identity_is_diagonal(self):
        f = bit_identity(4)
        d = essential_windows(f)
        for i in range(4):
            assert [j for j, bit in enumerate(d.matrix[i]) if bit] == [i]
        assert comm_complex(f) == Complex.of(4, [[i] for i in range(4)])

    def test_declared_window_larger_than_essential(self):
        # Second input is declared but ignored.
        f = GenFunction(1, [InputCell.bit("x"), InputCell.bit("y")],
                        [OutputCell((0, 1), (0, 0, 1, 1))])
        d = essential_windows(f)
        assert d.matrix == ((True, False),)


class TestK2Generator:
    def test_diagonal_inputs(self):
        f = k2_generator(5, 1, 4)
        for w in mon(5).sorted_words():
            assert f.evaluate_named({"p": w, "q": w}) == w

    def test_disagreement_example(self):
        f = k2_generator(5, 1, 4)
        assert f.evaluate_named({"p": "00000", "q": "01111"}) == "00001"

    def test_exhaustive_all_pairs_n4(self):
        for a, b in itertools.permutations(range(4), 2):
            f = k2_generator(4, a, b)
            target = Complex.of(4, [set(range(4)) - {a}, set(range(4)) - {b}])
            assert generates(f, mon(4), target), (a, b)

    def test_exhaustive_all_pairs_n5(self):
        for a, b in itertools.permutations(range(5), 2):
            f = k2_generator(5, a, b)
            target = Complex.of(5, [set(range(5)) - {a}, set(range(5)) - {b}])
            assert generates(f, mon(5), target), (a, b)

    def test_equal_positions_rejected(self):
        with pytest.raises(ValueError):
            k2_generator(5, 2, 2)


class TestLiftInsert:
    def test_identity_lift(self):
        lifted = lift_insert(bit_identity(2), 2)
        base = Complex.of(2, [[0], [1]])
        assert generates(lifted, mon(3), insert_vertex(base, 2))

    def test_chain_to_five(self):
        f, k = bit_identity(2), Complex.of(2, [[0], [1]])
        for pos in (2, 1, 3):
            f = lift_insert(f, pos)
            k = insert_vertex(k, pos)
            assert generates(f, mon(k.n), k)
        assert f.out_n == 5

    def test_k5_lift_all_positions(self):
        f = builtin("k5")
        for i in range(6):
            assert generates(lift_insert(f, i), mon(6), insert_vertex(K5, i)), i

    def test_lift_preserves_generation_small(self):
        for n in (2, 3):
            base = Complex.of(2, [[0], [1]])
            f = bit_identity(2)
            k = base
            while k.n < n:
                f = lift_insert(f, k.n)
                k = insert_vertex(k, k.n)
            for i in range(n + 1):
                assert generates(lift_insert(f, i), mon(n + 1),
                                 insert_vertex(k, i)), (n, i)

    def test_precondition_failure_reports_witness(self):
        f = GenFunction(2, [InputCell.bit("x")],
                        [OutputCell((0,), (0, 1)), OutputCell((0,), (0, 1))])
        with pytest.raises(LiftPreconditionError) as err:
            lift_insert(f, 0)
        assert err.value.witness in mon(2).words


class TestConjugate:
    def test_all_symmetries_transport_generation(self):
        for name, target in (("k5", K5), ("k7", K7), ("k8", K8)):
            f = builtin(name)
            for g in Symmetry.group(target.n):
                fg = conjugate(f, g)
                assert generates(fg, mon(target.n), dihedral_apply(g, target)), \
                    (name, g)


class TestResourceBound:
    def test_explicit_bound_error(self):
        from mongen.genfunc import ResourceLimitError
        f = builtin("k5")
        with pytest.raises(ResourceLimitError):
            image(f, bound=4)
        with pytest.raises(ResourceLimitError):
            essential_windows(f, bound=4)


class TestFunctionFiles:
    def test_round_trip_bits(self):
        f = builtin("k7")
        text = serialize_function(f)
        g = parse_function(text)
        assert g.inputs == f.inputs and g.cells == f.cells
        assert serialize_function(g) == text

    def test_round_trip_words(self):
        for f in (builtin("k8"), k2_generator(4, 0, 2)):
            text = serialize_function(f)
            g = parse_function(text)
            assert g.inputs == f.inputs and g.cells == f.cells

    def test_selector(self):
        assert function_selector("builtin:k5").out_n == 5
        assert function_selector("k2:4,0,2").out_n == 4
        with pytest.raises(ValueError):
            function_selector("builtin:k6")
