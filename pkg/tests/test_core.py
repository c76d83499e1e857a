import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mongen.core import (
    Complex, ComplexParseError, Interval, Simplex, Symmetry, all_intervals,
    angle_union, complex_member, delete_vertex, dihedral_apply, insert_vertex,
    interval_from_endpoints, is_interval_complex, parse_complex, pushforward,
    serialize_complex,
)
from mongen.language import mon

K5 = parse_complex("n=5; [0,2] [1,3] [2,4] [3,1]")
U5_COUNTEREXAMPLE = parse_complex("n=5; [1,4] [0,2] [4,1] {0,2,3} {0,2,4}")


def brute_interval_vertices(a, b, n):
    """Oracle: walk from a to b one residue at a time."""
    out = [a % n]
    cur = a % n
    while cur != b % n:
        cur = (cur + 1) % n
        out.append(cur)
    return frozenset(out)


class TestInterval:
    def test_from_endpoints_examples(self):
        i = interval_from_endpoints(5, 2, 7)
        assert (i.start, i.length) == (5, 5)
        assert interval_from_endpoints(0, 6, 7).is_full()
        assert interval_from_endpoints(3, 3, 6).vertices() == {3}

    def test_zero_modulus_rejected(self):
        with pytest.raises(ValueError):
            interval_from_endpoints(0, 1, 0)

    def test_full_interval_canonical_start(self):
        assert interval_from_endpoints(3, 2, 6) == interval_from_endpoints(0, 5, 6)

    @given(st.integers(1, 12), st.integers(-20, 20), st.integers(-20, 20))
    def test_size_formula_matches_brute_force(self, n, a, b):
        i = interval_from_endpoints(a, b, n)
        assert i.vertices() == brute_interval_vertices(a, b, n)
        assert i.length == 1 + ((b - a) % n)


class TestAngleUnion:
    def test_examples(self):
        assert angle_union(interval_from_endpoints(0, 2, 5),
                           interval_from_endpoints(1, 3, 5)) == \
            interval_from_endpoints(0, 3, 5)
        got = angle_union(interval_from_endpoints(0, 4, 7),
                          interval_from_endpoints(1, 6, 7))
        assert got is not None and got.is_full()
        assert angle_union(interval_from_endpoints(0, 0, 5),
                           interval_from_endpoints(2, 2, 5)) is None

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            angle_union(Interval(5, 0, 2), Interval(6, 0, 2))

    def test_union_is_exact_vertex_union(self):
        # Whenever present, the result is exactly the set union (n <= 12).
        for n in range(1, 13):
            for i, j in itertools.product(
                    ((s, l) for s in range(n) for l in range(1, n + 1)), repeat=2):
                a, b = Interval(n, *i), Interval(n, *j)
                got = angle_union(a, b)
                if got is not None:
                    assert got.vertices() == a.vertices() | b.vertices(), (a, b)

    def test_overlapping_adjacent_arcs_unite(self):
        for n in range(2, 9):
            for s in range(n):
                for l1 in range(1, n):
                    for l2 in range(1, n - l1 + 1):
                        a = Interval(n, s, l1)
                        b = Interval(n, (s + l1 - 1) % n, l2)
                        got = angle_union(a, b)
                        assert got is not None
                        assert got.vertices() == a.vertices() | b.vertices()


class TestComplex:
    def test_member_examples(self):
        assert complex_member(K5, Simplex.of([0, 1]))
        # {1,4} sits inside the wrapped interval [3,1]
        assert complex_member(K5, Simplex.of([1, 4]))
        assert not complex_member(K5, Simplex.of([1, 2, 4]))
        for s in K5.maximal:
            for v in s:
                assert complex_member(K5, Simplex.of([v]))

    def test_member_out_of_range(self):
        with pytest.raises(ValueError):
            complex_member(K5, Simplex.of([5]))

    def test_antichain_normalization(self):
        k = Complex.of(4, [[0, 1], [0, 1, 2], [0, 1, 2], [3]])
        assert [s.vertices for s in k.maximal] == [(0, 1, 2), (3,)]

    def test_interval_complex_predicate(self):
        assert is_interval_complex(K5)
        assert not is_interval_complex(U5_COUNTEREXAMPLE)
        assert is_interval_complex(Complex.full(6))

    def test_parse_errors_carry_position(self):
        with pytest.raises(ComplexParseError):
            parse_complex("nope")
        with pytest.raises(ComplexParseError):
            parse_complex("n=4; [0,")
        with pytest.raises(ComplexParseError):
            parse_complex("n=4; {9}")

    def test_serialize_prefers_intervals(self):
        text = serialize_complex(parse_complex("n=5; {1,2,3} {0,2,4}"))
        assert "[1,3]" in text and "{0,2,4}" in text

    @given(st.data())
    @settings(max_examples=150, deadline=None)
    def test_normalization_is_a_serialization_fixpoint(self, data):
        n = data.draw(st.integers(1, 8))
        n_simplices = data.draw(st.integers(1, 5))
        sims = [
            Simplex.of(data.draw(st.sets(st.integers(0, n - 1), min_size=1,
                                         max_size=n)))
            for _ in range(n_simplices)
        ]
        k = Complex.of(n, sims)
        text = serialize_complex(k)
        assert serialize_complex(parse_complex(text)) == text
        assert parse_complex(text) == k


class TestSymmetry:
    def test_string_action_examples(self):
        r = Symmetry.rotation(5)
        assert dihedral_apply(r, "00011") == "00001"
        w, seen = "00000", set()
        for _ in range(2 * 5):
            seen.add(w)
            w = r.apply_string(w)
        assert w == "00000" and seen == mon(5).words

    def test_shift_three_on_k5(self):
        g = Symmetry.rotation(5, 3)
        assert dihedral_apply(g, K5) == parse_complex("n=5; [1,4] [0,2] [4,1] [3,0]")

    def test_group_law_on_complexes(self):
        for g in Symmetry.group(5):
            for h in Symmetry.group(5):
                lhs = dihedral_apply(g.compose(h), K5)
                rhs = dihedral_apply(g, dihedral_apply(h, K5))
                assert lhs == rhs, (g, h)

    def test_inverse_round_trips(self):
        for n in (3, 5, 6):
            k = Complex.of(n, all_intervals(n, max(1, n - 2)))
            for g in Symmetry.group(n):
                assert dihedral_apply(g.inverse(), dihedral_apply(g, k)) == k
                for i in range(n):
                    assert g.inverse().vertex(g.vertex(i)) == i

    def test_string_vertex_pairing(self):
        # (g.x) at position g.i depends only on x at i, via a fixed flip.
        for n in (2, 4, 7):
            for g in Symmetry.group(n):
                zeros = g.apply_string("0" * n)
                for w in mon(n).sorted_words():
                    out = g.apply_string(w)
                    assert out in mon(n).words
                    for i in range(n):
                        want = str(int(w[i]) ^ int(zeros[g.vertex(i)]))
                        assert out[g.vertex(i)] == want

    def test_interval_overload(self):
        g = Symmetry.rotation(5, 3)
        got = dihedral_apply(g, interval_from_endpoints(0, 2, 5))
        assert got == interval_from_endpoints(3, 0, 5)
        s = Symmetry.reflection(5)
        got = dihedral_apply(s, interval_from_endpoints(0, 2, 5))
        assert got == interval_from_endpoints(2, 4, 5)

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            dihedral_apply(Symmetry.rotation(4), K5)


class TestInsertionDeletion:
    def test_insert_examples(self):
        assert insert_vertex(K5, 4) == parse_complex("n=6; [0,2] [1,4] [2,5] [3,1]")

    def test_k2_family_closed_under_insertion(self):
        k = Complex.of(4, [{1, 2, 3}, {0, 1, 2}])
        grown = insert_vertex(k, 2)
        sizes = sorted(len(s) for s in grown.maximal)
        assert sizes == [4, 4]
        missing = [next(iter(set(range(5)) - set(s.vertices))) for s in grown.maximal]
        assert len(set(missing)) == 2

    def test_delete_examples(self):
        assert delete_vertex(K5, 1) == parse_complex("n=4; {0,1} {1,2,3} {0,2,3}")
        assert delete_vertex(Complex.full(5), 2) == Complex.full(4)

    def test_delete_insert_inverse(self):
        for n in (2, 3, 4, 5, 6):
            k = Complex.of(n, all_intervals(n, max(1, n - 2)))
            for i in range(n + 1):
                assert delete_vertex(insert_vertex(k, i), i) == k
        for i in range(6):
            assert delete_vertex(insert_vertex(K5, i), i) == K5

    def test_insert_preserves_interval_complexes(self):
        for i in range(6):
            assert is_interval_complex(insert_vertex(K5, i))
        for g in Symmetry.group(5):
            assert is_interval_complex(dihedral_apply(g, K5))

    def test_range_errors(self):
        with pytest.raises(ValueError):
            insert_vertex(K5, 6)
        with pytest.raises(ValueError):
            delete_vertex(K5, 5)
        with pytest.raises(ValueError):
            delete_vertex(Complex.of(1, [[0]]), 0)


class TestPushforward:
    def test_identity(self):
        wmap = {j: {j} for j in range(5)}
        assert pushforward(wmap, K5, 5) == K5

    def test_bit_deletion(self):
        k6 = insert_vertex(K5, 5)
        wmap = {j: ({j} if j < 5 else set()) for j in range(6)}
        assert pushforward(wmap, k6, 5) == delete_vertex(k6, 5)

    def test_symmetry_pushforward(self):
        for g in Symmetry.group(5):
            wmap = {j: {g.vertex(j)} for j in range(5)}
            assert pushforward(wmap, K5, 5) == dihedral_apply(g, K5)

    def test_out_of_range_readers_rejected(self):
        with pytest.raises(ValueError):
            pushforward({j: {j} for j in range(5)}, K5, 3)
