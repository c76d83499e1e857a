import itertools

import pytest

from mongen.core import (
    Complex, Symmetry, all_intervals, delete_vertex, dihedral_apply,
    insert_vertex, parse_complex, serialize_complex,
)
from mongen.genfunc import generates
from mongen.language import mon
from mongen.analysis import (
    FamilyId, GenerationOracle, classify,
    enumerate_interval_complexes, enumerate_minimal, family_complex,
    family_complex_via_insertions, family_members, insertion_preserves_minimality,
    minimal_generating, minimality_check, mu_bounds, parse_family_id,
    refute_complex, witness_function,
)
from mongen.analysis.enumeration import is_orbit_representative
from mongen.analysis.families import K5_BASE, K6_BASE, K7_BASE, K8_BASE, _k8_ids
from mongen.analysis.minimality import GEN, UNKNOWN


class TestFamilyComplexes:
    def test_k5_member_example(self):
        k = family_complex(FamilyId("k5", 7, (3, 5)))
        assert k == parse_complex("n=7; [1,6] [0,4] [6,2] [4,0]")

    def test_k8_member_example(self):
        k = family_complex(FamilyId("k8", 9, (2, 4, 6, 8)))
        assert k == parse_complex("n=9; [8,5] [6,3] [4,1] [2,7]")
        assert sorted(len(s) for s in k.maximal) == [6, 7, 7, 7]

    def test_k2_member_example(self):
        k = family_complex(FamilyId("k2", 5, (1, 4)))
        assert k == parse_complex("n=5; {0,2,3,4} {0,1,2,3}")

    def test_invalid_parameters_rejected(self):
        with pytest.raises(ValueError):
            family_complex(FamilyId("k5", 6, (1, 3)))
        with pytest.raises(ValueError):
            family_complex(FamilyId("k8", 8, (2, 4, 6, 9)))
        with pytest.raises(ValueError):
            family_complex(FamilyId("k2", 4, (2, 2)))

    def test_insertion_replays_agree(self):
        for n in range(5, 11):
            for i in range(2, n - 2):
                for j in range(i + 1, n - 1):
                    fid = FamilyId("k5", n, (i, j))
                    assert family_complex(fid) == family_complex_via_insertions(fid)
        for n in range(8, 11):
            for fid in _k8_ids(n):
                assert family_complex(fid) == family_complex_via_insertions(fid)

    def test_k5_insert_shifts_parameters(self):
        for n in range(5, 8):
            for i in range(2, n - 2):
                for j in range(i + 1, n - 1):
                    k = family_complex(FamilyId("k5", n, (i, j)))
                    assert insert_vertex(k, 2) == \
                        family_complex(FamilyId("k5", n + 1, (i + 1, j + 1)))

    def test_k5_family_nonredundant(self):
        for n in range(5, 10):
            members = [family_complex(FamilyId("k5", n, (i, j)))
                       for i in range(2, n - 2) for j in range(i + 1, n - 1)]
            for x, y in itertools.permutations(range(len(members)), 2):
                assert not all(members[y].member(s) for s in members[x].maximal)

    def test_family_id_text_round_trip(self):
        for fid, _ in family_members(7):
            assert parse_family_id(str(fid)) == fid


class TestClassify:
    def test_k5_base(self):
        res = classify(K5_BASE)
        assert res is not None
        fid, g = res
        assert fid == FamilyId("k5", 5, (2, 3))
        assert (g.shift, g.reflect) == (3, False)
        assert dihedral_apply(g, K5_BASE) == family_complex(fid)

    def test_insertion_image_stays_in_family(self):
        res = classify(insert_vertex(K5_BASE, 4))
        assert res is not None and res[0].tag == "k5" and res[0].n == 6

    def test_full_complex_unclassified(self):
        assert classify(Complex.full(5)) is None

    def test_bases_classify_to_themselves(self):
        for base, tag in ((K6_BASE, "k6"), (K7_BASE, "k7"), (K8_BASE, "k8")):
            res = classify(base)
            assert res is not None and res[0].tag == tag


class TestWitnesses:
    def test_all_known_families_generate(self):
        for n in (5, 6, 7):
            for fid, member in family_members(n):
                if fid.tag == "k6":
                    continue
                f = witness_function(fid)
                assert generates(f, mon(n), member), fid

    def test_k8_family_witnesses_generate(self):
        for n in (8, 9):
            for fid in _k8_ids(n):
                f = witness_function(fid)
                assert generates(f, mon(n), family_complex(fid)), fid

    def test_k6_has_no_witness(self):
        assert witness_function(FamilyId("k6", 6, ())) is None


class TestMinimality:
    def test_k5_minimal(self):
        res = minimality_check(K5_BASE, mon(5))
        assert res.kind == "MINIMAL"
        assert len(res.certificates) == len(K5_BASE.maximal)

    def test_insertion_image_minimal(self):
        assert insertion_preserves_minimality(K5_BASE, 4)
        res = minimality_check(insert_vertex(K5_BASE, 4), mon(6))
        assert res.kind == "MINIMAL"

    def test_deletion_image_not_minimal(self):
        res = minimality_check(delete_vertex(K5_BASE, 1), mon(4))
        assert res.kind == "NOT_MINIMAL"
        assert res.witness == parse_complex("n=4; {1,2,3} {0,2,3}")

    def test_k2_members_minimal(self):
        for n in (3, 4, 5):
            for a, b in ((0, 1), (0, n // 2)):
                res = minimality_check(family_complex(FamilyId("k2", n, (a, b))),
                                       mon(n))
                assert res.kind == "MINIMAL", (n, a, b)

    def test_k8_minimal(self):
        res = minimality_check(K8_BASE, mon(8))
        assert res.kind == "MINIMAL"

    def test_insertion_guard_examples(self):
        assert insertion_preserves_minimality(K8_BASE, 1)
        assert not insertion_preserves_minimality(
            Complex.of(2, [[0], [1]]), 0)
        with pytest.raises(ValueError):
            insertion_preserves_minimality(
                parse_complex("n=5; {0,2,4}"), 1)

    def test_non_generating_complex(self):
        res = minimality_check(Complex.of(5, all_intervals(5, 3)), mon(5))
        assert res.kind == "NOT_MINIMAL" and res.witness is None


class TestRefuteComplex:
    def test_script_coverage_on_subcomplexes(self):
        # Every immediate subcomplex of the five-cell base is refutable.
        from mongen.analysis.minimality import immediate_subcomplexes
        for sub in immediate_subcomplexes(K5_BASE):
            ref = refute_complex(sub, allow_saturate=False)
            assert ref is not None
            assert ref.check()

    def test_generating_complex_not_refuted(self):
        assert refute_complex(K5_BASE) is None
        assert refute_complex(Complex.full(4)) is None


class TestMuBounds:
    def test_table_rows(self):
        expected = {1: (1, 1, 1), 2: (1, 1, 2), 3: (2, 2, 3), 4: (3, 3, 3),
                    5: (4, 4, 4), 6: (4, None, 5), 7: (5, 5, 6), 8: (6, 6, 6)}
        for n, (lo, exact, up) in expected.items():
            r = mu_bounds(n)
            assert (r.lower, r.exact, r.upper) == (lo, exact, up), n
            assert r.max_witness_interval() <= r.upper

    def test_witnesses_generate(self):
        oracle = GenerationOracle()
        for n in range(2, 9):
            r = mu_bounds(n)
            assert oracle.decide(r.witness).status == GEN, n

    def test_n12_witness(self):
        r = mu_bounds(12)
        assert (r.lower, r.upper, r.exact) == (9, 9, 9)
        assert sorted(len(s) for s in r.witness.maximal) == [9, 9, 9, 9]

    def test_certificates(self):
        for n in (5, 7, 8):
            r = mu_bounds(n, certify=True)
            assert r.certificate is not None and r.certificate.check(), n


class TestEnumeration:
    def test_small_examples_present(self):
        reps = {serialize_complex(k) for k in enumerate_interval_complexes(3, 2)}
        assert "n=3; [0,0] [1,1] [2,2]" in reps
        assert "n=3; [0,1] [2,0] [1,2]" in reps

    def test_every_candidate_is_interval_complex(self):
        from mongen.core import is_interval_complex
        for k in enumerate_interval_complexes(4, 3):
            assert is_interval_complex(k)

    def test_orbit_uniqueness(self):
        for n in (3, 4, 5):
            reps = list(enumerate_interval_complexes(n, n - 1))
            seen = set()
            for k in reps:
                assert is_orbit_representative(k)
                images = {serialize_complex(dihedral_apply(g, k))
                          for g in Symmetry.group(n)}
                assert not (images - {serialize_complex(k)}) & seen
                seen |= images

    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            list(enumerate_interval_complexes(9, 4))

    def test_minimal_n2_to_n4_are_two_coface_pairs(self):
        for n in (2, 3, 4):
            found = minimal_generating(n)
            assert found, n
            assert all(fid is not None and fid.tag == "k2" for _, fid in found), n

    def test_minimal_n5(self):
        found = minimal_generating(5)
        tags = sorted(fid.tag for _, fid in found)
        assert tags == ["k2", "k2", "k5"]

    def test_no_unknowns_up_to_five(self):
        for n in (2, 3, 4, 5):
            entries = enumerate_minimal(n)
            assert all(e.status != UNKNOWN and e.minimal != "UNKNOWN"
                       for e in entries), n


@pytest.mark.slow
class TestReportModes:
    def test_small_values_structure_n6(self):
        from collections import Counter
        entries = enumerate_minimal(6)
        tags = Counter(e.family.tag for e in entries
                       if e.minimal == "YES" and e.family)
        assert dict(tags) == {"k2": 3, "k5": 2}
        unknown = [e for e in entries if e.status == UNKNOWN]
        assert len(unknown) == 1 and unknown[0].family.tag == "k6"
        assert unknown[0].complex == K6_BASE

    def test_small_values_structure_n7(self):
        from collections import Counter
        entries = enumerate_minimal(7)
        tags = Counter(e.family.tag for e in entries
                       if e.minimal == "YES" and e.family)
        assert dict(tags) == {"k2": 3, "k5": 4, "k7": 1}
        unknown = [e for e in entries if e.status == UNKNOWN]
        assert len(unknown) == 1 and unknown[0].family.tag == "k6"


@pytest.mark.slow
class TestStructuralProperties:
    def test_anchored_triple_property_n5(self):
        # Every confirmed-generating complex contains one of the three
        # anchored intervals, for all parameter pairs.
        from mongen.core import Simplex, interval_from_endpoints
        from mongen.analysis.scripts import arc_vertices
        n = 5
        oracle = GenerationOracle()
        gens = [k for k in enumerate_interval_complexes(n, n - 1)
                if oracle.decide(k).status == GEN]
        assert gens
        for k in gens:
            for i in range(1, n):
                for j in range(1, n):
                    s3 = arc_vertices(n, (j + 1) % n, 0) | \
                        arc_vertices(n, 0, (i - 1) % n)
                    has = (k.member(Simplex.of(arc_vertices(n, 0, j))) or
                           k.member(Simplex.of(arc_vertices(n, i, 0))) or
                           len(s3) == n or k.member(Simplex.of(s3)))
                    assert has, (serialize_complex(k), i, j)

    def test_parameter_extraction_n5(self):
        # A confirmed-generating complex without a 4-interval through 0
        # contains the three-interval pattern of the one-coface family.
        from mongen.core import Simplex, interval_from_endpoints
        n = 5
        oracle = GenerationOracle()
        for k in enumerate_interval_complexes(n, n - 1):
            if oracle.decide(k).status != GEN:
                continue
            for g in Symmetry.group(n):
                gk = dihedral_apply(g, k)
                big_through_zero = any(
                    gk.member(Simplex.of(iv.vertices()))
                    for iv in all_intervals(n, n - 1)
                    if 0 in iv.vertices())
                if big_through_zero:
                    continue
                found = False
                for i in range(2, n - 1):
                    for j in range(i + 1, n):
                        need = [interval_from_endpoints(0, j - 1, n),
                                interval_from_endpoints(i + 1, 0, n),
                                interval_from_endpoints(j + 1, i - 1, n)]
                        if all(gk.member(Simplex.of(iv.vertices())) for iv in need):
                            if 1 < i < j < n - 1:
                                found = True
                assert found, serialize_complex(gk)

    def test_five_interval_starts_n7(self):
        # Report mode at n = 7: confirmed generators without 6-intervals have
        # 5-interval start sets meeting {a, a+2} and {a, a+1, a+4} for all a.
        n = 7
        entries = enumerate_minimal(n)
        for e in entries:
            if e.status != GEN:
                continue
            k = e.complex
            if any(len(s) >= 6 for s in k.maximal):
                continue
            starts = {s.as_interval(n).start for s in k.maximal if len(s) == 5}
            for a in range(n):
                assert starts & {a % n, (a + 2) % n}, (serialize_complex(k), a)
                assert starts & {a % n, (a + 1) % n, (a + 4) % n}, \
                    (serialize_complex(k), a)
