from fractions import Fraction

import pytest

from mwglue.arith import is_prime
from mwglue.descent import descent_class
from mwglue.ellcurve import ECPoint
from mwglue.family import (
    FamilyParams,
    InvalidFamilyParams,
    build_instance,
    curve_for_prime,
    find_primes,
    generator_occurring_primes,
    gluing_for_instance,
    pairwise_distinct,
    run_family,
    verify_instance,
)
from mwglue.fixtures import EXAMPLE_E, FAMILY_F, FAMILY_F_GENERATORS

from oracles import naive_congruence_primes


def _params(l1=3, l2=5, gens=(), bound=10**6, count=5):
    return FamilyParams(l1=l1, l2=l2, F=FAMILY_F, F_generators=gens, bound=bound, count=count)


class TestParams:
    def test_distinct_primes_required(self):
        with pytest.raises(InvalidFamilyParams):
            _params(l1=3, l2=3).validate()

    def test_odd_primes_required(self):
        with pytest.raises(InvalidFamilyParams):
            _params(l1=2, l2=5).validate()
        with pytest.raises(InvalidFamilyParams):
            _params(l1=9, l2=5).validate()

    def test_full_two_torsion_required(self):
        params = FamilyParams(l1=3, l2=5, F=EXAMPLE_E)
        with pytest.raises(InvalidFamilyParams):
            params.validate()

    def test_generators_must_lie_on_f(self):
        params = _params(gens=(ECPoint.affine(1, 1),))
        with pytest.raises(InvalidFamilyParams):
            params.validate()

    def test_occurring_prime_conflict_rejected(self):
        # 3 occurs in the class of (3, 6) on the default F
        occ = generator_occurring_primes(_params(gens=FAMILY_F_GENERATORS))
        assert 3 in occ
        with pytest.raises(InvalidFamilyParams):
            _params(l1=3, l2=5, gens=FAMILY_F_GENERATORS).validate()

    def test_honest_generators_accepted_for_coprime_choice(self):
        _params(l1=5, l2=7, gens=FAMILY_F_GENERATORS).validate()


class TestFindPrimes:
    def test_first_five_for_3_5(self):
        search = find_primes(_params())
        assert search.primes == (229, 1129, 1579, 2029, 4729)
        assert not search.exhausted
        assert search.primes == tuple(naive_congruence_primes(3, 5, 10**6, 5))

    def test_first_for_3_7(self):
        search = find_primes(_params(l2=7, count=1))
        assert search.primes == (643,)
        assert naive_congruence_primes(3, 7, 10**4, 1) == [643]

    def test_congruences_hold(self):
        for p in find_primes(_params(count=4)).primes:
            assert p % 9 == 4 and p % 25 == 4
            assert is_prime(p)

    def test_bound_exhaustion_flagged(self):
        search = find_primes(_params(bound=1000, count=100))
        assert search.primes == (229,)
        assert search.exhausted

    def test_generator_filter_excludes_occurring_primes(self):
        # on y^2 = x(x - 229)(x + 1) the 2-torsion point (0, 0) has class
        # (1, -229, -229), so 229 occurs and must be skipped by the search
        from mwglue.ellcurve import EllipticCurve

        crafted = EllipticCurve.from_roots(0, 229, -1)
        params = FamilyParams(
            l1=3, l2=5, F=crafted, F_generators=(ECPoint.affine(0, 0),), count=1
        )
        assert generator_occurring_primes(params) == {229}
        assert find_primes(params).primes == (1129,)

    def test_occurrence_lemma_against_exhaustive_span(self):
        # a prime occurs in some subset product iff it occurs in some
        # generator, which is what justifies filtering on generator classes
        import random

        from mwglue.arith import SquareClassTriple, first_primes

        rng = random.Random(41)
        pool = [-1, 2, 3, 5, 7, -6, 10, -15, 21, 11]
        for _ in range(25):
            gens = [
                SquareClassTriple.from_rationals(
                    rng.choice(pool), rng.choice(pool), rng.choice(pool)
                )
                for _ in range(rng.randrange(0, 6))
            ]
            span_occurring = set()
            for mask in range(1 << len(gens)):
                acc = SquareClassTriple.trivial()
                for i in range(len(gens)):
                    if mask >> i & 1:
                        acc = acc * gens[i]
                for q in first_primes(10):
                    if acc.occurs(q):
                        span_occurring.add(q)
            gen_occurring = {
                q for g in gens for q in first_primes(10) if g.occurs(q)
            }
            assert span_occurring == gen_occurring

    def test_default_generators_do_not_disturb_5_7(self):
        base = find_primes(_params(l1=5, l2=7, count=3)).primes
        filtered = find_primes(_params(l1=5, l2=7, gens=FAMILY_F_GENERATORS, count=3)).primes
        occ = generator_occurring_primes(_params(gens=FAMILY_F_GENERATORS))
        assert occ == {2, 3}
        assert base == filtered  # no prime in the congruence class is 2 or 3


class TestBuildInstance:
    @pytest.mark.parametrize("p", [3, 11, 229, 1129])
    def test_class_table_matches_displayed_formulas(self, p):
        from mwglue.arith import SquareClassTriple

        inst = build_instance(p)
        assert inst.class_P == SquareClassTriple.from_rationals(-1, p, -p)
        assert inst.class_P1 == SquareClassTriple.from_rationals(
            -p * p + 1, p + 1, -p + 1
        )
        assert inst.class_P2 == SquareClassTriple.from_rationals(
            -p - 1, 2 * p * (p + 1), -2 * p
        )
        assert inst.class_P3 == SquareClassTriple.from_rationals(
            p - 1, 2 * p, 2 * p * (p - 1)
        )

    def test_marked_point_on_curve(self):
        for p in (3, 229):
            inst = build_instance(p)
            assert inst.curve.f_at(-1) == p * p
            assert inst.curve.contains(inst.P)

    def test_two_torsion_x_coordinates(self):
        inst = build_instance(229)
        assert {q.x for q in (inst.P1, inst.P2, inst.P3)} == {0, -230, 228}

    def test_table_matches_direct_descent_path(self):
        inst = build_instance(1129)
        algebra = inst.algebra()
        for name, pt in inst.marked_points().items():
            direct = descent_class(inst.curve, algebra, pt).triple()
            assert direct == inst.class_table()[name]

    def test_rejects_bad_p(self):
        with pytest.raises(InvalidFamilyParams):
            build_instance(15)
        with pytest.raises(InvalidFamilyParams):
            build_instance(2)


class TestVerifyInstance:
    def test_p229_all_checks_pass(self):
        params = _params()
        report = verify_instance(build_instance(229), params)
        assert report.all_passed
        assert set(report.checks) == {
            "occurrences",
            "marked_classes_nontrivial",
            "torsion_structure",
            "obstruction",
            "j_denominator",
        }

    def test_valuation_mechanism(self):
        # p = l2 - 1 mod l2^2 makes val_{l2}(p + 1) exactly 1
        for p in (229, 1129):
            assert (p + 1) % 5 == 0 and (p + 1) % 25 != 0
            assert (p - 1) % 3 == 0 and (p - 1) % 9 != 0

    def test_p_itself_never_divides_the_torsion_entries(self):
        # val_p of p-1, p+1 and p^2-1 is zero, which is what keeps p visible
        # in class(P) and class(P+P1) but absent from the 2-torsion span
        for p in (3, 229, 1129):
            assert (p - 1) % p != 0 and (p + 1) % p != 0 and (p * p - 1) % p != 0

    def test_wrong_congruence_is_falsified(self):
        # p = 3 satisfies neither congruence for (l1, l2) = (3, 5)
        report = verify_instance(build_instance(3), _params())
        assert not report.all_passed
        assert not report.checks["occurrences"].passed
        assert "does not occur" in report.checks["occurrences"].detail

    def test_honest_generator_run(self):
        params = _params(l1=5, l2=7, gens=FAMILY_F_GENERATORS, count=1)
        search = find_primes(params)
        assert search.primes == (1231,)
        report = verify_instance(build_instance(1231), params)
        assert report.all_passed
        assert len(report.obstruction.span) == 4

    def test_report_json_round_trip(self):
        import json

        report = verify_instance(build_instance(229), _params())
        data = json.loads(json.dumps(report.to_json()))
        assert data["passed"] is True
        assert data["p"] == 229
        assert data["obstruction"]["status"] == "not_contained"


class TestPairwiseDistinct:
    def test_distinct_for_different_primes(self):
        assert pairwise_distinct([build_instance(3), build_instance(5)])

    def test_duplicates_detected(self):
        inst = build_instance(229)
        assert not pairwise_distinct([inst, inst])

    def test_single_instance_vacuous(self):
        assert pairwise_distinct([build_instance(3)])

    def test_empty_vacuous(self):
        assert pairwise_distinct([])


class TestRunFamily:
    def test_full_run(self):
        report = run_family(_params(count=3))
        assert report.search.primes == (229, 1129, 1579)
        assert report.all_passed
        assert report.exit_code == 0
        assert report.pairwise_distinct_j

    def test_exhausted_run_exit_code(self):
        report = run_family(_params(bound=1000, count=100))
        assert report.search.exhausted
        assert report.exit_code == 2

    def test_gluing_marks_split(self):
        inst = build_instance(229)
        g = gluing_for_instance(inst, FAMILY_F)
        assert g.is_split
        assert g.L.split_roots() == (0, -230, 228)

    def test_curve_for_prime_equation(self):
        curve = curve_for_prime(7)
        assert curve.f_poly() == (Fraction(0), Fraction(1 - 49), Fraction(2), Fraction(1))
