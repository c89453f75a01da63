from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwglue.arith import (
    FactorizationError,
    SquareClass,
    SquareClassTriple,
    factor,
    first_primes,
    is_prime,
    occurs,
    square_class,
    subgroup_contains,
    validate_containment_witness,
    validate_noncontainment_certificate,
)

from oracles import brute_force_contains, naive_square_class, trial_factor

nonzero_fractions = st.fractions(
    min_value=-10**6, max_value=10**6, max_denominator=10**4
).filter(lambda q: q != 0)


class TestFactor:
    def test_one_gives_empty_product(self):
        assert factor(1) == {}

    def test_small_composite(self):
        assert factor(18) == {2: 1, 3: 2}

    def test_229_is_prime(self):
        assert trial_factor(229) == {229: 1}
        assert factor(229) == {229: 1}

    def test_pollard_rho_path(self):
        # force the trial bound below the factors so rho has to split it
        assert factor(101 * 103, trial_bound=10) == {101: 1, 103: 1}

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            factor(0)

    @given(st.integers(min_value=1, max_value=10**6))
    @settings(max_examples=120)
    def test_product_reconstructs(self, n):
        fact = factor(n)
        prod = 1
        for p, e in fact.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n


class TestSquareClass:
    def test_perfect_square_is_trivial(self):
        assert square_class(4).is_trivial

    def test_negative_with_square_part(self):
        assert square_class(-18) == SquareClass(True, (2,))

    def test_fraction(self):
        assert square_class(Fraction(50, 9)) == SquareClass(False, (2,))

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            square_class(0)

    def test_representative_round_trips(self):
        cls = square_class(Fraction(-50, 63))
        assert square_class(cls.representative()) == cls

    @given(nonzero_fractions, nonzero_fractions)
    @settings(max_examples=80)
    def test_homomorphism(self, a, b):
        assert square_class(a * b) == square_class(a) * square_class(b)

    @given(nonzero_fractions, nonzero_fractions)
    @settings(max_examples=40)
    def test_square_factors_cancel(self, q, r):
        assert square_class(q * r * r) == square_class(q)

    def test_against_naive_oracle(self):
        for q in (Fraction(12), Fraction(-75, 8), Fraction(1), Fraction(-1, 49)):
            cls = square_class(q)
            assert (cls.negative, cls.primes) == naive_square_class(q)

    def test_json_round_trip(self):
        cls = square_class(-30)
        assert SquareClass.from_json(cls.to_json()) == cls


class TestTriple:
    def test_occurs_11(self):
        z = SquareClassTriple.from_rationals(-1, 11, -11)
        assert occurs(11, z)

    def test_occurs_trivial_triple(self):
        assert not occurs(3, SquareClassTriple.from_rationals(1, 1, 1))

    def test_occurs_val5(self):
        assert occurs(5, SquareClassTriple.from_rationals(2, 10, 5))

    def test_occurs_requires_prime(self):
        with pytest.raises(ValueError):
            occurs(6, SquareClassTriple.trivial())

    def test_product_kernel_membership(self):
        assert SquareClassTriple.from_rationals(-1, 11, -11).has_trivial_product
        assert not SquareClassTriple.from_rationals(2, 3, 5).has_trivial_product

    @given(st.lists(nonzero_fractions, min_size=3, max_size=3))
    @settings(max_examples=40)
    def test_squares_never_occur(self, vals):
        z = SquareClassTriple.from_rationals(*vals)
        zz = z * z
        assert zz.is_trivial
        for p in first_primes(10):
            assert not occurs(p, zz)

    def test_json_round_trip(self):
        z = SquareClassTriple.from_rationals(-6, 10, -15)
        assert SquareClassTriple.from_json(z.to_json()) == z


def _triple_from_ints(a, b, c):
    return SquareClassTriple.from_rationals(a, b, c)


class TestSubgroupContains:
    def test_empty_generators_trivial_target(self):
        res = subgroup_contains([], SquareClassTriple.trivial())
        assert res.contained and res.witness == ()

    def test_single_generator_itself(self):
        z = _triple_from_ints(-6, 2, -3)
        res = subgroup_contains([z], z)
        assert res.contained and res.witness == (0,)
        assert validate_containment_witness([z], z, res.witness)

    def test_marked_classes_do_not_span_target(self):
        # the three 2-torsion classes for p = 229 against the marked point's class
        p = 229
        gens = [
            _triple_from_ints(-(p * p) + 1, p + 1, -p + 1),
            _triple_from_ints(-p - 1, 2 * p * (p + 1), -2 * p),
            _triple_from_ints(p - 1, 2 * p, 2 * p * (p - 1)),
        ]
        target = _triple_from_ints(-1, p, -p)
        assert not brute_force_contains(gens, target)
        res = subgroup_contains(gens, target)
        assert not res.contained
        assert validate_noncontainment_certificate(gens, target, res.certificate)

    def test_product_of_two_generators(self):
        a = _triple_from_ints(2, 3, 6)
        b = _triple_from_ints(-1, 5, -5)
        res = subgroup_contains([a, b], a * b)
        assert res.contained
        assert validate_containment_witness([a, b], a * b, res.witness)

    def test_matches_brute_force_on_random_sets(self):
        import random

        rng = random.Random(20160206)
        pool = [-1, 2, 3, 5, 7, -6, 10, -15, 21, 11]
        for trial in range(100):
            k = rng.randrange(0, 11)
            gens = [
                _triple_from_ints(
                    rng.choice(pool), rng.choice(pool), rng.choice(pool)
                )
                for _ in range(k)
            ]
            target = _triple_from_ints(
                rng.choice(pool), rng.choice(pool), rng.choice(pool)
            )
            res = subgroup_contains(gens, target)
            assert res.contained == brute_force_contains(gens, target)
            if res.contained:
                assert validate_containment_witness(gens, target, res.witness)
            else:
                assert validate_noncontainment_certificate(
                    gens, target, res.certificate
                )


class TestPrimality:
    def test_first_primes(self):
        assert first_primes(6) == [2, 3, 5, 7, 11, 13]

    def test_is_prime_matches_oracle_window(self):
        from oracles import trial_is_prime

        for n in range(2, 500):
            assert is_prime(n) == trial_is_prime(n)

    def test_certified_range_guard(self):
        n = 3_317_044_064_679_887_385_961_981
        while any(n % p == 0 for p in first_primes(12)):
            n += 1
        with pytest.raises(FactorizationError):
            is_prime(n)
