import random
from math import gcd

import pytest

from gapnkit import (
    EvenCharacteristic,
    ExceptionalProfile,
    NotNormalized,
    PolyFp,
    WrongWeight,
    circulant_rank,
    coset_members,
    coset_rep,
    criterion_gapn,
    describe_exponent,
    differential_spectrum,
    digit_polynomial,
    digits_of,
    exceptional_profile,
    extension_prime,
    identify_family,
    linearized_kernel_dim,
    max_degree_family,
    monomial_gapn_fast,
    monomial_table,
    normalize_weight_p,
    p_weight,
    welch_exponent,
)
from gapnkit.monomial import rank_mod_p


def _normalized_weight_p_exponents(p, n):
    return [
        d
        for d in range(1, p**n)
        if d % p != 0 and p_weight(d, p) == p
    ]


class TestDigits:
    def test_digits_of(self):
        assert digits_of(5, 3) == (2, 1)
        assert digits_of(5, 3, 4) == (2, 1, 0, 0)
        assert digits_of(0, 3) == ()
        assert p_weight(0, 3) == 0

    def test_digits_overflow_rejected(self):
        with pytest.raises(ValueError):
            digits_of(11, 3, 2)

    def test_weight_examples(self):
        assert p_weight(5, 3) == 3
        assert p_weight(8, 3) == 4  # 22_3
        for j in range(5):
            assert p_weight(3**j, 3) == 1
            assert p_weight(5**j, 5) == 1

    @pytest.mark.parametrize("n", range(2, 7))
    def test_weight_of_inverse_exponent(self, n):
        assert p_weight(3**n - 2, 3) == 2 * n - 1

    def test_weight_bound(self):
        for d in range(1, 3**4):
            assert p_weight(d, 3) <= 4 * 2


class TestCosets:
    def test_rep_examples(self):
        assert coset_rep(7, 3, 2) == 5
        assert coset_rep(15, 3, 3) == 5
        assert coset_rep(4, 3, 2) == 4  # 4*3 = 12 = 4 mod 8

    def test_rep_is_orbit_minimum(self):
        p, n = 3, 4
        for d in range(1, 3**4 - 1):
            orbit = {d * p**k % (p**n - 1) for k in range(n)}
            assert coset_rep(d, p, n) == min(orbit)
            assert coset_members(d, p, n) == tuple(sorted(orbit))

    def test_members_examples(self):
        assert coset_members(5, 3, 2) == (5, 7)
        assert coset_members(5, 3, 4) == (5, 15, 45, 55)

    def test_range_checked(self):
        with pytest.raises(ValueError):
            coset_rep(0, 3, 2)
        with pytest.raises(ValueError):
            coset_rep(8, 3, 2)


class TestNormalize:
    def test_examples(self):
        assert normalize_weight_p(15, 3) == 5
        assert normalize_weight_p(5, 3) == 5
        assert normalize_weight_p(33, 3) == 11  # digits (0,2,0,1), weight 3

    def test_result_has_nonzero_constant_digit(self):
        rng = random.Random(5)
        for _ in range(200):
            positions = rng.sample(range(9), 2)
            d = 3 ** positions[0] * 2 + 3 ** positions[1]
            got = normalize_weight_p(d, 3)
            assert got % 3 != 0
            assert p_weight(got, 3) == 3

    def test_wrong_weight(self):
        with pytest.raises(WrongWeight):
            normalize_weight_p(4, 3)  # weight 2
        with pytest.raises(WrongWeight):
            normalize_weight_p(26, 3)  # weight 6


class TestDigitPolynomial:
    def test_gold_i1(self):
        assert digit_polynomial(5, 3).coeffs == (2, 1)  # x - 1

    def test_gold_i2(self):
        assert digit_polynomial(11, 3).coeffs == (2, 0, 1)  # x^2 - 1

    def test_welch_t1(self):
        assert digit_polynomial(7, 3).coeffs == (1, 2)  # 2x + 1

    def test_value_at_one_is_zero(self):
        for d in _normalized_weight_p_exponents(3, 5):
            assert digit_polynomial(d, 3).evaluate(1) == 0

    def test_errors(self):
        with pytest.raises(WrongWeight):
            digit_polynomial(4, 3)
        with pytest.raises(NotNormalized):
            digit_polynomial(15, 3)


class TestCriterion:
    @pytest.mark.parametrize("n", range(2, 9))
    def test_gold_i1_gapn_everywhere(self, n):
        assert criterion_gapn(5, 3, n).is_gapn

    def test_gold_i2_depends_on_parity(self):
        bad = criterion_gapn(11, 3, 2)
        assert not bad.is_gapn
        assert [(f.coeffs, m) for f, m in bad.offending_factors] == [((1, 1), 1)]
        good = criterion_gapn(11, 3, 3)
        assert good.is_gapn
        assert good.gcd.coeffs == (2, 1)
        assert not criterion_gapn(11, 3, 4).is_gapn

    def test_unit_root_multiplicity_blocks_p_dividing_n(self):
        # digit polynomial of 13 is (x-1)^2; its only root is 1, yet x^13
        # is not GAPN on F_27: x^3 - 1 = (x-1)^3 shares the square
        report = criterion_gapn(13, 3, 3)
        assert not report.is_gapn
        assert report.gcd.coeffs == (1, 1, 1)  # (x - 1)^2
        assert [(f.coeffs, m) for f, m in report.offending_factors] == [((2, 1), 1)]

    def test_same_exponent_fine_when_p_coprime_n(self):
        assert criterion_gapn(13, 3, 4).is_gapn
        assert criterion_gapn(13, 3, 5).is_gapn

    def test_errors(self):
        with pytest.raises(WrongWeight):
            criterion_gapn(4, 3, 2)
        with pytest.raises(NotNormalized):
            criterion_gapn(15, 3, 3)
        with pytest.raises(ValueError):
            criterion_gapn(0, 3, 2)

    def test_report_serialization(self):
        doc = criterion_gapn(11, 3, 2).to_dict()
        assert doc["digit_poly"] == [2, 0, 1]
        assert doc["gcd"] == [2, 0, 1]
        assert doc["is_gapn"] is False
        assert doc["offending_factors"] == [{"coeffs": [1, 1], "multiplicity": 1}]


class TestCirculantRank:
    def test_gold_i1_f9(self):
        assert circulant_rank(5, 3, 2) == 1

    def test_exponent_must_fit(self):
        with pytest.raises(ValueError):
            circulant_rank(11, 3, 2)

    def test_gold_i2_n4(self):
        assert circulant_rank(11, 3, 4) == 2

    def test_trace_exponent_n3(self):
        assert circulant_rank(13, 3, 3) == 1

    def test_rank_mod_p_basics(self):
        assert rank_mod_p([[2, 1], [1, 2]], 3) == 1
        assert rank_mod_p([[1, 0], [0, 1]], 3) == 2
        assert rank_mod_p([[0, 0], [0, 0]], 3) == 0
        assert rank_mod_p([[1, 2, 3], [4, 5, 6]], 7) == 2

    def test_matches_criterion_everywhere(self):
        for p, n_max in ((3, 5), (5, 3)):
            for n in range(2, n_max + 1):
                for d in _normalized_weight_p_exponents(p, n):
                    expected = criterion_gapn(d, p, n).is_gapn
                    assert (circulant_rank(d, p, n) == n - 1) == expected, (p, n, d)


class TestDeciderEquivalence:
    @pytest.mark.parametrize("p,n_max", [(3, 5), (5, 3)])
    def test_four_way_agreement(self, field, p, n_max):
        for n in range(2, n_max + 1):
            ctx = field(p, n)
            for d in _normalized_weight_p_exponents(p, n):
                by_criterion = criterion_gapn(d, p, n).is_gapn
                by_rank = circulant_rank(d, p, n) == n - 1
                by_kernel = linearized_kernel_dim(ctx, d) == 1
                by_brute = differential_spectrum(
                    monomial_table(ctx, d), mode="verdict"
                ).is_gapn
                assert by_criterion == by_rank == by_kernel == by_brute, (p, n, d)


class TestExceptionalProfile:
    def test_gold_i1(self):
        profile = exceptional_profile(5, 3)
        assert profile.root_orders == ()
        assert profile.unit_root_multiplicity == 1
        assert profile.witness_n == 2
        assert profile.gapn_dimensions(8) == list(range(2, 9))

    def test_gold_i2(self):
        profile = exceptional_profile(11, 3)
        assert profile.root_orders == (2,)
        assert profile.unit_root_multiplicity == 1
        assert profile.witness_n == 3
        assert profile.gapn_dimensions(10) == [3, 5, 7, 9]

    def test_trace_exponent_excludes_multiples_of_p(self):
        profile = exceptional_profile(13, 3)
        assert profile.root_orders == ()
        assert profile.unit_root_multiplicity == 2
        assert profile.witness_n == 4
        assert profile.gapn_dimensions(12) == [4, 5, 7, 8, 10, 11]

    @pytest.mark.parametrize("i", range(1, 7))
    def test_gold_general_root_orders(self, i):
        # x^i - 1 = (x^m - 1)^(3^k) with i = 3^k * m, so the distinct roots
        # other than 1 have the orders dividing m, and 1 repeats 3^k times
        profile = exceptional_profile(3**i + 2, 3)
        m, k = i, 0
        while m % 3 == 0:
            m //= 3
            k += 1
        assert profile.root_orders == tuple(t for t in range(2, m + 1) if m % t == 0)
        assert profile.unit_root_multiplicity == 3**k
        for n in range(profile.min_n, 13):
            assert profile.predicts_gapn(n) == (gcd(i, n) == 1)

    def test_infinitely_many_dimensions(self):
        # every profiled weight-p exponent admits arbitrarily large GAPN
        # dimensions: some n in any window of length lcm of the orders
        profile = exceptional_profile(3**4 + 2, 3)
        dims = profile.gapn_dimensions(40)
        assert dims and dims[-1] > 30

    def test_dimension_must_fit_exponent(self):
        profile = exceptional_profile(11, 3)
        with pytest.raises(ValueError):
            profile.predicts_gapn(2)

    def test_law_matches_criterion(self):
        # 50 draws with repeats allowed: the shape space only holds 44
        # distinct exponents, so demanding distinct draws would never finish.
        rng = random.Random(20260817)
        verified = set()
        for _ in range(50):
            shape = rng.choice(["111", "21", "12"])
            if shape == "111":
                a, b = rng.sample(range(1, 9), 2)
                d = 1 + 3**a + 3**b
            elif shape == "21":
                d = 2 + 3 ** rng.randrange(1, 9)
            else:
                d = 1 + 2 * 3 ** rng.randrange(1, 9)
            if d in verified:
                continue
            verified.add(d)
            profile = exceptional_profile(d, 3)
            for n in range(profile.min_n, 13):
                assert profile.predicts_gapn(n) == criterion_gapn(d, 3, n).is_gapn, (d, n)
        assert len(verified) >= 20

    def test_witness_confirmed_by_brute_force(self, field):
        # Same repeats-allowed policy: only C(8,2) = 28 exponents exist here.
        rng = random.Random(99)
        verified = set()
        for _ in range(50):
            positions = rng.sample(range(1, 9), 2)
            d = 1 + 3 ** positions[0] + 3 ** positions[1]
            if d in verified:
                continue
            verified.add(d)
            profile = exceptional_profile(d, 3)
            n = profile.witness_n
            assert profile.predicts_gapn(n)
            if 3**n <= 3**8:
                ctx = field(3, n)
                assert monomial_gapn_fast(ctx, d % (3**n - 1)).is_gapn
        assert len(verified) >= 15

    def test_serialization(self):
        doc = exceptional_profile(11, 3).to_dict()
        assert doc == {
            "d": 11,
            "p": 3,
            "root_orders": [2],
            "unit_root_multiplicity": 1,
            "witness_n": 3,
        }


class TestExtensionPrime:
    def test_no_constraints(self):
        profile = exceptional_profile(5, 3)
        assert extension_prime(profile, 2) == 2

    def test_order_two_excluded(self):
        profile = exceptional_profile(11, 3)
        assert extension_prime(profile, 3) == 3

    def test_orders_two_and_three_excluded(self):
        profile = ExceptionalProfile(
            d=5, p=3, root_orders=(2, 3), unit_root_multiplicity=1, witness_n=5
        )
        assert extension_prime(profile, 5) == 5

    def test_repeated_unit_root_excludes_p(self):
        profile = exceptional_profile(13, 3)
        # q = 3 would land 3 | qn; the rule must dodge the characteristic
        q = extension_prime(profile, 4)
        assert q == 2
        assert profile.predicts_gapn(4 * q)

    def test_extension_stays_gapn(self):
        profile = exceptional_profile(11, 3)
        q = extension_prime(profile, 3)
        assert criterion_gapn(11, 3, 3 * q).is_gapn

    def test_requires_gapn_base(self):
        profile = exceptional_profile(11, 3)
        with pytest.raises(ValueError):
            extension_prime(profile, 4)


class TestFamilies:
    def test_welch_exponents(self):
        assert welch_exponent(3, 3) == (7, True)
        assert welch_exponent(5, 5) == (31, False)
        assert welch_exponent(2, 5) == (7, True)
        assert welch_exponent(3, 4) == (13, True)
        # n = 3 gives t = 1, so the exponent is 7 + 7 + 1 regardless of how
        # large p is.
        assert welch_exponent(7, 3) == (15, False)

    def test_welch_needs_n_at_least_2(self):
        with pytest.raises(ValueError):
            welch_exponent(3, 1)

    def test_max_degree_family(self):
        assert max_degree_family(3, 2) == [7, 5]
        assert max_degree_family(3, 3) == [25, 23, 17]
        for p, n in ((3, 4), (5, 3), (7, 2)):
            for d in max_degree_family(p, n):
                assert p_weight(d, p) == n * (p - 1) - 1

    def test_max_degree_family_rejects_p2(self):
        with pytest.raises(EvenCharacteristic):
            max_degree_family(2, 4)

    def test_identify_family(self):
        assert identify_family(5, 3, 2) == ["gold(i=1)", "inverse-class(j=1)"]
        assert identify_family(7, 3, 2) == ["welch(t=1)", "inverse"]
        assert identify_family(7, 3, 3) == ["welch(t=1)"]
        assert identify_family(79, 3, 4) == ["inverse"]
        assert identify_family(4, 3, 2) == []

    def test_describe_exponent(self):
        info = describe_exponent(7, 3, 2)
        assert info.digits == (1, 2)
        assert info.weight == 3
        assert info.coset_rep == 5
        assert info.to_dict()["digits"] == [1, 2]


class TestInvarianceProperties:
    def test_ea_invariance_f81(self, field):
        ctx = field(3, 4)
        verdicts = {}
        for d in range(1, ctx.order - 1):
            verdicts[d] = differential_spectrum(
                monomial_table(ctx, d), mode="verdict"
            ).is_gapn
        for d in range(1, ctx.order - 1):
            rep = coset_rep(d, 3, 4)
            assert verdicts[d] == verdicts[rep], d

    def test_representation_independence_f27(self):
        from gapnkit import make_field

        a = make_field(3, 3, PolyFp(3, (1, 2, 0, 1)))
        b = make_field(3, 3, PolyFp(3, (2, 2, 0, 1)))
        assert a.modulus != b.modulus
        for d in range(1, 26):
            va = differential_spectrum(monomial_table(a, d)).is_gapn
            vb = differential_spectrum(monomial_table(b, d)).is_gapn
            assert va == vb, d
