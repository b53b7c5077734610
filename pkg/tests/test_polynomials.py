import random
from fractions import Fraction

import pytest

from nclab import (
    Monomial,
    Partition,
    Polynomial,
    classify_blocks,
    cumulant_poly,
    cumulant_product_identity,
    enumerate_ncl_direct,
    make_partition,
    moment_poly_cumulants,
    moment_poly_inner_outer,
    moment_poly_linked,
    moment_poly_pairs,
    moments_from_t,
    to_pair,
)
from nclab.polynomials import _mono_from_sizes
from helpers import nc

T1 = Polynomial.variable(1)
T2 = Polynomial.variable(2)
ONE = Polynomial.one()

# the four low-order moment polynomials in their conventional written form
LOW_ORDER = {
    1: "1",
    2: "t1 + 1",
    3: "t2 + t1^2 + 3*t1 + 1",
    4: "t3 + 3*t2*t1 + t1^3 + 4*t2 + 6*t1^2 + 6*t1 + 1",
}


class TestRingOperations:
    def test_add_zero_mul_one(self):
        p = T1 * T2 + Polynomial.constant(5)
        assert p + Polynomial.zero() == p
        assert p * ONE == p

    def test_square_of_binomial(self):
        assert ((T1 + ONE) * (T1 + ONE)).to_text() == "t1^2 + 2*t1 + 1"

    def test_product_of_binomials(self):
        assert ((T1 + ONE) * (T2 + ONE)).to_text() == "t2*t1 + t2 + t1 + 1"

    def test_subtraction_cancels(self):
        p = T1 * T1 + T2
        assert p - p == Polynomial.zero()
        assert (p - p).to_text() == "0"

    def test_variable_zero_is_constant_one(self):
        assert Polynomial.variable(0) == ONE

    def test_monomial_ordering_is_weight_then_lex(self):
        p = (
            Polynomial.variable(3)
            + T2 * T1
            + T1 * T1 * T1
            + T2
            + T1 * T1
            + T1
            + ONE
        )
        assert p.to_text() == "t3 + t2*t1 + t1^3 + t2 + t1^2 + t1 + 1"

    def test_negative_coefficients_render(self):
        assert (Polynomial.zero() - T1).to_text() == "-t1"
        assert (T2 - T1).to_text() == "t2 - t1"


class TestLowOrderRegression:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_all_routes_match_printed_form(self, n):
        for route in (
            moment_poly_linked,
            moment_poly_pairs,
            moment_poly_inner_outer,
            moment_poly_cumulants,
        ):
            assert route(n).to_text() == LOW_ORDER[n]


class TestLinkedRoute:
    def test_n1(self):
        assert moment_poly_linked(1) == ONE

    def test_n2(self):
        assert moment_poly_linked(2) == T1 + ONE

    def test_term_count_is_ncl_count(self):
        # total coefficient mass equals the number of linked partitions
        for n in range(1, 7):
            total = sum(c for _, c in moment_poly_linked(n).terms)
            assert total == sum(1 for _ in enumerate_ncl_direct(n))


class TestPairsRoute:
    def test_n2_n3(self):
        assert moment_poly_pairs(2) == T1 + ONE
        assert moment_poly_pairs(3).to_text() == LOW_ORDER[3]

    def test_worked_example_pair_monomial(self):
        alpha = make_partition(11, [[1, 3, 7], [2], [4, 5], [6], [8, 10, 11], [9]])
        beta = make_partition(11, [[1, 2, 3, 4, 5, 6, 7], [8, 9, 10, 11]])
        special = classify_blocks(alpha, beta).special
        mono = _mono_from_sizes(
            len(blk) - 1 if i in special else len(blk)
            for i, blk in enumerate(alpha.blocks)
        )
        assert mono == Monomial.of({2: 3, 1: 3})


class TestInnerOuterRoute:
    def test_n2(self):
        assert moment_poly_inner_outer(2) == T1 + ONE

    def test_n3_term_by_term(self):
        # the nested partition contributes t1 * (1 + t1)
        assert moment_poly_inner_outer(3) == (
            ONE + T1 + T1 + (T1 * (ONE + T1)) + T2
        )

    def test_n4(self):
        assert moment_poly_inner_outer(4).to_text() == LOW_ORDER[4]


class TestCumulantPolys:
    def test_first_three(self):
        assert cumulant_poly(1) == ONE
        assert cumulant_poly(2) == T1
        assert cumulant_poly(3) == T2 + T1 * T1

    def test_weight_homogeneous(self):
        for n in range(2, 8):
            assert {m.weight for m, _ in cumulant_poly(n).terms} == {n - 1}

    def test_substitution_route_n3(self):
        # kappa_3 + 3 kappa_2 kappa_1 + kappa_1^3 expands to the printed form
        expanded = cumulant_poly(3) + Polynomial.constant(3) * cumulant_poly(
            2
        ) * cumulant_poly(1) + cumulant_poly(1) * cumulant_poly(1) * cumulant_poly(1)
        assert expanded == moment_poly_cumulants(3)
        assert expanded.to_text() == LOW_ORDER[3]


class TestFourRoutes:
    def test_equal_to_n8(self):
        for n in range(1, 9):
            p1 = moment_poly_linked(n)
            p2 = moment_poly_pairs(n)
            p3 = moment_poly_inner_outer(n)
            p4 = moment_poly_cumulants(n)
            assert p1 == p2 == p3 == p4

    def test_positive_integer_coefficients(self):
        for n in range(1, 9):
            assert all(
                isinstance(c, int) and c > 0 for _, c in moment_poly_linked(n).terms
            )


class TestTermBijection:
    def test_monomials_match_under_pairing(self):
        # each linked partition produces the same monomial as its image pair
        for n in range(1, 8):
            for p in enumerate_ncl_direct(n):
                mono_linked = _mono_from_sizes(len(a) - 1 for a in p.blocks)
                a, b = to_pair(p)
                special = classify_blocks(a, b).special
                mono_pair = _mono_from_sizes(
                    len(blk) - 1 if i in special else len(blk)
                    for i, blk in enumerate(a.blocks)
                )
                assert mono_linked == mono_pair, p


class TestPerPartitionIdentity:
    def test_discrete(self):
        for n in (1, 3, 5):
            assert cumulant_product_identity(Partition.discrete(n))

    def test_full_3_sides(self):
        # product side = kappa_3; sum side has contributions t2 and t1*t1
        assert cumulant_poly(3) == T2 + T1 * T1
        assert cumulant_product_identity(Partition.full(3))

    def test_exhaustive_to_n6(self):
        for n in range(1, 7):
            for b in nc(n):
                assert cumulant_product_identity(b), b

    def test_crossing_rejected(self):
        with pytest.raises(ValueError, match="crossing"):
            cumulant_product_identity(make_partition(4, [[1, 3], [2, 4]]))


class TestEvaluate:
    def test_simple(self):
        assert (T1 + ONE).evaluate([0, 1]) == 2

    def test_constant_term_at_zero(self):
        p = moment_poly_linked(4)
        assert p.evaluate([0, 0, 0, 0]) == 1

    def test_degree4_at_catalan_point(self):
        assert moment_poly_linked(4).evaluate([1, 1, 0, 0]) == 14

    def test_missing_index(self):
        with pytest.raises(ValueError, match="missing value for t3"):
            moment_poly_linked(4).evaluate([1, 1])

    def test_bridges_to_numeric_route(self):
        rng = random.Random(47)
        for depth in range(1, 9):
            t = [Fraction(1)] + [
                Fraction(rng.randint(-15, 15), rng.randint(1, 8))
                for _ in range(depth - 1)
            ]
            numeric = moments_from_t(t, depth)
            for n in range(1, depth + 1):
                assert moment_poly_inner_outer(n).evaluate(t) == numeric.moment(n)


class TestIO:
    def test_json_form(self):
        p = Polynomial.constant(3) * T2 * T1 + ONE
        assert p.to_json_dict() == {
            "terms": [
                {"coeff": "3", "monomial": {"2": 1, "1": 1}},
                {"coeff": "1", "monomial": {}},
            ]
        }

    def test_monomial_str(self):
        assert str(Monomial.of({1: 3})) == "t1^3"
        assert str(Monomial.of({2: 1, 1: 1})) == "t2*t1"
        assert str(Monomial.of({})) == "1"
