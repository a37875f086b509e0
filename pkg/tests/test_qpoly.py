import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qgalois.errors import DomainError
from qgalois.qpoly import (
    CoeffPoly,
    Composition,
    compositions,
    eval_unit_circle,
    galois_degree,
    galois_poly,
    galois_poly_direct,
    poly_from_json,
    poly_mul,
    poly_to_json,
    q_binomial,
    q_factorial,
    q_integer,
    q_multinomial,
    q_multinomial_product,
    schoolbook_mul,
)

from oracles import multiset_inversion_histogram, word_inversion_histogram


def coeffs(p):
    return list(p.coeffs)


class TestCoeffPoly:
    def test_canonical_form_strips_trailing_zeros(self):
        assert CoeffPoly((1, 2, 0, 0)).coeffs == (1, 2)
        assert CoeffPoly((0, 0)).is_zero()
        assert CoeffPoly(()).degree == -1

    def test_rejects_negative(self):
        with pytest.raises(DomainError):
            CoeffPoly((1, -1))

    def test_arithmetic(self):
        a = CoeffPoly((1, 1))
        assert coeffs(a * a) == [1, 2, 1]
        assert coeffs(a + CoeffPoly((0, 0, 3))) == [1, 1, 3]
        assert coeffs(a.shift(2)) == [0, 0, 1, 1]
        assert a(Fraction(1, 2)) == Fraction(3, 2)

    def test_json_round_trip_keeps_big_coefficients(self):
        p = galois_poly(30, 7)
        obj = poly_to_json(p, 30, 7)
        text = json.dumps(obj)
        assert all(isinstance(c, str) for c in obj["coeffs"])
        assert max(p.coeffs) > 2**64
        assert poly_from_json(text) == p
        assert obj["n"] == 30 and obj["m"] == 7


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(0, 2**200), min_size=1, max_size=60),
    st.lists(st.integers(0, 2**90), min_size=1, max_size=60),
)
def test_packed_product_matches_schoolbook(a, b):
    assert poly_mul(a, b) == schoolbook_mul(a, b)


@pytest.mark.parametrize("ell, expected", [(0, []), (1, [1]), (3, [1, 1, 1])])
def test_q_integer(ell, expected):
    assert coeffs(q_integer(ell)) == expected


@pytest.mark.parametrize("k, expected", [(0, [1]), (2, [1, 1]), (3, [1, 2, 2, 1])])
def test_q_factorial(k, expected):
    assert coeffs(q_factorial(k)) == expected


def test_q_factorial_is_permutation_inversion_histogram():
    for k in range(1, 7):
        assert coeffs(q_factorial(k)) == multiset_inversion_histogram([1] * k)


class TestQBinomial:
    def test_examples(self):
        assert coeffs(q_binomial(4, 2)) == [1, 1, 2, 1, 1]
        assert coeffs(q_binomial(7, 0)) == [1]
        assert coeffs(q_binomial(3, 1)) == coeffs(q_integer(3))

    def test_k_above_n_is_domain_error(self):
        with pytest.raises(DomainError):
            q_binomial(3, 4)

    def test_pascal_recurrence(self):
        for n in range(1, 13):
            for k in range(1, n):
                lhs = q_binomial(n, k)
                rhs = q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)
                assert lhs == rhs, (n, k)

    def test_degree_value_and_palindrome(self):
        for n in range(0, 15):
            for k in range(0, n + 1):
                p = q_binomial(n, k)
                assert p.degree == k * (n - k)
                assert p(1) == math.comb(n, k)
                assert p.is_palindromic()
                assert all(c > 0 for c in p.coeffs)


class TestQMultinomial:
    def test_examples(self):
        assert coeffs(q_multinomial((1, 1, 1))) == [1, 2, 2, 1]
        assert coeffs(q_multinomial((5, 0, 0))) == [1]
        assert q_multinomial((2, 2)) == q_binomial(4, 2)

    def test_routes_agree_with_brute_force(self):
        for m in (1, 2, 3):
            for n in range(0, 9):
                for c in compositions(n, m):
                    p = q_multinomial(c)
                    assert p == q_multinomial_product(c), c.parts
                    assert coeffs(p) == multiset_inversion_histogram(c.parts), c.parts

    def test_degree_value_palindrome(self):
        for c in compositions(9, 4):
            p = q_multinomial(c)
            e2 = (c.n**2 - sum(k * k for k in c.parts)) // 2
            assert p.degree == e2
            assert p(1) == math.factorial(c.n) // math.prod(math.factorial(k) for k in c.parts)
            assert p.is_palindromic()

    def test_composition_validation(self):
        assert Composition((2, 0, 1)).n == 3
        with pytest.raises(DomainError):
            Composition((1, -1))
        with pytest.raises(DomainError):
            Composition(())


class TestGaloisPoly:
    @pytest.mark.parametrize(
        "n, m, expected",
        [(2, 2, [3, 1]), (3, 2, [4, 2, 2]), (2, 3, [6, 3]), (0, 4, [1]), (5, 1, [1])],
    )
    def test_examples(self, n, m, expected):
        assert coeffs(galois_poly(n, m)) == expected

    def test_matches_word_enumeration(self):
        for m in (2, 3):
            for n in range(0, 7):
                assert coeffs(galois_poly(n, m)) == word_inversion_histogram(n, m)

    def test_recurrence_matches_direct_summation(self):
        for n in range(0, 9):
            for m in range(1, 5):
                assert galois_poly(n, m) == galois_poly_direct(n, m), (n, m)

    def test_value_at_one(self):
        for n in range(0, 41):
            for m in range(1, 9):
                assert galois_poly(n, m)(1) == m**n

    def test_degree_formula_against_direct_route(self):
        for n in range(0, 9):
            for m in range(1, 5):
                assert galois_poly_direct(n, m).degree == galois_degree(n, m)
        for n in range(0, 41, 3):
            for m in range(1, 9):
                assert galois_poly(n, m).degree == galois_degree(n, m)

    def test_no_internal_gaps(self):
        for n in range(0, 25):
            for m in (2, 3, 5):
                assert all(c > 0 for c in galois_poly(n, m).coeffs)

    def test_not_palindromic_in_general(self):
        assert not galois_poly(2, 2).is_palindromic()

    def test_bad_arguments(self):
        with pytest.raises(DomainError):
            galois_poly(-1, 2)
        with pytest.raises(DomainError):
            galois_poly(3, 0)


class TestUnitCircle:
    def test_examples(self):
        assert eval_unit_circle(galois_poly(2, 2), math.pi) == pytest.approx(2 + 0j, abs=1e-12)
        assert eval_unit_circle(CoeffPoly((1, 1)), math.pi) == pytest.approx(0j, abs=1e-12)
        p = galois_poly(6, 3)
        assert eval_unit_circle(p, 0.0) == pytest.approx(3**6)

    def test_scale_gives_characteristic_function(self):
        p = galois_poly(10, 3)
        assert eval_unit_circle(p, 0.0, scale=3**10) == pytest.approx(1.0)

    @settings(max_examples=80, deadline=None)
    @given(
        st.integers(0, 25),
        st.integers(1, 6),
        st.floats(-10, 10, allow_nan=False),
    )
    def test_modulus_bounded_by_value_at_one(self, n, m, theta):
        p = galois_poly(n, m)
        assert abs(eval_unit_circle(p, theta, scale=m**n)) <= 1 + 1e-12
