import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qgalois.combinat import (
    FerrersDiagram,
    LatticePath,
    Word,
    area_left,
    area_under,
    enumerate_ferrers,
    enumerate_paths,
    enumerate_words,
    ferrers_to_path,
    inversions,
    inversions_naive,
    parse_ferrers,
    parse_path,
    parse_word,
    path_to_ferrers,
    path_to_word,
    reflect,
    word_to_path,
)
from qgalois.dist import exact_pmf, moments_from_pmf
from qgalois.errors import BudgetExceededError, DomainError
from qgalois.qpoly import galois_poly
from fractions import Fraction

from oracles import histogram


class TestInversions:
    @pytest.mark.parametrize(
        "letters, m, expected", [((1, 2, 3), 3, 0), ((2, 1), 2, 1), ((3, 1, 2, 3, 1), 3, 5)]
    )
    def test_examples(self, letters, m, expected):
        w = Word(letters, m)
        assert inversions(w) == expected
        assert inversions_naive(w) == expected

    def test_fast_matches_pairwise_on_random_words(self):
        rng = random.Random(7)
        for _ in range(10_000):
            n = rng.randint(0, 500)
            m = rng.randint(1, 64)
            letters = np.array([rng.randint(1, m) for _ in range(n)])
            pairwise = int(np.triu(letters[:, None] > letters[None, :], k=1).sum()) if n else 0
            got = inversions(Word(tuple(letters.tolist()), m))
            assert got == pairwise
            assert got <= n * (n - 1) // 2

    @given(st.lists(st.integers(1, 6), max_size=30))
    def test_naive_and_fast_agree(self, letters):
        w = Word(tuple(letters), 6)
        assert inversions(w) == inversions_naive(w)

    def test_word_validation(self):
        with pytest.raises(DomainError):
            Word((0, 1), 2)
        with pytest.raises(DomainError):
            Word((3,), 2)


class TestPaths:
    def test_examples(self):
        assert word_to_path(Word((1, 2), 2)) == LatticePath("EN")
        assert word_to_path(Word((2, 1), 2)) == LatticePath("NE")
        assert (area_under(LatticePath("EN")), area_left(LatticePath("EN"))) == (0, 1)
        assert (area_under(LatticePath("NE")), area_left(LatticePath("NE"))) == (1, 0)
        assert (area_under(LatticePath("EEE")), area_left(LatticePath("EEE"))) == (0, 0)

    def test_m_must_be_two(self):
        with pytest.raises(DomainError):
            word_to_path(Word((1, 2, 3), 3))

    def test_round_trip_length_ten(self):
        words = list(enumerate_words(10, 2))
        assert len(words) == 1024
        assert all(path_to_word(word_to_path(w)) == w for w in words)

    def test_area_identities(self):
        for p in enumerate_paths(9):
            assert area_under(p) == inversions(path_to_word(p))
            assert area_left(p) == area_under(reflect(p))
            e, north = p.end
            assert area_under(p) + area_left(p) == e * north

    def test_area_law_is_galois_two(self):
        for n in range(0, 13):
            assert histogram(area_under(p) for p in enumerate_paths(n)) == list(galois_poly(n, 2).coeffs)

    def test_invalid_steps(self):
        with pytest.raises(DomainError):
            LatticePath("ENX")


class TestFerrers:
    def test_examples(self):
        f = path_to_ferrers(LatticePath("NE"))
        assert f.rows == (2, 1) and f.area == 3 and f.semiperimeter == 4
        f = path_to_ferrers(LatticePath("EN"))
        assert f.rows == (2, 2) and f.area == 4
        f = path_to_ferrers(LatticePath(""))
        assert f.rows == (1,) and f.semiperimeter == 2 and f.area == 1

    def test_round_trip_length_eight(self):
        paths = list(enumerate_paths(8))
        assert len(paths) == 256
        assert all(ferrers_to_path(path_to_ferrers(p)) == p for p in paths)

    def test_structure_of_image(self):
        for n in range(0, 11):
            for p in enumerate_paths(n):
                f = path_to_ferrers(p)
                e, north = p.end
                assert f.semiperimeter == n + 2
                assert f.height == north + 1 and f.width == e + 1
                assert f.area == area_left(p) + n + 1

    def test_direct_enumeration_is_the_image(self):
        for n in range(0, 11):
            image = sorted(path_to_ferrers(p).rows for p in enumerate_paths(n))
            direct = sorted(f.rows for f in enumerate_ferrers(n + 2))
            assert image == direct

    def test_area_law_is_shifted_galois(self):
        for n in range(0, 13):
            hist = histogram(f.area for f in enumerate_ferrers(n + 2))
            assert hist == [0] * (n + 1) + list(galois_poly(n, 2).coeffs)

    def test_height_is_binomial(self):
        for n in range(0, 13):
            hist = histogram(path_to_ferrers(p).height - 1 for p in enumerate_paths(n))
            assert hist == [math.comb(n, k) for k in range(n + 1)]

    def test_exact_area_moments(self):
        for n in range(0, 21):
            mom = moments_from_pmf(exact_pmf(n, 2).shifted(n + 1))
            assert mom.mean == Fraction(n * n + 7 * n + 8, 8)
            assert mom.variance == Fraction(n * (n - 1) * (2 * n + 5), 96)

    @pytest.mark.parametrize("rows", [(1, 2), (2, 0), (3, -1)])
    def test_invalid_rows(self, rows):
        with pytest.raises(DomainError):
            ferrers_to_path(rows)

    def test_empty_diagram_has_no_path(self):
        with pytest.raises(DomainError):
            ferrers_to_path(FerrersDiagram(()))


class TestEnumeration:
    def test_counts_and_order(self):
        assert len(list(enumerate_words(2, 2))) == 4
        words = list(enumerate_words(3, 3))
        assert len(words) == 27
        assert [w.letters for w in words] == sorted(w.letters for w in words)

    def test_histogram_matches_galois(self):
        assert histogram(inversions(w) for w in enumerate_words(3, 2)) == [4, 2, 2]

    def test_budget(self):
        with pytest.raises(BudgetExceededError, match="budget of 1000"):
            next(enumerate_words(10, 2, budget=1000))


def test_text_formats():
    assert parse_word("3,1,2", 3).letters == (3, 1, 2)
    assert parse_path("ene") == LatticePath("ENE")
    assert parse_ferrers("3,2,2").rows == (3, 2, 2)
    assert str(parse_ferrers("3,2,2")) == "3,2,2"
