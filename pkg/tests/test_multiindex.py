"""Index-set combinatorics against brute-force enumeration oracles."""

import math
from itertools import permutations, product

import pytest

from bohrlab.multiindex import (MultiIndex, alpha_to_j, count_Jm1, enumerate_J,
                                enumerate_alpha, j_to_alpha, multiplicity,
                                reduced_star)


def brute_J(m, n):
    """Oracle: filter all length-m tuples over {1..n} down to nondecreasing."""
    if m == 0:
        return [()]
    return [t for t in product(range(1, n + 1), repeat=m)
            if all(t[i] <= t[i + 1] for i in range(m - 1))]


class TestEnumerateJ:
    def test_2_2(self):
        assert enumerate_J(2, 2) == [(1, 1), (1, 2), (2, 2)]

    def test_degree_zero(self):
        assert enumerate_J(0, 3) == [()]

    def test_3_2_count(self):
        assert len(enumerate_J(3, 2)) == 4 == math.comb(4, 3)

    def test_matches_brute_force(self):
        for m in range(0, 5):
            for n in range(1, 5):
                assert enumerate_J(m, n) == sorted(brute_J(m, n))

    def test_lexicographic_order(self):
        for m, n in [(3, 4), (2, 5)]:
            js = enumerate_J(m, n)
            assert js == sorted(js)

    def test_cardinality_binomial(self):
        for m in range(0, 9):
            for n in range(1, 9):
                assert len(enumerate_J(m, n)) == math.comb(n + m - 1, m)

    def test_rejects_bad_dims(self):
        with pytest.raises(ValueError):
            enumerate_J(2, 0)
        with pytest.raises(ValueError):
            enumerate_J(-1, 2)


class TestMultiplicity:
    def test_constant_tuple(self):
        assert multiplicity((1, 1, 1)) == 1

    def test_112(self):
        assert multiplicity((1, 1, 2)) == 3 == len(set(permutations((1, 1, 2))))

    def test_123(self):
        assert multiplicity((1, 2, 3)) == 6

    def test_empty(self):
        assert multiplicity(()) == 1

    def test_equals_permutation_count(self):
        for m in range(0, 5):
            for n in range(1, 5):
                for j in enumerate_J(m, n):
                    assert multiplicity(j) == len(set(permutations(j)))

    def test_sum_is_n_power_m(self):
        for m in range(0, 7):
            for n in range(1, 7):
                assert sum(multiplicity(j) for j in enumerate_J(m, n)) == n**m

    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            multiplicity((2, 1))


class TestAlphaJCorrespondence:
    def test_alpha_to_j(self):
        assert alpha_to_j((2, 0, 1)) == (1, 1, 3)

    def test_j_to_alpha(self):
        assert j_to_alpha((2, 2), 2) == (0, 2)

    def test_roundtrip_exhaustive(self):
        for m in range(0, 4):
            for n in range(1, 4):
                for alpha in enumerate_alpha(m, n):
                    assert j_to_alpha(alpha_to_j(alpha), n) == alpha
                for j in enumerate_J(m, n):
                    assert alpha_to_j(j_to_alpha(j, n)) == j

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            j_to_alpha((1, 4), 3)

    def test_multiindex_invariant(self):
        mi = MultiIndex((2, 0, 1))
        assert mi.degree == 3
        assert mi.to_j() == (1, 1, 3)
        assert mi.factorial() == 2
        with pytest.raises(ValueError):
            MultiIndex((1, -1))


class TestReducedStar:
    def test_full_set(self):
        assert reduced_star(enumerate_J(2, 2)) == {(1,), (2,)}

    def test_singleton(self):
        assert reduced_star([(1, 1)]) == {(1,)}

    def test_full_reduces_to_full(self):
        assert reduced_star(enumerate_J(3, 3)) == set(enumerate_J(2, 3))

    def test_oracle_definition(self):
        # j is in the star iff some admissible extension lies in J
        J = [(1, 2), (2, 3), (3, 3)]
        expected = {j for j in enumerate_J(1, 3)
                    if any(tuple(list(j) + [k]) in J for k in range(j[-1], 4))}
        assert reduced_star(J) == expected

    def test_rejects_degree_zero(self):
        with pytest.raises(ValueError):
            reduced_star([()])


class TestCountJm1:
    def test_3_2(self):
        exact, _ = count_Jm1(3, 2)
        assert exact == 3 == math.factorial(3) // (math.factorial(1) * math.factorial(2))

    def test_1_5(self):
        assert count_Jm1(1, 5)[0] == 1

    def test_4_4(self):
        assert count_Jm1(4, 4)[0] == 20 == math.comb(6, 3)

    def test_matches_enumeration(self):
        for m in range(1, 6):
            for n in range(1, 6):
                assert count_Jm1(m, n)[0] == len(enumerate_J(m - 1, n))

    def test_envelope_holds_to_20(self):
        for m in range(1, 21):
            for n in range(1, 21):
                exact, envelope = count_Jm1(m, n)
                assert exact <= envelope * (1 + 1e-12)

    def test_overflow_threshold(self):
        with pytest.raises(OverflowError):
            count_Jm1(60_000, 60_000)
        with pytest.raises(OverflowError):
            count_Jm1(3000, 3000, overflow_threshold=10_000)
