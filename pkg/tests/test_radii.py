"""Per-function radii, corpus estimates, homogeneous estimates, sandwich."""

import math

import numpy as np
import pytest

from bohrlab.corpus import moebius_atom, moebius_corpus
from bohrlab.operators import inclusion_operator, scalar_identity
from bohrlab.polynomials import random_polynomial, scalar_polynomial
from bohrlab.radii import (CorpusFunction, MajorantOracle, estimate_K_upper,
                           estimate_Km_upper, function_bohr_radius,
                           sandwich_check)
from bohrlab.spaces import INF, SpaceSpec


def closed_form_disk_radius(a, lam):
    """Per-atom radius from the geometric-series constraint, solved by hand:
    a + (1-a^2) r/(1-ar) = lam  <=>  r = (lam-a)/(1+a lam-2a^2)."""
    return (lam - a) / (1 + a * lam - 2 * a * a)


class TestFunctionRadius:
    def test_identity_function_hits_cap(self):
        f = scalar_polynomial(INF, 1, {(1,): 1.0})
        res = function_bohr_radius(CorpusFunction("z", f, 1.0, "exact"),
                                   scalar_identity(), 1.0)
        assert res.radius == 1.0 and res.capped

    def test_moebius_09_matches_closed_form(self):
        res = function_bohr_radius(moebius_atom(0.9), scalar_identity(), 1.0, 1e-9)
        assert res.radius == pytest.approx(1 / 2.8, abs=2e-3)
        assert res.radius == pytest.approx(closed_form_disk_radius(0.9, 1.0), abs=1e-8)

    def test_large_lambda_caps(self):
        res = function_bohr_radius(moebius_atom(0.9), scalar_identity(), 50.0)
        assert res.radius == 1.0 and res.capped

    def test_bisection_bracket_width(self):
        for tol in (1e-6, 1e-9):
            res = function_bohr_radius(moebius_atom(0.7), scalar_identity(), 1.0, tol)
            assert abs(res.radius - closed_form_disk_radius(0.7, 1.0)) <= tol + 1e-12

    def test_rejects_zero_function_and_bad_tol(self):
        zero = scalar_polynomial(2, 1, {})
        with pytest.raises(ValueError):
            function_bohr_radius(zero, scalar_identity(), 1.0)
        with pytest.raises(ValueError):
            function_bohr_radius(moebius_atom(0.5), scalar_identity(), 1.0, tol=0.0)
        with pytest.raises(ValueError):
            function_bohr_radius(moebius_atom(0.5), scalar_identity(), 0.9)

    def test_infeasible_at_zero(self):
        f = scalar_polynomial(2, 1, {(0,): 2.0, (1,): 1.0})
        # a deliberately small certified norm bound forces the degenerate case
        res = function_bohr_radius(CorpusFunction("c", f, 0.5, "stub"),
                                   scalar_identity(), 1.0)
        assert res.radius == 0.0 and "infeasible" in res.note

    def test_vector_lambda1_labeled(self):
        f = moebius_atom(0.5, codomain=SpaceSpec(1.0, 2))
        res = function_bohr_radius(f, inclusion_operator(1, 2, 2), 1.0)
        assert res.note == "no positivity guarantee"


class TestMajorantOracle:
    def test_exact_cases(self):
        assert MajorantOracle(moebius_atom(0.5).poly, None).exact  # one variable
        P = random_polynomial(2, 3, 1, "unimodular-signs", 0, p=INF)
        assert MajorantOracle(P, None).exact  # polydisc closed form

    def test_predicate_monotone_in_r(self):
        P = random_polynomial(3, 3, 1, "unimodular-signs", 1, p=2.0)
        oracle = MajorantOracle(P, None, seed=0)
        vals = [oracle.sup_lower(r) for r in np.linspace(0, 1, 50)]
        assert all(a <= b + 1e-15 for a, b in zip(vals, vals[1:]))

    def test_polydisc_value_is_weight_sum(self):
        P = random_polynomial(2, 2, 1, "unimodular-signs", 2, p=INF)
        oracle = MajorantOracle(P, None)
        assert oracle.sup_lower(1.0) == pytest.approx(3.0)

    def test_pool_dominates_uniform_witness(self):
        # the uniform point is a permanent pool member
        P = random_polynomial(2, 3, 1, "unimodular-signs", 3, p=2.0)
        oracle = MajorantOracle(P, None, seed=5)
        from bohrlab.polynomials import majorant
        for r in (0.2, 0.5, 0.9):
            u = np.full(3, 3 ** (-0.5) / (1 + 1e-13))
            assert oracle.sup_lower(r) >= majorant(P, None, r * u) - 1e-15


class TestEstimateKUpper:
    def test_single_benign_function(self):
        corpus = [CorpusFunction("z", scalar_polynomial(INF, 1, {(1,): 1.0}), 1.0, "exact")]
        est = estimate_K_upper(corpus, scalar_identity(), 1.0)
        assert est.upper == 1.0 and est.capped

    def test_disk_corpus_minimum(self):
        corpus = moebius_corpus([0.5, 0.9, 0.99], 60, 1, INF)
        est = estimate_K_upper(corpus, scalar_identity(), 1.0, 1e-9)
        assert est.upper == pytest.approx(closed_form_disk_radius(0.99, 1.0), abs=1e-8)
        assert "moebius_a=0.99" in est.upper_source

    def test_corpus_union_never_increases(self):
        base = moebius_corpus([0.5, 0.8], 60, 1, INF)
        bigger = base + moebius_corpus([0.95], 60, 1, INF)
        op = scalar_identity()
        e1 = estimate_K_upper(base, op, 1.0, seed=3)
        e2 = estimate_K_upper(bigger, op, 1.0, seed=3)
        assert e2.upper <= e1.upper + 1e-15

    def test_empty_corpus_rejected(self):
        with pytest.raises(ValueError):
            estimate_K_upper([], scalar_identity(), 1.0)


class TestEstimateKmUpper:
    def test_degree_one_is_capped_at_one(self):
        for p in (1.0, 2.0, INF):
            P = scalar_polynomial(p, 3, {(1, 0, 0): 1.0, (0, 1, 0): -1.0, (0, 0, 1): 1.0})
            est = estimate_Km_upper([CorpusFunction("lin", P)], scalar_identity(), 1.0)
            assert est.upper == 1.0
            assert est.raw_upper >= 1.0

    def test_z1z2_polydisc_ratio_one(self):
        P = scalar_polynomial(INF, 2, {(1, 1): 1.0})
        est = estimate_Km_upper([CorpusFunction("m", P)], scalar_identity(), 1.0)
        assert est.raw_upper == pytest.approx(1.0, abs=1e-12)

    def test_lambda_scaling_exact_on_raw(self):
        corpus = [CorpusFunction(f"P{i}", random_polynomial(2, 3, 1, "unimodular-signs",
                                                            i, p=2.0))
                  for i in range(3)]
        op = scalar_identity()
        base = estimate_Km_upper(corpus, op, 1.0, seed=1)
        for lam in (1.5, 2.0, 4.0):
            scaled = estimate_Km_upper(corpus, op, lam, seed=1)
            assert scaled.raw_upper == lam ** 0.5 * base.raw_upper

    def test_mixed_degrees_rejected(self):
        corpus = [CorpusFunction("a", scalar_polynomial(2, 2, {(1, 1): 1.0})),
                  CorpusFunction("b", scalar_polynomial(2, 2, {(1, 0): 1.0}))]
        with pytest.raises(ValueError):
            estimate_Km_upper(corpus, scalar_identity(), 1.0)


class TestSandwich:
    def test_disk_ordering(self):
        corpus = moebius_corpus([0.5, 0.9, 0.99], 60, 1, INF)
        est = estimate_K_upper(corpus, scalar_identity(), 2.0, 1e-9)
        report = sandwich_check(est, {"cotype-infm": 1 / math.e}, 1.0, 2.0)
        assert report.factor == pytest.approx(1 / 3)
        assert report.passed
        name, km, k_lower, slack = report.entries[0]
        assert k_lower == pytest.approx(1 / (3 * math.e))
        assert slack > 0

    def test_degenerate_lambda_near_norm(self):
        report = sandwich_check(0.5, {"x": 1 / math.e}, 1.0, 1.0 + 1e-9)
        assert report.passed  # lower collapses toward 0

    def test_rejects_norm_at_least_lambda(self):
        with pytest.raises(ValueError):
            sandwich_check(0.5, {}, 2.0, 1.5)
