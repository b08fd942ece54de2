"""Arithmetic Bohr radius: feasibility, mean maximization, constructive vector."""

import math

import numpy as np
import pytest

from bohrlab.arithmetic import (RadiusVector, constructive_lower, feasible,
                                maximize_mean)
from bohrlab.corpus import moebius_corpus
from bohrlab.operators import scalar_identity
from bohrlab.polynomials import scalar_polynomial
from bohrlab.radii import CorpusFunction, estimate_K_upper
from bohrlab.spaces import INF


def z_function():
    return CorpusFunction("z", scalar_polynomial(INF, 1, {(1,): 1.0}), 1.0, "exact")


def z1z2_function():
    return CorpusFunction("z1z2", scalar_polynomial(INF, 2, {(1, 1): 1.0}), 1.0, "exact")


class TestRadiusVector:
    def test_mean_recomputed(self):
        v = RadiusVector((0.2, 0.4))
        assert v.mean == pytest.approx(0.3)

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            RadiusVector((0.1, -0.2))


class TestFeasible:
    def test_identity_function_boundary(self):
        rep = feasible(RadiusVector((1.0,)), [z_function()], scalar_identity(), 1.0)
        assert rep.feasible and rep.worst_slack == pytest.approx(0.0, abs=1e-15)

    def test_moebius_below_one_third(self):
        corpus = moebius_corpus([0.3, 0.6, 0.9, 0.99], 60, 1, INF)
        rep = feasible(RadiusVector((1 / 3 - 1e-3,)), corpus, scalar_identity(), 1.0)
        assert rep.feasible

    def test_single_term_violation(self):
        rep = feasible(RadiusVector((2.0, 1.0)), [z1z2_function()],
                       scalar_identity(), 1.0)
        assert not rep.feasible and rep.worst_slack < 0
        assert rep.worst_id == "z1z2"

    def test_empty_corpus(self):
        with pytest.raises(ValueError):
            feasible(RadiusVector((1.0,)), [], scalar_identity(), 1.0)


class TestMaximizeMean:
    def test_disk_moebius_reaches_one_third(self):
        corpus = moebius_corpus([round(0.1 + 0.01 * i, 2) for i in range(90)],
                                60, 1, INF)
        res = maximize_mean(corpus, scalar_identity(), 1.0, seed=0)
        assert res.status == "ok"
        assert res.mean == pytest.approx(1 / 3, abs=3e-3)

    def test_z1z2_saturates_cap(self):
        res = maximize_mean([z1z2_function()], scalar_identity(), 1.0, seed=0)
        assert res.mean == pytest.approx(1.0, abs=1e-12)
        assert res.capped_coords == 2

    def test_mean_nondecreasing_in_lambda(self):
        corpus = moebius_corpus([0.5, 0.9], 60, 2, 2.0)
        means = [maximize_mean(corpus, scalar_identity(), lam, seed=4).mean
                 for lam in (1.0, 1.3, 1.7, 2.5)]
        assert all(a <= b + 1e-12 for a, b in zip(means, means[1:]))

    def test_infeasible_at_zero_reported(self):
        f = CorpusFunction("c", scalar_polynomial(2, 2, {(0, 0): 2.0, (1, 1): 1.0}),
                           0.5, "stub")
        res = maximize_mean([f], scalar_identity(), 1.0, seed=0)
        assert res.status == "infeasible-at-zero" and res.mean == 0.0

    def test_returned_vector_refeasible(self):
        corpus = moebius_corpus([0.4, 0.8], 60, 3, 2.0)
        res = maximize_mean(corpus, scalar_identity(), 1.2, seed=7)
        rep = feasible(res.vector, corpus, scalar_identity(), 1.2)
        assert rep.feasible

    def test_scaling_leaves_feasible_set_unchanged(self):
        # power-of-two scaling is exact in floats: verdicts must match exactly
        base = [CorpusFunction("m", scalar_polynomial(2, 2, {(1, 1): 1.0, (2, 0): 0.5}),
                               1.25, "stub")]
        scaled = [CorpusFunction("m", base[0].poly.scale(2.0), 2.5, "stub")]
        rng = np.random.default_rng(0)
        for _ in range(40):
            r = RadiusVector(tuple(rng.random(2) * 1.5))
            v1 = feasible(r, base, scalar_identity(), 1.0)
            v2 = feasible(r, scaled, scalar_identity(), 1.0)
            assert v1.feasible == v2.feasible


class TestConstructiveLower:
    def test_polydisc_shape(self):
        v = constructive_lower(1 / 3, INF, 4)
        assert v.n == 4
        assert v.mean == pytest.approx(1 / 3, rel=1e-5)
        assert len(set(v.r)) == 1

    def test_p1_scaling(self):
        v = constructive_lower(1 / 3, 1.0, 7)
        assert v.mean == pytest.approx((1 / 3) / 7, rel=1e-5)

    def test_p2_scaling(self):
        v = constructive_lower(1 / 3, 2.0, 4)
        assert v.mean == pytest.approx((1 / 3) / 2, rel=1e-5)

    def test_verified_against_corpus(self):
        corpus = moebius_corpus([0.3, 0.7, 0.95], 60, 2, 2.0)
        op = scalar_identity()
        est = estimate_K_upper(corpus, op, 1.0, 1e-9)
        v = constructive_lower(max(est.upper - 1e-9, 1e-12), 2.0, 2,
                               corpus=corpus, operator=op, lam=1.0)
        assert v.mean > 0

    def test_domain(self):
        with pytest.raises(ValueError):
            constructive_lower(0.0, 2.0, 3)
        with pytest.raises(ValueError):
            constructive_lower(1.5, 2.0, 3)


class TestArithmeticKCoincidence:
    def test_n1_matches_k_estimate(self):
        corpus = moebius_corpus([0.5, 0.9, 0.99], 60, 1, INF)
        op = scalar_identity()
        for lam in (1.0, 1.3):
            est = estimate_K_upper(corpus, op, lam, 1e-9)
            res = maximize_mean(corpus, op, lam, seed=0)
            assert res.mean == pytest.approx(est.upper, abs=1e-6)

    def test_mean_dominates_constructive(self):
        op = scalar_identity()
        for p, n in [(2.0, 2), (INF, 3), (4.0, 2)]:
            corpus = moebius_corpus([0.4, 0.9], 60, n, p)
            est = estimate_K_upper(corpus, op, 1.0, 1e-9)
            res = maximize_mean(corpus, op, 1.0, seed=1)
            cl = constructive_lower(max(est.upper - 1e-9, 1e-12), p, n,
                                    corpus=corpus, operator=op, lam=1.0)
            assert res.mean >= cl.mean - 1e-9
