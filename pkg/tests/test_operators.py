"""Operator models: norm brackets, summing estimates, exponent formulas."""

import json
import math

import numpy as np
import pytest

from bohrlab.operators import (OperatorModel, bennett_carl_exponent,
                               diagonal_operator, identity_operator,
                               inclusion_operator, kwapien_exponent,
                               op_from_dict, op_to_dict, operator_norm,
                               scalar_identity, summing_lower, weak_l1_upper)
from bohrlab.spaces import INF, SpaceSpec, lp_norm


class TestOperatorModel:
    def test_identity_validation(self):
        with pytest.raises(ValueError):
            OperatorModel(np.eye(2) * 2, SpaceSpec(2, 2), SpaceSpec(2, 2), "identity")

    def test_inclusion_any_exponent_pair_allowed(self):
        # reversed exponents are permitted; only the norm changes
        op = inclusion_operator(2, 1, 3)
        lo, up = operator_norm(op, seed=0)
        assert up == pytest.approx(3 ** (1 - 0.5))
        assert lo == pytest.approx(up, rel=1e-6)

    def test_image_norms(self):
        op = diagonal_operator([2, 3], 2, 2)
        norms = op.image_norms(np.array([[1, 0], [0, 1], [1, 1]], dtype=complex))
        assert norms == pytest.approx([2.0, 3.0, math.sqrt(13)])

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            OperatorModel(np.eye(3), SpaceSpec(2, 2), SpaceSpec(2, 2))


class TestOperatorNorm:
    def test_identity(self):
        lo, up = operator_norm(identity_operator(SpaceSpec(2, 3)), seed=0)
        assert (lo, up) == (1.0, 1.0)

    def test_inclusion_l1_l2(self):
        lo, up = operator_norm(inclusion_operator(1, 2, 2), seed=0)
        assert up == 1.0
        assert lo >= 1 - 1e-9

    def test_diagonal_linf(self):
        lo, up = operator_norm(diagonal_operator([2, 3], INF, INF), seed=0)
        assert up == 3.0
        assert lo == pytest.approx(3.0, rel=1e-9)

    def test_diagonal_summed_case(self):
        # l2 -> l1 diagonal: norm is the l2 norm of the diagonal
        lo, up = operator_norm(diagonal_operator([3, 4], 2, 1), seed=0)
        assert up == pytest.approx(5.0)
        assert lo == pytest.approx(5.0, rel=1e-6)

    def test_general_bracket_orders(self):
        rng = np.random.default_rng(0)
        for i in range(10):
            M = rng.standard_normal((3, 2)) + 1j * rng.standard_normal((3, 2))
            src = SpaceSpec((1.0, 2.0, INF)[i % 3], 2)
            tgt = SpaceSpec((1.0, 2.0, INF)[(i + 1) % 3], 3)
            lo, up = operator_norm(OperatorModel(M, src, tgt), seed=i)
            assert 0 <= lo <= up * (1 + 1e-9)

    def test_l2_to_l2_matches_svd(self):
        rng = np.random.default_rng(4)
        M = rng.standard_normal((3, 3))
        op = OperatorModel(M, SpaceSpec(2, 3), SpaceSpec(2, 3))
        lo, up = operator_norm(op, restarts=32, iters=200, seed=1)
        smax = np.linalg.svd(M, compute_uv=False)[0]
        assert lo == pytest.approx(smax, rel=1e-6)
        assert up >= smax * (1 - 1e-12)


class TestWeakL1:
    def test_singleton_is_norm(self):
        x = np.array([[1.0, 2.0]], dtype=complex)
        assert weak_l1_upper(x, SpaceSpec(2, 2)) == pytest.approx(math.sqrt(5))

    def test_scalar_family(self):
        x = np.array([[1.0], [-2.0], [3.0]], dtype=complex)
        assert weak_l1_upper(x, SpaceSpec(2, 1)) == pytest.approx(6.0)

    def test_linf_source_closed_form(self):
        x = np.array([[1.0, 0.5], [2.0, -1.0]], dtype=complex)
        # max over coordinates of the absolute column sum
        assert weak_l1_upper(x, SpaceSpec(INF, 2)) == pytest.approx(3.0)

    def test_disjoint_supports(self):
        x = np.array([[2.0, 0.0], [0.0, 1.0]], dtype=complex)
        assert weak_l1_upper(x, SpaceSpec(2, 2)) == pytest.approx(math.sqrt(5))

    def test_upper_dominates_sign_combinations(self):
        # the reported value must dominate every sign pattern by duality
        rng = np.random.default_rng(2)
        for p in (1.0, 2.0, 4.0):
            space = SpaceSpec(p, 3)
            x = rng.standard_normal((4, 3)).astype(complex)
            w = weak_l1_upper(x, space)
            for signs in np.ndindex(*(2,) * 4):
                eps = np.array([1 if s else -1 for s in signs], dtype=float)
                assert lp_norm(eps @ x, p) <= w * (1 + 1e-9)


class TestSummingLower:
    def test_scalar_identity_exactly_one(self):
        for r in (1.0, 4 / 3, 2.0):
            val = summing_lower(scalar_identity(), r, trials=8, seed=0)
            assert val == pytest.approx(1.0, abs=1e-12)

    def test_dominates_operator_norm(self):
        op = diagonal_operator([1.0, 0.5], 2, 2)
        lo, _ = operator_norm(op, seed=0)
        assert summing_lower(op, 2.0, trials=16, seed=0) >= lo - 1e-9

    def test_bennett_carl_inclusion_at_least_one(self):
        op = inclusion_operator(1, 2, 2)
        assert summing_lower(op, 4 / 3, trials=16, seed=0) >= 1 - 1e-9

    def test_nonincreasing_in_r(self):
        op = inclusion_operator(1, 2, 3)
        vals = [summing_lower(op, r, trials=24, seed=5) for r in (1.0, 1.5, 2.0, 4.0)]
        assert all(a >= b - 1e-12 for a, b in zip(vals, vals[1:]))

    def test_rejects_bad_r(self):
        with pytest.raises(ValueError):
            summing_lower(scalar_identity(), 0.5)


class TestExponentFormulas:
    def test_kwapien_points(self):
        assert kwapien_exponent(2) == pytest.approx(1.0, abs=1e-12)
        assert kwapien_exponent(1) == pytest.approx(2.0, abs=1e-12)
        assert kwapien_exponent(4) == pytest.approx(1 / (1 - 0.25), abs=1e-12)

    def test_kwapien_rejects_inf(self):
        with pytest.raises(ValueError):
            kwapien_exponent(INF)

    def test_bennett_carl_points(self):
        assert bennett_carl_exponent(1, 2) == pytest.approx(1.0, abs=1e-12)
        assert bennett_carl_exponent(2, 4) == pytest.approx(2.0, abs=1e-12)

    def test_bennett_carl_domain(self):
        with pytest.raises(ValueError):
            bennett_carl_exponent(2, 2)
        with pytest.raises(ValueError):
            bennett_carl_exponent(1, INF)


class TestJsonWireForm:
    def test_round_trip_all_kinds(self):
        ops = [identity_operator(SpaceSpec(INF, 2)),
               inclusion_operator(1, 2, 3),
               diagonal_operator([1 + 1j, 2.0], 2, 4),
               OperatorModel(np.array([[1, 2j], [3, 4]]), SpaceSpec(1, 2),
                             SpaceSpec(2, 2))]
        for op in ops:
            doc = json.loads(json.dumps(op_to_dict(op)))
            back = op_from_dict(doc)
            assert back.kind == op.kind
            assert back.source == op.source and back.target == op.target
            assert np.allclose(back.matrix, op.matrix)
