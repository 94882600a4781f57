"""Certified operator-norm bounds: closed-form path-graph eigenvalues,
dense brute-force singular values, closed-walk counting, and the l1-norm
comparison behind the amenability witness."""

import math

import numpy as np
import pytest

from rdworkbench import (
    AlgebraVector,
    UsageError,
    enumerate_ball,
    extrapolate_return_limit,
    generator_sum,
    kesten_gap,
    make_group,
    return_prob_norm,
    truncated_opnorm,
)
from rdworkbench.fastindex import compression_matrix

TIGHT = dict(iters=200_000, tol=1e-13)


def hop_z(z1):
    return AlgebraVector(z1, {(1,): 1.0, (-1,): 1.0})


def dense_sigma_max(group, f, radius):
    ball = enumerate_ball(group, radius)
    C = compression_matrix(ball, f).toarray()
    return float(np.linalg.svd(C, compute_uv=False)[0])


class TestPathGraphOracle:
    @pytest.mark.parametrize("m", [10, 50, 100])
    def test_z_hop_eigenvalue(self, z1, m):
        est = truncated_opnorm(hop_z(z1), m, **TIGHT)
        assert est.lower == pytest.approx(2 * math.cos(math.pi / (2 * m + 2)),
                                          abs=1e-9)

    def test_delta_e(self, z1):
        est = truncated_opnorm(AlgebraVector.delta(z1, (0,)), 4)
        assert est.lower == pytest.approx(1.0, abs=1e-12)
        assert est.upper == 1.0


class TestEstimateShape:
    def test_trace_nondecreasing_and_last_is_lower(self, f2):
        est = truncated_opnorm(generator_sum(f2), 8, iters=50, tol=0.0)
        trace = est.iteration_trace
        assert all(a <= b for a, b in zip(trace, trace[1:]))
        assert est.lower == trace[-1]
        assert est.lower <= est.upper

    def test_monotone_in_radius(self, z2):
        f = generator_sum(z2)
        lowers = [truncated_opnorm(f, R, iters=2000, tol=1e-12).lower
                  for R in (1, 2, 4, 8)]
        assert all(a <= b + 1e-12 for a, b in zip(lowers, lowers[1:]))

    def test_radius_below_support_rejected(self, f2):
        f = AlgebraVector.delta(f2, f2.parse_word("abab"))
        with pytest.raises(UsageError):
            truncated_opnorm(f, 3)

    def test_upper_formula(self, f2):
        f = generator_sum(f2)
        est = truncated_opnorm(f, 2, iters=50, tol=1e-9)
        gamma1 = 5  # |B(1)| in F2
        assert est.upper == pytest.approx(min(4.0, math.sqrt(gamma1) * 2.0))


class TestDenseOracleEquivalence:
    SPECS = ["zd:1", "zd:2", "free:2", "heisenberg", "lamplighter",
             "raag:path:3"]

    @pytest.mark.parametrize("spec", SPECS)
    def test_random_f_small_ball(self, spec, rng):
        group = make_group(spec)
        radius = 3
        ball = enumerate_ball(group, radius)
        assert len(ball) <= 2000
        small = enumerate_ball(group, 2)
        coeffs = {g: float(rng.integers(-2, 3)) for g in small.elements
                  if rng.random() < 0.6}
        f = AlgebraVector(group, coeffs)
        if not f.coeffs:
            f = AlgebraVector.delta(group, group.identity())
        est = truncated_opnorm(f, radius, **TIGHT)
        assert est.lower == pytest.approx(dense_sigma_max(group, f, radius),
                                          abs=1e-8)

    def test_radial_fast_path_matches_dense(self, f2):
        f = generator_sum(f2)
        for radius in (2, 4, 6):
            est = truncated_opnorm(f, radius, **TIGHT)
            assert est.lower == pytest.approx(dense_sigma_max(f2, f, radius),
                                              abs=1e-8)

    def test_radial_ball_indicator_matches_dense(self, f2):
        ball = enumerate_ball(f2, 2)
        f = AlgebraVector(f2, {g: 1.0 for g in ball.elements})
        est = truncated_opnorm(f, 4, **TIGHT)
        assert est.lower == pytest.approx(dense_sigma_max(f2, f, 4), abs=1e-8)


class TestF2GeneratorSum:
    def test_lower_bound_at_16(self, f2):
        est = truncated_opnorm(generator_sum(f2), 16, iters=100_000, tol=1e-13)
        assert 3.40 <= est.lower <= 4.0
        assert est.upper == 4.0

    def test_two_sided_vs_true_value(self, f2):
        # compressions stay below the true operator norm 2 sqrt(3)
        est = truncated_opnorm(generator_sum(f2), 16, iters=100_000, tol=1e-13)
        assert est.lower <= 2 * math.sqrt(3) + 1e-9


class TestReturnProbNorm:
    def test_delta_e_constant_one(self, z1):
        f = AlgebraVector.delta(z1, (0,))
        assert return_prob_norm(f, 5) == pytest.approx([1.0] * 5)

    def test_z_binomial_oracle(self, z1):
        values = return_prob_norm(hop_z(z1), 8)
        expected = [math.comb(2 * n, n) ** (1 / (2 * n)) for n in range(1, 9)]
        assert values == pytest.approx(expected)

    def test_requires_symmetry(self, f2):
        with pytest.raises(UsageError):
            return_prob_norm(AlgebraVector.delta(f2, f2.parse_word("a")), 3)

    def test_monotone_and_below_opnorm(self, f2):
        values = return_prob_norm(generator_sum(f2), 8)
        assert all(a <= b + 1e-12 for a, b in zip(values, values[1:]))
        assert values[-1] <= 2 * math.sqrt(3)

    def test_sandwich_with_truncated_bound(self, z1):
        f = hop_z(z1)
        est = truncated_opnorm(f, 60, **TIGHT)
        limit = extrapolate_return_limit(return_prob_norm(f, 12))
        assert est.lower <= est.upper + 1e-12
        assert est.lower <= limit * 1.02


class TestKestenGap:
    def test_delta_e_gap_zero(self, z1):
        rep = kesten_gap(AlgebraVector.delta(z1, (0,)), 3)
        assert rep.gap == pytest.approx(0.0, abs=1e-12)

    def test_z_gap_closes(self, z1):
        rep = kesten_gap(hop_z(z1), 100, **TIGHT)
        assert rep.gap == pytest.approx(2 - 2 * math.cos(math.pi / 202),
                                        abs=1e-9)
        assert rep.gap < 0.01

    def test_f2_gap_persists(self, f2):
        rep = kesten_gap(generator_sum(f2), 16, iters=100_000, tol=1e-13)
        assert rep.gap >= 0.5

    def test_rejects_signed_input(self, z1):
        with pytest.raises(UsageError):
            kesten_gap(AlgebraVector(z1, {(1,): 1.0, (-1,): -1.0}), 3)


class TestCompressionMatrix:
    def test_vector_path_matches_python_path(self, lamp):
        from rdworkbench.fastindex import (
            _coeff_array, _coo_python, _coo_vectorised, packer_for)
        from scipy import sparse

        ball = enumerate_ball(lamp, 4)
        f = AlgebraVector(lamp, {g: 1.0 for g in ball.elements})
        coeffs, lf = _coeff_array(ball, f)
        packer = packer_for(lamp, ball.radius + lf)
        assert packer is not None
        n = len(ball)
        dense_fast = sparse.csr_matrix(
            (lambda t: (t[2], (t[0], t[1])))(
                _coo_vectorised(ball, coeffs, lf, packer)), shape=(n, n)
        ).toarray()
        dense_slow = sparse.csr_matrix(
            (lambda t: (t[2], (t[0], t[1])))(_coo_python(ball, f)),
            shape=(n, n)
        ).toarray()
        assert np.array_equal(dense_fast, dense_slow)

    @pytest.mark.parametrize("spec", ["zd:2", "free:2", "heisenberg"])
    def test_vector_path_random_coeffs(self, spec, rng):
        from rdworkbench.fastindex import (
            _coeff_array, _coo_python, _coo_vectorised, packer_for)
        from scipy import sparse

        group = make_group(spec)
        ball = enumerate_ball(group, 3)
        coeff_map = {g: float(rng.integers(-2, 3))
                     for g in enumerate_ball(group, 2).elements}
        f = AlgebraVector(group, coeff_map)
        coeffs, lf = _coeff_array(ball, f)
        packer = packer_for(group, ball.radius + lf)
        assert packer is not None
        n = len(ball)
        fast = sparse.csr_matrix(
            (lambda t: (t[2], (t[0], t[1])))(
                _coo_vectorised(ball, coeffs, lf, packer)), shape=(n, n)
        ).toarray()
        slow = sparse.csr_matrix(
            (lambda t: (t[2], (t[0], t[1])))(_coo_python(ball, f)),
            shape=(n, n)
        ).toarray()
        assert np.array_equal(fast, slow)

    def test_support_outside_ball_rejected(self, f2):
        ball = enumerate_ball(f2, 2)
        f = AlgebraVector.delta(f2, f2.parse_word("abab"))
        with pytest.raises(UsageError):
            compression_matrix(ball, f)
