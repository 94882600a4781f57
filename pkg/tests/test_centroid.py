"""Centroid strategies and the three-condition certification."""

import pytest

from rdworkbench import (
    ActionSpec,
    GromovProductStrategy,
    MedianStrategy,
    UsageError,
    centroid,
    enumerate_ball,
    equivariance_check,
    fit_condition_degrees,
    make_strategy,
    stabilizer_bound,
    verify_centroid_conditions,
)
from rdworkbench.centroid import _direct_conditions


class TestCentroid:
    def test_degenerate_triangle(self, f2):
        act = ActionSpec(f2)
        g = f2.parse_word("ab")
        assert centroid(act, MedianStrategy(), g, g) == g
        assert centroid(act, GromovProductStrategy(), g, g) == g

    def test_f2_split_point(self, f2):
        act = ActionSpec(f2)
        m = centroid(act, MedianStrategy(), f2.parse_word("ab"),
                     f2.parse_word("ab'"))
        assert m == f2.parse_word("a")

    def test_z_median(self, z1):
        act = ActionSpec(z1)
        assert centroid(act, MedianStrategy(), (5,), (-3,)) == (0,)

    def test_median_lies_on_all_three_sides(self, raag_p3, rng):
        strategy = MedianStrategy()
        ball = enumerate_ball(raag_p3, 3)
        wl, mul, inv = (raag_p3.word_length, raag_p3.multiply,
                        raag_p3.invert)
        for _ in range(60):
            g = ball.elements[int(rng.integers(len(ball)))]
            h = ball.elements[int(rng.integers(len(ball)))]
            m = strategy.centroid(raag_p3, g, h)
            assert wl(m) + wl(mul(inv(m), g)) == wl(g)
            assert wl(m) + wl(mul(inv(m), h)) == wl(h)
            assert wl(mul(inv(g), m)) + wl(mul(inv(m), h)) == wl(mul(inv(g), h))

    def test_gromov_matches_median_on_tree(self, f2, rng):
        med, gro = MedianStrategy(), GromovProductStrategy()
        ball = enumerate_ball(f2, 8)
        for _ in range(300):
            g = ball.elements[int(rng.integers(len(ball)))]
            h = ball.elements[int(rng.integers(len(ball)))]
            assert med.centroid(f2, g, h) == gro.centroid(f2, g, h)

    def test_make_strategy(self):
        assert make_strategy("median").kind == "median"
        assert make_strategy("gromov").kind == "gromov-product"
        with pytest.raises(UsageError):
            make_strategy("barycentre")


class TestVerifyConditions:
    def test_f2_linear_maxima(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=6, h_radius=8,
            sample=10 ** 9)
        assert report.sampling["exhaustive"]
        for r, c1, c2, c3 in zip(report.r_values, report.cond1_max,
                                 report.cond2_max, report.cond3_max):
            assert max(c1, c2, c3) <= r + 1
            assert min(c1, c2, c3) >= 1

    def test_z_linear_maxima(self, z1):
        report = verify_centroid_conditions(
            ActionSpec(z1), MedianStrategy(), r_max=10, h_radius=12,
            sample=10 ** 9)
        for r, c1, c3 in zip(report.r_values, report.cond1_max,
                             report.cond3_max):
            assert c1 <= r + 1 and c3 <= r + 1

    def test_raag_quadratic_maxima(self, raag_p3):
        report = verify_centroid_conditions(
            ActionSpec(raag_p3), MedianStrategy(), r_max=4, h_radius=6,
            sample=10 ** 9)
        for r, c1, c2, c3 in zip(report.r_values, report.cond1_max,
                                 report.cond2_max, report.cond3_max):
            assert max(c1, c2, c3) <= (r + 1) ** 2

    def test_nondecreasing_sequences(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=5, h_radius=6,
            sample=10 ** 9)
        for series in (report.cond1_max, report.cond3_max):
            assert all(a <= b for a, b in zip(series, series[1:]))

    def test_fast_paths_match_brute_force(self, f2):
        g_ball = enumerate_ball(f2, 3)
        h_ball = enumerate_ball(f2, 4)
        direct = _direct_conditions(f2, MedianStrategy(), g_ball,
                                    h_ball.elements, 3)
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=3, h_radius=4,
            sample=10 ** 9)
        assert list(direct[0]) == report.cond1_max
        assert list(direct[1]) == report.cond2_max
        assert list(direct[2]) == report.cond3_max

    def test_raag_fast_paths_match_brute_force(self, raag_p3):
        g_ball = enumerate_ball(raag_p3, 2)
        h_ball = enumerate_ball(raag_p3, 3)
        direct = _direct_conditions(raag_p3, MedianStrategy(), g_ball,
                                    h_ball.elements, 2)
        report = verify_centroid_conditions(
            ActionSpec(raag_p3), MedianStrategy(), r_max=2, h_radius=3,
            sample=10 ** 9)
        assert list(direct[0]) == report.cond1_max
        assert list(direct[1]) == report.cond2_max
        assert list(direct[2]) == report.cond3_max

    def test_gromov_strategy_direct(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), GromovProductStrategy(), r_max=3, h_radius=4,
            sample=10 ** 9)
        for r, c1 in zip(report.r_values, report.cond1_max):
            assert c1 <= r + 1

    def test_sampled_mode_recorded(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=2, h_radius=5,
            sample=50, seed=11)
        assert not report.sampling["exhaustive"]
        assert report.sampling["sample_size"] == 50
        twin = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=2, h_radius=5,
            sample=50, seed=11)
        assert twin.cond1_max == report.cond1_max
        assert twin.cond2_max == report.cond2_max

    def test_rmax_exceeding_hradius_rejected(self, f2):
        with pytest.raises(UsageError):
            verify_centroid_conditions(ActionSpec(f2), MedianStrategy(),
                                       r_max=5, h_radius=3)


class TestFitDegrees:
    def test_f2_degrees_and_bound(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=6, h_radius=8,
            sample=10 ** 9)
        fit = fit_condition_degrees(report)
        assert all(d <= 1.2 for d in fit.degrees)
        assert 1.0 <= fit.deg_rd_bound <= 3.3
        assert report.fitted_degrees == fit.degrees
        assert report.deg_rd_bound == fit.deg_rd_bound

    def test_z_bound_between_one_and_limit(self, z1):
        report = verify_centroid_conditions(
            ActionSpec(z1), MedianStrategy(), r_max=10, h_radius=12,
            sample=10 ** 9)
        fit = fit_condition_degrees(report)
        assert 1.0 <= fit.deg_rd_bound <= 3.3

    def test_raag_per_condition_degree_below_clique_number(self, raag_p3):
        report = verify_centroid_conditions(
            ActionSpec(raag_p3), MedianStrategy(), r_max=4, h_radius=6,
            sample=10 ** 9)
        assert all(d <= 2.0 for d in report.fitted_degrees)

    def test_constant_maxima_degree_zero(self):
        from rdworkbench.centroid import CentroidReport

        report = CentroidReport(
            group_spec="stub", strategy="median",
            r_values=list(range(7)), cond1_max=[3] * 7, cond2_max=[3] * 7,
            cond3_max=[3] * 7, sampling={})
        fit = fit_condition_degrees(report)
        assert fit.degrees == pytest.approx((0.0, 0.0, 0.0), abs=1e-12)
        assert fit.deg_rd_bound == pytest.approx(0.0, abs=1e-12)

    def test_too_few_radii(self, f2):
        report = verify_centroid_conditions(
            ActionSpec(f2), MedianStrategy(), r_max=3, h_radius=3,
            sample=10 ** 9)
        assert report.fitted_degrees is None
        with pytest.raises(UsageError):
            fit_condition_degrees(report)


class TestStabilizerAndEquivariance:
    def test_stabilizer_is_one(self, f2, raag_p3, rng):
        for group in (f2, raag_p3):
            ball = enumerate_ball(group, 3)
            verts = [ball.elements[int(i)]
                     for i in rng.integers(0, len(ball), size=20)]
            assert stabilizer_bound(ActionSpec(group), verts) == 1

    def test_equivariance_median(self, f2, z1):
        assert equivariance_check(ActionSpec(f2), MedianStrategy(), 200,
                                  seed=3)
        assert equivariance_check(ActionSpec(z1), MedianStrategy(), 200,
                                  seed=3, radius=8)

    def test_equivariance_raag(self, raag_p3):
        assert equivariance_check(ActionSpec(raag_p3), MedianStrategy(), 150,
                                  seed=3, radius=3)

    def test_equivariance_gromov(self, f2):
        assert equivariance_check(ActionSpec(f2), GromovProductStrategy(),
                                  150, seed=3)
