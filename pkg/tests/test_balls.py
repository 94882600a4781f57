"""Ball enumeration, growth functions and graph-action length functions."""

import numpy as np
import pytest

from rdworkbench import (
    CapacityError,
    GraphAction,
    action_length,
    enumerate_ball,
    growth_function,
    make_group,
)


class TestEnumerateBall:
    def test_counts(self, z1, z2, f2):
        assert len(enumerate_ball(z1, 3)) == 7
        assert len(enumerate_ball(f2, 2)) == 17
        assert len(enumerate_ball(z2, 2)) == 13

    def test_sorted_by_length_then_form(self, f2):
        ball = enumerate_ball(f2, 3)
        keys = [(int(n), f2.sort_key(g)) for g, n in zip(ball.elements, ball.lengths)]
        assert keys == sorted(keys)
        assert ball.elements[0] == f2.identity()

    def test_no_duplicates_and_complete(self, raag_p3):
        ball = enumerate_ball(raag_p3, 4)
        assert len(set(ball.elements)) == len(ball)
        for g, n in zip(ball.elements, ball.lengths):
            assert raag_p3.word_length(g) == n

    def test_prefix_property(self):
        for spec in ("zd:2", "free:2", "heisenberg", "lamplighter"):
            group = make_group(spec)
            small = enumerate_ball(group, 3)
            big = enumerate_ball(group, 4)
            assert big.elements[: len(small)] == small.elements

    def test_generator_adjacency(self, z2, rng):
        ball = enumerate_ball(z2, 4)
        adj = ball.right_adjacency
        for i in rng.integers(0, len(ball), size=30):
            for j, s in enumerate(z2.generators):
                product = z2.multiply(ball.elements[int(i)], s)
                expected = ball.index_of.get(product, -1)
                assert adj[int(i), j] == expected

    def test_capacity_error_names_radius(self, f2):
        with pytest.raises(CapacityError, match="radius"):
            enumerate_ball(f2, 10, cap=1000)

    def test_cap_env_override(self, f2, monkeypatch):
        monkeypatch.setenv("RD_WORKBENCH_CAP", "50")
        with pytest.raises(CapacityError):
            enumerate_ball(f2, 5)
        monkeypatch.setenv("RD_WORKBENCH_CAP", "10000")
        assert len(enumerate_ball(f2, 5)) == 485


class TestGrowthFunction:
    def test_z(self, z1):
        gamma = growth_function(enumerate_ball(z1, 20))
        assert gamma == [2 * n + 1 for n in range(21)]

    def test_f2(self, f2):
        gamma = growth_function(enumerate_ball(f2, 8))
        assert gamma == [2 * 3 ** n - 1 for n in range(9)]

    def test_z2_closed_form(self, z2):
        gamma = growth_function(enumerate_ball(z2, 12))
        assert gamma == [2 * n * n + 2 * n + 1 for n in range(13)]

    def test_free_abelian_brute_force(self):
        for d in (1, 2, 3):
            group = make_group(f"zd:{d}")
            gamma = growth_function(enumerate_ball(group, 6))
            for n in range(7):
                grid = np.array(
                    np.meshgrid(*([np.arange(-n, n + 1)] * d))
                ).reshape(d, -1)
                brute = int((np.abs(grid).sum(axis=0) <= n).sum())
                assert gamma[n] == brute == group.ball_count(n)

    def test_nondecreasing_and_submultiplicative(self):
        for spec in ("zd:2", "free:2", "heisenberg", "lamplighter",
                     "raag:path:3"):
            gamma = growth_function(enumerate_ball(make_group(spec), 6))
            assert gamma[0] == 1
            assert all(a <= b for a, b in zip(gamma, gamma[1:]))
            for m in range(4):
                for n in range(4):
                    if m + n <= 6:
                        assert gamma[m + n] <= gamma[m] * gamma[n]

    def test_heisenberg_window_slope(self, heis):
        gamma = growth_function(enumerate_ball(heis, 24))
        ns = np.arange(8, 25)
        ys = np.log([gamma[n] for n in ns])
        A = np.vstack([np.log(ns), np.ones(len(ns))]).T
        slope = float(np.linalg.lstsq(A, ys, rcond=None)[0][0])
        assert 3.5 <= slope <= 4.5


class TestActionLength:
    def test_identity_and_word_length_agreement(self, f2):
        graph = enumerate_ball(f2, 5).cayley_graph()
        act = GraphAction(f2, graph)
        basepoint = graph.labels.index(f2.identity())
        assert action_length(f2, act, basepoint, f2.identity()) == 0
        g = f2.parse_word("ab")
        assert action_length(f2, act, basepoint, g) == 2

    def test_raag_example(self, raag_p3):
        graph = enumerate_ball(raag_p3, 4).cayley_graph()
        act = GraphAction(raag_p3, graph)
        basepoint = graph.labels.index(raag_p3.identity())
        g = raag_p3.parse_word("ac")
        assert action_length(raag_p3, act, basepoint, g) == 2

    def test_axioms_and_domination(self, raag_p3, rng):
        graph = enumerate_ball(raag_p3, 4).cayley_graph()
        act = GraphAction(raag_p3, graph)
        o = graph.labels.index(raag_p3.identity())
        gens = raag_p3.generators
        gen_max = max(action_length(raag_p3, act, o, s) for s in gens)
        ball = enumerate_ball(raag_p3, 2)
        for g in ball.elements:
            lp = action_length(raag_p3, act, o, g)
            assert lp == action_length(raag_p3, act, o, raag_p3.invert(g))
            assert lp <= raag_p3.word_length(g) * gen_max

    def test_orbit_outside_graph(self, f2):
        graph = enumerate_ball(f2, 2).cayley_graph()
        act = GraphAction(f2, graph)
        o = graph.labels.index(f2.identity())
        with pytest.raises(CapacityError):
            action_length(f2, act, o, f2.parse_word("ababab"))

    def test_moved_basepoint_stays_metric(self, f2):
        # l_p for a non-identity basepoint still satisfies the axioms
        graph = enumerate_ball(f2, 4).cayley_graph()
        act = GraphAction(f2, graph)
        p = graph.labels.index(f2.parse_word("a"))
        for w in ("", "b", "a'b"):
            g = f2.parse_word(w)
            lp = action_length(f2, act, p, g)
            assert lp == action_length(f2, act, p, f2.invert(g))
