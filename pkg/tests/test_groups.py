"""Group arithmetic against independent oracles: integer matrices for the
Heisenberg group, a from-scratch wreath product for the lamplighter, and
plain BFS for word lengths."""

import numpy as np
import pytest

from rdworkbench import (
    ConfigurationError,
    RightAngledArtinGroup,
    UsageError,
    make_group,
)
from conftest import sample_elements


def heis_matrix(g):
    x, y, z = g
    return np.array([[1, x, z], [0, 1, y], [0, 0, 1]], dtype=object)


def lamp_compose(g, h):
    # independent wreath arithmetic: (f1, p1)(f2, p2) with f: Z -> Z/2
    lamps1, p1 = g
    lamps2, p2 = h
    out = set(lamps1)
    for q in lamps2:
        out ^= {q + p1}
    return (tuple(sorted(out)), p1 + p2)


def bfs_word_lengths(group, radius):
    table = {group.identity(): 0}
    frontier = [group.identity()]
    for level in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for s in group.generators:
                h = group.multiply(g, s)
                if h not in table:
                    table[h] = level
                    nxt.append(h)
        frontier = nxt
    return table


class TestMakeGroup:
    def test_families(self):
        assert len(make_group("zd:1").generators) == 2
        assert len(make_group("free:2").generators) == 4
        assert len(make_group("raag:path:3").generators) == 6
        assert len(make_group("lamplighter").generators) == 3
        assert len(make_group("heisenberg").generators) == 4

    def test_bad_specs(self):
        for spec in ("zd:0", "free:0", "nope", "zd:x", "raag:"):
            with pytest.raises(ConfigurationError):
                make_group(spec)

    def test_malformed_raag_graph(self):
        with pytest.raises(ConfigurationError):
            RightAngledArtinGroup(3, [(0, 0)])
        with pytest.raises(ConfigurationError):
            RightAngledArtinGroup(3, [(0, 1), (1, 0)])
        with pytest.raises(ConfigurationError):
            RightAngledArtinGroup(2, [(0, 5)])

    def test_raag_graph_file(self, tmp_path):
        path = tmp_path / "p3.txt"
        path.write_text("3 2\n0 1\n1 2\n")
        g = make_group(f"raag:{path}")
        a, b = g.parse_word("a"), g.parse_word("b")
        assert g.multiply(a, b) == g.multiply(b, a)


class TestMultiply:
    def test_free_reduction(self, f2):
        ab = f2.parse_word("ab")
        b_inv_a = f2.parse_word("b'a")
        assert f2.multiply(ab, b_inv_a) == f2.parse_word("aa")

    def test_free_abelian(self, z2):
        assert z2.multiply((3, -1), (-1, 4)) == (2, 3)

    def test_heisenberg_matrix_oracle(self, heis, rng):
        elems = sample_elements(heis, 5, 40, rng)
        for g in elems:
            for h in elems[:10]:
                expected = heis_matrix(g) @ heis_matrix(h)
                got = heis_matrix(heis.multiply(g, h))
                assert (expected == got).all()

    def test_heisenberg_commutator_defect(self, heis):
        a, _, b, _ = heis.generators
        ab, ba = heis.multiply(a, b), heis.multiply(b, a)
        assert ab[:2] == ba[:2]
        assert ab[2] - ba[2] == 1

    def test_lamplighter_oracle(self, lamp, rng):
        elems = sample_elements(lamp, 6, 40, rng)
        for g in elems:
            for h in elems[:10]:
                assert lamp.multiply(g, h) == lamp_compose(g, h)

    def test_associativity_identity_sampled(self, rng):
        for spec in ("zd:2", "free:2", "heisenberg", "lamplighter",
                     "raag:path:3"):
            group = make_group(spec)
            e = group.identity()
            elems = sample_elements(group, 3, 12, rng)
            for g in elems:
                assert group.multiply(g, e) == g
                assert group.multiply(e, g) == g
            for g, h, k in zip(elems, elems[4:], elems[8:]):
                lhs = group.multiply(group.multiply(g, h), k)
                rhs = group.multiply(g, group.multiply(h, k))
                assert lhs == rhs


class TestInvert:
    def test_free(self, f2):
        assert f2.invert(f2.parse_word("ab'")) == f2.parse_word("ba'")

    def test_identity(self, f2):
        assert f2.invert(f2.identity()) == f2.identity()

    def test_lamplighter_example(self, lamp):
        assert lamp.invert(((0,), 1)) == ((-1,), -1)

    def test_involution_and_inverse_law(self, rng):
        for spec in ("zd:2", "free:2", "heisenberg", "lamplighter",
                     "raag:path:3"):
            group = make_group(spec)
            for g in sample_elements(group, 4, 25, rng):
                gi = group.invert(g)
                assert group.invert(gi) == g
                assert group.multiply(g, gi) == group.identity()


class TestWordLength:
    def test_closed_forms(self, z2, f2):
        assert z2.word_length((3, -4)) == 7
        assert f2.word_length(f2.parse_word("aba'")) == 3

    def test_heisenberg_bfs_oracle(self, heis):
        oracle = bfs_word_lengths(heis, 6)
        assert oracle[(0, 0, 1)] == 4
        assert heis.word_length((0, 0, 1)) == 4
        for g, n in oracle.items():
            assert heis.word_length(g) == n

    def test_lamplighter_bfs_oracle(self, lamp):
        oracle = bfs_word_lengths(lamp, 7)
        for g, n in oracle.items():
            assert lamp.word_length(g) == n

    def test_raag_length_is_normal_form_length(self, raag_p3):
        # aba' reduces to b because a and b commute
        assert raag_p3.word_length(raag_p3.parse_word("aba'")) == 1
        # ac does not reduce (a and c do not commute in the path a-b-c)
        assert raag_p3.word_length(raag_p3.parse_word("ac")) == 2
        oracle = bfs_word_lengths(raag_p3, 5)
        for g, n in oracle.items():
            assert raag_p3.word_length(g) == n

    def test_axioms_sampled(self, rng):
        for spec in ("zd:2", "free:2", "heisenberg", "lamplighter",
                     "raag:path:3"):
            group = make_group(spec)
            wl = group.word_length
            assert wl(group.identity()) == 0
            elems = sample_elements(group, 4, 30, rng)
            for g in elems:
                assert wl(group.invert(g)) == wl(g)
            for g, h in zip(elems, elems[7:]):
                assert wl(group.multiply(g, h)) <= wl(g) + wl(h)


class TestRaagNormalForm:
    def test_commuting_pairs(self, raag_p3):
        a, b, c = (raag_p3.parse_word(x) for x in "abc")
        assert raag_p3.multiply(a, b) == raag_p3.multiply(b, a)
        assert raag_p3.multiply(b, c) == raag_p3.multiply(c, b)
        assert raag_p3.multiply(a, c) != raag_p3.multiply(c, a)

    def test_hidden_cancellation(self, raag_p3):
        # a b a^-1 b^-1 is trivial since [a,b] = 1
        w = raag_p3.parse_word("aba'b'")
        assert w == raag_p3.identity()

    def test_normal_form_is_canonical(self, raag_p3, rng):
        # products of random shuffles of commuting letters agree
        for g in sample_elements(raag_p3, 4, 30, rng):
            assert raag_p3.normal_form(list(g)) == g

    def test_check_element(self, raag_p3):
        raag_p3.check_element(raag_p3.parse_word("ac"))
        with pytest.raises(UsageError):
            raag_p3.check_element((1, -1))  # not reduced


class TestParseWord:
    def test_round_trips(self, f2):
        assert f2.parse_word("aba'") == (1, 2, -1)
        assert f2.parse_word("") == ()

    def test_unknown_letter(self, f2):
        with pytest.raises(UsageError):
            f2.parse_word("x")

    def test_lamplighter_letters(self, lamp):
        assert lamp.parse_word("ta") == ((1,), 1)
        assert lamp.parse_word("a") == ((0,), 0)
        # the lamp toggle is an involution
        assert lamp.parse_word("a'") == lamp.parse_word("a")
