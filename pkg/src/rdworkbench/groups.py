"""Exact arithmetic, canonical forms and word-length oracles for the
built-in group families.

Every family works with plain hashable tuples as elements and exposes its
operations through a handle object.  Canonical forms are unique per group
element, so equality of elements is equality of tuples:

* free abelian Z^d     -- integer d-tuple
* free group F_k       -- reduced word, tuple of nonzero ints (+i / -i)
* Heisenberg           -- (x, y, z) for the matrix [[1,x,z],[0,1,y],[0,0,1]]
* lamplighter Z2 wr Z  -- (sorted tuple of lit lamp positions, position)
* raag(graph)          -- lexicographically least geodesic word

Word lengths are closed-form where a formula exists (free abelian, free,
raag) and BFS-memoised otherwise (Heisenberg, lamplighter).  BFS-backed
lengths refuse to grow past the element cap instead of approximating.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .config import element_cap
from .errors import CapacityError, ConfigurationError, UsageError

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def _letter_key(letter: int) -> int:
    """Total order on signed generator letters: a < a' < b < b' < ..."""
    return 2 * (abs(letter) - 1) + (0 if letter > 0 else 1)


class GroupHandle:
    """Common surface for all families: identity, multiply, invert, the
    symmetric generator list and a word-length oracle."""

    spec: str
    generator_labels: list[str]
    generators: list

    def identity(self):
        raise NotImplementedError

    def multiply(self, g, h):
        raise NotImplementedError

    def invert(self, g):
        raise NotImplementedError

    def word_length(self, g) -> int:
        raise NotImplementedError

    def sort_key(self, g):
        """Deterministic (length, canonical form) comparison key."""
        raise NotImplementedError

    def check_element(self, g) -> None:
        """Raise UsageError when g is not a valid canonical element."""
        raise NotImplementedError

    # -- words over generator letters ------------------------------------

    def parse_word(self, text: str):
        """Parse a word written in generator letters, `'` marking inverses
        (e.g. ``aba'``), into a group element."""
        base = {}
        for label, gen in zip(self.generator_labels, self.generators):
            if not label.endswith("'"):
                base[label] = gen
        out = self.identity()
        i = 0
        while i < len(text):
            ch = text[i]
            if ch not in base:
                raise UsageError(f"unknown generator letter {ch!r} in word {text!r}")
            gen = base[ch]
            i += 1
            if i < len(text) and text[i] == "'":
                gen = self.invert(gen)
                i += 1
            out = self.multiply(out, gen)
        return out

    def power(self, g, n: int):
        out = self.identity()
        base = g if n >= 0 else self.invert(g)
        for _ in range(abs(n)):
            out = self.multiply(out, base)
        return out

    def conjugate(self, g, h):
        """h^-1 g h"""
        return self.multiply(self.multiply(self.invert(h), g), h)

    def __repr__(self):
        return f"<group {self.spec}>"


def _interleaved_generators(base_elements, invert, letters=_LETTERS):
    """[g1, g1^-1, g2, g2^-1, ...] with labels a, a', b, b', ..."""
    gens, labels = [], []
    for i, g in enumerate(base_elements):
        gens.append(g)
        labels.append(letters[i])
        gens.append(invert(g))
        labels.append(letters[i] + "'")
    return gens, labels


class FreeAbelianGroup(GroupHandle):
    """Z^d with generators +/- e_i; word length is the l1 norm."""

    def __init__(self, d: int):
        if d < 1:
            raise ConfigurationError(f"free-abelian rank must be >= 1, got {d}")
        if d > len(_LETTERS):
            raise ConfigurationError(f"free-abelian rank {d} exceeds letter supply")
        self.d = d
        self.spec = f"zd:{d}"
        base = []
        for i in range(d):
            e = [0] * d
            e[i] = 1
            base.append(tuple(e))
        self.generators, self.generator_labels = _interleaved_generators(
            base, self.invert
        )

    def identity(self):
        return (0,) * self.d

    def multiply(self, g, h):
        return tuple(a + b for a, b in zip(g, h))

    def invert(self, g):
        return tuple(-a for a in g)

    def word_length(self, g) -> int:
        return sum(abs(a) for a in g)

    def sort_key(self, g):
        return g

    def check_element(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == self.d
                and all(isinstance(a, int) for a in g)):
            raise UsageError(f"not a Z^{self.d} element: {g!r}")

    def ball_count(self, n: int) -> int:
        """Closed-form |B(n)| = sum_k 2^k C(d,k) C(n,k)."""
        from math import comb

        return sum((2 ** k) * comb(self.d, k) * comb(n, k) for k in range(self.d + 1))


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


class FreeGroup(GroupHandle):
    """F_k on letters +1..+k (inverses -1..-k); elements are reduced words."""

    def __init__(self, k: int):
        if k < 1:
            raise ConfigurationError(f"free rank must be >= 1, got {k}")
        if k > len(_LETTERS):
            raise ConfigurationError(f"free rank {k} exceeds letter supply")
        self.k = k
        self.spec = f"free:{k}"
        self.generators, self.generator_labels = _interleaved_generators(
            [(i,) for i in range(1, k + 1)], self.invert
        )

    def identity(self):
        return ()

    def multiply(self, g, h):
        # cancellation only happens at the seam
        i = len(g)
        j = 0
        while i > 0 and j < len(h) and g[i - 1] == -h[j]:
            i -= 1
            j += 1
        return g[:i] + h[j:]

    def invert(self, g):
        return tuple(-x for x in reversed(g))

    def word_length(self, g) -> int:
        return len(g)

    def sort_key(self, g):
        return tuple(_letter_key(x) for x in g)

    def check_element(self, g) -> None:
        ok = isinstance(g, tuple) and all(
            isinstance(x, int) and 1 <= abs(x) <= self.k for x in g
        )
        if ok:
            ok = all(g[i] != -g[i + 1] for i in range(len(g) - 1))
        if not ok:
            raise UsageError(f"not a reduced F_{self.k} word: {g!r}")

    def sphere_size(self, n: int) -> int:
        if n == 0:
            return 1
        return 2 * self.k * (2 * self.k - 1) ** (n - 1)


class _BfsLengthMixin:
    """Lazy BFS word-length table for families without a closed form."""

    def _init_lengths(self):
        self._length_table = {self.identity(): 0}
        self._frontier = [self.identity()]
        self._frontier_radius = 0

    def _grow_one_level(self) -> None:
        cap = element_cap()
        new = []
        table = self._length_table
        radius = self._frontier_radius + 1
        for g in self._frontier:
            for s in self.generators:
                h = self.multiply(g, s)
                if h not in table:
                    table[h] = radius
                    new.append(h)
        if len(table) > cap:
            raise CapacityError(
                f"{self.spec}: BFS length table at radius {radius} exceeds "
                f"element cap {cap}"
            )
        self._frontier = new
        self._frontier_radius = radius

    def word_length(self, g) -> int:
        table = self._length_table
        while g not in table:
            if not self._frontier:
                raise UsageError(f"{self.spec}: {g!r} is not a group element")
            self._grow_one_level()
        return table[g]

    def lengths_up_to(self, radius: int) -> dict:
        while self._frontier_radius < radius and self._frontier:
            self._grow_one_level()
        return self._length_table


class HeisenbergGroup(_BfsLengthMixin, GroupHandle):
    """Discrete Heisenberg group as integer triples (x, y, z); the product
    matches upper-triangular 3x3 matrix multiplication."""

    def __init__(self):
        self.spec = "heisenberg"
        self.generators, self.generator_labels = _interleaved_generators(
            [(1, 0, 0), (0, 1, 0)], self.invert, letters="ab"
        )
        self._init_lengths()

    def identity(self):
        return (0, 0, 0)

    def multiply(self, g, h):
        x1, y1, z1 = g
        x2, y2, z2 = h
        return (x1 + x2, y1 + y2, z1 + z2 + x1 * y2)

    def invert(self, g):
        x, y, z = g
        return (-x, -y, x * y - z)

    def sort_key(self, g):
        return g

    def check_element(self, g) -> None:
        if not (isinstance(g, tuple) and len(g) == 3
                and all(isinstance(a, int) for a in g)):
            raise UsageError(f"not a Heisenberg element: {g!r}")


class LamplighterGroup(_BfsLengthMixin, GroupHandle):
    """Z/2 wr Z.  Elements are (lamps, position) with lamps a sorted tuple
    of lit positions.  Generators: the lamp toggle a (an involution) and
    the moves t, t'."""

    def __init__(self):
        self.spec = "lamplighter"
        a = ((0,), 0)
        t = ((), 1)
        self.generators = [a, t, self.invert(t)]
        self.generator_labels = ["a", "t", "t'"]
        self._init_lengths()

    def identity(self):
        return ((), 0)

    def multiply(self, g, h):
        lamps1, p1 = g
        lamps2, p2 = h
        shifted = {x + p1 for x in lamps2}
        return (tuple(sorted(set(lamps1) ^ shifted)), p1 + p2)

    def invert(self, g):
        lamps, p = g
        return (tuple(sorted(x - p for x in lamps)), -p)

    def sort_key(self, g):
        lamps, p = g
        return (p, lamps)

    def check_element(self, g) -> None:
        ok = (isinstance(g, tuple) and len(g) == 2 and isinstance(g[1], int)
              and isinstance(g[0], tuple) and list(g[0]) == sorted(set(g[0])))
        if not ok:
            raise UsageError(f"not a lamplighter element: {g!r}")


class RightAngledArtinGroup(GroupHandle):
    """Raag on a finite simple graph; adjacent vertex generators commute.

    Elements are geodesic words in lexicographically-least order, i.e. the
    unique smallest representative of the commutation class.  Letters are
    signed vertex indices (+i / -i for vertex i-1).
    """

    def __init__(self, n_vertices: int, edges: Iterable[tuple[int, int]],
                 name: str = ""):
        if n_vertices < 1:
            raise ConfigurationError("raag graph needs at least one vertex")
        if n_vertices > len(_LETTERS):
            raise ConfigurationError(
                f"raag graph with {n_vertices} vertices exceeds letter supply")
        self.n_vertices = n_vertices
        seen = set()
        for u, v in edges:
            if not (0 <= u < n_vertices and 0 <= v < n_vertices):
                raise ConfigurationError(f"raag edge ({u},{v}) out of range")
            if u == v:
                raise ConfigurationError(f"raag graph has a loop at {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ConfigurationError(f"raag graph repeats edge {key}")
            seen.add(key)
        self.edges = frozenset(seen)
        self.spec = name or f"raag:{n_vertices}:" + ",".join(
            f"{u}-{v}" for u, v in sorted(self.edges))
        # commutation table over vertex indices 0..n-1; a generator always
        # commutes with itself
        self._commute = [[False] * n_vertices for _ in range(n_vertices)]
        for i in range(n_vertices):
            self._commute[i][i] = True
        for u, v in self.edges:
            self._commute[u][v] = True
            self._commute[v][u] = True
        self.generators, self.generator_labels = _interleaved_generators(
            [(i,) for i in range(1, n_vertices + 1)], self.invert
        )

    @classmethod
    def path(cls, n_vertices: int) -> "RightAngledArtinGroup":
        edges = [(i, i + 1) for i in range(n_vertices - 1)]
        return cls(n_vertices, edges, name=f"raag:path:{n_vertices}")

    def _letters_commute(self, x: int, y: int) -> bool:
        return self._commute[abs(x) - 1][abs(y) - 1]

    def _cancel(self, word: list[int]) -> list[int]:
        # remove any pair x ... x^-1 whose gap commutes with x, to a fixed
        # point; the result is geodesic
        changed = True
        while changed:
            changed = False
            n = len(word)
            for i in range(n):
                x = word[i]
                for j in range(i + 1, n):
                    if word[j] == -x and all(
                        self._letters_commute(x, word[t]) for t in range(i + 1, j)
                    ):
                        del word[j]
                        del word[i]
                        changed = True
                        break
                    if not self._letters_commute(x, word[j]):
                        break
                if changed:
                    break
        return word

    def _lex_least(self, word: list[int]) -> tuple[int, ...]:
        out: list[int] = []
        rem = list(word)
        while rem:
            best = None
            for i, x in enumerate(rem):
                if all(self._letters_commute(x, rem[t]) for t in range(i)):
                    if best is None or _letter_key(x) < _letter_key(rem[best]):
                        best = i
            out.append(rem.pop(best))
        return tuple(out)

    def normal_form(self, letters: Sequence[int]) -> tuple[int, ...]:
        return self._lex_least(self._cancel(list(letters)))

    def identity(self):
        return ()

    def multiply(self, g, h):
        return self.normal_form(list(g) + list(h))

    def invert(self, g):
        return self.normal_form([-x for x in reversed(g)])

    def word_length(self, g) -> int:
        # geodesic normal form, so the letter count is the word length
        return len(g)

    def sort_key(self, g):
        return tuple(_letter_key(x) for x in g)

    def check_element(self, g) -> None:
        ok = isinstance(g, tuple) and all(
            isinstance(x, int) and 1 <= abs(x) <= self.n_vertices for x in g
        )
        if ok and self.normal_form(list(g)) != g:
            ok = False
        if not ok:
            raise UsageError(f"not a raag normal form: {g!r}")


def load_defining_graph(path: str) -> tuple[int, list[tuple[int, int]]]:
    """Read the plain-text graph format: one line ``n m`` then m lines
    ``u v`` of 0-based vertex indices."""
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    if len(tokens) < 2:
        raise ConfigurationError(f"{path}: expected header 'n m'")
    try:
        n, m = int(tokens[0]), int(tokens[1])
        rest = [int(t) for t in tokens[2:]]
    except ValueError as exc:
        raise ConfigurationError(f"{path}: non-integer token") from exc
    if len(rest) != 2 * m:
        raise ConfigurationError(
            f"{path}: header promises {m} edges, found {len(rest) // 2}")
    edges = [(rest[2 * i], rest[2 * i + 1]) for i in range(m)]
    return n, edges


def make_group(spec: str) -> GroupHandle:
    """Build a group handle from a spec string.

    Accepted forms: ``zd:D``, ``free:K``, ``heisenberg``, ``lamplighter``,
    ``raag:path:N`` and ``raag:<graph-file>``.
    """
    spec = spec.strip()
    if spec == "heisenberg":
        return HeisenbergGroup()
    if spec == "lamplighter":
        return LamplighterGroup()
    head, _, rest = spec.partition(":")
    if head == "zd":
        try:
            return FreeAbelianGroup(int(rest))
        except ValueError:
            raise ConfigurationError(f"bad free-abelian rank in {spec!r}")
    if head == "free":
        try:
            return FreeGroup(int(rest))
        except ValueError:
            raise ConfigurationError(f"bad free rank in {spec!r}")
    if head == "raag":
        if rest.startswith("path:"):
            try:
                return RightAngledArtinGroup.path(int(rest[5:]))
            except ValueError:
                raise ConfigurationError(f"bad raag path length in {spec!r}")
        if not rest:
            raise ConfigurationError("raag spec needs a graph file or path:N")
        n, edges = load_defining_graph(rest)
        return RightAngledArtinGroup(n, edges)
    raise ConfigurationError(f"unknown group spec {spec!r}")
