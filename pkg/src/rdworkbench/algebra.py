"""Group-algebra vectors: finitely supported real functions on a group,
with exact sparse convolution, adjoints and the norm family used by the
rapid-decay estimates (l1, l2 and the weighted Sobolev norms)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .balls import BallIndex, enumerate_ball
from .errors import UsageError
from .groups import GroupHandle


class AlgebraVector:
    """A finitely supported map Element -> real coefficient.

    Zero coefficients are never stored, so ``support()`` is exactly the
    set of elements with nonzero coefficient.
    """

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupHandle, coeffs: Mapping):
        self.group = group
        self.coeffs = {g: float(c) for g, c in coeffs.items() if c != 0.0}

    @classmethod
    def delta(cls, group: GroupHandle, element) -> "AlgebraVector":
        return cls(group, {element: 1.0})

    @classmethod
    def zero(cls, group: GroupHandle) -> "AlgebraVector":
        return cls(group, {})

    def support(self):
        return self.coeffs.keys()

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, g):
        return self.coeffs.get(g, 0.0)

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other):
        return (isinstance(other, AlgebraVector)
                and self.group.spec == other.group.spec
                and self.coeffs == other.coeffs)

    def __add__(self, other):
        _require_same_group(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0.0) + c
        return AlgebraVector(self.group, out)

    def __sub__(self, other):
        _require_same_group(self, other)
        out = dict(self.coeffs)
        for g, c in other.coeffs.items():
            out[g] = out.get(g, 0.0) - c
        return AlgebraVector(self.group, out)

    def scaled(self, factor: float) -> "AlgebraVector":
        return AlgebraVector(self.group, {g: factor * c for g, c in self.coeffs.items()})

    def __repr__(self):
        n = len(self.coeffs)
        return f"<algebra vector on {self.group.spec}, support {n}>"

    # -- norms ------------------------------------------------------------

    def l1(self) -> float:
        return sum(abs(c) for c in self.coeffs.values())

    def l2(self) -> float:
        return math.sqrt(sum(c * c for c in self.coeffs.values()))

    def support_radius(self) -> int:
        """l(f) = max word length over the support (0 for the zero vector)."""
        if not self.coeffs:
            return 0
        wl = self.group.word_length
        return max(wl(g) for g in self.coeffs)

    def sobolev(self, s: float) -> float:
        """Weighted l2 norm with weight (1 + l(x))^s on squared coefficients."""
        wl = self.group.word_length
        return math.sqrt(
            sum(c * c * (1.0 + wl(g)) ** s for g, c in self.coeffs.items())
        )

    def is_symmetric(self, tol: float = 0.0) -> bool:
        inv = self.group.invert
        return all(
            abs(self.coeffs.get(inv(g), 0.0) - c) <= tol
            for g, c in self.coeffs.items()
        )

    def is_nonnegative(self) -> bool:
        return all(c >= 0.0 for c in self.coeffs.values())


def _require_same_group(f: AlgebraVector, g: AlgebraVector) -> None:
    if f.group.spec != g.group.spec:
        raise UsageError(
            f"mixed groups: {f.group.spec} vs {g.group.spec}")


def convolve(f: AlgebraVector, g: AlgebraVector) -> AlgebraVector:
    """Exact sparse convolution (f*g)(x) = sum_y f(y) g(y^-1 x)."""
    _require_same_group(f, g)
    mul = f.group.multiply
    out: dict = {}
    for y, cy in f.coeffs.items():
        for z, cz in g.coeffs.items():
            x = mul(y, z)
            out[x] = out.get(x, 0.0) + cy * cz
    return AlgebraVector(f.group, out)


def adjoint(f: AlgebraVector) -> AlgebraVector:
    """f*(x) = f(x^-1) for real coefficients; an involution."""
    inv = f.group.invert
    return AlgebraVector(f.group, {inv(g): c for g, c in f.coeffs.items()})


def inner(f: AlgebraVector, g: AlgebraVector) -> float:
    _require_same_group(f, g)
    small, big = (f, g) if len(f) <= len(g) else (g, f)
    return sum(c * big.coeffs.get(x, 0.0) for x, c in small.coeffs.items())


def translate(x, f: AlgebraVector) -> AlgebraVector:
    """lambda(x) f, i.e. (translate f)(t) = f(x^-1 t)."""
    mul = f.group.multiply
    return AlgebraVector(f.group, {mul(x, g): c for g, c in f.coeffs.items()})


@dataclass
class NormReport:
    l1: float
    l2: float
    sobolev: dict[float, float]
    support_radius: int


def norms(f: AlgebraVector, s_values: Iterable[float] = ()) -> NormReport:
    return NormReport(
        l1=f.l1(),
        l2=f.l2(),
        sobolev={float(s): f.sobolev(s) for s in s_values},
        support_radius=f.support_radius(),
    )


# -- the function-spec mini language used by the CLI -----------------------

def ball_indicator(ball: BallIndex, radius: int) -> AlgebraVector:
    if radius > ball.radius:
        raise UsageError(f"indicator radius {radius} exceeds ball radius {ball.radius}")
    n = ball.prefix_size(radius)
    return AlgebraVector(ball.group, {g: 1.0 for g in ball.elements[:n]})


def sphere_indicator(ball: BallIndex, radius: int) -> AlgebraVector:
    if radius > ball.radius:
        raise UsageError(f"indicator radius {radius} exceeds ball radius {ball.radius}")
    lo = ball.prefix_size(radius - 1)
    hi = ball.prefix_size(radius)
    return AlgebraVector(ball.group, {g: 1.0 for g in ball.elements[lo:hi]})


def random_signs(ball: BallIndex, radius: int, seed: int) -> AlgebraVector:
    """+-1 coefficients on B(radius), from a seeded generator."""
    if radius > ball.radius:
        raise UsageError(f"indicator radius {radius} exceeds ball radius {ball.radius}")
    n = ball.prefix_size(radius)
    rng = np.random.default_rng(seed)
    signs = rng.integers(0, 2, size=n) * 2 - 1
    return AlgebraVector(
        ball.group, {g: float(s) for g, s in zip(ball.elements[:n], signs)}
    )


def generator_sum(group: GroupHandle) -> AlgebraVector:
    out: dict = {}
    for s in group.generators:
        out[s] = out.get(s, 0.0) + 1.0
    return AlgebraVector(group, out)


def parse_function_spec(group: GroupHandle, spec: str) -> AlgebraVector:
    """``ball:R``, ``sphere:R``, ``gen-sum``, ``delta:<word>`` or
    ``random:R,seed``; words use generator letters with ``'`` for inverse."""
    spec = spec.strip()
    if spec == "gen-sum":
        return generator_sum(group)
    head, _, rest = spec.partition(":")
    try:
        if head == "delta":
            return AlgebraVector.delta(group, group.parse_word(rest))
        if head == "ball":
            r = int(rest)
            return ball_indicator(enumerate_ball(group, r), r)
        if head == "sphere":
            r = int(rest)
            return sphere_indicator(enumerate_ball(group, r), r)
        if head == "random":
            r_text, _, seed_text = rest.partition(",")
            r = int(r_text)
            seed = int(seed_text) if seed_text else 0
            return random_signs(enumerate_ball(group, r), r, seed)
    except ValueError:
        raise UsageError(f"bad function spec {spec!r}")
    raise UsageError(f"unknown function spec {spec!r}")
