"""Rapid-decay degree estimation and the remaining analytic checks:
profiles of operator-norm bounds over test-function families, Sobolev
embedding fits, matrix-coefficient decay sums and the convolution-algebra
closure inequality."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import (
    AlgebraVector,
    ball_indicator,
    convolve,
    random_signs,
    sphere_indicator,
)
from .balls import enumerate_ball
from .errors import CapacityError, UsageError
from .fits import loglog_fit
from .groups import GroupHandle
from .opnorm import DEFAULT_TOL, truncated_opnorm

FAMILIES = ("balls", "spheres", "random-signs")

_PROFILE_ITERS = 400


@dataclass
class RDPoint:
    r: int
    l2: float
    op_lower: float
    op_upper: float


@dataclass
class RDProfile:
    group_spec: str
    family: str
    seed: int
    points: list[RDPoint]

    def radii(self) -> list[int]:
        return [p.r for p in self.points]

    def ratios(self, bound: str = "lower") -> list[float]:
        if bound == "lower":
            return [p.op_lower / p.l2 for p in self.points]
        if bound == "upper":
            return [p.op_upper / p.l2 for p in self.points]
        raise UsageError(f"unknown bound selector {bound!r}")


def _family_vector(family: str, ball, r: int, seed: int) -> AlgebraVector:
    if family == "balls":
        return ball_indicator(ball, r)
    if family == "spheres":
        return sphere_indicator(ball, r)
    if family == "random-signs":
        # splittable: child stream per radius, reproducible per (seed, r)
        child = int(np.random.SeedSequence([seed, r]).generate_state(1)[0])
        return random_signs(ball, r, child)
    raise UsageError(f"unknown family {family!r}; expected one of {FAMILIES}")


def rd_profile(group: GroupHandle, family: str, r_max: int, seed: int = 0,
               iters: int = _PROFILE_ITERS, tol: float = DEFAULT_TOL) -> RDProfile:
    """For each r <= r_max build the family's test function on B(r) and
    record its l2 norm and certified operator-norm bounds (compression
    truncated at radius r)."""
    if family not in FAMILIES:
        raise UsageError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if r_max < 0:
        raise UsageError(f"r_max must be >= 0, got {r_max}")
    points = []
    for r in range(r_max + 1):
        try:
            ball = enumerate_ball(group, r)
        except CapacityError as exc:
            raise CapacityError(f"rd profile stops at r={r}: {exc}") from exc
        f = _family_vector(family, ball, r, seed)
        if not f.coeffs:
            raise UsageError(f"family {family} produced the zero vector at r={r}")
        est = truncated_opnorm(f, r, iters=iters, tol=tol, seed=seed, ball=ball)
        points.append(RDPoint(r=r, l2=f.l2(), op_lower=est.lower,
                              op_upper=est.upper))
    return RDProfile(group.spec, family, seed, points)


@dataclass
class RDDegreeFit:
    slope: float
    s_hat: float
    r2: float
    window: tuple[int, int]


def fit_rd_degree(profile: RDProfile, window: tuple[int, int]) -> RDDegreeFit:
    """Least-squares slope of log(op_lower / l2) against log(1 + r); the
    degree estimate is s_hat = 2 * slope (the norm-estimate exponent is
    half the Sobolev exponent)."""
    rs = profile.radii()
    ratios = profile.ratios("lower")
    fit = loglog_fit(rs, ratios, window)
    return RDDegreeFit(slope=fit.slope, s_hat=2.0 * fit.slope, r2=fit.r2,
                       window=fit.window)


def coeff_decay_sum(xi: AlgebraVector, eta: AlgebraVector, s: float,
                    radius: int) -> float:
    """sum over l(x) <= radius of |<lambda(x) xi, eta>|^2 / (1 + l(x))^s
    for the left regular representation.  Only finitely many x contribute
    (x must map some support point of xi into the support of eta), so the
    sum is exact."""
    if xi.group.spec != eta.group.spec:
        raise UsageError(f"mixed groups: {xi.group.spec} vs {eta.group.spec}")
    group = xi.group
    mul, inv, wl = group.multiply, group.invert, group.word_length
    phi: dict = {}
    for u, cu in xi.items():
        u_inv = inv(u)
        for t, ct in eta.items():
            x = mul(t, u_inv)
            phi[x] = phi.get(x, 0.0) + cu * ct
    total = 0.0
    for x, value in phi.items():
        lx = wl(x)
        if lx <= radius:
            total += value * value / (1.0 + lx) ** s
    return total


@dataclass
class ConvolutionAlgebraCheck:
    lhs: float
    rhs: float
    holds: bool


def convolution_algebra_check(f: AlgebraVector, g: AlgebraVector, s: float,
                              tol: float = 1e-8) -> ConvolutionAlgebraCheck:
    """The closure inequality behind 'rapidly decreasing functions form a
    convolution algebra': the weighted norm of f*g at exponent 2s is
    dominated by the plain l2 norm of the pointwise-weighted convolution
    f_s * g_s with f_s(x) = |f(x)| (1 + l(x))^s."""
    wl = f.group.word_length

    def weighted(h: AlgebraVector) -> AlgebraVector:
        return AlgebraVector(
            h.group, {x: abs(c) * (1.0 + wl(x)) ** s for x, c in h.items()})

    lhs = convolve(f, g).sobolev(2.0 * s)
    rhs = convolve(weighted(f), weighted(g)).l2()
    return ConvolutionAlgebraCheck(lhs=lhs, rhs=rhs, holds=lhs <= rhs + tol)
