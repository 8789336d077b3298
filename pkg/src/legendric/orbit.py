"""The toric Legendrian family attached to a weight tuple.

A tuple ``a = (a_0 >= a_1 >= ... >= a_{n-1} > 0)`` of coprime integers gives
weights ``w_0 = (a_1, .., a_{n-1})`` and ``w_i = a_0 e_i`` in Z^{n-1}, and the
variety is the torus orbit closure of
``(-a_0, a_1, .., a_{n-1}, 1, .., 1)`` in P^{2n-1}, with the torus acting by
``t^{w_j}`` on coordinate j and ``t^{-w_j}`` on coordinate n+j.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd
from typing import Sequence

from legendric.rational import rank, to_fraction
from legendric.symplectic import SymplecticSpace, is_lagrangian, omega


class InvalidTuple(ValueError):
    """A weight tuple violates one of its invariants."""


@dataclass(frozen=True, order=True)
class WeightTuple:
    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(self.a)
        if not a:
            raise InvalidTuple("empty weight tuple")
        if any(isinstance(x, bool) or not isinstance(x, int) for x in a):
            raise InvalidTuple("non-integer entry")
        if any(x <= 0 for x in a):
            raise InvalidTuple("non-positive entry")
        if any(x < y for x, y in zip(a, a[1:])):
            raise InvalidTuple("not sorted (entries must be non-increasing)")
        if reduce(gcd, a) != 1:
            raise InvalidTuple("not coprime")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return len(self.a)

    def __str__(self) -> str:
        return ",".join(map(str, self.a))


def make_weight_tuple(values: Sequence[int]) -> WeightTuple:
    return WeightTuple(tuple(values))


def parse_weights(text: str) -> WeightTuple:
    """Parse ``"2,1,1"``."""
    try:
        values = [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError as exc:
        raise InvalidTuple(f"weights must be comma-separated integers: {text!r}") from exc
    return make_weight_tuple(values)


@dataclass(frozen=True)
class WeightConfiguration:
    """The 2n lattice points ``w_0 .. w_{n-1}, -w_0 .. -w_{n-1}``."""

    dim: int
    points: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.points) // 2

    @property
    def positive(self) -> tuple[tuple[int, ...], ...]:
        return self.points[: self.n]

    def label(self, index: int) -> str:
        i = index % self.n
        return f"w{i}" if index < self.n else f"-w{i}"

    def to_json(self) -> list[list[int]]:
        return [list(p) for p in self.points]


def weight_configuration(t: WeightTuple) -> WeightConfiguration:
    a = t.a
    d = t.n - 1
    pos = [tuple(a[1:])]
    for i in range(1, t.n):
        pos.append(tuple(a[0] if k == i - 1 else 0 for k in range(d)))
    neg = [tuple(-x for x in p) for p in pos]
    return WeightConfiguration(dim=d, points=tuple(pos + neg))


def linear_relation_holds(t: WeightTuple, config: WeightConfiguration) -> bool:
    """``-a_0 w_0 + a_1 w_1 + ... + a_{n-1} w_{n-1} = 0``."""
    coeffs = (-t.a[0],) + t.a[1:]
    w = config.positive
    return all(sum(c * p[k] for c, p in zip(coeffs, w)) == 0 for k in range(config.dim))


def legendrian_coefficients(t: WeightTuple) -> tuple[int, ...]:
    """``x_0 = -a_0``, ``x_i = a_i``."""
    return (-t.a[0],) + t.a[1:]


def base_point(t: WeightTuple) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in legendrian_coefficients(t)) + (Fraction(1),) * t.n


def _monomial(params: Sequence[Fraction], exponent: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for p, e in zip(params, exponent):
        out *= p**e
    return out


def _check_params(t: WeightTuple, params: Sequence) -> list[Fraction]:
    if len(params) != t.n - 1:
        raise ValueError(f"expected {t.n - 1} torus parameters, got {len(params)}")
    ps = [to_fraction(p) for p in params]
    if any(p == 0 for p in ps):
        raise ValueError("torus parameters must be nonzero")
    return ps


def orbit_point(
    t: WeightTuple, params: Sequence, coefficients: Sequence | None = None
) -> tuple[Fraction, ...]:
    """Image of ``params`` under the orbit map, on the affine cone.

    ``coefficients`` overrides the ``x_j`` (default: the Legendrian choice).
    """
    ps = _check_params(t, params)
    x = legendrian_coefficients(t) if coefficients is None else coefficients
    w = weight_configuration(t).positive
    head = [to_fraction(xj) * _monomial(ps, wj) for xj, wj in zip(x, w)]
    tail = [_monomial(ps, [-e for e in wj]) for wj in w]
    return tuple(head + tail)


def tangent_frame(
    t: WeightTuple, params: Sequence, coefficients: Sequence | None = None
) -> list[tuple[Fraction, ...]]:
    """Euler vector ``v`` followed by ``u_k = t_k d/dt_k`` of the orbit map."""
    p = orbit_point(t, params, coefficients)
    w = weight_configuration(t).positive
    n = t.n
    frame = [p]
    for k in range(n - 1):
        weights = [wj[k] for wj in w] + [-wj[k] for wj in w]
        frame.append(tuple(c * e for c, e in zip(p, weights)))
    return frame


def frame_rank(t: WeightTuple, params: Sequence) -> int:
    return rank(tangent_frame(t, params))


def random_params(rng: random.Random, count: int) -> list[Fraction]:
    """Small nonzero rationals with numerator and denominator in [-9, 9] minus 0."""
    choices = [x for x in range(-9, 10) if x]
    return [Fraction(rng.choice(choices), rng.choice(choices)) for _ in range(count)]


def verify_legendrian(
    t: WeightTuple,
    trials: int = 5,
    seed: int = 0,
    coefficients: Sequence | None = None,
) -> bool:
    """Lagrangian test of the tangent frame at the base point and at
    ``trials`` seeded random points of the dense orbit."""
    if trials < 1:
        raise ValueError("trials must be at least 1")
    space = SymplecticSpace(t.n)
    rng = random.Random(seed)
    samples = [[Fraction(1)] * (t.n - 1)]
    samples += [random_params(rng, t.n - 1) for _ in range(trials)]
    return all(is_lagrangian(tangent_frame(t, s, coefficients), space) for s in samples)


def pairing_table(
    t: WeightTuple, params: Sequence | None = None, coefficients: Sequence | None = None
) -> list[list[Fraction]]:
    """Gram matrix of omega on the tangent frame ``[v, u_1, .., u_{n-1}]``."""
    if params is None:
        params = [1] * (t.n - 1)
    frame = tangent_frame(t, params, coefficients)
    space = SymplecticSpace(t.n)
    return [[omega(a, b, space) for b in frame] for a in frame]


def is_nondegenerate(config: WeightConfiguration) -> bool:
    """Pairwise distinct weights that affinely span R^{dim}."""
    pts = config.points
    if len(set(pts)) != len(pts):
        return False
    if config.dim == 0:
        return True
    origin = pts[0]
    diffs = [[x - y for x, y in zip(p, origin)] for p in pts[1:]]
    return rank(diffs) == config.dim
