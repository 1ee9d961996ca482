"""Seeded random systems, paths and Andreief instances for the verification suites.

All randomness flows through an explicit :class:`random.Random`, so a seed
reproduces every system exactly.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product
from typing import Iterator

from .criteria import IncreasingPath
from .measures import (
    DiscreteMeasure,
    Interval,
    MeasureSystem,
    make_angelesco,
    make_at_cauchy,
    make_nikishin,
)
from .mop_solver import MultiIndex, Transform, has_support
from .poly_core import Polynomial


def random_points(rng: random.Random, count: int, lo: Fraction, hi: Fraction, grid: int = 24) -> list[Fraction]:
    """``count`` distinct rationals strictly inside ``(lo, hi)`` on a ``1/grid`` lattice."""
    if count > grid - 1:
        raise ValueError("grid too coarse for the requested atom count")
    ticks = sorted(rng.sample(range(1, grid), count))
    return [lo + (hi - lo) * Fraction(t, grid) for t in ticks]


def random_weight(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 9), rng.randint(1, 9))


def random_measure(rng: random.Random, count: int, interval: Interval) -> DiscreteMeasure:
    pts = random_points(rng, count, interval.lo, interval.hi)
    return DiscreteMeasure(tuple((t, random_weight(rng)) for t in pts), interval)


def random_angelesco(rng: random.Random, r: int, atoms: list[int]) -> MeasureSystem:
    """Ordered intervals; neighbours touch at a point about half the time."""
    intervals = []
    left = Fraction(rng.randint(-4, 0))
    for _ in range(r):
        length = Fraction(rng.randint(1, 4), rng.randint(1, 2))
        iv = Interval(left, left + length)
        intervals.append(iv)
        left = iv.hi if rng.random() < 0.5 else iv.hi + Fraction(rng.randint(1, 3), 2)
    return make_angelesco([random_measure(rng, k, iv) for k, iv in zip(atoms, intervals)])


def random_at(rng: random.Random, r: int, atoms: int) -> MeasureSystem:
    """Cauchy-Vandermonde AT system on ``[0, 1]`` with poles all on one side."""
    iv = Interval(Fraction(0), Fraction(1))
    base = random_measure(rng, atoms, iv)
    offsets = rng.sample(range(1, 16), r)
    if rng.random() < 0.5:
        poles = [1 + Fraction(k, 4) for k in offsets]
    else:
        poles = [-Fraction(k, 4) for k in offsets]
    return make_at_cauchy(base, poles)


def random_nikishin(rng: random.Random, atoms1: int, atoms2: int) -> MeasureSystem:
    """``N(sigma_1, sigma_2)`` with ``sigma_1`` on ``[0, 1]`` and ``sigma_2`` on ``[2, 3]``."""
    s1 = random_measure(rng, atoms1, Interval(Fraction(0), Fraction(1)))
    s2 = random_measure(rng, atoms2, Interval(Fraction(2), Fraction(3)))
    return make_nikishin([s1, s2])


def indices_up_to(r: int, max_size: int) -> Iterator[MultiIndex]:
    """All multi-indices of length ``r`` with ``|n| <= max_size``, lexicographic."""
    for parts in product(range(max_size + 1), repeat=r):
        if sum(parts) <= max_size:
            yield MultiIndex(parts)


def supported_indices(system: MeasureSystem, max_size: int, transform: Transform | None = None) -> list[MultiIndex]:
    return [n for n in indices_up_to(system.r, max_size) if has_support(system, n, transform)]


def random_path(rng: random.Random, start: MultiIndex, length: int) -> IncreasingPath:
    steps = tuple(rng.randrange(start.r) for _ in range(length - 1))
    return IncreasingPath(start, steps)


def random_polynomial(rng: random.Random, degree: int, span: int = 4) -> Polynomial:
    coeffs = [Fraction(rng.randint(-span, span), rng.randint(1, 3)) for _ in range(degree)]
    lead = Fraction(rng.choice([-1, 1]) * rng.randint(1, span), rng.randint(1, 3))
    return Polynomial(coeffs + [lead])


def random_andreief(rng: random.Random, max_n: int = 5):
    """``(measure, phis, psis, A)`` with ``N <= max_n`` and enough atoms for nonzero sums."""
    N = rng.randint(1, max_n)
    M = rng.randint(1, N)
    atoms = rng.randint(M, M + 2)
    pts = random_points(rng, atoms, Fraction(-2), Fraction(2))
    signed = rng.random() < 0.3
    measure = DiscreteMeasure(tuple(
        (t, random_weight(rng) * (rng.choice([-1, 1]) if signed else 1)) for t in pts
    ))
    phis = [random_polynomial(rng, rng.randint(0, 3)) for _ in range(M)]
    psis = [random_polynomial(rng, rng.randint(0, 3)) for _ in range(N)]
    A = [[Fraction(rng.randint(-3, 3), rng.randint(1, 3)) for _ in range(N)] for _ in range(N - M)]
    return measure, phis, psis, A
