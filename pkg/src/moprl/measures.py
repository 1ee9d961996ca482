"""Finite atomic measures and the classical families of measure systems.

A :class:`DiscreteMeasure` is a finite list of ``(point, weight)`` atoms with
rational entries.  Weights may have either sign because Christoffel
transforms destroy positivity; sign-definiteness is a property, not an
invariant.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import MeasureError
from .linalg import det_rational
from .poly_core import Polynomial

__all__ = [
    "Interval",
    "DiscreteMeasure",
    "SystemKind",
    "MeasureSystem",
    "moment",
    "christoffel1",
    "christoffel2",
    "christoffel_pow",
    "christoffel_abs2",
    "m_function_eval",
    "nikishin_bracket",
    "make_explicit",
    "make_angelesco",
    "make_at_cauchy",
    "make_nikishin",
    "at_chebyshev_index",
    "chebyshev_sample_check",
    "perturb_second_measure",
]


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if not self.lo < self.hi:
            raise MeasureError(f"interval needs lo < hi, got [{self.lo}, {self.hi}]")

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_open(self, x) -> bool:
        return self.lo < x < self.hi

    def interiors_overlap(self, other: "Interval") -> bool:
        return self.lo < other.hi and other.lo < self.hi


@dataclass(frozen=True)
class DiscreteMeasure:
    """Finite sum of weighted point masses, optionally tagged with an interval."""

    atoms: tuple[tuple[Fraction, Fraction], ...]
    support_interval: Interval | None = None

    def __post_init__(self):
        atoms = tuple(sorted((Fraction(t), Fraction(w)) for t, w in self.atoms))
        points = [t for t, _ in atoms]
        if len(set(points)) != len(points):
            raise MeasureError("atom points must be pairwise distinct")
        if any(w == 0 for _, w in atoms):
            raise MeasureError("atom weights must be nonzero")
        iv = self.support_interval
        if iv is not None and not isinstance(iv, Interval):
            iv = Interval(*iv)
            object.__setattr__(self, "support_interval", iv)
        if iv is not None and not all(iv.contains(t) for t in points):
            raise MeasureError(f"atoms outside the support interval [{iv.lo}, {iv.hi}]")
        object.__setattr__(self, "atoms", atoms)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple], interval=None) -> "DiscreteMeasure":
        return cls(tuple((Fraction(t), Fraction(w)) for t, w in pairs), interval)

    @property
    def points(self) -> tuple[Fraction, ...]:
        return tuple(t for t, _ in self.atoms)

    @property
    def weights(self) -> tuple[Fraction, ...]:
        return tuple(w for _, w in self.atoms)

    def __len__(self) -> int:
        return len(self.atoms)

    def sign(self) -> int:
        """``+1`` or ``-1`` if all weights share that sign, else ``0``."""
        if all(w > 0 for _, w in self.atoms):
            return 1
        if all(w < 0 for _, w in self.atoms):
            return -1
        return 0

    def is_sign_definite(self) -> bool:
        return bool(self.atoms) and self.sign() != 0

    def integrate(self, p: Polynomial) -> Fraction:
        return sum((w * p(t) for t, w in self.atoms), Fraction(0))

    def reweight(self, factor, keep_interval: bool = True) -> "DiscreteMeasure":
        """Multiply each weight by ``factor(point)``, dropping atoms that vanish."""
        atoms = []
        for t, w in self.atoms:
            nw = w * factor(t)
            if nw != 0:
                atoms.append((t, nw))
        return DiscreteMeasure(tuple(atoms), self.support_interval if keep_interval else None)


class SystemKind(enum.Enum):
    EXPLICIT = "Explicit"
    ANGELESCO = "Angelesco"
    AT_CAUCHY_VANDERMONDE = "AT_CauchyVandermonde"
    NIKISHIN = "Nikishin"


@dataclass(frozen=True)
class MeasureSystem:
    """Ordered tuple of measures ``(mu_1, ..., mu_r)`` plus construction data.

    ``intervals`` holds the per-measure intervals (Angelesco, AT) or the
    generating intervals of the sigmas (Nikishin).  ``poles`` and ``sigmas``
    are recorded for the AT and Nikishin constructors respectively.
    """

    measures: tuple[DiscreteMeasure, ...]
    kind: SystemKind = SystemKind.EXPLICIT
    intervals: tuple[Interval, ...] | None = None
    poles: tuple[Fraction, ...] | None = None
    sigmas: tuple[DiscreteMeasure, ...] | None = None
    base: DiscreteMeasure | None = field(default=None, compare=False)

    def __post_init__(self):
        if len(self.measures) < 1:
            raise MeasureError("a measure system needs r >= 1 measures")

    @property
    def r(self) -> int:
        return len(self.measures)

    def replace_measures(self, measures: Sequence[DiscreteMeasure]) -> "MeasureSystem":
        """A plain system with the given measures; construction tags are dropped."""
        return MeasureSystem(tuple(measures), SystemKind.EXPLICIT)

    def atom_union(self) -> set[Fraction]:
        pts: set[Fraction] = set()
        for m in self.measures:
            pts.update(m.points)
        return pts

    def summary(self) -> str:
        sizes = ",".join(str(len(m)) for m in self.measures)
        return f"{self.kind.value}(r={self.r}, atoms=[{sizes}])"


def moment(m: DiscreteMeasure, k: int) -> Fraction:
    """``sum_i w_i t_i**k``."""
    if k < 0:
        raise ValueError("moment order must be non-negative")
    return sum((w * t**k for t, w in m.atoms), Fraction(0))


def moments(m: DiscreteMeasure, count: int) -> list[Fraction]:
    """First ``count`` moments ``c_0, ..., c_{count-1}``."""
    out = [Fraction(0)] * count
    for t, w in m.atoms:
        acc = w
        for k in range(count):
            out[k] += acc
            acc *= t
    return out


def christoffel1(m: DiscreteMeasure, z0) -> DiscreteMeasure:
    """``(x - z0) m``."""
    z0 = Fraction(z0)
    return m.reweight(lambda t: t - z0)


def christoffel2(m: DiscreteMeasure, z0) -> DiscreteMeasure:
    """``(x - z0)^2 m``."""
    z0 = Fraction(z0)
    return m.reweight(lambda t: (t - z0) ** 2)


def christoffel_pow(m: DiscreteMeasure, z0, ell: int) -> DiscreteMeasure:
    """``(x - z0)^ell m``."""
    z0 = Fraction(z0)
    return m.reweight(lambda t: (t - z0) ** ell)


def christoffel_abs2(m: DiscreteMeasure, a, b) -> DiscreteMeasure:
    """``|x - (a + ib)|^2 m`` for a non-real point ``a + ib``."""
    a, b = Fraction(a), Fraction(b)
    if b == 0:
        raise MeasureError("imaginary part is zero: use christoffel2")
    return m.reweight(lambda t: (t - a) ** 2 + b * b)


def m_function_eval(m: DiscreteMeasure, x) -> Fraction:
    """Stieltjes transform ``sum_i w_i / (t_i - x)``."""
    x = Fraction(x)
    total = Fraction(0)
    for t, w in m.atoms:
        if t == x:
            raise MeasureError(f"pole of m-function at {x}")
        total += w / (t - x)
    return total


def nikishin_bracket(s1: DiscreteMeasure, s2: DiscreteMeasure) -> DiscreteMeasure:
    """The measure ``m_{s2}(x) ds1(x)`` on the atoms of ``s1``."""
    i1, i2 = s1.support_interval, s2.support_interval
    if i1 is not None and i2 is not None and i1.interiors_overlap(i2):
        raise MeasureError("not a Nikishin pair: support interiors overlap")
    if set(s1.points) & set(s2.points):
        raise MeasureError("bracket undefined at common point")
    return s1.reweight(lambda t: m_function_eval(s2, t))


def make_explicit(measures: Sequence[DiscreteMeasure]) -> MeasureSystem:
    return MeasureSystem(tuple(measures), SystemKind.EXPLICIT)


def make_angelesco(measures: Sequence[DiscreteMeasure]) -> MeasureSystem:
    """Angelesco system: interval interiors pairwise disjoint, measures sign-definite.

    Measures are reordered so their intervals increase.
    """
    if not measures:
        raise MeasureError("a measure system needs r >= 1 measures")
    for m in measures:
        if m.support_interval is None:
            raise MeasureError("Angelesco measures need support intervals")
        if not m.is_sign_definite():
            raise MeasureError("Angelesco measures must be sign-definite")
    for a, b in combinations(measures, 2):
        if a.support_interval.interiors_overlap(b.support_interval):
            raise MeasureError(
                f"Angelesco intervals [{a.support_interval.lo}, {a.support_interval.hi}] and "
                f"[{b.support_interval.lo}, {b.support_interval.hi}] overlap"
            )
    ordered = sorted(measures, key=lambda m: m.support_interval)
    return MeasureSystem(
        tuple(ordered),
        SystemKind.ANGELESCO,
        intervals=tuple(m.support_interval for m in ordered),
    )


def make_at_cauchy(base: DiscreteMeasure, poles: Sequence) -> MeasureSystem:
    """AT system with weights ``1/(b_j - x)`` for poles ``b_j`` on one side of the base interval."""
    iv = base.support_interval
    if iv is None:
        raise MeasureError("AT base measure needs a support interval")
    if not base.is_sign_definite():
        raise MeasureError("AT base measure must be sign-definite")
    poles = tuple(Fraction(b) for b in poles)
    if not poles:
        raise MeasureError("need at least one pole")
    if len(set(poles)) != len(poles):
        raise MeasureError("duplicate poles")
    if any(iv.contains(b) for b in poles):
        raise MeasureError("pole inside the base interval")
    above = [b > iv.hi for b in poles]
    if any(above) and not all(above):
        raise MeasureError("poles on opposite sides of the base interval")
    measures = tuple(base.reweight(lambda t, b=b: 1 / (b - t)) for b in poles)
    return MeasureSystem(
        measures,
        SystemKind.AT_CAUCHY_VANDERMONDE,
        intervals=tuple(iv for _ in poles),
        poles=poles,
        base=base,
    )


def make_nikishin(sigmas: Sequence[DiscreteMeasure]) -> MeasureSystem:
    """Nikishin system ``N(sigma_1, ..., sigma_r)`` for ``r`` in ``{2, 3}``."""
    sigmas = tuple(sigmas)
    if len(sigmas) not in (2, 3):
        raise MeasureError("Nikishin constructor supports r = 2 or 3")
    for s in sigmas:
        if s.support_interval is None:
            raise MeasureError("Nikishin generators need support intervals")
        if not s.is_sign_definite():
            raise MeasureError("Nikishin generators must be sign-definite")
    for a, b in zip(sigmas, sigmas[1:]):
        if a.support_interval.interiors_overlap(b.support_interval):
            raise MeasureError("not a Nikishin pair: consecutive interval interiors overlap")
    mus = [sigmas[0], nikishin_bracket(sigmas[0], sigmas[1])]
    if len(sigmas) == 3:
        inner = nikishin_bracket(sigmas[1], sigmas[2])
        mus.append(nikishin_bracket(sigmas[0], inner))
    return MeasureSystem(
        tuple(mus),
        SystemKind.NIKISHIN,
        intervals=tuple(s.support_interval for s in sigmas),
        sigmas=sigmas,
    )


def _cauchy_vandermonde_functions(poles: Sequence[Fraction], index: Sequence[int]):
    funcs = []
    for b, n in zip(poles, index):
        for k in range(n):
            funcs.append((k, b))
    return funcs


def chebyshev_determinant(poles: Sequence[Fraction], index: Sequence[int], xs: Sequence[Fraction]) -> Fraction:
    """``det (u_i(x_j))`` for the functions ``x^k/(b_j - x)``, ``k < n_j``."""
    funcs = _cauchy_vandermonde_functions(poles, index)
    if len(funcs) != len(xs):
        raise ValueError("need one sample point per function")
    return det_rational([[x**k / (b - x) for x in xs] for k, b in funcs])


def at_chebyshev_index(n: Sequence[int]) -> bool:
    """Whether ``x^k/(b_j - x)``, ``k < n_j``, is a Chebyshev system for index ``n``.

    Since ``x/(b - x) = b/(b - x) - 1`` the functions span polynomials of
    degree below ``max n_j - 1`` plus one pole term per active slot, so the
    dimension reaches ``|n|`` only when at most one ``n_j`` exceeds 1.  In
    that case multiplying by ``prod (b_j - x)``, which has constant sign on
    the interval, maps the span onto all polynomials of degree below ``|n|``.
    """
    return sum(1 for k in n if k >= 2) <= 1


def chebyshev_sample_check(system: MeasureSystem, n: Sequence[int], trials: int, seed: int = 0) -> bool:
    """Sample increasing tuples in the AT interval and test the sign of the Chebyshev determinant."""
    if system.kind is not SystemKind.AT_CAUCHY_VANDERMONDE:
        raise MeasureError("chebyshev_sample_check needs an AT Cauchy-Vandermonde system")
    size = sum(n)
    if size == 0:
        return True
    iv = system.intervals[0]
    rng = random.Random(seed)
    signs = set()
    grid = 10**6
    for _ in range(trials):
        ticks = sorted(rng.sample(range(grid + 1), size))
        xs = [iv.lo + (iv.hi - iv.lo) * Fraction(t, grid) for t in ticks]
        if len(set(xs)) != len(xs):
            raise ValueError("sample tuple has repeated points")
        d = chebyshev_determinant(system.poles, n, xs)
        if d == 0:
            return False
        signs.add(d > 0)
    return len(signs) <= 1


def perturb_second_measure(system: MeasureSystem, q: Polynomial) -> MeasureSystem:
    """Replace ``mu_2`` by ``mu_2 + q(x) mu_1`` (atomwise union)."""
    if system.r != 2:
        raise MeasureError("perturbation needs a system with r = 2")
    mu1, mu2 = system.measures
    weights: dict[Fraction, Fraction] = dict(mu2.atoms)
    for t, w in mu1.atoms:
        weights[t] = weights.get(t, Fraction(0)) + q(t) * w
    atoms = tuple((t, w) for t, w in sorted(weights.items()) if w != 0)
    return MeasureSystem((mu1, DiscreteMeasure(atoms)), SystemKind.EXPLICIT)
