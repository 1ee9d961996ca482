"""Block moment matrices and exact type I / type II multiple orthogonal polynomials.

For a system ``(mu_1, ..., mu_r)`` and multi-index ``n`` the moment matrix
stacks one Hankel-like block per measure: block ``j`` has ``n_j`` rows and
``|n|`` columns with entry ``c^{(j)}_{k+l}`` in row ``k``, column ``l``.
Normality of ``n`` means this matrix is nonsingular.

Slots (the ``j`` in ``e_j``) are 0-based throughout the library.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Sequence, Union

from .errors import HypothesisError, InconsistencyError, InsufficientSupportError, NotNormalError
from .linalg import bareiss_det, det_rational, solve_rational
from .measures import DiscreteMeasure, MeasureSystem, christoffel_pow, moments
from .poly_core import Polynomial

__all__ = [
    "MultiIndex",
    "MomentMatrix",
    "TypeIVector",
    "Transform",
    "check_support",
    "build_H",
    "det_exact",
    "is_normal",
    "solve_type_ii",
    "solve_type_i",
    "type_i_pairing",
    "det_H_in_z",
    "transform_system",
]


@dataclass(frozen=True, order=True)
class MultiIndex:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 0 for p in parts):
            raise HypothesisError(f"multi-index entries must be >= 0, got {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, n: Union["MultiIndex", Iterable[int]]) -> "MultiIndex":
        return n if isinstance(n, MultiIndex) else cls(tuple(n))

    @classmethod
    def zero(cls, r: int) -> "MultiIndex":
        return cls((0,) * r)

    @classmethod
    def unit(cls, r: int, j: int) -> "MultiIndex":
        return cls(tuple(1 if i == j else 0 for i in range(r)))

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def r(self) -> int:
        return len(self.parts)

    def plus(self, j: int, times: int = 1) -> "MultiIndex":
        parts = list(self.parts)
        parts[j] += times
        return MultiIndex(tuple(parts))

    def minus(self, j: int, times: int = 1) -> "MultiIndex":
        if self.parts[j] < times:
            raise HypothesisError(f"{self} - {times}e_{j + 1} has a negative entry")
        return self.plus(j, -times)

    def __iter__(self):
        return iter(self.parts)

    def __getitem__(self, j: int) -> int:
        return self.parts[j]

    def __len__(self) -> int:
        return len(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


@dataclass(frozen=True)
class MomentMatrix:
    index: MultiIndex
    entries: tuple[tuple[Fraction, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def rows(self) -> list[list[Fraction]]:
        return [list(r) for r in self.entries]


@dataclass(frozen=True)
class TypeIVector:
    polys: tuple[Polynomial, ...]

    def __getitem__(self, j: int) -> Polynomial:
        return self.polys[j]

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)


@dataclass(frozen=True)
class Transform:
    """Christoffel transform ``(x - z)^degree`` applied to all measures or to one slot."""

    degree: int
    slot: int | None = None

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("transform degree must be >= 0")

    @classmethod
    def all(cls, degree: int) -> "Transform":
        return cls(degree)

    @classmethod
    def single(cls, slot: int, degree: int) -> "Transform":
        return cls(degree, slot)

    def degree_on(self, j: int) -> int:
        return self.degree if self.slot is None or self.slot == j else 0

    def __str__(self) -> str:
        target = "all" if self.slot is None else f"slot {self.slot + 1}"
        return f"(x-z)^{self.degree} on {target}"


def _check_index(system: MeasureSystem, n: MultiIndex) -> None:
    if n.r != system.r:
        raise HypothesisError(f"index {n} has length {n.r} but the system has r = {system.r}")


def check_support(system: MeasureSystem, n, transform: Transform | None = None) -> None:
    """Raise :class:`InsufficientSupportError` unless the atom budget covers ``n``.

    Every measure with ``n_j > 0`` needs at least ``n_j + d_j`` atoms, where
    ``d_j`` is the transform degree landing on it, and the system as a whole
    needs at least ``|n| + max d_j`` distinct atoms.  Nikishin systems
    additionally need ``n_j + d_j`` atoms in the generator ``sigma_j`` for
    ``j >= 2``.
    """
    n = MultiIndex.of(n)
    _check_index(system, n)
    transform = transform or Transform(0)
    extra = 0
    for j, (m, nj) in enumerate(zip(system.measures, n)):
        d = transform.degree_on(j)
        if nj > 0:
            extra = max(extra, d)
            if len(m) < nj + d:
                raise InsufficientSupportError(
                    f"insufficient support for index {n}: measure {j + 1} has {len(m)} atoms, needs {nj + d}"
                )
    if system.sigmas is not None:
        # x^k m(x) for k >= atoms of sigma_j collapses onto plain polynomials
        for j, nj in enumerate(n):
            if j == 0 or nj == 0:
                continue
            need = nj + transform.degree_on(j)
            have = len(system.sigmas[j])
            if have < need:
                raise InsufficientSupportError(
                    f"insufficient support for index {n}: sigma {j + 1} has {have} atoms, needs {need}"
                )
    union = len(system.atom_union())
    if n.size > 0 and union < n.size + extra:
        raise InsufficientSupportError(
            f"insufficient support for index {n}: {union} distinct atoms, needs {n.size + extra}"
        )


def has_support(system: MeasureSystem, n, transform: Transform | None = None) -> bool:
    try:
        check_support(system, n, transform)
    except InsufficientSupportError:
        return False
    return True


@lru_cache(maxsize=4096)
def _moment_table(m: DiscreteMeasure, count: int) -> tuple[Fraction, ...]:
    return tuple(moments(m, count))


def _block_rows(system: MeasureSystem, n: MultiIndex) -> list[list[Fraction]]:
    size = n.size
    rows = []
    for m, nj in zip(system.measures, n):
        if nj == 0:
            continue
        c = _moment_table(m, nj + size)
        for k in range(nj):
            rows.append(list(c[k:k + size]))
    return rows


def build_H(system: MeasureSystem, n, check: bool = True) -> MomentMatrix:
    n = MultiIndex.of(n)
    _check_index(system, n)
    if check:
        check_support(system, n)
    return MomentMatrix(n, tuple(tuple(r) for r in _block_rows(system, n)))


def det_exact(M: MomentMatrix | Sequence[Sequence[Fraction]]) -> Fraction:
    rows = M.rows() if isinstance(M, MomentMatrix) else [list(r) for r in M]
    return det_rational(rows)


def is_normal(system: MeasureSystem, n, check: bool = True) -> bool:
    return det_exact(build_H(system, n, check)) != 0


def _orthogonality_residuals(system: MeasureSystem, n: MultiIndex, p: Polynomial) -> list[Fraction]:
    out = []
    for m, nj in zip(system.measures, n):
        for k in range(nj):
            out.append(sum((w * p(t) * t**k for t, w in m.atoms), Fraction(0)))
    return out


def solve_type_ii(system: MeasureSystem, n, check: bool = True) -> Polynomial:
    """Monic ``P_n`` of degree ``|n|`` orthogonal to ``x^k``, ``k < n_j``, against each ``mu_j``."""
    n = MultiIndex.of(n)
    H = build_H(system, n, check)
    size = n.size
    if size == 0:
        return Polynomial.constant(1)
    rhs = []
    for m, nj in zip(system.measures, n):
        if nj == 0:
            continue
        c = _moment_table(m, nj + size)
        rhs.extend(-c[k + size] for k in range(nj))
    try:
        a = solve_rational(H.rows(), rhs)
    except NotNormalError:
        raise NotNormalError(f"index {n} not normal") from None
    p = Polynomial(a + [Fraction(1)])
    if any(_orthogonality_residuals(system, n, p)):
        raise InconsistencyError(f"type II solution at {n} fails substitution")
    return p


def type_i_pairing(system: MeasureSystem, polys: Sequence[Polynomial], k: int) -> Fraction:
    """``sum_j int A_j(x) x^k dmu_j(x)``."""
    total = Fraction(0)
    for m, a in zip(system.measures, polys):
        if a.is_zero():
            continue
        total += sum((w * a(t) * t**k for t, w in m.atoms), Fraction(0))
    return total


def solve_type_i(system: MeasureSystem, n, check: bool = True) -> TypeIVector:
    """Type I vector with ``deg A_j <= n_j - 1``, pairing ``0`` for ``k < |n|-1`` and ``1`` at ``|n|-1``."""
    n = MultiIndex.of(n)
    if n.size == 0:
        raise HypothesisError("type I polynomials need |n| >= 1")
    H = build_H(system, n, check)
    size = n.size
    transpose = [list(col) for col in zip(*H.entries)]
    rhs = [Fraction(0)] * (size - 1) + [Fraction(1)]
    try:
        a = solve_rational(transpose, rhs)
    except NotNormalError:
        raise NotNormalError(f"index {n} not normal") from None
    polys = []
    pos = 0
    for nj in n:
        polys.append(Polynomial(a[pos:pos + nj]))
        pos += nj
    vec = TypeIVector(tuple(polys))
    for k in range(size):
        if type_i_pairing(system, vec.polys, k) != (1 if k == size - 1 else 0):
            raise InconsistencyError(f"type I solution at {n} fails substitution")
    return vec


def _shifted_moment_polys(c: Sequence[Fraction], count: int, degree: int) -> list[Polynomial]:
    """Moments of ``(x - z)^degree mu`` as polynomials in ``z``.

    ``c'_k(z) = sum_p binom(d, p) (-z)^p c_{k+d-p}``.
    """
    out = []
    for k in range(count):
        out.append(Polynomial(comb(degree, p) * (-1) ** p * c[k + degree - p] for p in range(degree + 1)))
    return out


def det_H_in_z(system: MeasureSystem, n, transform: Transform, check: bool = True) -> Polynomial:
    """``det H_n`` of the system transformed by ``(x - z)^d`` at a symbolic point ``z``.

    Entries are polynomials in ``z``; the determinant is expanded by Bareiss
    elimination over ``Q[z]``.
    """
    n = MultiIndex.of(n)
    _check_index(system, n)
    if check:
        check_support(system, n, transform)
    size = n.size
    if size == 0:
        return Polynomial.constant(1)
    rows = []
    for j, (m, nj) in enumerate(zip(system.measures, n)):
        if nj == 0:
            continue
        d = transform.degree_on(j)
        c = _moment_table(m, nj + size + d)
        entries = _shifted_moment_polys(c, nj + size - 1, d)
        for k in range(nj):
            rows.append(entries[k:k + size])
    return bareiss_det(rows, one=Polynomial.constant(1))


def transform_system(system: MeasureSystem, z0, transform: Transform) -> MeasureSystem:
    """The numeric counterpart of :func:`det_H_in_z`'s transform at a rational point."""
    measures = []
    for j, m in enumerate(system.measures):
        d = transform.degree_on(j)
        measures.append(christoffel_pow(m, z0, d) if d else m)
    return system.replace_measures(measures)
