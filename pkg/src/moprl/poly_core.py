"""Exact univariate polynomials over the rationals.

Besides ring arithmetic this module provides Wronskians, squarefree parts,
Sturm-chain root counting, certified real-root isolation and an interlacing
decision that runs two independent routes and cross-checks them.

Nothing here touches floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence, Union

from .errors import InconsistencyError
from .linalg import bareiss_det

Number = Union[int, Fraction]

__all__ = [
    "Polynomial",
    "IsolatingInterval",
    "SturmChain",
    "Interlacing",
    "InterlaceResult",
    "wronskian",
    "poly_gcd",
    "squarefree_part",
    "sturm_chain",
    "count_real_roots",
    "isolate_real_roots",
    "refine_interval",
    "is_real_rooted",
    "real_root_multiplicity_total",
    "interlace_decide",
    "proportional",
]


class Polynomial:
    """Dense polynomial with :class:`~fractions.Fraction` coefficients.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are trimmed so
    the zero polynomial has an empty coefficient tuple and degree ``-1``.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    def __reduce__(self):
        return (Polynomial, (self.coeffs,))

    @classmethod
    def constant(cls, value: Number) -> "Polynomial":
        return cls((value,))

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, coeff: Number = 1) -> "Polynomial":
        return cls([0] * k + [coeff])

    @classmethod
    def from_roots(cls, roots: Iterable[Number], lead: Number = 1) -> "Polynomial":
        p = cls.constant(lead)
        for r in roots:
            p = p * cls((-Fraction(r), 1))
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial.constant(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = "x" if i == 1 else f"x^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other)
        raise TypeError(f"cannot combine Polynomial with {type(other).__name__}")

    def __add__(self, other) -> "Polynomial":
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Polynomial()
            return Polynomial(c * other for c in self.coeffs)
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        out = Polynomial.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __divmod__(self, other) -> tuple["Polynomial", "Polynomial"]:
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) - 1 < db:
            return Polynomial(), self
        inv_lead = 1 / other.lead
        quot = [Fraction(0)] * (len(rem) - db)
        bc = other.coeffs
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] * inv_lead
            quot[k] = q
            if q:
                for i in range(db + 1):
                    rem[k + i] -= q * bc[i]
        return Polynomial(quot), Polynomial(rem[:db])

    def __floordiv__(self, other) -> "Polynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Polynomial":
        return divmod(self, other)[1]

    def __truediv__(self, other) -> "Polynomial":
        """Exact division; raises if ``other`` does not divide ``self``."""
        if isinstance(other, (int, Fraction)):
            return Polynomial(c / other for c in self.coeffs)
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    # -- calculus and evaluation -----------------------------------------

    def __call__(self, x: Number) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self, k: int = 1) -> "Polynomial":
        p = self
        for _ in range(k):
            p = Polynomial(i * c for i, c in enumerate(p.coeffs) if i > 0)
        return p

    def monic(self) -> "Polynomial":
        if self.is_zero():
            raise ValueError("zero polynomial cannot be made monic")
        return self / self.lead

    def compose_affine(self, a: Number, b: Number) -> "Polynomial":
        """Return ``p(a*x + b)``."""
        lin = Polynomial((b, a))
        out = Polynomial()
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic greatest common divisor; ``gcd(0, 0) = 0``."""
    a, b = p, q
    while b:
        r = a % b
        a, b = b, (_scaled(r) if r else r)
    if a.is_zero():
        return a
    return a.monic()


def proportional(p: Polynomial, q: Polynomial) -> Fraction | None:
    """Return ``c`` with ``p == c*q`` if one exists (and ``q`` is nonzero)."""
    if q.is_zero() or p.degree != q.degree:
        return None
    c = p.lead / q.lead
    return c if p == q * c else None


def wronskian(polys: Sequence[Polynomial]) -> Polynomial:
    """Determinant of the matrix whose row ``k`` holds the ``k``-th derivatives."""
    ell = len(polys)
    if ell == 0:
        raise ValueError("wronskian of an empty list")
    rows = []
    current = list(polys)
    for _ in range(ell):
        rows.append(current)
        current = [p.derivative() for p in current]
    return bareiss_det(rows, one=Polynomial.constant(1))


def squarefree_part(p: Polynomial) -> Polynomial:
    """Monic polynomial with the same distinct roots as ``p``, all simple."""
    if p.is_zero():
        raise ValueError("zero polynomial has no squarefree part")
    if p.is_constant():
        return Polynomial.constant(1)
    return (p / poly_gcd(p, p.derivative())).monic()


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def _primitive_int(p: Polynomial) -> tuple[int, ...]:
    """Integer coefficients of a positive multiple of ``p`` with content 1."""
    scale = 1
    for c in p.coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    ints = [int(c * scale) for c in p.coeffs]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return tuple(c // g for c in ints) if g > 1 else tuple(ints)


def _sign_int(coeffs: tuple[int, ...], x: Fraction) -> int:
    """Sign of the integer polynomial at ``x = a/b`` via the homogenised form."""
    a, b = x.numerator, x.denominator
    d = len(coeffs) - 1
    acc = coeffs[d]
    bp = 1
    for i in range(d - 1, -1, -1):
        bp *= b
        acc = acc * a + coeffs[i] * bp
    return (acc > 0) - (acc < 0)


@dataclass(frozen=True)
class SturmChain:
    """Signed remainder sequence of a squarefree polynomial."""

    chain: tuple[Polynomial, ...]
    _ints: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_ints", tuple(_primitive_int(p) for p in self.chain))

    def sign_at(self, x: Fraction | None, infinity: int = 0) -> list[int]:
        if x is None:
            out = []
            for p in self.chain:
                s = _sign(p.lead)
                if infinity < 0 and p.degree % 2 == 1:
                    s = -s
                out.append(s)
            return out
        x = Fraction(x)
        return [_sign_int(c, x) for c in self._ints]

    def variations(self, x: Fraction | None, infinity: int = 0) -> int:
        signs = [s for s in self.sign_at(x, infinity) if s]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    def count(self, lo: Fraction | None = None, hi: Fraction | None = None) -> int:
        """Distinct roots in ``(lo, hi]``; ``None`` stands for an infinite end."""
        v_lo = self.variations(lo, -1)
        v_hi = self.variations(hi, +1)
        return v_lo - v_hi


def _scaled(p: Polynomial) -> Polynomial:
    return Polynomial(Fraction(c) for c in _primitive_int(p))


def sturm_chain(p: Polynomial, squarefree: bool = False) -> SturmChain:
    """Sturm chain of ``squarefree_part(p)``.

    Members are rescaled by positive constants, which keeps every sign and
    keeps coefficient growth in check.  Pass ``squarefree=True`` to skip the
    gcd when ``p`` is already squarefree.
    """
    s = p if squarefree else squarefree_part(p)
    chain = [_scaled(s), _scaled(s.derivative())]
    while not chain[-1].is_constant():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(_scaled(-r))
    return SturmChain(tuple(q for q in chain if q))


def _as_bound(v) -> Fraction | None:
    return None if v is None else Fraction(v)


def count_real_roots(p: Polynomial, lo=None, hi=None) -> int:
    """Number of distinct real roots of ``p`` in ``(lo, hi]``.

    ``None`` bounds mean ``-inf`` and ``+inf`` respectively.
    """
    if p.is_zero():
        raise ValueError("cannot count roots of the zero polynomial")
    if p.is_constant():
        return 0
    lo, hi = _as_bound(lo), _as_bound(hi)
    if lo is not None and hi is not None and lo >= hi:
        return 0
    return sturm_chain(p).count(lo, hi)


@dataclass(frozen=True)
class IsolatingInterval:
    """Open interval ``(lo, hi)`` holding exactly one distinct real root.

    Endpoints are never roots, so ``(lo, hi)`` and ``(lo, hi]`` agree.
    """

    lo: Fraction
    hi: Fraction
    root_multiplicity: int = 1

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("isolating interval needs lo < hi")
        if self.root_multiplicity < 1:
            raise ValueError("multiplicity must be positive")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def overlaps(self, other: "IsolatingInterval") -> bool:
        return self.lo < other.hi and other.lo < self.hi

    def inside(self, lo: Fraction, hi: Fraction) -> bool:
        """True if the interval lies within the closed interval ``[lo, hi]``."""
        return lo <= self.lo and self.hi <= hi


def _cauchy_bound(p: Polynomial) -> Fraction:
    lead = abs(p.lead)
    return 1 + max(abs(c) / lead for c in p.coeffs[:-1])


def _split_point(chain: SturmChain, lo: Fraction, hi: Fraction) -> Fraction:
    m = (lo + hi) / 2
    while chain.sign_at(m)[0] == 0:
        m = (m + hi) / 2
    return m


def _halve(chain: SturmChain, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    """One bisection step keeping the single root of ``(lo, hi)``."""
    mid = _split_point(chain, lo, hi)
    return (lo, mid) if chain.count(lo, mid) == 1 else (mid, hi)


def _gcd_tower(p: Polynomial) -> list[Polynomial]:
    """``g0 = p``, ``g_{i+1} = gcd(g_i, g_i')`` down to a constant."""
    tower = [p]
    while not tower[-1].is_constant():
        g = tower[-1]
        tower.append(poly_gcd(g, g.derivative()))
    return tower[:-1]


def isolate_real_roots(p: Polynomial, width=None) -> list[IsolatingInterval]:
    """Disjoint rational intervals, one per distinct real root, sorted.

    Bisection starts from the Cauchy bound; split points are nudged off roots
    so no endpoint is ever a root.  When ``width`` is given every interval is
    refined to be strictly narrower than it.
    """
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    if p.is_constant():
        return []
    width = None if width is None else Fraction(width)
    s = squarefree_part(p)
    chain = sturm_chain(s, squarefree=True)
    bound = _cauchy_bound(s)
    found: list[tuple[Fraction, Fraction]] = []
    stack = [(-bound, bound)]
    while stack:
        lo, hi = stack.pop()
        k = chain.count(lo, hi)
        if k == 0:
            continue
        if k == 1 and (width is None or hi - lo < width):
            found.append((lo, hi))
            continue
        mid = _split_point(chain, lo, hi)
        stack.append((mid, hi))
        stack.append((lo, mid))
    found.sort()
    tower = _gcd_tower(p)
    towers = [chain] + [sturm_chain(g) for g in tower[1:]]
    out = []
    for lo, hi in found:
        mult = sum(1 for ch in towers if ch.count(lo, hi) > 0)
        out.append(IsolatingInterval(lo, hi, mult))
    return out


def refine_interval(p: Polynomial, iv: IsolatingInterval, width) -> IsolatingInterval:
    """Shrink ``iv`` by bisection until narrower than ``width``."""
    width = Fraction(width)
    chain = sturm_chain(p)
    lo, hi = iv.lo, iv.hi
    while hi - lo >= width:
        lo, hi = _halve(chain, lo, hi)
    return IsolatingInterval(lo, hi, iv.root_multiplicity)


def real_root_multiplicity_total(p: Polynomial) -> int:
    """Real roots of ``p`` counted with multiplicity."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.is_constant():
        return 0
    return sum(count_real_roots(g) for g in _gcd_tower(p))


def is_real_rooted(p: Polynomial) -> bool:
    if p.is_zero():
        raise ValueError("real-rootedness undefined for the zero polynomial")
    return real_root_multiplicity_total(p) == p.degree


class Interlacing(enum.Enum):
    INTERLACE = "Interlace"
    NOT_INTERLACE = "NotInterlace"


@dataclass(frozen=True)
class InterlaceResult:
    verdict: Interlacing
    wronskian: Polynomial
    witness: str

    def __bool__(self) -> bool:
        return self.verdict is Interlacing.INTERLACE


def _wronskian_route(p: Polynomial, q: Polynomial, w: Polynomial) -> tuple[bool, str]:
    if p.degree > q.degree + 1:
        return False, f"deg p = {p.degree} exceeds deg q + 1 = {q.degree + 1}"
    if w.is_zero():
        return False, "Wronskian vanishes identically"
    k = count_real_roots(w)
    if k:
        return False, f"Wronskian has {k} real zero(s)"
    return True, "Wronskian has no real zeros"


def _direct_route(p: Polynomial, q: Polynomial) -> tuple[bool, str]:
    if p.is_constant() and q.is_constant():
        return False, "both polynomials constant (linearly dependent)"
    for name, f in (("p", p), ("q", q)):
        if not f.is_constant():
            if not is_real_rooted(f):
                return False, f"{name} has non-real zeros"
            if not poly_gcd(f, f.derivative()).is_constant():
                return False, f"{name} has a multiple zero"
    if not poly_gcd(p, q).is_constant():
        return False, "p and q share a zero"
    ip = [(iv.lo, iv.hi) for iv in isolate_real_roots(p)]
    iq = [(iv.lo, iv.hi) for iv in isolate_real_roots(q)]
    cp = sturm_chain(p, squarefree=True) if ip else None
    cq = sturm_chain(q, squarefree=True) if iq else None
    # no common zero, so shrinking the wider of each overlapping pair terminates
    changed = True
    while changed:
        changed = False
        for a, (plo, phi) in enumerate(ip):
            for b, (qlo, qhi) in enumerate(iq):
                if plo < qhi and qlo < phi:
                    if phi - plo >= qhi - qlo:
                        ip[a] = plo, phi = _halve(cp, plo, phi)
                    else:
                        iq[b] = qlo, qhi = _halve(cq, qlo, qhi)
                    changed = True
    merged = sorted([(lo, "p") for lo, _ in ip] + [(lo, "q") for lo, _ in iq])
    labels = [lab for _, lab in merged]
    for a, b in zip(labels, labels[1:]):
        if a == b:
            return False, "zeros do not alternate"
    return True, "zeros strictly alternate"


def interlace_decide(p: Polynomial, q: Polynomial) -> InterlaceResult:
    """Decide strict interlacing of ``p`` and a real-rooted ``q``.

    Two routes run independently: the Wronskian criterion (degree bound plus
    no real zeros of ``p q' - q p'``) and direct isolation of both zero sets.
    Disagreement raises :class:`InconsistencyError`.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("interlacing undefined for the zero polynomial")
    if not is_real_rooted(q):
        raise ValueError("interlacing undefined: q is not real-rooted")
    w = wronskian([p, q])
    ok_w, why_w = _wronskian_route(p, q, w)
    ok_d, why_d = _direct_route(p, q)
    if ok_w != ok_d:
        raise InconsistencyError(
            f"interlacing routes disagree for p={p}, q={q}: "
            f"wronskian says {ok_w} ({why_w}), direct says {ok_d} ({why_d})"
        )
    verdict = Interlacing.INTERLACE if ok_w else Interlacing.NOT_INTERLACE
    return InterlaceResult(verdict, w, why_d if ok_d else f"{why_w}; {why_d}")
