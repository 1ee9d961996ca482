"""Mechanical checks of the zero-location, interlacing and Wronskian criteria.

Every ``verify_*`` function returns a :class:`CriterionReport`.  A ``FAIL``
verdict is an ordinary result carrying a concrete witness; exceptions are
reserved for calls made outside a statement's hypotheses
(:class:`~moprl.errors.HypothesisError`) and for internal disagreements
(:class:`~moprl.errors.InconsistencyError`).

Zero-set equality over the complex plane is decided as equality of monic
squarefree parts, which avoids complex root isolation altogether.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Any, Sequence

from .errors import HypothesisError, InconsistencyError, NotNormalError
from .linalg import det_rational
from .measures import DiscreteMeasure, MeasureSystem, SystemKind, at_chebyshev_index, chebyshev_determinant
from .mop_solver import (
    MultiIndex,
    Transform,
    build_H,
    check_support,
    det_exact,
    det_H_in_z,
    solve_type_i,
    solve_type_ii,
)
from .poly_core import (
    IsolatingInterval,
    Polynomial,
    count_real_roots,
    interlace_decide,
    is_real_rooted,
    isolate_real_roots,
    poly_gcd,
    proportional,
    squarefree_part,
    wronskian,
)

__all__ = [
    "Verdict",
    "CriterionReport",
    "IncreasingPath",
    "verify_zero_criterion_type_ii",
    "verify_zero_criterion_type_i",
    "verify_interlace_criterion_type_ii",
    "verify_interlace_criterion_neighbors",
    "verify_interlace_criterion_type_i",
    "verify_andreief",
    "verify_perturbation_lemma",
    "verify_angelesco_zero_count",
    "verify_at_zero_location",
    "verify_nikishin_type_i_location",
    "verify_nikishin_type_i_interlacing",
    "verify_higher_wronskian",
    "verify_even_wronskian_nonvanishing",
    "verify_quasiorthogonality",
    "probe_constant_multiple",
    "probe_at_sign",
]


class Verdict(enum.Enum):
    PASS = "Pass"
    FAIL = "Fail"
    DEGENERATE = "Degenerate"


Witness = tuple[str, Any]


@dataclass(frozen=True)
class CriterionReport:
    name: str
    system_summary: str
    index: Any
    verdict: Verdict
    witnesses: tuple[Witness, ...] = ()
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.verdict is Verdict.PASS

    def witness(self, label: str) -> Any:
        for key, value in self.witnesses:
            if key == label:
                return value
        raise KeyError(label)

    def with_seed(self, seed: int | None) -> "CriterionReport":
        return CriterionReport(self.name, self.system_summary, self.index, self.verdict, self.witnesses, seed)


@dataclass(frozen=True)
class IncreasingPath:
    """Multi-indices ``n_1, n_1 + e_{j_1}, ...``; ``steps`` are 0-based slots."""

    start: MultiIndex
    steps: tuple[int, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "start", MultiIndex.of(self.start))
        object.__setattr__(self, "steps", tuple(int(s) for s in self.steps))
        if any(not 0 <= s < self.start.r for s in self.steps):
            raise HypothesisError("path step outside 0..r-1")

    @property
    def length(self) -> int:
        return len(self.steps) + 1

    def indices(self) -> list[MultiIndex]:
        out = [self.start]
        for s in self.steps:
            out.append(out[-1].plus(s))
        return out

    def __str__(self) -> str:
        return "->".join(str(n) for n in self.indices())


def _report(name, system, index, ok, witnesses, verdict=None) -> CriterionReport:
    if verdict is None:
        verdict = Verdict.PASS if ok else Verdict.FAIL
    return CriterionReport(name, system.summary(), index, verdict, tuple(witnesses))


def _det_if_singular(system: MeasureSystem, indices) -> tuple[MultiIndex, Fraction] | None:
    for n in indices:
        d = det_exact(build_H(system, n, check=False))
        if d == 0:
            return n, d
    return None


def _singular_report(name, system, index, hit) -> CriterionReport:
    n, d = hit
    return _report(name, system, index, False, [("non_normal_index", n), ("det_H", d)])


def _same_zero_set(a: Polynomial, b: Polynomial) -> bool:
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return squarefree_part(a) == squarefree_part(b)


def _count_open(p: Polynomial, lo: Fraction, hi: Fraction) -> int:
    """Distinct roots of ``p`` in the open interval ``(lo, hi)``."""
    return count_real_roots(p, lo, hi) - (1 if p(hi) == 0 else 0)


def _is_squarefree(p: Polynomial) -> bool:
    return p.is_constant() or poly_gcd(p, p.derivative()).is_constant()


def _roots_in_open(p: Polynomial, lo: Fraction, hi: Fraction) -> tuple[bool, list[IsolatingInterval]]:
    """``p`` real-rooted, squarefree, with every root in ``(lo, hi)``."""
    if p.is_constant():
        return True, []
    ivs = isolate_real_roots(p)
    ok = is_real_rooted(p) and _is_squarefree(p) and _count_open(p, lo, hi) == p.degree
    return ok, ivs


def _zero_set_witnesses(lhs_label, lhs, D) -> list[Witness]:
    out: list[Witness] = [(lhs_label, lhs), ("D", D)]
    if not lhs.is_zero() and not D.is_zero():
        out.append(("sqf_" + lhs_label, squarefree_part(lhs)))
        out.append(("sqf_D", squarefree_part(D)))
        out.append(("kappa", proportional(D, lhs)))
    return out


# -- zero location --------------------------------------------------------


def verify_zero_criterion_type_ii(system: MeasureSystem, n) -> CriterionReport:
    """Zeros of ``P_n`` are exactly the ``z`` where ``n`` is not normal for ``(x - z) mu``."""
    name = "zero-ii"
    n = MultiIndex.of(n)
    check_support(system, n, Transform.all(1))
    hit = _det_if_singular(system, [n])
    if hit:
        return _singular_report(name, system, n, hit)
    P = solve_type_ii(system, n, check=False)
    D = det_H_in_z(system, n, Transform.all(1), check=False)
    if D.is_zero():
        raise InconsistencyError("transformed system degenerate for all z")
    return _report(name, system, n, _same_zero_set(P, D), _zero_set_witnesses("P", P, D))


def verify_zero_criterion_type_i(system: MeasureSystem, n, j: int) -> CriterionReport:
    """Zeros of ``A_n^{(j)}`` are exactly the ``z`` where ``n - e_j`` fails for ``(x - z) mu_j``."""
    name = "zero-i"
    n = MultiIndex.of(n)
    if n[j] < 1:
        raise HypothesisError(f"zero-i needs n_{j + 1} >= 1 at {n}")
    lower = n.minus(j)
    check_support(system, n)
    check_support(system, lower, Transform.single(j, 1))
    hit = _det_if_singular(system, [n, lower])
    if hit:
        return _singular_report(name, system, (n, j), hit)
    A = solve_type_i(system, n, check=False)[j]
    D = det_H_in_z(system, lower, Transform.single(j, 1), check=False)
    if A.is_zero() and D.is_zero():
        return _report(name, system, (n, j), False, [("A", A), ("D", D)], Verdict.DEGENERATE)
    return _report(name, system, (n, j), _same_zero_set(A, D), _zero_set_witnesses("A", A, D))


# -- interlacing ----------------------------------------------------------


def _cross_check(p: Polynomial, q: Polynomial, D: Polynomial, witnesses: list[Witness]) -> None:
    """When ``q`` is real-rooted, interlacing must coincide with ``D`` having no real zeros."""
    if q.is_zero() or p.is_zero() or not is_real_rooted(q):
        witnesses.append(("interlace", None))
        return
    result = interlace_decide(p, q)
    no_real = not D.is_zero() and count_real_roots(D) == 0
    witnesses.append(("interlace", result.verdict.value))
    witnesses.append(("D_real_zero_free", no_real))
    if bool(result) != no_real:
        raise InconsistencyError(
            f"interlacing verdict {result.verdict.value} disagrees with real zeros of D = {D}"
        )


def verify_interlace_criterion_type_ii(system: MeasureSystem, n, j: int) -> CriterionReport:
    """Zeros of ``W(P_{n+e_j}, P_n)`` against non-normality of ``n`` for ``(x - z)^2 mu``."""
    name = "interlace-ii"
    n = MultiIndex.of(n)
    upper = n.plus(j)
    check_support(system, upper)
    check_support(system, n, Transform.all(2))
    hit = _det_if_singular(system, [n, upper])
    if hit:
        return _singular_report(name, system, (n, j), hit)
    P1 = solve_type_ii(system, upper, check=False)
    P0 = solve_type_ii(system, n, check=False)
    W = wronskian([P1, P0])
    D = det_H_in_z(system, n, Transform.all(2), check=False)
    if D.is_zero():
        raise InconsistencyError("transformed system degenerate for all z")
    ok = _same_zero_set(W, D)
    witnesses = _zero_set_witnesses("W", W, D)
    witnesses += [("P_upper", P1), ("P", P0)]
    _cross_check(P1, P0, D, witnesses)
    return _report(name, system, (n, j), ok, witnesses)


def verify_interlace_criterion_neighbors(system: MeasureSystem, n, j: int, k: int) -> CriterionReport:
    """Zeros of ``W(P_{n+e_j}, P_{n+e_k})`` against non-normality of ``n`` for ``(x - z)^2 mu``."""
    name = "interlace-neighbors"
    if j == k:
        raise HypothesisError("neighbour interlacing needs j != k")
    n = MultiIndex.of(n)
    nj, nk, njk = n.plus(j), n.plus(k), n.plus(j).plus(k)
    check_support(system, njk)
    check_support(system, n, Transform.all(2))
    hit = _det_if_singular(system, [nj, nk, njk])
    if hit:
        return _singular_report(name, system, (n, j, k), hit)
    Pj = solve_type_ii(system, nj, check=False)
    Pk = solve_type_ii(system, nk, check=False)
    if proportional(Pj, Pk) is not None:
        return _report(name, system, (n, j, k), False, [("non_normal_index", njk), ("P_j", Pj), ("P_k", Pk)])
    W = wronskian([Pj, Pk])
    D = det_H_in_z(system, n, Transform.all(2), check=False)
    if D.is_zero():
        raise InconsistencyError("transformed system degenerate for all z")
    ok = _same_zero_set(W, D)
    witnesses = _zero_set_witnesses("W", W, D) + [("P_j", Pj), ("P_k", Pk)]
    _cross_check(Pj, Pk, D, witnesses)
    return _report(name, system, (n, j, k), ok, witnesses)


def verify_interlace_criterion_type_i(system: MeasureSystem, n, ell: int, j: int) -> CriterionReport:
    """Zeros of ``W(A_n^{(j)}, A_{n-e_ell}^{(j)})`` against ``n - 2e_j`` for ``(x - z)^2 mu_j``."""
    name = "interlace-i"
    n = MultiIndex.of(n)
    if n[j] < 2:
        raise HypothesisError(f"interlace-i needs n_{j + 1} >= 2 at {n}")
    if n[ell] < 1:
        raise HypothesisError(f"interlace-i needs n_{ell + 1} >= 1 at {n}")
    lower_j, lower_ell, base = n.minus(j), n.minus(ell), n.minus(j, 2)
    check_support(system, n)
    check_support(system, base, Transform.single(j, 2))
    hit = _det_if_singular(system, [n, lower_j, lower_ell])
    if hit:
        return _singular_report(name, system, (n, ell, j), hit)
    A = solve_type_i(system, n, check=False)[j]
    B = solve_type_i(system, lower_ell, check=False)[j]
    D = det_H_in_z(system, base, Transform.single(j, 2), check=False)
    index = (n, ell, j)
    if B.is_zero():
        return _report(name, system, index, False, [("A", A), ("A_lower", B), ("D", D)], Verdict.DEGENERATE)
    W = wronskian([A, B])
    if W.is_zero() or D.is_zero():
        verdict = Verdict.DEGENERATE if (W.is_zero() and D.is_zero()) else Verdict.FAIL
        return _report(name, system, index, False, [("W", W), ("D", D), ("A", A), ("A_lower", B)], verdict)
    ok = _same_zero_set(W, D)
    witnesses = _zero_set_witnesses("W", W, D) + [("A", A), ("A_lower", B)]
    _cross_check(B, A, D, witnesses)
    return _report(name, system, index, ok, witnesses)


# -- Andreief identity ----------------------------------------------------


def verify_andreief(
    measure: DiscreteMeasure,
    phis: Sequence[Polynomial],
    psis: Sequence[Polynomial],
    A: Sequence[Sequence[Fraction]] = (),
) -> CriterionReport:
    """Block determinant of integrals against the symmetrised M-fold atom sum."""
    M, N = len(phis), len(psis)
    if not N >= M >= 1:
        raise HypothesisError(f"need N >= M >= 1, got M={M}, N={N}")
    A = [[Fraction(x) for x in row] for row in A]
    if len(A) != N - M or any(len(row) != N for row in A):
        raise HypothesisError(f"A must be {N - M}x{N}")
    gram = [[measure.integrate(phi * psi) for psi in psis] for phi in phis]
    lhs = det_rational(A + gram)
    total = Fraction(0)
    for tup in permutations(measure.atoms, M):
        xs = [t for t, _ in tup]
        weight = Fraction(1)
        for _, w in tup:
            weight *= w
        lower = [[psi(x) for psi in psis] for x in xs]
        d_psi = det_rational(A + lower)
        if d_psi == 0:
            continue
        d_phi = det_rational([[phi(x) for x in xs] for phi in phis])
        total += d_psi * d_phi * weight
    rhs = total / factorial(M)
    summary = f"atoms={len(measure)}, M={M}, N={N}"
    return CriterionReport("andreief", summary, (M, N), Verdict.PASS if lhs == rhs else Verdict.FAIL,
                           (("lhs", lhs), ("rhs", rhs)))


# -- perturbation lemma ---------------------------------------------------


def verify_perturbation_lemma(system: MeasureSystem, q: Polynomial, n) -> CriterionReport:
    """Adding ``q mu_1`` to ``mu_2`` leaves ``P_n`` and ``A_n^{(2)}`` alone and shifts ``A_n^{(1)}`` by ``-q A_n^{(2)}``."""
    from .measures import perturb_second_measure

    name = "perturbation"
    n = MultiIndex.of(n)
    if system.r != 2:
        raise HypothesisError("perturbation lemma needs r = 2")
    if not q.is_zero() and n[1] > n[0] - q.degree:
        raise HypothesisError(f"lemma hypotheses not met: n_2 = {n[1]} > n_1 - deg q = {n[0] - q.degree}")
    check_support(system, n)
    base_det = det_exact(build_H(system, n, check=False))
    if base_det == 0:
        raise HypothesisError(f"lemma hypotheses not met: {n} is not normal for the base system")
    tilde = perturb_second_measure(system, q)
    tilde_det = det_exact(build_H(tilde, n, check=False))
    witnesses: list[Witness] = [("det_H", base_det), ("det_H_perturbed", tilde_det)]
    ok = tilde_det != 0
    if ok:
        P, Pt = solve_type_ii(system, n, check=False), solve_type_ii(tilde, n, check=False)
        witnesses += [("P", P), ("P_perturbed", Pt)]
        ok = P == Pt
        if n.size >= 1:
            A, At = solve_type_i(system, n, check=False), solve_type_i(tilde, n, check=False)
            witnesses += [("A", A.polys), ("A_perturbed", At.polys)]
            ok = ok and At[0] == A[0] - q * A[1] and At[1] == A[1]
    return _report(name, system, n, ok, witnesses)


# -- family corollaries ---------------------------------------------------


def verify_angelesco_zero_count(system: MeasureSystem, n) -> CriterionReport:
    """``P_n`` has exactly ``n_j`` simple zeros in each open interval."""
    name = "angelesco-count"
    if system.kind is not SystemKind.ANGELESCO:
        raise HypothesisError("angelesco-count needs an Angelesco system")
    n = MultiIndex.of(n)
    check_support(system, n)
    hit = _det_if_singular(system, [n])
    if hit:
        return _singular_report(name, system, n, hit)
    P = solve_type_ii(system, n, check=False)
    counts = [_count_open(P, iv.lo, iv.hi) if not P.is_constant() else 0 for iv in system.intervals]
    simple = _is_squarefree(P)
    ok = simple and counts == list(n) and sum(counts) == P.degree
    ivs = isolate_real_roots(P) if not P.is_constant() else []
    return _report(name, system, n, ok, [("P", P), ("counts", counts), ("simple", simple), ("intervals", ivs)])


def verify_at_zero_location(system: MeasureSystem, n) -> CriterionReport:
    """``P_n`` is real-rooted with simple zeros inside the open AT interval."""
    name = "at-location"
    if system.kind is not SystemKind.AT_CAUCHY_VANDERMONDE:
        raise HypothesisError("at-location needs an AT Cauchy-Vandermonde system")
    n = MultiIndex.of(n)
    if not at_chebyshev_index(n):
        raise HypothesisError(f"weights 1/(b_j - x) are not a Chebyshev system at {n}")
    check_support(system, n)
    hit = _det_if_singular(system, [n])
    if hit:
        return _singular_report(name, system, n, hit)
    P = solve_type_ii(system, n, check=False)
    iv = system.intervals[0]
    ok, ivs = _roots_in_open(P, iv.lo, iv.hi)
    return _report(name, system, n, ok, [("P", P), ("intervals", ivs)])


def _nikishin_regime(n: MultiIndex, j: int) -> bool:
    if j == 0:
        return n[0] + 1 <= n[1] and n[0] != 0
    if j == 1:
        return n[0] + 1 >= n[1] and n[1] != 0
    return False


def _require_nikishin2(system: MeasureSystem) -> None:
    if system.kind is not SystemKind.NIKISHIN or system.r != 2:
        raise HypothesisError("criterion needs a Nikishin system with r = 2")


def verify_nikishin_type_i_location(system: MeasureSystem, n, j: int, enforce_regime: bool = True) -> CriterionReport:
    """``A_n^{(j)}`` real-rooted with simple zeros inside the open second interval.

    With ``enforce_regime=False`` the same check runs outside the theorem's
    cone; such reports are negative controls and may legitimately fail.
    """
    name = "nikishin-location"
    _require_nikishin2(system)
    n = MultiIndex.of(n)
    if n[j] < 1:
        raise HypothesisError(f"need n_{j + 1} >= 1")
    if enforce_regime and not _nikishin_regime(n, j):
        raise HypothesisError(f"outside theorem hypotheses: index {n}, slot {j + 1}")
    check_support(system, n)
    hit = _det_if_singular(system, [n])
    if hit:
        return _singular_report(name, system, (n, j), hit)
    A = solve_type_i(system, n, check=False)[j]
    if A.is_zero():
        return _report(name, system, (n, j), False, [("A", A)])
    iv = system.intervals[1]
    ok, ivs = _roots_in_open(A, iv.lo, iv.hi)
    real = A.is_constant() or is_real_rooted(A)
    return _report(name, system, (n, j), ok, [("A", A), ("real_rooted", real), ("intervals", ivs)])


def verify_nikishin_type_i_interlacing(system: MeasureSystem, n, j: int, enforce_regime: bool = True) -> CriterionReport:
    """``A_n^{(j)}``, ``A_{n-e_1}^{(j)}``, ``A_{n-e_2}^{(j)}`` pairwise interlace."""
    name = "nikishin-interlacing"
    _require_nikishin2(system)
    n = MultiIndex.of(n)
    if enforce_regime and not (n[0] + 1 <= n[1] if j == 0 else n[0] + 1 >= n[1]):
        raise HypothesisError(f"outside theorem hypotheses: index {n}, slot {j + 1}")
    if n[0] < 1 or n[1] < 1:
        raise HypothesisError(f"n - e_1 and n - e_2 must be non-negative at {n}")
    indices = [n, n.minus(0), n.minus(1)]
    for m in indices:
        check_support(system, m)
    hit = _det_if_singular(system, indices)
    if hit:
        return _singular_report(name, system, (n, j), hit)
    members = [solve_type_i(system, m, check=False)[j] for m in indices]
    witnesses: list[Witness] = [("A", members[0]), ("A_minus_e1", members[1]), ("A_minus_e2", members[2])]
    ok = True
    for a in members:
        if not a.is_constant() and not is_real_rooted(a):
            ok = False
            witnesses.append(("not_real_rooted", a))
    if ok:
        for a_i, b_i in ((0, 1), (0, 2), (1, 2)):
            a, b = members[a_i], members[b_i]
            if a.is_constant() or b.is_constant():
                continue
            p, q = (a, b) if a.degree <= b.degree else (b, a)
            result = interlace_decide(p, q)
            witnesses.append((f"pair_{a_i}{b_i}", result.verdict.value))
            ok = ok and bool(result)
    return _report(name, system, (n, j), ok, witnesses)


# -- higher Wronskians ----------------------------------------------------


def _path_polys(system: MeasureSystem, path: IncreasingPath, kind: str, j: int | None):
    indices = path.indices()
    if kind == "II":
        return indices, [solve_type_ii(system, m, check=False) for m in indices]
    return indices, [solve_type_i(system, m, check=False)[j] for m in indices]


def _check_kind(kind: str, j: int | None) -> str:
    kind = kind.upper()
    if kind not in ("I", "II"):
        raise HypothesisError("type must be 'I' or 'II'")
    if kind == "I" and j is None:
        raise HypothesisError("type I needs a slot j")
    return kind


def higher_wronskian_index(path: IncreasingPath, kind: str, j: int | None) -> tuple[MultiIndex, Transform]:
    """Index and transform whose non-normality locus matches the path Wronskian.

    Type II uses the first path index with ``(x - z)^ell`` on every measure.
    Type I uses the last path index minus ``ell e_j`` with ``(x - z)^ell`` on
    ``mu_j``; for ``ell = 1`` and ``ell = 2`` this is the index of the
    dedicated zero and interlacing criteria.
    """
    ell = path.length
    if kind == "II":
        return path.start, Transform.all(ell)
    last = path.indices()[-1]
    if last[j] < ell:
        raise HypothesisError(f"type I path needs (n_last)_{j + 1} >= {ell}")
    return last.minus(j, ell), Transform.single(j, ell)


def verify_higher_wronskian(system: MeasureSystem, path: IncreasingPath, kind: str = "II", j: int | None = None) -> CriterionReport:
    """Zeros of the path Wronskian against non-normality of the degree-``ell`` transform."""
    kind = _check_kind(kind, j)
    name = f"higher-wronskian-{kind.lower()}"
    indices = path.indices()
    if kind == "I" and path.start[j] < 1:
        raise HypothesisError(f"type I path needs (n_1)_{j + 1} >= 1")
    base, transform = higher_wronskian_index(path, kind, j)
    for m in indices:
        check_support(system, m)
    check_support(system, base, transform)
    label = (str(path), j)
    hit = _det_if_singular(system, indices)
    if hit:
        return _singular_report(name, system, label, hit)
    _, polys = _path_polys(system, path, kind, j)
    W = wronskian(polys)
    D = det_H_in_z(system, base, transform, check=False)
    if W.is_zero() or D.is_zero():
        verdict = Verdict.DEGENERATE if (W.is_zero() and D.is_zero()) else Verdict.FAIL
        return _report(name, system, label, False, [("W", W), ("D", D)], verdict)
    return _report(name, system, label, _same_zero_set(W, D),
                   _zero_set_witnesses("W", W, D) + [("base_index", base), ("transform", str(transform))])


def verify_even_wronskian_nonvanishing(system: MeasureSystem, path: IncreasingPath, kind: str = "II", j: int | None = None) -> CriterionReport:
    """For even path length the Wronskian has no real zeros."""
    kind = _check_kind(kind, j)
    name = f"even-wronskian-{kind.lower()}"
    if path.length % 2:
        raise HypothesisError(f"even-wronskian needs an even path length, got {path.length}")
    allowed = (
        {SystemKind.ANGELESCO, SystemKind.AT_CAUCHY_VANDERMONDE, SystemKind.NIKISHIN}
        if kind == "II" else {SystemKind.ANGELESCO}
    )
    if system.kind not in allowed:
        raise HypothesisError(f"even-wronskian type {kind} not covered for {system.kind.value} systems")
    indices = path.indices()
    for m in indices:
        check_support(system, m)
    label = (str(path), j)
    hit = _det_if_singular(system, indices)
    if hit:
        return _singular_report(name, system, label, hit)
    _, polys = _path_polys(system, path, kind, j)
    W = wronskian(polys)
    if W.is_zero():
        return _report(name, system, label, False, [("W", W)])
    k = count_real_roots(W)
    return _report(name, system, label, k == 0, [("W", W), ("real_zeros", k)])


# -- quasi-orthogonality --------------------------------------------------


def verify_quasiorthogonality(measure: DiscreteMeasure, p: Polynomial, n_conditions: int) -> CriterionReport:
    """A polynomial orthogonal to ``x^k``, ``k < n``, has at least ``n`` zeros inside the interval."""
    name = "quasi-orthogonality"
    iv = measure.support_interval
    if iv is None:
        raise HypothesisError("quasi-orthogonality needs a measure with an interval")
    if not measure.is_sign_definite():
        raise HypothesisError("quasi-orthogonality needs a sign-definite measure")
    if p.is_zero():
        raise HypothesisError("p is the zero polynomial")
    for k in range(n_conditions):
        if measure.integrate(p * Polynomial.monomial(k)) != 0:
            raise HypothesisError(f"p is not quasi-orthogonal (fails at k = {k})")
    inside = 0 if p.is_constant() else _count_open(p, iv.lo, iv.hi)
    summary = f"atoms={len(measure)}, interval=[{iv.lo}, {iv.hi}]"
    return CriterionReport(name, summary, n_conditions, Verdict.PASS if inside >= n_conditions else Verdict.FAIL,
                           (("p", p), ("zeros_inside", inside)))


# -- probes (reported, never asserted) ------------------------------------


def probe_constant_multiple(system: MeasureSystem, n) -> dict:
    """Compare the degree-1 transform determinant with ``P_n`` coefficientwise.

    Returns the proportionality constant (``None`` when only the zero sets
    agree) together with ``(-1)^|n| det H_n`` for comparison.
    """
    n = MultiIndex.of(n)
    P = solve_type_ii(system, n, check=False)
    D = det_H_in_z(system, n, Transform.all(1), check=False)
    kappa = proportional(D, P)
    reference = (-1) ** n.size * det_exact(build_H(system, n, check=False))
    return {"index": n, "kappa": kappa, "signed_det_H": reference, "matches": kappa == reference}


def probe_at_sign(system: MeasureSystem, n, trials: int = 20, seed: int = 0) -> dict:
    """Sampled sign of the Chebyshev determinant next to the sign of ``det H_n``."""
    import random

    n = MultiIndex.of(n)
    if system.kind is not SystemKind.AT_CAUCHY_VANDERMONDE:
        raise HypothesisError("probe_at_sign needs an AT Cauchy-Vandermonde system")
    det_h = det_exact(build_H(system, n, check=False))
    iv = system.intervals[0]
    rng = random.Random(seed)
    signs = set()
    for _ in range(trials):
        ticks = sorted(rng.sample(range(1, 10**6), n.size))
        xs = [iv.lo + (iv.hi - iv.lo) * Fraction(t, 10**6) for t in ticks]
        d = chebyshev_determinant(system.poles, n, xs)
        signs.add((d > 0) - (d < 0))
    det_sign = (det_h > 0) - (det_h < 0)
    return {"index": n, "det_sign": det_sign, "sampled_U_signs": sorted(signs), "agree": signs == {det_sign}}
