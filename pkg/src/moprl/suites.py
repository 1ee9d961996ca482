"""Seeded randomized suites over the three generated families.

Each runner returns a :class:`SuiteResult` counting checks and collecting
failing reports.  Systems are derived from ``(seed, family, i)`` alone, so a
suite can be re-run or narrowed to a single system reproducibly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .criteria import (
    CriterionReport,
    IncreasingPath,
    probe_constant_multiple,
    Verdict,
    _nikishin_regime,
    verify_andreief,
    verify_angelesco_zero_count,
    verify_at_zero_location,
    verify_even_wronskian_nonvanishing,
    verify_higher_wronskian,
    verify_interlace_criterion_neighbors,
    verify_interlace_criterion_type_i,
    verify_interlace_criterion_type_ii,
    verify_nikishin_type_i_interlacing,
    verify_nikishin_type_i_location,
    verify_perturbation_lemma,
    verify_zero_criterion_type_i,
    verify_zero_criterion_type_ii,
)
from .errors import InconsistencyError
from .generators import (
    random_andreief,
    random_angelesco,
    random_at,
    random_nikishin,
    random_path,
    random_polynomial,
    supported_indices,
)
from .measures import MeasureSystem, SystemKind, at_chebyshev_index, chebyshev_sample_check
from .mop_solver import MultiIndex, Transform, build_H, det_exact, has_support
from .poly_core import Interlacing, Polynomial, interlace_decide

MAX_SIZE = 6


@dataclass
class SuiteResult:
    name: str
    checked: int = 0
    passed: int = 0
    failures: list[Any] = field(default_factory=list)
    notes: dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.checked > 0 and self.passed == self.checked

    def record(self, ok: bool, detail: Any = None) -> None:
        self.checked += 1
        if ok:
            self.passed += 1
        elif len(self.failures) < 20:
            self.failures.append(detail)

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        extra = "".join(f", {k}={v}" for k, v in sorted(self.notes.items()))
        return f"{status} {self.name}: {self.passed}/{self.checked}{extra}"


def _rng(seed: int, family: str, i: int) -> random.Random:
    return random.Random(f"{seed}:{family}:{i}")


def angelesco_system(seed: int, i: int) -> MeasureSystem:
    rng = _rng(seed, "angelesco", i)
    r = rng.choice([1, 2, 2, 3])
    return random_angelesco(rng, r, [rng.randint(2, 6) for _ in range(r)])


def nikishin_system(seed: int, i: int) -> MeasureSystem:
    rng = _rng(seed, "nikishin", i)
    return random_nikishin(rng, rng.randint(3, 8), rng.randint(3, 8))


def at_system(seed: int, i: int) -> MeasureSystem:
    rng = _rng(seed, "at", i)
    return random_at(rng, rng.choice([2, 2, 3]), rng.randint(3, 8))


FAMILIES: dict[str, Callable[[int, int], MeasureSystem]] = {
    "angelesco": angelesco_system,
    "nikishin": nikishin_system,
    "at": at_system,
}


def family_indices(S: MeasureSystem, max_size: int, transform: Transform | None = None) -> list[MultiIndex]:
    """Supported indices, restricted to Chebyshev indices for AT systems."""
    out = supported_indices(S, max_size, transform)
    if S.kind is SystemKind.AT_CAUCHY_VANDERMONDE:
        out = [n for n in out if at_chebyshev_index(n)]
    return out


def _admissible(S: MeasureSystem, n: MultiIndex, transform: Transform | None = None) -> bool:
    if S.kind is SystemKind.AT_CAUCHY_VANDERMONDE and not at_chebyshev_index(n):
        return False
    return has_support(S, n, transform)


def _sample(rng: random.Random, items: list, k: int | None) -> list:
    """``k`` random items, or all of them when ``k`` is ``None``."""
    return items if k is None or len(items) <= k else rng.sample(items, k)


def _tally(result: SuiteResult, rep: CriterionReport, tag: Any) -> None:
    result.record(rep.passed, (tag, rep.name, str(rep.index), rep.verdict.value))


def zero_location_suite(seed: int = 0, systems: int = 200) -> SuiteResult:
    """Type II and type I zero criteria on every supported index ``|n| <= 6``."""
    out = SuiteResult("zero-location")
    for i in range(systems):
        S = angelesco_system(seed, i)
        for n in supported_indices(S, MAX_SIZE):
            if n.size and has_support(S, n, Transform.all(1)):
                _tally(out, verify_zero_criterion_type_ii(S, n), i)
            for j in range(S.r):
                if n[j] >= 1 and has_support(S, n.minus(j), Transform.single(j, 1)):
                    _tally(out, verify_zero_criterion_type_i(S, n, j), i)
    return out


def _record_interlace(result: SuiteResult, rep: CriterionReport, tag: Any) -> None:
    """A pass also needs any real-rooted pair confirmed to interlace."""
    verdict = rep.witness("interlace") if rep.passed else None
    ok = rep.passed and verdict in (None, Interlacing.INTERLACE.value)
    result.record(ok, (tag, rep.name, str(rep.index), rep.verdict.value, verdict))


def interlacing_suite(seed: int = 0, systems: int = 200, per_system: int | None = None) -> SuiteResult:
    """Type II, neighbour and type I interlacing criteria on every admissible index.

    ``per_system`` caps each kind at a random sample, for quick runs.

    Every real-rooted pair must also be confirmed to interlace strictly,
    since Angelesco transforms stay Angelesco for real ``z``.
    """
    out = SuiteResult("interlacing")
    for i in range(systems):
        S = angelesco_system(seed, i)
        rng = _rng(seed, "interlacing", i)
        base = [n for n in supported_indices(S, MAX_SIZE - 1) if has_support(S, n, Transform.all(2))]
        ii = [(n, j) for n in base for j in range(S.r) if has_support(S, n.plus(j))]
        nb = [(n, j, k) for n in base for j in range(S.r) for k in range(j + 1, S.r)
              if has_support(S, n.plus(j).plus(k))]
        ti = [(n, ell, j) for n in supported_indices(S, MAX_SIZE) for j in range(S.r) for ell in range(S.r)
              if n[j] >= 2 and n[ell] >= 1 and has_support(S, n.minus(j, 2), Transform.single(j, 2))]
        for n, j in _sample(rng, ii, per_system):
            _record_interlace(out, verify_interlace_criterion_type_ii(S, n, j), i)
        half = None if per_system is None else max(1, per_system // 2)
        for n, j, k in _sample(rng, nb, half):
            _record_interlace(out, verify_interlace_criterion_neighbors(S, n, j, k), i)
        for n, ell, j in _sample(rng, ti, half):
            _record_interlace(out, verify_interlace_criterion_type_i(S, n, ell, j), i)
    if per_system is not None:
        out.notes["sampled_per_system"] = per_system
    return out


def angelesco_count_suite(seed: int = 0, systems: int = 200) -> SuiteResult:
    out = SuiteResult("angelesco-count")
    for i in range(systems):
        S = angelesco_system(seed, i)
        for n in supported_indices(S, MAX_SIZE):
            _tally(out, verify_angelesco_zero_count(S, n), i)
    return out


def nikishin_suite(seed: int = 0, systems: int = 100) -> SuiteResult:
    """In-regime location and interlacing of type I Nikishin polynomials.

    Out-of-regime indices run the same checks as negative controls; their
    verdicts are tallied in ``notes`` and never counted toward the result.
    """
    out = SuiteResult("nikishin-type-i")
    controls = {v.value: 0 for v in Verdict}
    example = None
    for i in range(systems):
        S = nikishin_system(seed, i)
        for n in supported_indices(S, MAX_SIZE):
            for j in range(2):
                if n[j] < 1:
                    continue
                if _nikishin_regime(n, j):
                    _tally(out, verify_nikishin_type_i_location(S, n, j), i)
                else:
                    rep = verify_nikishin_type_i_location(S, n, j, enforce_regime=False)
                    controls[rep.verdict.value] += 1
                    if example is None and not rep.passed:
                        example = (i, str(n), j + 1)
                lowers_ok = n[0] >= 1 and n[1] >= 1 and has_support(S, n)
                in_cone = n[0] + 1 <= n[1] if j == 0 else n[0] + 1 >= n[1]
                if lowers_ok and in_cone:
                    _tally(out, verify_nikishin_type_i_interlacing(S, n, j), i)
    out.notes["controls"] = controls
    out.notes["control_example"] = example
    return out


def perfectness_suite(seed: int = 0, counts: dict[str, int] | None = None) -> SuiteResult:
    """Every supported index is normal; Angelesco determinants are positive."""
    counts = counts or {"angelesco": 200, "nikishin": 100, "at": 100}
    out = SuiteResult("perfectness")
    for family, total in counts.items():
        for i in range(total):
            S = FAMILIES[family](seed, i)
            for n in family_indices(S, MAX_SIZE):
                d = det_exact(build_H(S, n))
                ok = d > 0 if family == "angelesco" else d != 0
                out.record(ok, (family, i, str(n), d))
    return out


def at_suite(seed: int = 0, systems: int = 100, per_system: int = 3) -> SuiteResult:
    """Chebyshev sampling, zero location and sampled type II interlacing for AT systems."""
    out = SuiteResult("at-family")
    for i in range(systems):
        S = at_system(seed, i)
        rng = _rng(seed, "at-interlacing", i)
        indices = family_indices(S, MAX_SIZE)
        for n in indices:
            out.record(chebyshev_sample_check(S, n, 10, seed=i), (i, "chebyshev", str(n)))
            _tally(out, verify_at_zero_location(S, n), i)
        pairs = [(n, j) for n in family_indices(S, MAX_SIZE - 1, Transform.all(2))
                 for j in range(S.r) if _admissible(S, n.plus(j))]
        for n, j in _sample(rng, pairs, per_system):
            _record_interlace(out, verify_interlace_criterion_type_ii(S, n, j), i)
    return out


def andreief_suite(seed: int = 0, instances: int = 100) -> SuiteResult:
    out = SuiteResult("andreief")
    nonzero = 0
    for i in range(instances):
        measure, phis, psis, A = random_andreief(_rng(seed, "andreief", i))
        rep = verify_andreief(measure, phis, psis, A)
        nonzero += rep.witness("lhs") != 0
        _tally(out, rep, i)
    out.notes["nonzero_sides"] = nonzero
    return out


def perturbation_suite(seed: int = 0, instances: int = 50) -> SuiteResult:
    """Random two-measure Angelesco or Nikishin bases with ``n_2 <= n_1 - deg q``."""
    out = SuiteResult("perturbation")
    i = 0
    attempt = 0
    while i < instances:
        rng = _rng(seed, "perturbation", attempt)
        attempt += 1
        if rng.random() < 0.5:
            S = random_angelesco(rng, 2, [rng.randint(3, 7), rng.randint(2, 6)])
        else:
            S = random_nikishin(rng, rng.randint(4, 8), rng.randint(3, 8))
        candidates = [n for n in supported_indices(S, MAX_SIZE) if n[0] >= 1 and n[1] <= n[0]]
        if not candidates:
            continue
        n = rng.choice(candidates)
        dq = rng.randint(0, n[0] - n[1])
        q = random_polynomial(rng, dq) if rng.random() < 0.9 else Polynomial.constant(0)
        _tally(out, verify_perturbation_lemma(S, q, n), (attempt - 1, str(n), str(q)))
        i += 1
    return out


def _path_candidates(S: MeasureSystem, rng: random.Random, ell: int, kind: str, tries: int = 40):
    """Random supported paths of length ``ell`` for the given type."""
    for _ in range(tries):
        start = rng.choice(family_indices(S, MAX_SIZE - ell + 1))
        path = random_path(rng, start, ell)
        indices = path.indices()
        if not all(_admissible(S, m) for m in indices) or indices[-1].size == 0:
            continue
        if kind == "II":
            if has_support(S, path.start, Transform.all(ell)):
                return path, None
            continue
        slots = [j for j in range(S.r) if path.start[j] >= 1 and indices[-1][j] >= ell
                 and has_support(S, indices[-1].minus(j, ell), Transform.single(j, ell))]
        if slots:
            return path, rng.choice(slots)
    return None


def higher_wronskian_suite(seed: int = 0, per_family: int = 30) -> SuiteResult:
    """Even lengths 2 and 4: no real zeros, and zero-set equality with the transform."""
    out = SuiteResult("higher-wronskian")
    skipped = 0
    for family, make in FAMILIES.items():
        kinds = ["II", "I"] if family == "angelesco" else ["II"]
        for i in range(per_family):
            S = make(seed, 1000 + i)
            rng = _rng(seed, "paths-" + family, i)
            for ell in (2, 4):
                for kind in kinds:
                    found = _path_candidates(S, rng, ell, kind)
                    if found is None:
                        skipped += 1
                        continue
                    path, j = found
                    tag = (family, i, str(path), kind, j)
                    _tally(out, verify_even_wronskian_nonvanishing(S, path, kind, j), tag)
                    _tally(out, verify_higher_wronskian(S, path, kind, j), tag)
    out.notes["no_supported_path"] = skipped
    return out


def _random_pair(rng: random.Random) -> tuple[Polynomial, Polynomial, bool | None]:
    """``(p, q, expected)`` with ``q`` real-rooted; ``expected`` is known by construction or ``None``."""
    ticks = sorted(rng.sample(range(-40, 41), rng.randint(1, 5)))
    roots = [Fraction(t, 8) for t in ticks]
    q = Polynomial.from_roots(roots) * Fraction(rng.choice([-3, -1, 1, 2]))
    mode = rng.randrange(4)
    if mode == 0:
        # one root strictly between consecutive roots of q, plus optionally one outside
        inner = [(a + b) / 2 for a, b in zip(roots, roots[1:])]
        if rng.random() < 0.5:
            inner.append(roots[-1] + 1 if rng.random() < 0.5 else roots[0] - 1)
        p = Polynomial.from_roots(inner) if inner else Polynomial.constant(1)
        return p * Fraction(rng.choice([1, -2])), q, True
    if mode == 1:
        # two roots of p inside one gap
        a = roots[0] - 1
        p = Polynomial.from_roots([a - Fraction(1, 2), a - Fraction(1, 4)] + roots[1:])
        return p, q, False
    if mode == 2:
        return q + Polynomial.constant(rng.randint(-2, 2)) * q.derivative(), q, None
    return random_polynomial(rng, rng.randint(0, 5)), q, None


def consistency_suite(seed: int = 0, pairs: int = 1000, per_family: int = 10) -> SuiteResult:
    """Route agreement of interlace_decide and path checks of length 1 and 2."""
    out = SuiteResult("consistency")
    rng = _rng(seed, "pairs", 0)
    constructed = 0
    for k in range(pairs):
        p, q, expected = _random_pair(rng)
        if p.is_zero():
            p = Polynomial.constant(1)
        try:
            result = interlace_decide(p, q)
        except InconsistencyError as exc:
            out.record(False, ("routes", k, str(exc)))
            continue
        if expected is not None:
            constructed += 1
            out.record(bool(result) == expected, ("constructed", k, str(p), str(q)))
        else:
            out.record(True)
    out.notes["constructed_pairs"] = constructed
    reproduced = 0
    for family, make in FAMILIES.items():
        for i in range(per_family):
            S = make(seed, 2000 + i)
            prng = _rng(seed, "short-" + family, i)
            for n in _sample(prng, family_indices(S, MAX_SIZE - 1), 3):
                reproduced += _compare_short_paths(S, n, out, (family, i, str(n)))
    out.notes["path_comparisons"] = reproduced
    return out


def _same(a: CriterionReport, b: CriterionReport, a_label: str, b_label: str, sign: int = 1) -> bool:
    if a.verdict is not b.verdict:
        return False
    if a.passed:
        return a.witness("D") == b.witness("D") and a.witness("W") == sign * b.witness(b_label)
    return True


def _compare_short_paths(S: MeasureSystem, n: MultiIndex, out: SuiteResult, tag) -> int:
    done = 0
    if n.size and has_support(S, n, Transform.all(1)):
        a = verify_higher_wronskian(S, IncreasingPath(n), "II")
        b = verify_zero_criterion_type_ii(S, n)
        out.record(_same(a, b, "W", "P"), tag + ("ell=1 II",))
        done += 1
    for j in range(S.r):
        up = n.plus(j)
        if _admissible(S, up) and has_support(S, n, Transform.all(2)):
            a = verify_higher_wronskian(S, IncreasingPath(n, (j,)), "II")
            b = verify_interlace_criterion_type_ii(S, n, j)
            # W(P_n, P_{n+e_j}) = -W(P_{n+e_j}, P_n)
            out.record(_same(a, b, "W", "W", -1), tag + ("ell=2 II", j))
            done += 1
        if n[j] >= 1 and has_support(S, n) and has_support(S, n.minus(j), Transform.single(j, 1)):
            a = verify_higher_wronskian(S, IncreasingPath(n), "I", j)
            b = verify_zero_criterion_type_i(S, n, j)
            out.record(_same(a, b, "W", "A"), tag + ("ell=1 I", j))
            done += 1
        for ell in range(S.r):
            if n[j] >= 2 and n[ell] >= 1 and has_support(S, n) \
                    and has_support(S, n.minus(j, 2), Transform.single(j, 2)):
                a = verify_higher_wronskian(S, IncreasingPath(n.minus(ell), (ell,)), "I", j)
                b = verify_interlace_criterion_type_i(S, n, ell, j)
                out.record(_same(a, b, "W", "W", -1), tag + ("ell=2 I", j, ell))
                done += 1
    return done


def conjecture_probe(seed: int = 0, systems: int = 200) -> dict:
    """How often the degree-1 transform determinant is a constant multiple of ``P_n``.

    Zero-set equality only asks for proportional squarefree parts; this
    counts the stronger coefficientwise relation ``D = kappa P_n`` and how
    often ``kappa = (-1)^|n| det H_n``.  Reported, never asserted.
    """
    total = multiple = signed = 0
    for i in range(systems):
        S = angelesco_system(seed, i)
        for n in supported_indices(S, MAX_SIZE):
            if n.size == 0 or not has_support(S, n, Transform.all(1)):
                continue
            res = probe_constant_multiple(S, n)
            total += 1
            multiple += res["kappa"] is not None
            signed += res["matches"]
    return {"indices": total, "constant_multiple": multiple, "kappa_is_signed_det": signed}
