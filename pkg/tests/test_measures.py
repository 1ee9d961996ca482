from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import measure, poly
from moprl.errors import MeasureError, NotNormalError
from moprl.linalg import bareiss_det, det_rational, solve_rational
from moprl.measures import (
    DiscreteMeasure,
    Interval,
    SystemKind,
    at_chebyshev_index,
    chebyshev_determinant,
    chebyshev_sample_check,
    christoffel1,
    christoffel2,
    christoffel_abs2,
    christoffel_pow,
    m_function_eval,
    make_angelesco,
    make_at_cauchy,
    make_explicit,
    make_nikishin,
    moment,
    moments,
    nikishin_bracket,
    perturb_second_measure,
)

SYM = measure([(-1, "1/3"), (0, "1/3"), (1, "1/3")], (-1, 1))
S1 = measure([("1/4", "1/2"), ("3/4", "1/2")], (0, 1))
S2 = measure([(2, "1/2"), (3, "1/2")], (2, 3))

small = st.fractions(min_value=-3, max_value=3, max_denominator=7)


@st.composite
def measures(draw, min_atoms=1, max_atoms=6):
    pts = draw(st.lists(small, min_size=min_atoms, max_size=max_atoms, unique=True))
    ws = draw(st.lists(small.filter(lambda w: w != 0), min_size=len(pts), max_size=len(pts)))
    return DiscreteMeasure(tuple(zip(pts, ws)))


# -- exact linear algebra --------------------------------------------------


def test_determinants():
    assert det_rational([[1, F(-1, 2)], [1, F(1, 2)]]) == 1
    assert det_rational([[1, 1], [1, 1]]) == 0
    assert det_rational([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n), min_size=n, max_size=n)))
@settings(max_examples=60)
def test_det_matches_sympy_and_bareiss(rows):
    sympy = pytest.importorskip("sympy")
    expected = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows]).det()
    assert det_rational(rows) == F(int(sympy.fraction(expected)[0]), int(sympy.fraction(expected)[1]))
    assert bareiss_det([[F(x) for x in r] for r in rows]) == det_rational(rows)


def test_solve_and_singular():
    assert solve_rational([[1, 1], [F(-1, 2), F(1, 2)]], [0, 1]) == [-1, 1]
    with pytest.raises(NotNormalError, match="singular"):
        solve_rational([[1, 2], [2, 4]], [1, 1])


# -- measures ----------------------------------------------------------------


def test_measure_validation():
    with pytest.raises(MeasureError):
        measure([(0, 1), (0, 2)])
    with pytest.raises(MeasureError):
        measure([(0, 0)])
    with pytest.raises(MeasureError):
        measure([(2, 1)], (0, 1))
    with pytest.raises(MeasureError):
        Interval(F(1), F(1))


def test_atoms_sorted_and_sign():
    m = measure([(1, 1), (-1, 2)])
    assert m.points == (-1, 1)
    assert m.is_sign_definite() and m.sign() == 1
    assert not measure([(0, 1), (1, -1)]).is_sign_definite()


def test_moment_examples():
    assert moment(SYM, 2) == F(2, 3)
    assert moment(SYM, 0) == 1
    assert moment(SYM, 3) == 0
    assert moments(S1, 3) == [1, F(1, 2), F(5, 16)]


def test_christoffel_examples():
    c = christoffel1(SYM, 2)
    assert c.weights == (-1, F(-2, 3), F(-1, 3))
    assert moment(c, 0) == -2
    assert christoffel1(SYM, 0).points == (-1, 1)
    two = christoffel2(measure([(0, 1), (1, 1)]), 2)
    assert two.weights == (4, 1)
    assert christoffel2(SYM, 1).points == (-1, 0)


def test_christoffel_abs2():
    assert christoffel_abs2(measure([(0, 1)]), 0, 1).weights == (1,)
    assert christoffel_abs2(measure([(1, "1/2")]), 0, 1).weights == (1,)
    assert christoffel_abs2(SYM, F(1, 3), 2).is_sign_definite()
    with pytest.raises(MeasureError, match="use christoffel2"):
        christoffel_abs2(SYM, 0, 0)


@given(measures(), small)
@settings(max_examples=60)
def test_christoffel_moment_shift(m, z0):
    c = christoffel1(m, z0)
    for k in range(21):
        assert moment(c, k) == moment(m, k + 1) - z0 * moment(m, k)
    assert christoffel2(m, z0) == christoffel1(christoffel1(m, z0), z0)
    assert christoffel_pow(m, z0, 3) == christoffel1(christoffel2(m, z0), z0)


@given(measures(), small, small)
@settings(max_examples=60)
def test_m_function_identity(m, z0, x):
    if x in m.points:
        return
    lhs = sum((w * (t - z0) / (t - x) for t, w in m.atoms), F(0))
    assert lhs == moment(m, 0) + (x - z0) * m_function_eval(m, x)


def test_m_function_examples():
    assert m_function_eval(S2, F(1, 4)) == F(36, 77)
    assert m_function_eval(S2, F(3, 4)) == F(28, 45)
    assert m_function_eval(measure([(5, 3)]), 2) == 1
    with pytest.raises(MeasureError, match="pole of m-function"):
        m_function_eval(S2, 2)


def test_nikishin_bracket():
    b = nikishin_bracket(S1, S2)
    assert b.atoms == ((F(1, 4), F(18, 77)), (F(3, 4), F(14, 45)))
    far = nikishin_bracket(S1, measure([(10, 2)], (9, 11)))
    assert far.weights == tuple(F(1, 2) * 2 / (10 - t) for t in S1.points)
    with pytest.raises(MeasureError, match="not a Nikishin pair"):
        nikishin_bracket(S1, measure([(F(1, 2), 1)], (0, 2)))
    with pytest.raises(MeasureError, match="bracket undefined at common point"):
        nikishin_bracket(measure([(1, 1)], (0, 1)), measure([(1, 1)], (1, 2)))


def test_bracket_sign_definite():
    left = measure([(F(k, 9), F(k, 3)) for k in range(1, 9)], (0, 1))
    for s2 in (S2, measure([(-2, 1), (-1, 3)], (-2, -1))):
        assert nikishin_bracket(left, s2).is_sign_definite()


# -- system constructors ------------------------------------------------------


def test_make_angelesco(angelesco):
    assert angelesco.kind is SystemKind.ANGELESCO
    assert angelesco.intervals == (Interval(F(-1), F(0)), Interval(F(0), F(1)))
    assert make_angelesco([SYM]).r == 1
    with pytest.raises(MeasureError):
        make_angelesco([S1, measure([(F(1, 2), 1)], (0, 1))])
    with pytest.raises(MeasureError):
        make_angelesco([measure([(0, 1), (1, -1)], (0, 1))])


def test_make_angelesco_orders_intervals():
    sys = make_angelesco([S2, S1])
    assert [iv.lo for iv in sys.intervals] == [0, 2]


@given(st.integers(-6, 6), st.integers(1, 4), st.integers(-6, 6), st.integers(1, 4))
def test_angelesco_rejects_exactly_overlaps(a, la, b, lb):
    i1, i2 = Interval(F(a), F(a + la)), Interval(F(b), F(b + lb))
    m1 = measure([(F(2 * a + la, 2), 1)], (i1.lo, i1.hi))
    m2 = measure([(F(2 * b + lb, 2), 1)], (i2.lo, i2.hi))
    overlap = max(i1.lo, i2.lo) < min(i1.hi, i2.hi)
    if overlap:
        with pytest.raises(MeasureError):
            make_angelesco([m1, m2])
    else:
        assert make_angelesco([m1, m2]).r == 2


def test_make_at_cauchy(at_example):
    assert at_example.measures[0].weights == (F(1, 4), F(1, 6), F(1, 4))
    assert at_example.measures[1].weights == (F(1, 6), F(1, 10), F(1, 8))
    base = at_example.base
    assert make_at_cauchy(base, [2]).measures[0].is_sign_definite()
    with pytest.raises(MeasureError):
        make_at_cauchy(base, [F(1, 2)])
    with pytest.raises(MeasureError):
        make_at_cauchy(base, [2, 2])
    with pytest.raises(MeasureError):
        make_at_cauchy(base, [-1, 2])


def test_chebyshev_checks(at_example):
    assert chebyshev_sample_check(at_example, (1, 1), 100)
    r1 = make_at_cauchy(at_example.base, [2])
    assert all(chebyshev_sample_check(r1, (k,), 20, seed=k) for k in range(1, 5))
    assert chebyshev_determinant([F(2)], [2], [F(0), F(1, 2)]) != 0


def test_cauchy_vandermonde_index_restriction(at_example):
    assert at_chebyshev_index((1, 1)) and at_chebyshev_index((4, 1)) and at_chebyshev_index((1, 1, 3))
    assert not at_chebyshev_index((2, 2))
    # x/(b - x) = b/(b - x) - 1 makes the (2,2) functions linearly dependent
    assert chebyshev_determinant([F(2), F(3)], [2, 2], [F(0), F(1, 4), F(1, 2), F(3, 4)]) == 0
    assert not chebyshev_sample_check(at_example, (2, 2), 5)


def test_make_nikishin(nikishin_small):
    assert nikishin_small.kind is SystemKind.NIKISHIN
    assert nikishin_small.measures[1].weights == (F(18, 77), F(14, 45))
    assert nikishin_small.intervals == (Interval(F(0), F(1)), Interval(F(2), F(3)))
    far = make_nikishin([S1, measure([(100, 1)], (99, 101))])
    ratio = [w2 / w1 for w1, w2 in zip(S1.weights, far.measures[1].weights)]
    assert all(r > 0 for r in ratio)
    with pytest.raises(MeasureError):
        make_nikishin([S1, measure([(F(1, 8), 1)], (0, 1))])
    three = make_nikishin([S1, S2, measure([(5, 1)], (4, 6))])
    assert three.r == 3 and len(three.sigmas) == 3


def test_perturb_second_measure(angelesco):
    same = make_explicit([angelesco.measures[0], angelesco.measures[0]])
    out = perturb_second_measure(same, poly(0, 1))
    assert dict(out.measures[1].atoms)[F(-3, 4)] == F(1, 8)
    zero = perturb_second_measure(angelesco, poly())
    assert [m.atoms for m in zero.measures] == [m.atoms for m in angelesco.measures]
    shifted = perturb_second_measure(angelesco, poly(2))
    assert dict(shifted.measures[1].atoms)[F(-3, 4)] == 1
    with pytest.raises(MeasureError):
        perturb_second_measure(make_explicit([SYM]), poly(1))
