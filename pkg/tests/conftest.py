from fractions import Fraction as F

import pytest
from hypothesis import settings

from moprl.measures import DiscreteMeasure, make_angelesco, make_at_cauchy, make_explicit, make_nikishin
from moprl.poly_core import Polynomial

# exact arithmetic makes timings uneven; the suites bound sizes instead
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")


def poly(*coeffs):
    """Polynomial from coefficients written low to high, as strings or ints."""
    return Polynomial(F(c) for c in coeffs)


def measure(pairs, interval=None):
    return DiscreteMeasure(tuple((F(t), F(w)) for t, w in pairs), interval and (F(interval[0]), F(interval[1])))


@pytest.fixture
def angelesco():
    """Two intervals touching at 0, two atoms of mass 1/2 on each."""
    mu1 = measure([("-3/4", "1/2"), ("-1/4", "1/2")], ("-1", "0"))
    mu2 = measure([("1/4", "1/2"), ("3/4", "1/2")], ("0", "1"))
    return make_angelesco([mu1, mu2])


@pytest.fixture
def angelesco44():
    mu1 = measure([(F(-k, 8), "1/4") for k in (7, 5, 3, 1)], ("-1", "0"))
    mu2 = measure([(F(k, 8), "1/4") for k in (1, 3, 5, 7)], ("0", "1"))
    return make_angelesco([mu1, mu2])


@pytest.fixture
def symmetric():
    """Three equal atoms at -1, 0, 1 as a one-measure system."""
    return make_explicit([measure([(-1, "1/3"), (0, "1/3"), (1, "1/3")], (-1, 1))])


@pytest.fixture
def at_example():
    base = measure([(0, "1/2"), ("1/2", "1/4"), (1, "1/4")], (0, 1))
    return make_at_cauchy(base, [2, 3])


@pytest.fixture
def nikishin_small():
    s1 = measure([("1/4", "1/2"), ("3/4", "1/2")], (0, 1))
    s2 = measure([(2, "1/2"), (3, "1/2")], (2, 3))
    return make_nikishin([s1, s2])


@pytest.fixture
def nikishin53():
    s1 = measure([(F(k, 6), "1/5") for k in range(1, 6)], (0, 1))
    s2 = measure([(2, "1/3"), ("5/2", "1/3"), (3, "1/3")], (2, 3))
    return make_nikishin([s1, s2])
