from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from k3tk.forms import BinaryForm, FormError, TernaryForm, all_monomials, format_rational, parse_rational

x0, x1, x2 = TernaryForm.variables()


def test_rationals_round_trip():
    assert parse_rational("-3/6") == Fraction(-1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(FormError):
        parse_rational(0.5)
    with pytest.raises(FormError):
        parse_rational("1/0")


def test_arithmetic_and_support():
    f = (x0 * x2 - x1**2) ** 2
    assert f.degree == 4
    assert f.support() == [(0, 4, 0), (1, 2, 1), (2, 0, 2)]
    assert f.coefficient((1, 2, 1)) == -2
    assert (f - f).is_zero()
    with pytest.raises(FormError):
        x0 + x0 * x1


def test_homogeneity_is_enforced():
    with pytest.raises(FormError):
        TernaryForm({(1, 0, 0): 1, (1, 1, 0): 1})
    with pytest.raises(FormError):
        TernaryForm({(1, 0): 1})


def test_substitute_and_permute():
    f = x0**2 + x1 * x2
    swapped = f.permute([1, 0, 2])
    assert swapped == x1**2 + x0 * x2
    m = [[0, 1, 0], [1, 0, 0], [0, 0, 1]]
    assert f.substitute(m) == swapped
    g = (x0 + x1).substitute([[1, 0, 0], [-1, 1, 0], [0, 0, 1]])
    assert g == x1


def test_partial_and_weight_part():
    f = x0**3 + 2 * x0 * x1 * x2
    assert f.partial(0) == 3 * x0**2 + 2 * x1 * x2
    assert f.weight_part((1, 0, -1), 3) == x0**3


coef = st.integers(-5, 5)


@st.composite
def ternary(draw, degree=3):
    mons = all_monomials(3, degree)
    terms = draw(st.dictionaries(st.sampled_from(mons), coef.filter(bool), min_size=1, max_size=6))
    return TernaryForm(terms)


@given(ternary())
def test_json_round_trip(f):
    assert TernaryForm.from_json(f.to_json()) == f


@given(ternary(), ternary())
def test_product_is_commutative(f, g):
    assert f * g == g * f


def test_binary_forms():
    u, v = BinaryForm.variables()
    assert (u + v) ** 2 == u**2 + 2 * u * v + v**2
    assert len(all_monomials(2, 12)) == 13
