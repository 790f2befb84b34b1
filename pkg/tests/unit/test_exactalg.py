"""Tests for kfourteen.algebra.exactalg."""

import random
from fractions import Fraction
import pytest
import sympy
from sympy import Rational
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import INFINITE, t, upoly
from kfourteen.utils.errors import InputFormatError, PreconditionError

x, y = sympy.symbols('x y')


@pytest.mark.parametrize('value, expected', [
    (3, Rational(3)), ('-7/3', Rational(-7, 3)), (' 4/6 ', Rational(2, 3)),
    (Fraction(5, 10), Rational(1, 2)), (Rational(9, 4), Rational(9, 4))])
def test_rat(value, expected):
    assert exactalg.rat(value) == expected


@pytest.mark.parametrize('value', ['1/0', 'abc', 1.5, True, None])
def test_rat_rejects(value):
    """IF a value is no exact rational, WHEN it is converted, THEN an input
    format error shall be raised.
    """
    with pytest.raises(InputFormatError):
        exactalg.rat(value)


@pytest.mark.parametrize('value, text', [(Rational(-3, 6), '-1/2'),
                                         (4, '4'), (0, '0')])
def test_rat_str(value, text):
    assert exactalg.rat_str(value) == text


def test_upoly_from_coefficient_list():
    """Coefficient lists shall be indexed by the exponent."""
    assert upoly([1, 0, '1/2']) == upoly(1 + t**2 / 2)


def test_degree_and_valuation_of_zero():
    zero = exactalg.zero()
    assert exactalg.degree(zero) == -INFINITE
    assert exactalg.valuation_at_zero(zero) == INFINITE
    assert exactalg.valuation_at_zero(upoly(t**3 + 2 * t**5)) == 3


@pytest.mark.parametrize('p, n, expected', [
    (t + 2, 2, t + 2 * t**2), (1, 2, t**2), (t**2, 2, 1),
    (3 * t**3 - t, 4, 3 * t - t**3)])
def test_reverse_chart(p, n, expected):
    """reverse_chart shall return s^n p(1/s) in the variable t."""
    assert exactalg.reverse_chart(upoly(p), n) == upoly(expected)


def test_reverse_chart_degree_too_large():
    with pytest.raises(PreconditionError):
        exactalg.reverse_chart(upoly(t**3), 2)


@pytest.mark.parametrize('value, n, root', [
    (Rational(9, 4), 2, Rational(3, 2)), (-8, 3, -2), (2, 2, None),
    (-4, 2, None), (0, 4, 0), (Rational(1, 16), 4, Rational(1, 2))])
def test_rational_root(value, n, root):
    assert exactalg.rational_root(value, n) == root


def test_gcd_univariate():
    f = upoly((t - 1)**2 * (t + 3))
    g = upoly(2 * (t - 1) * (t - 5))
    assert exactalg.gcd_univariate(f, g) == upoly(t - 1)
    assert exactalg.gcd_univariate(0, 0).is_zero == True


def test_squarefree_decompose():
    """The factors shall be monic, square-free and ordered by
    multiplicity.
    """
    p = upoly(3 * (t - 1) * (t + 2)**2 * (t**2 + 1)**3)
    factors = exactalg.squarefree_decompose(p)
    assert factors == [(upoly(t - 1), 1), (upoly(t + 2), 2),
                       (upoly(t**2 + 1), 3)]


def test_squarefree_decompose_zero():
    with pytest.raises(PreconditionError):
        exactalg.squarefree_decompose(0)


def test_refine_places():
    """IF the measures have different valuations at the roots of one
    square-free factor, WHEN the places are refined, THEN the factor shall
    be split accordingly.
    """
    base = upoly(t**2 * (t - 1) * (t**2 - 2))
    measures = [('c4', upoly(t * (t**2 - 2)**2)), ('D', base)]
    components = exactalg.refine_places(base, measures)
    found = {comp.serialize(): (comp.multiplicity, comp.valuations)
             for comp in components}
    assert found['1*t'] == (2, {'c4': 1, 'D': 2})
    assert found['1*t + -1'] == (1, {'c4': 0, 'D': 1})
    assert found['1*t^2 + -2'] == (1, {'c4': 2, 'D': 1})
    assert sum(comp.degree for comp in components) == 4


def test_refine_places_zero_measure():
    components = exactalg.refine_places(t - 1, [('c4', 0)])
    assert components[0].valuations == {'c4': INFINITE}


def test_pseudo_reduce():
    """IF the dividend is a multiple of the divisor, THEN the pseudo
    remainder shall vanish; otherwise it shall have smaller degree.
    """
    g = exactalg.mpoly(x * y**2 + y + 1, (x, y))
    f = exactalg.mpoly(sympy.expand((x * y**2 + y + 1) * (y**3 - x)), (x, y))
    assert exactalg.pseudo_reduce(f, g, y).is_zero == True
    r = exactalg.pseudo_reduce(exactalg.mpoly(y**3, (x, y)), g, y)
    assert r.is_zero == False
    assert r.degree(y) < 2


def test_pseudo_reduce_constant_divisor():
    g = exactalg.mpoly(x + 1, (x, y))
    with pytest.raises(PreconditionError):
        exactalg.pseudo_reduce(exactalg.mpoly(y, (x, y)), g, y)


def test_mpoly_sorts_generators():
    assert exactalg.mpoly(y + x**2, (y, x)).gens == (x, y)


def test_random_rational_nonzero():
    rng = random.Random(3)
    values = [exactalg.random_rational(rng, 1, nonzero=True)
              for _ in range(50)]
    assert all(v != 0 and abs(v.p) <= 1 and 1 <= v.q <= 3 for v in values)


def test_probably_zero():
    """A polynomial identity shall be accepted, a nonzero polynomial shall
    be rejected.
    """
    rng = random.Random(1)
    assert exactalg.probably_zero((x + y)**2 - x**2 - 2 * x * y - y**2,
                                  (x, y), rng) == True
    assert exactalg.probably_zero(x * y - 1, (x, y), rng) == False


def test_poly_to_text():
    p = exactalg.mpoly(Rational(1, 2) * x**2 * y - 3 * y + 7, (x, y))
    assert exactalg.poly_to_text(p) == '1/2*x^2*y + -3*y + 7'
    assert exactalg.poly_to_text(exactalg.zero()) == '0'


def test_poly_json():
    p = exactalg.mpoly(Rational(-2, 3) * x * y**3 + 5, (x, y))
    data = exactalg.poly_to_json(p)
    assert data == {'gens': ['x', 'y'],
                    'terms': [[[1, 3], '-2/3'], [[0, 0], '5']]}
    assert exactalg.poly_from_json(data) == p


def test_poly_from_json_malformed():
    with pytest.raises(InputFormatError):
        exactalg.poly_from_json({'gens': ['t']})
