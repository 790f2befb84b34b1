"""Exact rational arithmetic and polynomial algebra.

All polynomials are sympy ``Poly`` objects over ``QQ``. Univariate
polynomials live in the affine base coordinate ``t``; multivariate ones
carry their generators in the declared (sorted) order.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
import sympy
from sympy import QQ, Poly, Rational
from kfourteen.utils import log
from kfourteen.utils.errors import InputFormatError, PreconditionError

# The affine base coordinate.
t = sympy.Symbol('t')

# Valuation of the zero polynomial.
INFINITE = math.inf

# Marker of the place at infinity.
INFINITY = 'inf'


def rat(value):
    """Convert a value to an exact rational.

    Args:
        value: int, Fraction, sympy Rational or a string 'p/q'.

    Return:
        sympy Rational.
    """
    if isinstance(value, bool):
        raise InputFormatError("boolean is not a rational number")
    if isinstance(value, Rational):
        return value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    if isinstance(value, int):
        return Rational(value)
    if isinstance(value, str):
        try:
            return Rational(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise InputFormatError("not a rational number: {!r} ({})".format(
                value, e))
    raise InputFormatError("not a rational number: {!r}".format(value))


def rat_str(value):
    """Canonical text of a rational: 'p/q' or 'p' for integers."""
    value = rat(value)
    if value.q == 1:
        return str(value.p)
    return "{}/{}".format(value.p, value.q)


def upoly(expr):
    """Univariate polynomial in t over QQ.

    Args:
        expr: sympy expression in t, a Poly, or a list of coefficients
            indexed by exponent.
    """
    if isinstance(expr, Poly):
        return Poly(expr.as_expr(), t, domain=QQ)
    if isinstance(expr, (list, tuple)):
        return Poly(sum(rat(c) * t**i for i, c in enumerate(expr)), t,
                    domain=QQ)
    return Poly(expr, t, domain=QQ)


def zero():
    """The zero polynomial in t."""
    return Poly(0, t, domain=QQ)


def degree(p):
    """Degree of a univariate polynomial; the zero polynomial has degree
    -infinity.
    """
    if p.is_zero:
        return -INFINITE
    return p.degree()


def valuation_at_zero(p):
    """Order of vanishing of p at t = 0 (INFINITE for p = 0)."""
    if p.is_zero:
        return INFINITE
    return min(m[0] for m in p.monoms())


def reverse_chart(p, n):
    """Return s^n p(1/s), expressed again in the variable t.

    Args:
        p: univariate polynomial of degree at most n.
        n: the homogeneous degree of the form that p dehomogenizes.
    """
    if p.is_zero:
        return zero()
    if p.degree() > n:
        raise PreconditionError("degree {} exceeds the form degree {}".format(
            p.degree(), n))
    coeffs = p.all_coeffs()[::-1]
    coeffs += [0] * (n + 1 - len(coeffs))
    return upoly(coeffs[::-1])


def rational_root(value, n):
    """The rational n-th root of value, or None if there is none.

    For even n the nonnegative root is returned.
    """
    value = rat(value)
    if value < 0:
        if n % 2 == 0:
            return None
        root = rational_root(-value, n)
        return None if root is None else -root
    num, num_exact = sympy.integer_nthroot(value.p, n)
    den, den_exact = sympy.integer_nthroot(value.q, n)
    if num_exact and den_exact:
        return Rational(num, den)
    return None


def gcd_univariate(p, q):
    """Monic greatest common divisor; gcd(0, 0) = 0."""
    p, q = upoly(p), upoly(q)
    if p.is_zero and q.is_zero:
        return zero()
    return p.gcd(q).monic()


def squarefree_decompose(p):
    """Square-free decomposition.

    Return:
        list of (monic factor, multiplicity) with pairwise coprime
        square-free factors of positive degree, ordered by multiplicity.
    """
    p = upoly(p)
    if p.is_zero:
        raise PreconditionError("square-free decomposition of zero")
    _, factors = p.sqf_list()
    return sorted(((f.monic(), m) for f, m in factors if f.degree() > 0),
                  key=lambda item: (item[1], item[0].all_coeffs()))


@dataclass(frozen=True)
class PlaceComponent:

    """A set of places of the base curve sharing all measure valuations.

    Attributes:
        poly: square-free monic polynomial whose roots are the places, or
            INFINITY for the single place t = infinity.
        multiplicity: multiplicity of the component in the refined base.
        valuations: measure label -> valuation at every root of poly.
    """

    poly: object
    multiplicity: int = 1
    valuations: dict = field(default_factory=dict, compare=False)

    @property
    def degree(self):
        """Number of places (over the algebraic closure)."""
        if self.poly == INFINITY:
            return 1
        return self.poly.degree()

    def serialize(self):
        """Canonical text of the place."""
        if self.poly == INFINITY:
            return INFINITY
        return poly_to_text(self.poly)


def _split(component, measure):
    """Split a square-free component by the valuation of measure.

    Return:
        list of (factor, valuation).
    """
    if measure.is_zero:
        return [(component, INFINITE)]
    g = component.gcd(measure)
    if g.degree() < 1:
        return [(component, 0)]
    g = g.monic()
    rest = component.exquo(g)
    out = [(c, v + 1) for c, v in _split(g, measure.exquo(g))]
    if rest.degree() >= 1:
        out.append((rest.monic(), 0))
    return out


def refine_places(base, measures):
    """Refine the square-free part of base until every measure has constant
    valuation on the roots of each component.

    Args:
        base: nonzero univariate polynomial.
        measures: list of (label, polynomial).

    Return:
        list of PlaceComponent.
    """
    base = upoly(base)
    if base.is_zero:
        raise PreconditionError("cannot refine the places of zero")
    components = [PlaceComponent(f, m, {})
                  for f, m in squarefree_decompose(base)]
    for label, measure in measures:
        measure = upoly(measure)
        refined = []
        for comp in components:
            for piece, val in _split(comp.poly, measure):
                valuations = dict(comp.valuations)
                valuations[label] = val
                refined.append(PlaceComponent(piece, comp.multiplicity,
                                              valuations))
        components = refined
    return components


def pseudo_reduce(f, g, var):
    """Pseudo-remainder of f by g with respect to var.

    lc(g)^k f = q g + r with deg_var(r) < deg_var(g).

    Args:
        f, g: multivariate polynomials with the same generators.
        var: the sympy symbol to divide in.

    Return:
        The remainder as a Poly in the generators of f.
    """
    gens = f.gens
    if g.degree(var) < 1:
        raise PreconditionError("divisor has degree 0 in {}".format(var))
    others = [x for x in gens if x != var]
    fm = Poly(f.as_expr(), var, *others, domain=QQ)
    gm = Poly(g.as_expr(), var, *others, domain=QQ)
    r = fm.prem(gm)
    return Poly(r.as_expr(), *gens, domain=QQ)


def mpoly(expr, gens):
    """Multivariate polynomial over QQ with generators in sorted order."""
    gens = sorted(gens, key=lambda s: s.name)
    return Poly(expr, *gens, domain=QQ)


def random_rational(rng, bound, nonzero=False):
    """Draw a rational number num/den with |num| <= bound, 1 <= den <= 3.

    Args:
        rng: random.Random instance.
        bound: numerator bound (int).
        nonzero: whether 0 has to be avoided.
    """
    while True:
        value = Rational(rng.randint(-bound, bound), rng.randint(1, 3))
        if value != 0 or not nonzero:
            return value


def probably_zero(expr, symbols, rng, trials=12, bound=10**6):
    """Probabilistic identity test by evaluation at random rationals.

    A nonzero polynomial of total degree d vanishes at a random point of a
    grid with N values per coordinate with probability at most d/N; with
    the default bound and trials the failure probability of the test is far
    below 2^-64 for the degrees occurring here.

    Args:
        expr: sympy expression or Poly.
        symbols: the variables of expr.
        rng: random.Random instance.
        trials: number of evaluation points.
        bound: size of the coordinate range.

    Return:
        False if a nonzero value was found, True otherwise.
    """
    if isinstance(expr, Poly):
        expr = expr.as_expr()
    for _ in range(trials):
        point = {s: Rational(rng.randint(-bound, bound), rng.randint(1, bound))
                 for s in symbols}
        if expr.xreplace(point) != 0:
            return False
    log.algebra.debug("Identity accepted after {} random evaluations.".format(
        trials))
    return True


def poly_to_text(p):
    """Canonical text serialization: terms sorted by exponent vector
    descending, coefficients as 'p/q'.
    """
    if p.is_zero:
        return "0"
    terms = []
    for monom, coeff in sorted(p.terms(), reverse=True):
        factors = ["{}^{}".format(x, e) if e > 1 else str(x)
                   for x, e in zip(p.gens, monom) if e]
        terms.append("*".join([rat_str(coeff)] + factors))
    return " + ".join(terms)


def poly_to_json(p):
    """JSON form of a polynomial: generators and descending terms."""
    return {
        'gens': [str(x) for x in p.gens],
        'terms': [[list(monom), rat_str(coeff)]
                  for monom, coeff in sorted(p.terms(), reverse=True)],
    }


def poly_from_json(data):
    """Inverse of poly_to_json."""
    try:
        gens = [sympy.Symbol(name) for name in data['gens']]
        expr = sum(rat(c) * sympy.Mul(*[x**e for x, e in zip(gens, monom)])
                   for monom, c in data['terms'])
    except (TypeError, KeyError, ValueError) as e:
        raise InputFormatError("malformed polynomial: {}".format(e),
                               pointer='/terms')
    return Poly(expr, *gens, domain=QQ)
