"""Weierstrass models over Q(t) and their Kodaira fiber configurations.

A model y^2 = x^3 + a2 x^2 + a4 x + a6 is stored through the affine
coefficients a2, a4, a6 in t together with the chart weight k: a_{2i} is the
dehomogenization of a binary form of degree 2ik, so that the place at
infinity is read off from s^{2ik} a_{2i}(1/s). K3 surfaces have k = 2.
"""

import re
from collections import Counter
from dataclasses import dataclass, field
import sympy
from sympy import Rational
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import INFINITE, INFINITY, t, upoly
from kfourteen.utils import log
from kfourteen.utils.errors import (DegenerateModelError, InputFormatError,
                                    InternalInvariantError, PreconditionError)

# Euler numbers and component counts of the non-I_n families.
_EULER = {'II': 2, 'III': 3, 'IV': 4, 'IV*': 8, 'III*': 9, 'II*': 10}
_COMPONENTS = {'II': 1, 'III': 2, 'IV': 3, 'IV*': 7, 'III*': 8, 'II*': 9}
_ROOTS = {'III': 'A1', 'IV': 'A2', 'IV*': 'E6', 'III*': 'E7', 'II*': 'E8'}

# Euler number of a K3 surface, the sum over the singular fibers.
K3_EULER = 24

# Kodaira type of a minimal place by the valuation of the discriminant,
# for the additive types not of the form I_n*.
_BY_DISCRIMINANT = {2: 'II', 3: 'III', 4: 'IV', 6: 'I0*', 8: 'IV*',
                    9: 'III*', 10: 'II*'}

_LABEL = re.compile(r'^(?:(\d*)\s*)?(I\d+\*?|II\*?|III\*?|IV\*?)$')


@dataclass(frozen=True, order=True)
class KodairaType:

    """Kodaira type of a singular fiber.

    Attributes:
        family: one of 'I', 'I*', 'II', 'III', 'IV', 'IV*', 'III*', 'II*'.
        n: index of the types I_n and I_n*; 0 otherwise.
    """

    family: str
    n: int = 0

    @classmethod
    def parse(cls, label):
        """Parse a label such as 'I4*', 'I0', 'III*'."""
        label = label.strip()
        match = re.match(r'^I(\d+)(\*?)$', label)
        if match:
            return cls('I*' if match.group(2) else 'I', int(match.group(1)))
        if label in _EULER:
            return cls(label)
        raise InputFormatError("unknown Kodaira type {!r}".format(label))

    @property
    def label(self):
        if self.family == 'I':
            return 'I{}'.format(self.n)
        if self.family == 'I*':
            return 'I{}*'.format(self.n)
        return self.family

    def __str__(self):
        return self.label

    def euler(self):
        """Euler number of the fiber."""
        if self.family == 'I':
            return self.n
        if self.family == 'I*':
            return self.n + 6
        return _EULER[self.family]

    def components(self):
        """Number of irreducible components m_v."""
        if self.family == 'I':
            return max(self.n, 1)
        if self.family == 'I*':
            return self.n + 5
        return _COMPONENTS[self.family]

    def root_lattice(self):
        """Name of the root lattice of the non-identity components, e.g.
        'D8', or None for irreducible fibers.
        """
        if self.family == 'I':
            return 'A{}'.format(self.n - 1) if self.n >= 2 else None
        if self.family == 'I*':
            return 'D{}'.format(self.n + 4)
        return _ROOTS.get(self.family)


def kodaira_type(v4, v6, vd):
    """Kodaira type from the valuations of c4, c6 and the discriminant.

    Non-minimal triples are reduced first.

    Return:
        (KodairaType, number of reductions performed).
    """
    if vd == INFINITE:
        raise DegenerateModelError("discriminant vanishes identically",
                                   certificate='Delta == 0')
    reductions = 0
    while v4 >= 4 and v6 >= 6 and vd >= 12:
        v4, v6, vd = v4 - 4, v6 - 6, vd - 12
        reductions += 1
    if vd == 0:
        return KodairaType('I', 0), reductions
    if v4 == 0:
        return KodairaType('I', vd), reductions
    if v4 == 2 and v6 == 3 and vd >= 6:
        return KodairaType('I*', vd - 6), reductions
    try:
        found = _BY_DISCRIMINANT[vd]
    except KeyError:
        raise InternalInvariantError(
            "inconsistent valuations (c4, c6, D) = ({}, {}, {})".format(
                v4, v6, vd))
    return KodairaType.parse(found), reductions


def parse_fibers(text):
    """Parse a fiber table such as 'I4* + 4I2 + 6I1' into a Counter of
    Kodaira types.
    """
    fibers = Counter()
    for chunk in text.split('+'):
        match = _LABEL.match(chunk.strip())
        if not match:
            raise InputFormatError("cannot parse fiber {!r}".format(chunk))
        count = int(match.group(1)) if match.group(1) else 1
        fibers[KodairaType.parse(match.group(2))] += count
    return fibers


def format_fibers(fibers):
    """Render a Counter of Kodaira types as 'I4* + 4I2 + 6I1'."""
    ordered = sorted(fibers.items(), key=lambda item: (-item[0].euler(),
                                                       item[0].label))
    return ' + '.join('{}{}'.format(n if n > 1 else '', kt.label)
                      for kt, n in ordered if n)


@dataclass(frozen=True)
class WeierstrassModel:

    """y^2 = x^3 + a2 x^2 + a4 x + a6 over Q(t).

    Attributes:
        a2, a4, a6: univariate polynomials in t.
        weight: chart weight k; a_{2i} has degree at most 2ik.
    """

    a2: sympy.Poly
    a4: sympy.Poly
    a6: sympy.Poly
    weight: int = 2

    @classmethod
    def build(cls, a2, a4, a6, weight=None):
        """Create a model, choosing the minimal chart weight if none is
        given.
        """
        a2, a4, a6 = upoly(a2), upoly(a4), upoly(a6)
        needed = 1
        for i, a in ((1, a2), (2, a4), (3, a6)):
            if not a.is_zero:
                needed = max(needed, -(-a.degree() // (2 * i)))
        if weight is None:
            weight = needed
            log.ellfib.debug("Chart weight k = {} chosen.".format(weight))
        elif weight < needed:
            raise PreconditionError(
                "coefficients need chart weight {} > {}".format(needed,
                                                                weight))
        return cls(a2, a4, a6, weight)

    @property
    def base_degree(self):
        """Degree of the discriminant as a binary form."""
        return 12 * self.weight

    def at_infinity(self):
        """The model in the chart s = 1/t."""
        k = self.weight
        return WeierstrassModel(exactalg.reverse_chart(self.a2, 2 * k),
                                exactalg.reverse_chart(self.a4, 4 * k),
                                exactalg.reverse_chart(self.a6, 6 * k), k)

    def to_json(self):
        return {'a2': exactalg.poly_to_json(self.a2),
                'a4': exactalg.poly_to_json(self.a4),
                'a6': exactalg.poly_to_json(self.a6),
                'weight': self.weight}

    @classmethod
    def from_json(cls, data):
        try:
            return cls.build(exactalg.poly_from_json(data['a2']),
                             exactalg.poly_from_json(data['a4']),
                             exactalg.poly_from_json(data['a6']),
                             data.get('weight'))
        except (TypeError, KeyError, AttributeError) as e:
            raise InputFormatError("malformed Weierstrass model: {}".format(e),
                                   pointer='/a2')


@dataclass
class FiberEntry:

    """A singular fiber type over a set of conjugate places."""

    place: exactalg.PlaceComponent
    kodaira: KodairaType

    @property
    def degree(self):
        return self.place.degree


@dataclass
class FiberConfig:

    """Singular fibers of a Weierstrass model.

    Attributes:
        entries: list of FiberEntry (smooth places omitted).
        mw_torsion_order: order of the torsion of the Mordell-Weil group.
        mw_rank: rank of the Mordell-Weil group.
        weight: chart weight of the classified model.
        reductions: places that had to be minimalized (list of str).
    """

    entries: list
    mw_torsion_order: int = 1
    mw_rank: int = 0
    weight: int = 2
    reductions: list = field(default_factory=list)

    def fibers(self):
        """Counter of Kodaira types, each counted with its place degree."""
        fibers = Counter()
        for entry in self.entries:
            fibers[entry.kodaira] += entry.degree
        return fibers

    def euler_sum(self):
        return sum(e.kodaira.euler() * e.degree for e in self.entries)

    def summary(self):
        """Fiber table text, e.g. 'I4* + 4I2 + 6I1'."""
        return format_fibers(self.fibers())

    def to_json(self):
        rows = [{'place': e.place.serialize(), 'type': e.kodaira.label,
                 'degree': e.degree} for e in self.entries]
        rows.sort(key=lambda r: (r['place'], r['type']))
        return {'fibers': rows, 'summary': self.summary(),
                'mw_torsion_order': self.mw_torsion_order,
                'mw_rank': self.mw_rank, 'weight': self.weight}


def short_invariants(m):
    """Return (c4, c6, Delta) with c4^3 - c6^2 = 1728 Delta.

    Raises:
        DegenerateModelError: if Delta vanishes identically.
    """
    b2 = 4 * m.a2
    b4 = 2 * m.a4
    b6 = 4 * m.a6
    b8 = 4 * m.a2 * m.a6 - m.a4**2
    c4 = b2**2 - 24 * b4
    c6 = -b2**3 + 36 * b2 * b4 - 216 * b6
    disc = -b2**2 * b8 - 8 * b4**3 - 27 * b6**2 + 9 * b2 * b4 * b6
    if disc.is_zero:
        raise DegenerateModelError("discriminant vanishes identically",
                                   certificate='Delta == 0')
    return c4, c6, disc


def classify_fibers(m, mw_torsion_order=1, mw_rank=0):
    """Kodaira fiber configuration of a Weierstrass model.

    Args:
        m: WeierstrassModel.
        mw_torsion_order, mw_rank: Mordell-Weil data recorded in the result.

    Return:
        FiberConfig.
    """
    c4, c6, disc = short_invariants(m)
    entries, reductions = [], []
    measures = [('c4', c4), ('c6', c6), ('D', disc)]
    for comp in exactalg.refine_places(disc, measures):
        val = comp.valuations
        kt, red = kodaira_type(val['c4'], val['c6'], val['D'])
        if red:
            reductions.append(comp.serialize())
            log.ellfib.debug("Place {} minimalized {} time(s).".format(
                comp.serialize(), red))
        if kt != KodairaType('I', 0):
            entries.append(FiberEntry(comp, kt))

    c4i, c6i, di = short_invariants(m.at_infinity())
    vals = {'c4': exactalg.valuation_at_zero(c4i),
            'c6': exactalg.valuation_at_zero(c6i),
            'D': exactalg.valuation_at_zero(di)}
    kt, red = kodaira_type(vals['c4'], vals['c6'], vals['D'])
    if red:
        reductions.append(INFINITY)
        log.ellfib.debug("Place at infinity minimalized {} time(s).".format(
            red))
    if kt != KodairaType('I', 0):
        entries.append(FiberEntry(
            exactalg.PlaceComponent(INFINITY, 1, vals), kt))
    return FiberConfig(entries, mw_torsion_order, mw_rank, m.weight,
                       reductions)


@dataclass
class ConsistencyReport:

    """Arithmetic consistency of a fiber configuration.

    Attributes:
        euler: Euler number sum.
        euler_ok: whether the sum equals K3_EULER.
        shioda_tate: 2 + sum(m_v - 1) + mw_rank.
        shioda_tate_ok: whether it equals the target Picard rank.
        root_discriminant: |D(K^root)|, or None if not evaluated.
        ns_discriminant: |D(NS)|, or None if not given.
        determinant_ok: |D(K^root)| = |D(NS)| |W|^2, or None.
    """

    euler: int
    euler_ok: bool
    shioda_tate: int
    shioda_tate_ok: bool
    root_discriminant: int = None
    ns_discriminant: int = None
    determinant_ok: bool = None

    @property
    def passed(self):
        return (self.euler_ok and self.shioda_tate_ok
                and self.determinant_ok is not False)


def consistency_report(cfg, target_picard, ns_discriminant=None):
    """Check the Euler number, the Shioda-Tate formula and the
    discriminant-count condition of a fiber configuration.

    Args:
        cfg: FiberConfig.
        target_picard: claimed Picard rank.
        ns_discriminant: |D(NS)| of the claimed Neron-Severi lattice.
    """
    from kfourteen.lattices import lattices
    euler = cfg.euler_sum()
    rank = 2 + sum((e.kodaira.components() - 1) * e.degree
                   for e in cfg.entries) + cfg.mw_rank
    report = ConsistencyReport(euler, euler == K3_EULER, rank,
                               rank == target_picard)
    report.root_discriminant = lattices.root_lattice_of_config(
        cfg).discriminant_order()
    if ns_discriminant is not None:
        report.ns_discriminant = ns_discriminant
        report.determinant_ok = (report.root_discriminant == ns_discriminant
                                 * cfg.mw_torsion_order**2)
    return report


def two_torsion_at_origin(m):
    """Whether (x, y) = (0, 0) is a two-torsion section, i.e. a6 = 0."""
    return m.a6.is_zero


def rescale_model(m, lam):
    """The isomorphic model (x, y) -> (lam^2 x, lam^3 y)."""
    lam = Rational(lam)
    if lam == 0:
        raise PreconditionError("rescaling by zero")
    return WeierstrassModel(m.a2 * lam**2, m.a4 * lam**4, m.a6 * lam**6,
                            m.weight)


def moebius_transform(m, p, q, r, s):
    """Pull the model back along t -> (p t + q)/(r t + s).

    Each a_{2i} is treated as a binary form of degree 2ik, so the result has
    the same chart weight.
    """
    p, q, r, s = (Rational(c) for c in (p, q, r, s))
    if p * s - q * r == 0:
        raise PreconditionError("singular base transformation")
    k = m.weight
    coeffs = []
    for i, a in ((1, m.a2), (2, m.a4), (3, m.a6)):
        n = 2 * i * k
        expr = sum(c * (p * t + q)**e * (r * t + s)**(n - e)
                   for (e,), c in a.terms()) if not a.is_zero else 0
        coeffs.append(upoly(sympy.expand(expr)))
    return WeierstrassModel(*coeffs, weight=k)


def to_short_form(m):
    """Eliminate the x^2 term: return (A, B) with y^2 = x^3 + A x + B."""
    a4 = m.a4 - m.a2**2 * Rational(1, 3)
    a6 = m.a6 - m.a2 * m.a4 * Rational(1, 3) + m.a2**3 * Rational(2, 27)
    return a4, a6


def alternate_discriminant(a, b):
    """Closed form 16 b^2 (a^2 - 4 b) of the discriminant of
    y^2 = x^3 + a x^2 + b x.
    """
    return 16 * b**2 * (a**2 - 4 * b)
