"""Quartic surfaces, their symmetries and their elliptic fibrations.

Three families of quartics in P^3 are modelled:

    P             coordinates [X:Y:Z:W], coefficients alpha ... lambda;
    Pprime        coordinates [X:Y:Z:W], coefficients f2 ... h0, g1 = -h2;
    Pdoubleprime  Vinberg's quartic in [x0:x1:x2:x3].

Every Jacobian elliptic fibration is obtained from a pencil substitution
[X:Y:Z:W] = phi(x, y, z, u, v) which turns the quartic into a monomial
multiple of the Weierstrass equation y^2 z = x^3 + e x^2 z + f x z^2 + g z^3
with e, f, g binary forms in (u, v). A factor sqrt(2) in front of y is the
symbol r, reduced modulo r^2 - 2.
"""

import random
from dataclasses import dataclass, fields, replace
import sympy
from sympy import QQ, Poly, Rational, symbols
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import rat, t
from kfourteen.surfaces.ellfib import WeierstrassModel
from kfourteen.utils import log
from kfourteen.utils.errors import (InputFormatError, InternalInvariantError,
                                    InvalidCoefficientsError,
                                    PreconditionError, UnknownNameError)

X, Y, Z, W = symbols('X Y Z W')
x0, x1, x2, x3 = symbols('x0 x1 x2 x3')
x, y, z, u, v = symbols('x y z u v')
r = symbols('r')


FAMILIES = ('P', 'Pprime', 'Pdoubleprime')


_ALIASES = {'P': 'P', "P'": 'Pprime', 'Pprime': 'Pprime',
            "P''": 'Pdoubleprime', 'Pdoubleprime': 'Pdoubleprime',
            'Vinberg': 'Pdoubleprime'}


# Mordell-Weil torsion order of every fibration.
FIBRATIONS = {
    'P': {'alternate': 2, 'standard': 1, 'base_fiber_dual': 1,
          'base_fiber_dual_prime': 1, 'maximal': 1},
    'Pprime': {'alternate': 2, 'standard': 1},
    'Pdoubleprime': {'alternate': 1, 'standard': 1},
}


# Singular fibers at generic points of each locus, with Picard rank.
FIBER_TABLES = {
    'P': {
        'rank14': (14, {'alternate': 'I4* + 4I2 + 6I1',
                        'standard': '2I2* + 8I1',
                        'base_fiber_dual': 'III* + I0* + I2 + 7I1',
                        'base_fiber_dual_prime': 'II* + 4I2 + 6I1',
                        'maximal': 'I6* + 2I2 + 8I1'}),
        'rank15': (15, {'alternate': 'I6* + 3I2 + 6I1',
                        'standard': 'III* + I2* + 7I1',
                        'base_fiber_dual': 'II* + I0* + I2 + 6I1',
                        'maximal': 'I8* + I2 + 8I1'}),
        'rank16': (16, {'alternate': 'I8* + 2I2 + 6I1',
                        'standard': '2III* + 6I1',
                        'base_fiber_dual': 'II* + I2* + 6I1'}),
    },
    'Pprime': {
        'generic': (14, {'alternate': 'III* + 5I2 + 5I1',
                         'standard': 'I4* + I0* + 8I1'}),
    },
    'Pdoubleprime': {
        'rank13': (13, {'alternate': 'II* + I4 + 10I1',
                        'standard': 'I7* + 11I1'}),
        'g0 = 0': (14, {'alternate': 'II* + I0* + 8I1',
                        'standard': 'I8* + 10I1'}),
        'g0 = g3 = 0': (15, {'alternate': 'II* + I1* + 7I1',
                             'standard': 'I8* + 10I1'}),
        'g0 = g3 = f33 = 0': (16, {'alternate': 'II* + I2* + 6I1',
                                   'standard': 'I8* + 2I2 + 6I1'}),
    },
}


# Coefficients set to zero on the loci of Vinberg's family.
_VINBERG_LOCI = {'rank13': (), 'g0 = 0': ('g0',), 'g0 = g3 = 0': ('g0', 'g3'),
                 'g0 = g3 = f33 = 0': ('g0', 'g3', 'f33')}


def specialize(family, locus, c):
    """Move a coefficient tuple onto a locus of FIBER_TABLES."""
    family = family_name(family)
    if locus not in FIBER_TABLES[family]:
        raise UnknownNameError("family {} has no locus {!r}".format(family,
                                                                  locus))
    if locus == 'rank15':
        return specialize_rank15(c)
    if locus == 'rank16':
        return specialize_rank16(c)
    if family == 'Pdoubleprime':
        return replace(c, **{name: Rational(0)
                             for name in _VINBERG_LOCI[locus]})
    return c


def family_name(name):
    """Canonical family name of 'P', "P'", 'Pprime', "P''", ..."""
    try:
        return _ALIASES[name]
    except KeyError:
        raise UnknownNameError("unknown quartic family {!r}".format(name))


def check_fibration(family, fibration_id):
    family = family_name(family)
    if fibration_id not in FIBRATIONS[family]:
        raise UnknownNameError("family {} has no fibration {!r}".format(
            family, fibration_id))
    return family


class _Coefficients:

    """JSON keys, validation and exact coercion shared by the coefficient
    tuples.
    """

    KEYS = ()

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, rat(getattr(self, f.name)))

    def values(self):
        return tuple(getattr(self, f.name) for f in fields(self))

    def as_dict(self):
        return dict(zip(self.KEYS, self.values()))

    def to_json(self):
        return {k: exactalg.rat_str(c) for k, c in self.as_dict().items()}

    @classmethod
    def from_json(cls, data, checked=True):
        """Read a JSON object keyed by the coefficient names.

        Raises:
            InputFormatError: missing, unknown or non-rational entries.
            InvalidCoefficientsError: if checked and the tuple is invalid.
        """
        if not isinstance(data, dict):
            raise InputFormatError("coefficients must be a JSON object")
        unknown = sorted(set(data) - set(cls.KEYS))
        if unknown:
            raise InputFormatError("unknown coefficient {!r}".format(
                unknown[0]), pointer='/' + unknown[0])
        values = []
        for key in cls.KEYS:
            if key not in data:
                raise InputFormatError("missing coefficient {!r}".format(key),
                                       pointer='/' + key)
            try:
                values.append(rat(data[key]))
            except InputFormatError as e:
                raise InputFormatError(str(e), pointer='/' + key)
        coeffs = cls(*values)
        if checked:
            coeffs.validate()
        return coeffs

    def validate(self):
        raise NotImplementedError


@dataclass(frozen=True)
class QuarticCoeffsP(_Coefficients):

    """Coefficients of the quartic with lattice polarization
    H + E8(-1) + A1(-1)^4.

    The pairs (gamma, delta), (epsilon, zeta), (eta, iota), (kappa, lambda)
    define the linear forms whose product is B(u, v).
    """

    KEYS = ('alpha', 'beta', 'gamma', 'delta', 'epsilon', 'zeta', 'eta',
            'iota', 'kappa', 'lambda')

    alpha: Rational
    beta: Rational
    gamma: Rational
    delta: Rational
    epsilon: Rational
    zeta: Rational
    eta: Rational
    iota: Rational
    kappa: Rational
    lambda_: Rational

    def pairs(self):
        return (('gamma', 'delta', self.gamma, self.delta),
                ('epsilon', 'zeta', self.epsilon, self.zeta),
                ('eta', 'iota', self.eta, self.iota),
                ('kappa', 'lambda', self.kappa, self.lambda_))

    def validate(self):
        for first, second, a, b in self.pairs():
            if a == 0 and b == 0:
                raise InvalidCoefficientsError(
                    "({}, {}) must not vanish simultaneously".format(
                        first, second), names=(first, second))


@dataclass(frozen=True)
class QuarticCoeffsPPrime(_Coefficients):

    """Coefficients of the quartic with lattice polarization
    H + D8(-1) + D4(-1), in the gauge g1 = -h2.
    """

    KEYS = ('f2', 'f1', 'f0', 'g0', 'h2', 'h1', 'h0')

    f2: Rational
    f1: Rational
    f0: Rational
    g0: Rational
    h2: Rational
    h1: Rational
    h0: Rational

    @property
    def g1(self):
        return -self.h2

    def general(self):
        """The eight coefficients (f2, f1, f0, g1, g0, h2, h1, h0)."""
        return (self.f2, self.f1, self.f0, self.g1, self.g0, self.h2,
                self.h1, self.h0)

    def curly_j(self):
        """(J2, J6, J8, J10, J12, J16, J20)."""
        f2, f1, f0, g0, h2, h1, h0 = self.values()
        return (f2, f1, g0 + h1 - h2**2, f0, g0 * h2 - h1 * h2 + h0,
                g0 * h1 - h0 * h2, g0 * h0)

    def validate(self):
        if not any(self.curly_j()[1:]):
            raise InvalidCoefficientsError(
                "(J6, J8, J10, J12, J16, J20) must not vanish",
                names=('f1', 'f0', 'g0', 'h2', 'h1', 'h0'))


@dataclass(frozen=True)
class VinbergCoeffs(_Coefficients):

    """Coefficients of Vinberg's quartic."""

    KEYS = ('f12', 'f22', 'f13', 'f23', 'f33', 'g0', 'g1', 'g3')

    f12: Rational
    f22: Rational
    f13: Rational
    f23: Rational
    f33: Rational
    g0: Rational
    g1: Rational
    g3: Rational

    def validate(self):
        names = ('f13', 'f23', 'f33', 'g0', 'g1', 'g3')
        if not any(getattr(self, name) for name in names):
            raise InvalidCoefficientsError(
                "(f13, f23, f33, g0, g1, g3) must not vanish", names=names)


COEFFICIENT_TYPES = {'P': QuarticCoeffsP, 'Pprime': QuarticCoeffsPPrime,
                     'Pdoubleprime': VinbergCoeffs}


def coefficients_from_json(family, data, checked=True):
    return COEFFICIENT_TYPES[family_name(family)].from_json(data, checked)


def _lin(a, b):
    return a * u - b * v


def _p_form(c):
    return (Y**2 * Z * W - 4 * X**3 * Z + 3 * c.alpha * X * Z * W**2
            + c.beta * Z * W**3
            - Rational(1, 2) * (2 * c.gamma * X - c.delta * W)
            * (2 * c.eta * X - c.iota * W) * Z**2
            - Rational(1, 2) * (2 * c.epsilon * X - c.zeta * W)
            * (2 * c.kappa * X - c.lambda_ * W) * W**2)


def pprime_form(f2, f1, f0, g1, g0, h2, h1, h0):
    """The quartic of the P' family with all eight coefficients."""
    return (Y**2 * Z * W - 4 * X**3 * Z
            - 2 * (W**2 + f2 * W * Z + h2 * Z**2) * X**2
            - (f1 * W * Z + g1 * W**2 + h1 * Z**2) * X * Z
            - Rational(1, 2) * (f0 * W * Z + g0 * W**2 + h0 * Z**2) * Z**2)


def _vinberg_form(c):
    g = c.g0 * x0 + c.g1 * x1 + c.g3 * x3
    f = (c.f12 * x1 * x2 + c.f22 * x2**2 + c.f13 * x1 * x3
         + c.f23 * x2 * x3 + c.f33 * x3**2)
    return x0**2 * x2 * x3 - 4 * x1**3 * x3 - x2**4 - x1 * x3**2 * g \
        - x2 * x3 * f


def coordinates(family):
    """Projective coordinates of the family's P^3."""
    if family_name(family) == 'Pdoubleprime':
        return (x0, x1, x2, x3)
    return (X, Y, Z, W)


def quartic_equation(family, coeffs, checked=True):
    """The homogeneous quartic form of a family member.

    Args:
        family: 'P', 'Pprime' or 'Pdoubleprime'.
        coeffs: coefficient tuple of the family.
        checked: whether the coefficient invariants are enforced.

    Return:
        Poly in the family's coordinates.
    """
    family = family_name(family)
    if checked:
        coeffs.validate()
    if family == 'P':
        expr = _p_form(coeffs)
    elif family == 'Pprime':
        expr = pprime_form(*coeffs.general())
    else:
        expr = _vinberg_form(coeffs)
    return Poly(expr, *coordinates(family), domain=QQ)


def specialize_rank15(c):
    """The Picard rank 15 locus (kappa, lambda) = (0, 1)."""
    return replace(c, kappa=Rational(0), lambda_=Rational(1))


def specialize_rank16(c):
    """The Picard rank 16 locus (eta, iota) = (kappa, lambda) = (0, 1)."""
    return replace(c, eta=Rational(0), iota=Rational(1), kappa=Rational(0),
                   lambda_=Rational(1))


def apply_symmetry(generator, c, lam=None):
    """Isomorphic member of the P family.

    Args:
        generator: 'a' swaps (gamma, delta) and (epsilon, zeta), 'b' swaps
            (gamma, delta) and (eta, iota), 'c' swaps (epsilon, zeta) and
            (kappa, lambda), 'd' rescales by lam.
        c: QuarticCoeffsP.
        lam: nonzero rational, for generator 'd'.
    """
    if generator == 'a':
        return replace(c, gamma=c.epsilon, delta=c.zeta, epsilon=c.gamma,
                       zeta=c.delta)
    if generator == 'b':
        return replace(c, gamma=c.eta, delta=c.iota, eta=c.gamma,
                       iota=c.delta)
    if generator == 'c':
        return replace(c, epsilon=c.kappa, zeta=c.lambda_, kappa=c.epsilon,
                       lambda_=c.zeta)
    if generator == 'd':
        lam = rat(lam) if lam is not None else Rational(0)
        if lam == 0:
            raise PreconditionError("rescaling needs a nonzero Lambda")
        return replace(c, alpha=lam**4 * c.alpha, beta=lam**6 * c.beta,
                       gamma=lam**10 * c.gamma, delta=lam**12 * c.delta,
                       epsilon=c.epsilon / lam**2, eta=c.eta / lam**2,
                       kappa=c.kappa / lam**2)
    raise UnknownNameError("unknown symmetry {!r}".format(generator))


def scale_pprime(c, lam):
    """The C^* action on the P' coefficients; it preserves g1 = -h2."""
    lam = rat(lam)
    if lam == 0:
        raise PreconditionError("rescaling needs a nonzero Lambda")
    return QuarticCoeffsPPrime(c.f2 * lam**2, c.f1 * lam**6, c.f0 * lam**10,
                               c.g0 * lam**8, c.h2 * lam**4, c.h1 * lam**8,
                               c.h0 * lam**12)


def shift_pprime(coeffs, lam):
    """Coefficients of the P' quartic after X -> X - lam Z.

    Args:
        coeffs: (f2, f1, f0, g1, g0, h2, h1, h0).
    """
    f2, f1, f0, g1, g0, h2, h1, h0 = (rat(c) for c in coeffs)
    lam = rat(lam)
    return (f2, f1 - 4 * f2 * lam, f0 - 2 * f1 * lam + 4 * f2 * lam**2,
            g1 - 4 * lam, g0 - 2 * g1 * lam + 4 * lam**2, h2 - 6 * lam,
            h1 - 4 * h2 * lam + 12 * lam**2,
            h0 - 2 * h1 * lam + 4 * h2 * lam**2 - 8 * lam**3)


def restore_gauge(coeffs):
    """Shift a general P' coefficient set into the gauge g1 + h2 = 0."""
    coeffs = tuple(rat(c) for c in coeffs)
    lam = (coeffs[3] + coeffs[5]) / 10
    f2, f1, f0, _, g0, h2, h1, h0 = shift_pprime(coeffs, lam)
    return QuarticCoeffsPPrime(f2, f1, f0, g0, h2, h1, h0)


def scale_vinberg(c, lam):
    """Rescaling of Vinberg's coefficients; g0 has weight seven."""
    lam = rat(lam)
    if lam == 0:
        raise PreconditionError("rescaling needs a nonzero Lambda")
    return VinbergCoeffs(c.f12 * lam**4, c.f22 * lam**6, c.f13 * lam**10,
                         c.f23 * lam**12, c.f33 * lam**18, c.g0 * lam**7,
                         c.g1 * lam**8, c.g3 * lam**16)


@dataclass(frozen=True)
class Pencil:

    """A pencil substitution and the Weierstrass form it produces.

    Attributes:
        image: coordinate -> expression in x, y, z, u, v, r.
        e, f, g: binary forms (possibly with a power of u in the
            denominator) of the Weierstrass equation.
    """

    image: dict
    e: object
    f: object
    g: object

    def weierstrass(self):
        return y**2 * z - (x**3 + self.e * x**2 * z + self.f * x * z**2
                           + self.g * z**3)


def _p_invariant_sums(c):
    s = c.gamma * c.epsilon * c.eta * c.kappa
    s1 = (c.gamma * c.zeta * c.eta * c.kappa
          + c.delta * c.epsilon * c.eta * c.kappa
          + c.gamma * c.epsilon * c.eta * c.lambda_
          + c.gamma * c.epsilon * c.iota * c.kappa)
    s2 = (c.gamma * c.zeta * c.eta * c.lambda_
          + c.gamma * c.zeta * c.iota * c.kappa
          + c.delta * c.epsilon * c.eta * c.lambda_
          + c.delta * c.epsilon * c.iota * c.kappa
          + c.gamma * c.epsilon * c.iota * c.lambda_
          + c.delta * c.zeta * c.eta * c.kappa)
    return s, s1, s2


def _p_pencil(fid, c, variant):
    al, be = c.alpha, c.beta
    ga, de, ep, ze = c.gamma, c.delta, c.epsilon, c.zeta
    et, io, ka, la = c.eta, c.iota, c.kappa, c.lambda_
    A = u**3 - 3 * al * u * v**2 - 2 * be * v**3
    E, K = _lin(ep, ze), _lin(ka, la)
    G, H = _lin(ga, de), _lin(et, io)
    B = G * E * H * K
    if fid == 'alternate':
        image = {X: u * v * x, Y: r * y, Z: 2 * v**4 * E * K * z,
                 W: 2 * v**2 * x}
        return Pencil(image, v * A, v**4 * B, 0)
    if fid == 'standard':
        image = {X: u * v * x, Y: r * y, Z: 2 * u**4 * v**2 * z,
                 W: 2 * u**3 * v**3 * z}
        return Pencil(
            image, u * v * (ga * et * u**2 + ep * ka * v**2),
            -u**3 * v**3 * ((ga * io + de * et) * u**2 + 3 * al * u * v
                            + (ep * la + ze * ka) * v**2),
            u**5 * v**5 * (de * io * u**2 - 2 * be * u * v + ze * la * v**2))
    if fid == 'base_fiber_dual':
        m = u + ga * ep * et * v
        sign = 1 if variant == 'printed' else -1
        image = {X: u * v * x, Y: r * y,
                 Z: 2 * v**2 * (ep * x + sign * ze * m * u * v**2 * z),
                 W: 2 * m * u**2 * v**3 * z}
        return Pencil(
            image, -u * v**3 * (ga * ep * io + ga * ze * et + de * ep * et),
            u**2 * v**3 * m * (ka * u**2 - 3 * al * u * v
                               + (ga * ze * io + de * ep * io
                                  + de * ze * et) * v**2),
            -u**3 * v**5 * m**2 * (la * u**2 + 2 * be * u * v
                                   + de * ze * io * v**2))
    if fid == 'base_fiber_dual_prime':
        s, s1, s2 = _p_invariant_sums(c)
        if s == 0:
            raise PreconditionError(
                "base_fiber_dual_prime needs gamma epsilon eta kappa != 0")
        c0 = (2 * be * s - de * ze * et * la - de * ze * io * ka
              - ga * ze * io * la - ep * de * io * la)
        c1 = 3 * al * s + 2 * s2
        if variant == 'printed':
            c1 -= ga * ep * io * la
        q1 = u * x - s * v * B * z
        q2 = x - ga * ep * et * ka**2 * v * G * E * H * z
        q3 = x - ga * ep**2 * et * ka * v * G * K * H * z
        image = {X: s**2 * v * G * H * q1 * z, Y: r * s * G * H * y * z,
                 Z: 2 * q2 * q3, W: 2 * s**2 * v**2 * G * H * x * z}
        return Pencil(
            image,
            -s * v * (3 * s * u**3 - 3 * s1 * u**2 * v + c1 * u * v**2
                      + c0 * v**3),
            s**2 * v**2 * B * (3 * s * u**2 - 3 * s1 * u * v
                               + (s**2 + 3 * al * s + s2) * v**2),
            -s**3 * v**3 * B**2 * (s * u - s1 * v))
    s = ga * ep * et * ka
    sign = -1 if variant == 'printed' else 1
    image = {X: u**2 * v * x, Y: r * u * y, Z: 2 * u * v**4 * E * K * z,
             W: 2 * v**2 * (u * x + sign * ga * et * E * K * v**3 * z)}
    return Pencil(
        image,
        v / u * (u**4 - (3 * al - s) * u**2 * v**2
                 - 2 * (be + ga * ep * et * la + ga * ze * et * ka) * u * v**3
                 + 3 * ga * ze * et * la * v**4),
        -v**5 / u**2 * E * K * ((ga * io + de * et) * u**3
                                + (3 * al * ga * et - de * io) * u**2 * v
                                + ga * et * (4 * be + ga * ep * et * la
                                             + ga * ze * et * ka) * u * v**2
                                - 3 * ga**2 * ze * et**2 * la * v**3),
        ga * et * v**9 / u**3 * E**2 * K**2 * (de * io * u**2
                                               - 2 * be * ga * et * u * v
                                               + ga**2 * ze * et**2 * la
                                               * v**2))


def _pprime_pencil(fid, c, variant):
    f2, f1, f0, g1, g0, h2, h1, h0 = c.general()
    F = f2 * u**2 + f1 * u * v + f0 * v**2
    G = u**2 + g1 * u * v + g0 * v**2
    H = u**3 + h2 * u**2 * v + h1 * u * v**2 + h0 * v**3
    if fid == 'alternate':
        image = {X: u * v * x, Y: r * y,
                 Z: 2 * v**2 * (z if variant == 'printed' else x),
                 W: 2 * v**3 * H * z}
        return Pencil(image, v**2 * F, v**3 * H * G, 0)
    image = {X: 2 * u * v * x, Y: y, Z: 8 * u**4 * v**2 * z,
             W: 32 * u**3 * v**3 * z}
    return Pencil(
        image, 2 * u * v * (h2 * u**2 + 4 * f2 * u * v + 16 * v**2),
        4 * u**4 * v**2 * (h1 * u**2 + 4 * f1 * u * v + 16 * g1 * v**2),
        8 * u**7 * v**3 * (h0 * u**2 + 4 * f0 * u * v + 16 * g0 * v**2))


def _vinberg_pencil(fid, c, variant):
    if fid == 'alternate':
        shift = c.g0 * v**2 / 2 if variant == 'printed' \
            else c.g0 * v**2 * x / 2
        image = {x0: y + shift, x1: u * v * x, x2: 4 * u**3 * v**3 * z,
                 x3: 4 * u**2 * v**4 * z}
        return Pencil(
            image, c.g0**2 * v**4 / 4 + c.g1 * u * v**3,
            4 * u**3 * v**4 * (c.f12 * u + c.f13 * v) + 4 * c.g3 * u**2 * v**6,
            16 * u**4 * v**5 * (u**3 + c.f22 * u**2 * v + c.f23 * u * v**2
                                + c.f33 * v**3))
    image = {x0: r * y + c.g0 * u * v**5 * z, x1: u * v * x,
             x2: 2 * v**2 * x, x3: 4 * v**6 * z}
    return Pencil(
        image, u**3 * v + v**3 * (c.f12 * u + 2 * c.f22 * v),
        c.g1 * u**2 * v**6 + 2 * v**7 * (c.f13 * u + 2 * c.f23 * v),
        c.g0**2 * u**2 * v**10 / 2 + 4 * c.g3 * u * v**11
        + 8 * c.f33 * v**12)


# Fibrations whose printed substitution or model differs from the one
# that satisfies the identity.
PRINTED_VARIANTS = {
    'P': ('base_fiber_dual', 'base_fiber_dual_prime', 'maximal'),
    'Pprime': ('alternate',),
    'Pdoubleprime': ('alternate',),
}


def pencil(family, fibration_id, coeffs, variant='corrected'):
    """Pencil substitution and Weierstrass forms of a fibration.

    Args:
        variant: 'corrected', or 'printed' for the historical form of the
            fibrations listed in PRINTED_VARIANTS.
    """
    family = check_fibration(family, fibration_id)
    if variant not in ('corrected', 'printed'):
        raise UnknownNameError("unknown variant {!r}".format(variant))
    if family == 'P':
        return _p_pencil(fibration_id, coeffs, variant)
    if family == 'Pprime':
        return _pprime_pencil(fibration_id, coeffs, variant)
    return _vinberg_pencil(fibration_id, coeffs, variant)


def fibration_model(family, fibration_id, coeffs):
    """Weierstrass model of a fibration in the affine base coordinate t.

    The maximal fibration of the P family is shifted to a2 = 0, which makes
    its coefficients polynomial.

    Return:
        WeierstrassModel of chart weight 2.
    """
    family = check_fibration(family, fibration_id)
    coeffs.validate()
    pen = pencil(family, fibration_id, coeffs)
    e, f, g = (sympy.cancel(sympy.sympify(a).subs({u: t, v: 1}))
               for a in (pen.e, pen.f, pen.g))
    if family == 'P' and fibration_id == 'maximal':
        e, f, g = (0, sympy.cancel(f - e**2 / 3),
                   sympy.cancel(g - e * f / 3 + 2 * e**3 / 27))
    for a in (e, f, g):
        if sympy.fraction(sympy.sympify(a))[1] != 1:
            raise InternalInvariantError(
                "{} {}: coefficient {} is not polynomial".format(
                    family, fibration_id, a))
    return WeierstrassModel.build(e, f, g, weight=2)


@dataclass
class SubstitutionReport:

    """Outcome of a pencil substitution identity.

    Attributes:
        holds: whether the substituted quartic is a multiple of the
            Weierstrass equation.
        cofactor: the multiplier found by exact division (str), or None.
        monomial: whether the cofactor is a monomial.
        residual: leading term of the remainder when the identity fails.
        exact: False when decided by random evaluation.
    """

    family: str
    fibration: str
    variant: str
    holds: bool
    cofactor: str = None
    monomial: bool = None
    residual: str = None
    exact: bool = True

    def to_json(self):
        return dict(self.__dict__)


def _reduce_sqrt2(expr):
    """expr with r^2 replaced by 2."""
    return sympy.rem(sympy.expand(expr), r**2 - 2, r)


def verify_pencil_substitution(family, fibration_id, coeffs,
                               variant='corrected', fast=False, rng=None,
                               trials=None):
    """Substitute a pencil parametrization into the quartic.

    Exact mode divides the substituted quartic by the numerator of the
    Weierstrass equation and reports the quotient. Fast mode reduces the
    substituted quartic modulo y^2 = (x^3 + e x^2 z + f x z^2 + g z^3)/z at
    random points.

    Return:
        SubstitutionReport.
    """
    family = check_fibration(family, fibration_id)
    pen = pencil(family, fibration_id, coeffs, variant)
    form = quartic_equation(family, coeffs, checked=False).as_expr()
    report = SubstitutionReport(family, fibration_id, variant, False,
                                exact=not fast)
    if fast:
        rng = rng or random.Random()
        if trials is None:
            from kfourteen.config import config
            trials = config.var.setting('verify', 'identity_trials')
        report.holds = _probably_on_curve(form, pen, rng, trials)
        if not report.holds:
            log.quartics.error("{} {} ({}): identity fails.".format(
                family, fibration_id, variant))
        return report

    image = _reduce_sqrt2(form.xreplace(pen.image))
    if image.has(r):
        report.residual = 'odd power of sqrt(2) survives'
        log.quartics.error("{} {} ({}): identity fails.".format(
            family, fibration_id, variant))
        return report
    num, den = sympy.fraction(sympy.together(pen.weierstrass()))
    gens = (y, x, z, u, v)
    (quotient,), rem = sympy.reduced(image, [sympy.expand(num)], *gens,
                                     domain=QQ)
    if rem != 0:
        lead = Poly(rem, *gens, domain=QQ)
        monom, coeff = lead.LT()
        report.residual = str(coeff * sympy.Mul(*[
            s**k for s, k in zip(gens, monom)]))
        log.quartics.error("{} {} ({}): identity fails.".format(
            family, fibration_id, variant))
        return report
    cofactor = Poly(sympy.cancel(quotient * den), x, y, z, u, v, domain=QQ)
    report.holds = True
    report.cofactor = str(cofactor.as_expr())
    report.monomial = cofactor.is_monomial
    log.quartics.info("{} {} ({}): cofactor {}.".format(
        family, fibration_id, variant, report.cofactor))
    return report


def _probably_on_curve(form, pen, rng, trials):
    for _ in range(trials):
        point = {s: exactalg.random_rational(rng, 10**4, nonzero=True)
                 for s in (x, z, u, v)}
        rhs = (x**3 + pen.e * x**2 * z + pen.f * x * z**2
               + pen.g * z**3) / z
        rhs = sympy.sympify(rhs).xreplace(point)
        image = {k: sympy.sympify(e).xreplace(point)
                 for k, e in pen.image.items()}
        value = _reduce_sqrt2(form.xreplace(image))
        value = sympy.rem(sympy.expand(value), y**2 - rhs, y)
        if sympy.expand(value) != 0:
            return False
    return True


def nikulin_involution(family, coeffs):
    """The involution of P^3 as a tuple of coordinate images."""
    family = family_name(family)
    if family == 'P':
        c = coeffs
        p1 = (2 * c.gamma * X - c.delta * W) * (2 * c.eta * X - c.iota * W)
        p2 = (2 * c.epsilon * X - c.zeta * W) \
            * (2 * c.kappa * X - c.lambda_ * W)
        return (p1 * X * Z, -p1 * Y * Z, p2 * W**2, p1 * W * Z)
    if family == 'Pprime':
        _, _, _, g1, g0, h2, h1, h0 = coeffs.general()
        q = (2 * X)**2 + g1 * 2 * X * Z + g0 * Z**2
        h = (2 * X)**3 + h2 * (2 * X)**2 * Z + h1 * 2 * X * Z**2 \
            + h0 * Z**3
        return (q * X * W, -q * Y * W, q * Z * W, h * Z)
    raise PreconditionError("no Nikulin involution is modelled for {}"
                            .format(family))


def _pulls_back_to_zero(form, source_vars, images, target):
    gens = target.gens
    var = Y if Y in gens else x0
    pulled = sympy.expand(form.xreplace(dict(zip(source_vars, images))))
    pulled = Poly(pulled, *gens, domain=QQ)
    return exactalg.pseudo_reduce(pulled, target, var).is_zero


def _proportional(first, second, target):
    """Whether two coordinate tuples agree as points of the target surface:
    all 2x2 minors vanish modulo target.
    """
    gens = target.gens
    var = Y if Y in gens else x0
    for i in range(4):
        for j in range(i + 1, 4):
            minor = Poly(sympy.expand(first[i] * second[j]
                                      - first[j] * second[i]),
                         *gens, domain=QQ)
            if not exactalg.pseudo_reduce(minor, target, var).is_zero:
                return False
    return True


def nikulin_involution_check(family, coeffs, images=None):
    """Whether the involution preserves the quartic and squares to the
    identity on it.

    Args:
        images: override of the involution (used to test the harness).
    """
    family = family_name(family)
    form = quartic_equation(family, coeffs)
    psi = images or nikulin_involution(family, coeffs)
    if not _pulls_back_to_zero(form.as_expr(), (X, Y, Z, W), psi, form):
        log.quartics.error("{}: involution does not preserve the quartic."
                           .format(family))
        return False
    twice = tuple(sympy.expand(p.xreplace(dict(zip((X, Y, Z, W), psi))))
                  for p in psi)
    if not _proportional(twice, (X, Y, Z, W), form):
        log.quartics.error("{}: involution is not involutive.".format(
            family))
        return False
    return True


def _p_pencils(c):
    ga, de, ep, ze = c.gamma, c.delta, c.epsilon, c.zeta
    et, io, ka, la = c.eta, c.iota, c.kappa, c.lambda_
    p1 = (2 * ga * X - de * W) * (2 * et * X - io * W)
    p2 = (2 * ep * X - ze * W) * (2 * ka * X - la * W)
    e_form, k_form = 2 * ep * X - ze * W, 2 * ka * X - la * W
    c3_tilde = (ep * ka * e_form * (k_form + ga * ka * et * Z)
                - ka * ep * k_form * (e_form + ga * ep * et * Z),
                -ep * la * e_form * (k_form + ga * ka * et * Z)
                + ka * ze * k_form * (e_form + ga * ep * et * Z))
    s = ga * ep * et * ka
    c3_prime = (-s * W**3,
                2 * s * W**2 * X + de * io * W**2 * Z
                - 2 * (ga * io + de * et) * W * X * Z
                + 4 * ga * et * X**2 * Z)
    return {
        'L2': ((W, -Z), {'printed': (-Z * p1, W * p2),
                         'corrected': (-Z * p1, W * p2)}),
        'L3': ((Z, -e_form),
               {'printed': (-(2 * et * X - W) * W**2 * (2 * ka * X - W),
                            Z * (2 * ga * X - de * W)),
                'corrected': (-W**2 * k_form, Z * p1)}),
        'L4': ((W, -2 * (2 * X + ga * et * Z)),
               {'printed': (W * Z * (2 * ga * X - de * W) * (2 * et * X - W),
                            -(ga * ze * et * W**4
                              - 2 * ga * et * (ep + ze * ka) * W**3 * X
                              + 4 * s * W**2 * X**2
                              + 2 * de * W**2 * X * Z
                              - 4 * (ga + de * et) * W * X**2 * Z
                              + 8 * ga * et * X**3 * Z)),
                'corrected': (W * Z * p1,
                              -(ga * ze * et * la * W**4
                                - 2 * ga * et * (ep * la + ze * ka)
                                * W**3 * X
                                + 4 * s * W**2 * X**2
                                + 2 * de * io * W**2 * X * Z
                                - 4 * (ga * io + de * et) * W * X**2 * Z
                                + 8 * ga * et * X**3 * Z))}),
        'C3_tilde': (c3_tilde, {'printed': c3_prime,
                                'corrected': c3_prime}),
    }


PENCIL_NAMES = ('L2', 'L3', 'L4', 'C3_tilde')


def pencil_image_check(c, name, variant='corrected'):
    """Whether the involution carries the pencil `name` onto the stated
    image pencil, member by member.

    A pencil is a pair (p_u, p_v) standing for u p_u + v p_v.
    """
    pencils = _p_pencils(c)
    if name not in pencils:
        raise UnknownNameError("unknown pencil {!r}".format(name))
    source, images = pencils[name]
    target = images[variant]
    psi = nikulin_involution('P', c)
    pulled = [sympy.expand(sympy.sympify(p).xreplace(
        dict(zip((X, Y, Z, W), psi)))) for p in source]
    gens = (X, Y, Z, W)
    first = Poly(sympy.expand(pulled[0] * target[1]), *gens, domain=QQ)
    second = Poly(sympy.expand(pulled[1] * target[0]), *gens, domain=QQ)
    if first.is_zero or second.is_zero:
        return first.is_zero and second.is_zero
    ratio = first.LC() / second.LC()
    return (first - second * ratio).is_zero


def pencil_image_report(c):
    """pencil -> {'printed': bool, 'corrected': bool}."""
    return {name: {variant: pencil_image_check(c, name, variant)
                   for variant in ('printed', 'corrected')}
            for name in PENCIL_NAMES}


def vinberg_from_p(c):
    """Vinberg coefficients matching a P member with
    (eta, iota) = (kappa, lambda) = (0, 1).
    """
    if (c.eta, c.iota, c.kappa, c.lambda_) != (0, 1, 0, 1):
        raise PreconditionError(
            "the Vinberg comparison needs (eta, iota) = (kappa, lambda) = "
            "(0, 1)")
    return VinbergCoeffs(-3 * c.alpha, -c.beta,
                         -(c.gamma * c.zeta + c.delta * c.epsilon) / 2,
                         c.delta * c.zeta / 4, 0, 0, c.gamma * c.epsilon, 0)


def vinberg_birational_check(c):
    """Whether the birational map between the P member and Vinberg's
    quartic, and its inverse, carry each quartic into the other's ideal.
    """
    vc = vinberg_from_p(c)
    p_form = quartic_equation('P', c)
    v_form = quartic_equation('Pdoubleprime', vc, checked=False)
    ep, ze = c.epsilon, c.zeta
    forward = (2 * x1 * x2, 2 * x0 * x2, -x3 * (2 * ep * x1 - ze * x2),
               2 * x2**2)
    lin = 2 * ep * X - ze * W
    backward = (lin * Y, lin * X, lin * W, -2 * Z * W)
    ok = (_pulls_back_to_zero(p_form.as_expr(), (X, Y, Z, W), forward,
                              v_form)
          and _pulls_back_to_zero(v_form.as_expr(), (x0, x1, x2, x3),
                                  backward, p_form))
    if not ok:
        log.quartics.error("Vinberg comparison fails for {}.".format(
            c.to_json()))
    return ok
