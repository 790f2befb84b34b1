"""Invariants of the quartic families as points of weighted projective
spaces.

A point is a tuple of exact rationals together with the weights of its
coordinates; two tuples describe the same surface if and only if they
differ by the action x_i -> Lambda^{w_i} x_i of some nonzero Lambda.
"""

from dataclasses import dataclass
from functools import reduce
import sympy
from sympy import Rational
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import rat, t, upoly
from kfourteen.surfaces import quartics
from kfourteen.surfaces.ellfib import (WeierstrassModel, moebius_transform,
                                       rescale_model)
from kfourteen.utils import log
from kfourteen.utils.errors import (InputFormatError,
                                    InternalInvariantError,
                                    PreconditionError, UnknownNameError)

# Weights of the coordinates of every moduli space.
WEIGHTS = {
    'P': (4, 4, 6, 6, 8, 10, 12),
    'Pprime': (2, 6, 8, 10, 12, 16, 20),
    'Pdoubleprime': (4, 6, 8, 10, 12, 16, 18),
    'Vinberg13': (4, 6, 8, 10, 12, 14, 16, 18),
    'Rank18': (2, 4, 8),
}

# Coordinate names used in JSON and text output.
NAMES = {
    'P': ('j4', "j4'", 'j6', "j6'", 'j8', 'j10', 'j12'),
    'Pprime': ('J2', 'J6', 'J8', 'J10', 'J12', 'J16', 'J20'),
    'Pdoubleprime': ('j4', 'j6', 'j8', 'j10', 'j12', 'j16', 'j18'),
    'Vinberg13': ('j4', 'j6', 'j8', 'j10', 'j12', 'j14', 'j16', 'j18'),
    'Rank18': ('c0', 'd1', 'd0'),
}

# Coordinates of which at least one has to be nonzero inside the coarse
# moduli space.
NONVANISHING = {
    'P': (1, 3, 4, 5, 6),
    'Pprime': (1, 2, 3, 4, 5, 6),
    'Pdoubleprime': (2, 3, 4, 5, 6),
    'Vinberg13': (2, 3, 4, 5, 6, 7),
    'Rank18': (2,),
}


@dataclass(frozen=True)
class ModuliPoint:

    """A point of a weighted projective space.

    Attributes:
        family: key of WEIGHTS (str).
        coords: exact coordinates (tuple of Rational).
    """

    family: str
    coords: tuple

    def __post_init__(self):
        if self.family not in WEIGHTS:
            raise UnknownNameError("unknown moduli space {!r}".format(
                self.family))
        coords = tuple(rat(c) for c in self.coords)
        if len(coords) != len(WEIGHTS[self.family]):
            raise InputFormatError("{} needs {} coordinates, got {}".format(
                self.family, len(WEIGHTS[self.family]), len(coords)),
                pointer='/coords')
        object.__setattr__(self, 'coords', coords)

    @property
    def weights(self):
        return WEIGHTS[self.family]

    @property
    def names(self):
        return NAMES[self.family]

    def as_dict(self):
        return dict(zip(self.names, self.coords))

    def in_moduli_space(self):
        """Whether the nonvanishing condition of the family holds."""
        return any(self.coords[i] for i in NONVANISHING[self.family])

    def scaled(self, lam):
        """The point Lambda . p."""
        lam = rat(lam)
        if lam == 0:
            raise PreconditionError("rescaling needs a nonzero Lambda")
        return ModuliPoint(self.family, [lam**w * c for w, c in
                                         zip(self.weights, self.coords)])

    def canonical(self):
        """Representative whose first nonzero coordinate is +-1, provided a
        rational Lambda achieves it; otherwise the point itself.
        """
        for w, c in zip(self.weights, self.coords):
            if c == 0:
                continue
            root = exactalg.rational_root(abs(c), w)
            if root is None:
                return self
            return self.scaled(1 / root)
        return self

    def to_json(self):
        return {'family': self.family, 'weights': list(self.weights),
                'names': list(self.names),
                'coords': [exactalg.rat_str(c) for c in self.coords],
                'canonical': [exactalg.rat_str(c)
                              for c in self.canonical().coords],
                'in_moduli_space': self.in_moduli_space()}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise InputFormatError("moduli point must be a JSON object")
        try:
            family, coords = data['family'], data['coords']
        except KeyError as e:
            raise InputFormatError("missing key {}".format(e),
                                   pointer='/' + e.args[0])
        if not isinstance(coords, list):
            raise InputFormatError("coords must be a list",
                                   pointer='/coords')
        return cls(family, coords)


def check_point(p, family):
    """Raise if p is not a point of the given moduli space."""
    if p.family != family:
        raise PreconditionError("expected a {} point, got {}".format(
            family, p.family))


def _flag(p):
    if not p.in_moduli_space():
        log.moduli.info("{} point {} violates the nonvanishing condition "
                        "and lies outside the coarse moduli space.".format(
                            p.family, [exactalg.rat_str(c)
                                       for c in p.coords]))
    return p


@dataclass(frozen=True)
class ABPair:

    """The polynomials A and B of y^2 = x^3 + A x^2 + B x.

    Attributes:
        A: monic cubic in t without t^2 term.
        B: polynomial of degree at most four.
    """

    A: sympy.Poly
    B: sympy.Poly

    def __post_init__(self):
        A, B = upoly(self.A), upoly(self.B)
        if A.degree() != 3 or A.LC() != 1 or A.coeff_monomial(t**2) != 0:
            raise PreconditionError("A must be monic cubic without t^2 "
                                    "term, got {}".format(
                                        exactalg.poly_to_text(A)))
        if exactalg.degree(B) > 4:
            raise PreconditionError("B must have degree at most 4")
        object.__setattr__(self, 'A', A)
        object.__setattr__(self, 'B', B)

    @property
    def a(self):
        """(a1, a0)."""
        return (self.A.coeff_monomial(t), self.A.coeff_monomial(1))

    @property
    def b(self):
        """(b4, b3, b2, b1, b0)."""
        return tuple(self.B.coeff_monomial(t**k) for k in range(4, -1, -1))

    def satake(self):
        """The Satake sextic A^2 - 4 B."""
        return self.A**2 - 4 * self.B

    def model(self):
        """The alternate fibration y^2 = x^3 + A x^2 + B x."""
        return WeierstrassModel.build(self.A, self.B, 0, weight=2)

    @classmethod
    def from_coefficients(cls, c):
        """The pair of a member of the P family."""
        B = ((c.gamma * t - c.delta) * (c.epsilon * t - c.zeta)
             * (c.eta * t - c.iota) * (c.kappa * t - c.lambda_))
        return cls(t**3 - 3 * c.alpha * t - 2 * c.beta, sympy.expand(B))


def gauge_normalize(A_raw, B_raw):
    """Bring y^2 = x^3 + A x^2 + B x into the gauge of ABPair.

    With a the leading coefficient of A, the base change t -> a t + q
    followed by (x, y) -> (x / a^4, y / a^6) makes A monic; q removes the
    t^2 term.

    Args:
        A_raw: polynomial of degree exactly three.
        B_raw: polynomial of degree at most four.

    Return:
        ABPair.
    """
    A_raw, B_raw = upoly(A_raw), upoly(B_raw)
    if A_raw.degree() != 3:
        raise PreconditionError("A must be a cubic, got degree {}".format(
            exactalg.degree(A_raw)))
    if exactalg.degree(B_raw) > 4:
        raise PreconditionError("B must have degree at most 4")
    lead = A_raw.LC()
    shift = -A_raw.coeff_monomial(t**2) / (3 * lead)
    m = WeierstrassModel(A_raw, B_raw, upoly(0), 2)
    m = rescale_model(moebius_transform(m, lead, shift, 0, 1),
                      1 / lead**2)
    log.moduli.debug("Gauge fixed by t -> {} t + {}.".format(lead, shift))
    return ABPair(m.a2, m.a4)


def invariants_from_pair(pair):
    """(j4, j4', j6, j6', j8, j10, j12) of a normalized pair.

    Return:
        ModuliPoint of the P family.
    """
    a1, a0 = pair.a
    b4, b3, b2, b1, b0 = pair.b
    j4 = -a1 / 3 + 2 * b4 / 3
    j6 = -a0 / 2 + b3
    j8 = b2 - a1 * b4 + b4**2
    j10 = a0 * b4 + a1 * b3 - b1 - 2 * b3 * b4
    j12 = b0 - a0 * b3 + b3**2
    return ModuliPoint('P', (j4, b4, j6, b3, j8, j10, j12))


def _closed_form_P(c):
    al, be = c.alpha, c.beta
    ge = c.gamma * c.epsilon
    hk = c.eta * c.kappa
    il = c.iota * c.lambda_
    dz = c.delta * c.zeta
    s = ge * hk
    p = c.gamma * c.zeta + c.delta * c.epsilon
    q = c.eta * c.lambda_ + c.iota * c.kappa
    j6p = -ge * q - p * hk
    return (al + 2 * s / 3, s, be + j6p, j6p,
            ge * il + p * q + (3 * al * ge + dz) * hk + s**2,
            p * il + (3 * al * ge + dz) * q + (3 * al * p - 2 * be * ge) * hk
            + 2 * ge**2 * q * hk + 2 * ge * p * hk**2,
            dz * il - 2 * be * ge * q + 2 * (ge**2 * il - be * p) * hk
            + ge**2 * (c.eta**2 * c.lambda_**2 + c.iota**2 * c.kappa**2)
            + 2 * s * p * q + p**2 * hk**2)


def invariants_P(c):
    """Moduli point of a member of the P family.

    The coordinates are computed from the expanded pair (A, B) and again
    from closed expressions in the coefficients; both have to agree.

    Args:
        c: QuarticCoeffsP.

    Return:
        ModuliPoint (j4, j4', j6, j6', j8, j10, j12).
    """
    point = invariants_from_pair(ABPair.from_coefficients(c))
    if point.coords != _closed_form_P(c):
        raise InternalInvariantError(
            "closed form invariants disagree with the Satake route")
    return _flag(point)


def intro_invariants_P(c):
    """(J4, J4', J6, J6', J8, J10, J12) = (-a1/3, b4, -a0/2, -b3, b2, -b1,
    b0).
    """
    pair = ABPair.from_coefficients(c)
    a1, a0 = pair.a
    b4, b3, b2, b1, b0 = pair.b
    return ModuliPoint('P', (-a1 / 3, b4, -a0 / 2, -b3, b2, -b1, b0))


def intro_to_body(J):
    """Convert the intro tuple into (j4, j4', j6, j6', j8, j10, j12)."""
    J4, J4p, J6, J6p, J8, J10, J12 = J.coords
    a1, a0 = -3 * J4, -2 * J6
    b4, b3, b2, b1, b0 = J4p, -J6p, J8, -J10, J12
    return invariants_from_pair(ABPair(t**3 + a1 * t + a0,
                                       b4 * t**4 + b3 * t**3 + b2 * t**2
                                       + b1 * t + b0))


def invariants_PPrime(c):
    """(J2, J6, J8, J10, J12, J16, J20) of a member of the P' family."""
    return _flag(ModuliPoint('Pprime', c.curly_j()))


def invariants_Vinberg(c):
    """(j4, ..., j18) of Vinberg's quartic; j14 = g0^2."""
    return _flag(ModuliPoint('Vinberg13', (
        -c.f12 / 3, -c.f22, c.g1, -2 * c.f13, 4 * c.f23, c.g0**2, c.g3,
        c.f33)))


def intro_invariants_Vinberg(c):
    """(S4, S6, S8, S10, S12, S16, S18) = (f12, f22, g1, f13, f23, g3,
    f33)."""
    return (c.f12, c.f22, c.g1, c.f13, c.f23, c.g3, c.f33)


def pdoubleprime_point(p):
    """The P'' point of a rank 13 point on the locus j14 = 0."""
    check_point(p, 'Vinberg13')
    if p.coords[5] != 0:
        raise PreconditionError("the P'' locus needs j14 = g0^2 = 0")
    return _flag(ModuliPoint('Pdoubleprime',
                             p.coords[:5] + p.coords[6:]))


def satake_sextic(j4, j6, j8, j10, j12):
    """S(t) = (t^3 - 3 j4 t - 2 j6)^2 - 4 (j8 t^2 - j10 t + j12)."""
    j4, j6, j8, j10, j12 = (rat(j) for j in (j4, j6, j8, j10, j12))
    return upoly((t**3 - 3 * j4 * t - 2 * j6)**2
                 - 4 * (j8 * t**2 - j10 * t + j12))


def satake_of_point(p):
    check_point(p, 'P')
    j4, _, j6, _, j8, j10, j12 = p.coords
    return satake_sextic(j4, j6, j8, j10, j12)


@dataclass(frozen=True)
class SatakePowerSums:

    """Power sums s_{2k} = x_1^k + ... + x_6^k of the Satake roots; the
    roots sum to zero.
    """

    s4: Rational
    s6: Rational
    s8: Rational
    s10: Rational
    s12: Rational

    @classmethod
    def from_roots(cls, roots):
        roots = [rat(x) for x in roots]
        if len(roots) != 6 or sum(roots) != 0:
            raise PreconditionError("need six roots with vanishing sum")
        return cls(*(sum(x**k for x in roots) for k in range(2, 7)))

    @classmethod
    def from_sextic(cls, S):
        """Newton's identities for a monic sextic with zero t^5 term."""
        S = upoly(S)
        if S.degree() != 6 or S.LC() != 1 or S.coeff_monomial(t**5) != 0:
            raise PreconditionError("not a Satake sextic")
        coeffs = S.all_coeffs()
        e = [Rational(1)] + [(-1)**k * coeffs[k] for k in range(1, 7)]
        sums = [Rational(6)]
        for k in range(1, 7):
            value = (-1)**(k - 1) * k * e[k]
            for i in range(1, k):
                value += (-1)**(i - 1) * e[i] * sums[k - i]
            sums.append(value)
        return cls(*sums[2:])


def power_sums_to_j(s):
    """(j4, j6, j8, j10, j12) of the Satake power sums."""
    return (s.s4 / 12, s.s6 / 12, (4 * s.s8 - s.s4**2) / 64,
            (5 * s.s4 * s.s6 - 12 * s.s10) / 240,
            (3 * s.s4**3 - 18 * s.s4 * s.s8 - 4 * s.s6**2 + 24 * s.s12)
            / 576)


def _support(p):
    return tuple(i for i, c in enumerate(p.coords) if c != 0)


def _bezout(weights):
    """gcd g of the weights and integers c_i with sum c_i w_i = g."""
    g, coeffs = weights[0], [1]
    for w in weights[1:]:
        a, b, g = (int(x) for x in sympy.gcdex(g, w))
        coeffs = [a * c for c in coeffs] + [b]
    return g, coeffs


def _scaling_power(p, q):
    """(g, L) with Lambda^g = L for every Lambda mapping p to q, or None if
    no such Lambda exists over the algebraic closure.
    """
    support = _support(p)
    if support != _support(q):
        return None
    if not support:
        return 1, Rational(1)
    weights = [p.weights[i] for i in support]
    ratios = [q.coords[i] / p.coords[i] for i in support]
    g, coeffs = _bezout(weights)
    L = reduce(lambda acc, item: acc * item[0]**item[1],
               zip(ratios, coeffs), Rational(1))
    # Any g-th root of L works, as g divides every weight.
    if any(r != L**(w // g) for r, w in zip(ratios, weights)):
        return None
    return g, L


def wp_equivalent(p, q, strict=False):
    """Whether q = Lambda . p for some nonzero Lambda.

    The points must have the same zero pattern and the ratios
    r_i = q_i / p_i must satisfy r_i = L^{w_i / g}, where g is the gcd of
    the weights in the support and L = Lambda^g. This implies the pairwise
    identities p_i^{w_k} q_k^{w_i} = p_k^{w_i} q_i^{w_k}.

    Args:
        p, q: ModuliPoint of the same family.
        strict: require Lambda to be rational.
    """
    if p.family != q.family:
        raise PreconditionError("cannot compare a {} point with a {} "
                                "point".format(p.family, q.family))
    found = _scaling_power(p, q)
    if found is None:
        return False
    if strict:
        return rational_scaling(p, q) is not None
    return True


def rational_scaling(p, q):
    """A rational Lambda with q = Lambda . p, or None."""
    if p.family != q.family:
        raise PreconditionError("family mismatch")
    found = _scaling_power(p, q)
    if found is None:
        return None
    g, L = found
    lam = exactalg.rational_root(L, g)
    if lam is None or lam == 0:
        return None
    return lam


def invariants_for(family, coeffs):
    """Dispatch to the invariants of a quartic family.

    For Vinberg's family the rank 13 point is returned.
    """
    family = quartics.family_name(family)
    if family == 'P':
        return invariants_P(coeffs)
    if family == 'Pprime':
        return invariants_PPrime(coeffs)
    return invariants_Vinberg(coeffs)
