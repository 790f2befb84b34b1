"""Double covers of the plane branched over three concurrent lines and a
cubic.

The branch locus is

    (Z1 - Z2 + mu Z3)(Z1 - Z2 + nu Z3) Z3 C(Z1, Z2, Z3),
    C = (Z2 + c0 Z3) Z1^2 + (d2 Z2^2 + d0 Z3^2) Z1
        + (e2 Z2^2 + e1 Z2 Z3 + e0 Z3^2) Z3,

in the gauge c0 + e2 = (1 + d2/2)(mu + nu). The three lines meet in
[1:1:0], the cubic passes through q0 = [0:1:0].
"""

from dataclasses import dataclass, fields
import sympy
from sympy import QQ, Poly, Rational, symbols
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import rat, t, upoly
from kfourteen.moduli.invariants import ABPair, invariants_from_pair
from kfourteen.surfaces.ellfib import WeierstrassModel
from kfourteen.utils import log
from kfourteen.utils.errors import (InputFormatError,
                                    InternalInvariantError,
                                    InvalidCoefficientsError,
                                    PreconditionError, UnknownNameError)

Z1, Z2, Z3 = symbols('Z1 Z2 Z3')

# Fiber tables of the standard and the alternate fibration.
FIBER_TABLES = (
    ('generic', '3I0* + 6I1', 'I2* + 6I2 + 4I1'),
    ('d2 = 0', 'I1* + 2I0* + 5I1', 'I3* + 6I2 + 3I1'),
    ('d2 = e2 = 0', 'I2* + 2I0* + 4I1', 'I4* + 6I2 + 2I1'),
    ('d2 = e2 = e1 = 0', 'I3* + 2I0* + 3I1', 'I5* + 6I2 + I1'),
)

FIBRATIONS = {'standard': 1, 'alternate': 2}


@dataclass(frozen=True)
class SexticConfig:

    """Branch data of the double sextic; c1 = 1 and d1 = 0."""

    mu: Rational
    nu: Rational
    c0: Rational
    d2: Rational
    d0: Rational
    e2: Rational
    e1: Rational
    e0: Rational

    KEYS = ('mu', 'nu', 'c0', 'd2', 'd0', 'e2', 'e1', 'e0')

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, rat(getattr(self, f.name)))

    def validate(self):
        if self.mu == self.nu:
            raise InvalidCoefficientsError("the lines coincide: mu = nu",
                                           names=('mu', 'nu'))
        if self.d2 == -1:
            raise InvalidCoefficientsError(
                "d2 = -1: the cubic passes through [1:1:0]", names=('d2',))
        if self.c0 + self.e2 != (1 + self.d2 / 2) * (self.mu + self.nu):
            raise InvalidCoefficientsError(
                "gauge c0 + e2 = (1 + d2/2)(mu + nu) violated",
                names=('c0', 'e2', 'mu', 'nu'))
        return self

    def values(self):
        return tuple(getattr(self, key) for key in self.KEYS)

    def to_json(self):
        return {k: exactalg.rat_str(c) for k, c in zip(self.KEYS,
                                                       self.values())}

    @classmethod
    def from_json(cls, data, checked=True):
        if not isinstance(data, dict):
            raise InputFormatError("configuration must be a JSON object")
        values = []
        for key in cls.KEYS:
            if key not in data:
                raise InputFormatError("missing entry {!r}".format(key),
                                       pointer='/' + key)
            try:
                values.append(rat(data[key]))
            except InputFormatError as e:
                raise InputFormatError(str(e), pointer='/' + key)
        cfg = cls(*values)
        return cfg.validate() if checked else cfg

    @classmethod
    def with_gauge(cls, mu, c0, d2, d0, e2, e1, e0):
        """Solve the gauge relation for nu."""
        mu, c0, d2, e2 = rat(mu), rat(c0), rat(d2), rat(e2)
        if d2 == -2:
            raise PreconditionError("the gauge cannot be solved for d2 = -2")
        return cls(mu, (c0 + e2) / (1 + d2 / 2) - mu, c0, d2, d0, e2, e1, e0)


def rescale_config(cfg, lam):
    """The isomorphic configuration obtained from Z3 -> Z3 / lam."""
    lam = rat(lam)
    if lam == 0:
        raise PreconditionError("rescaling needs a nonzero Lambda")
    return SexticConfig(lam * cfg.mu, lam * cfg.nu, lam * cfg.c0, cfg.d2,
                        lam**2 * cfg.d0, lam * cfg.e2, lam**2 * cfg.e1,
                        lam**3 * cfg.e0)


def _cubic_expr(c1, c0, d2, d1, d0, e2, e1, e0, W1=Z1, W2=Z2, W3=Z3):
    return ((c1 * W2 + c0 * W3) * W1**2
            + (d2 * W2**2 + d1 * W2 * W3 + d0 * W3**2) * W1
            + (e2 * W2**2 + e1 * W2 * W3 + e0 * W3**2) * W3)


def cubic(cfg):
    return Poly(_cubic_expr(1, cfg.c0, cfg.d2, 0, cfg.d0, cfg.e2, cfg.e1,
                            cfg.e0), Z1, Z2, Z3, domain=QQ)


def branch_sextic(cfg):
    """The branch curve as a form of degree six in Z1, Z2, Z3."""
    cfg.validate()
    lines = ((Z1 - Z2 + cfg.mu * Z3) * (Z1 - Z2 + cfg.nu * Z3) * Z3)
    return Poly(lines, Z1, Z2, Z3, domain=QQ) * cubic(cfg)


def cubic_tangent_at_q0(cfg):
    """Whether the cubic is tangent to Z3 = 0 at q0."""
    return cfg.d2 == 0


def cubic_singular_at_q0(cfg):
    return cfg.d2 == 0 and cfg.e2 == 0


def q_rho_sigma(cfg, rho, sigma):
    """Q_{rho, sigma}(t) = alpha0 + alpha1 (rho + sigma) + alpha2 rho sigma.
    """
    rho, sigma = rat(rho), rat(sigma)
    k = 1 + cfg.d2
    expr = (t**3
            + ((cfg.d2 + 2) * (rho + sigma) - 2 * (cfg.c0 + cfg.e2))
            / (2 * k) * t**2
            + (cfg.d0 + cfg.e1 - cfg.c0 * (rho + sigma) + rho * sigma)
            / k * t
            - (2 * cfg.e0 - cfg.d0 * (rho + sigma) + 2 * cfg.c0 * rho * sigma)
            / (2 * k))
    return upoly(expr)


def dual_pair(cfg):
    """The pair (A, B) = (Q_{mu nu}, (A^2 - Q_{mu mu} Q_{nu nu}) / 4) of the
    quartic that is dual to the double sextic.
    """
    cfg.validate()
    A = q_rho_sigma(cfg, cfg.mu, cfg.nu)
    S = q_rho_sigma(cfg, cfg.mu, cfg.mu) * q_rho_sigma(cfg, cfg.nu, cfg.nu)
    return ABPair(A, (A**2 - S) * Rational(1, 4))


def standard_model(mu, nu, c1, c0, d2, d1, d0, e2, e1, e0):
    """Standard fibration of the cubic with general c1 and d1."""
    mu, nu = rat(mu), rat(nu)
    c1, c0, d2, d1, d0, e2, e1, e0 = (rat(c) for c in (c1, c0, d2, d1, d0,
                                                        e2, e1, e0))
    k = c1 + d2
    m = (t + mu) * (t + nu)
    a2 = -m * ((c1 + 2 * d2) * t - (c0 + d1 + e2))
    a4 = k * m**2 * (d2 * t**2 - (d1 + 2 * e2) * t + (d0 + e1))
    a6 = k**2 * m**3 * (e2 * t**2 - e1 * t + e0)
    return WeierstrassModel.build(sympy.expand(a2), sympy.expand(a4),
                                  sympy.expand(a6), weight=2)


def fibration_Y(cfg, which):
    """Weierstrass model of a fibration of the double sextic.

    Args:
        cfg: SexticConfig.
        which: 'standard' (pencil of lines through [1:1:0]) or 'alternate'
            (pencil of lines through q0, with two-torsion).

    Return:
        WeierstrassModel.
    """
    cfg.validate()
    if which == 'standard':
        return standard_model(cfg.mu, cfg.nu, 1, cfg.c0, cfg.d2, 0, cfg.d0,
                              cfg.e2, cfg.e1, cfg.e0)
    if which == 'alternate':
        pair = dual_pair(cfg)
        return WeierstrassModel.build(-2 * pair.A, pair.satake(), 0,
                                      weight=2)
    raise UnknownNameError("the double sextic has no fibration {!r}".format(
        which))


@dataclass(frozen=True)
class FactorizationData:

    """A splitting S = Q1 Q2 of the Satake sextic into monic cubics.

    Q1 = t^3 - sigma2 t^2 + sigma4 t - sigma6 and Q2 likewise with the
    rho's; chi2 = (rho4 - sigma4) / sigma2.
    """

    Q1: sympy.Poly
    Q2: sympy.Poly

    def _elementary(self, Q):
        return (-Q.coeff_monomial(t**2), Q.coeff_monomial(t),
                -Q.coeff_monomial(1))

    @property
    def sigma(self):
        return self._elementary(self.Q1)

    @property
    def rho(self):
        return self._elementary(self.Q2)

    @property
    def sigma2(self):
        return self.sigma[0]

    @property
    def chi2(self):
        return (self.rho[1] - self.sigma[1]) / self.sigma2

    def to_json(self):
        s2, s4, s6 = self.sigma
        r2, r4, r6 = self.rho
        return {'Q1': exactalg.poly_to_text(self.Q1),
                'Q2': exactalg.poly_to_text(self.Q2),
                'sigma2': exactalg.rat_str(s2), 'sigma4': exactalg.rat_str(s4),
                'sigma6': exactalg.rat_str(s6), 'rho2': exactalg.rat_str(r2),
                'rho4': exactalg.rat_str(r4), 'rho6': exactalg.rat_str(r6),
                'chi2': exactalg.rat_str(self.chi2)}


def factorize(pair, Q1):
    """FactorizationData of S = A^2 - 4 B with the given cubic factor.

    Raises:
        PreconditionError: Q1 is not a monic cubic divisor of S, or
            sigma2 = 0.
    """
    Q1 = upoly(Q1)
    if Q1.degree() != 3 or Q1.LC() != 1:
        raise PreconditionError("Q1 must be a monic cubic")
    Q2, remainder = pair.satake().div(Q1)
    if not remainder.is_zero:
        raise PreconditionError("Q1 does not divide the Satake sextic")
    fd = FactorizationData(Q1, Q2)
    if fd.sigma2 == 0:
        raise PreconditionError("sigma2 = 0: the partition of the Satake "
                                "roots is excluded, choose another factor")
    return fd


def printed_mu_nu(fd, pair):
    """The closed expressions mu, nu = 4 sigma2 b3 +- d'/2 with
    d' = sigma2 (sigma2 + 2 b4)(sigma2^2 - (chi2 + 4 b4) sigma2 + 4 b4^2).

    They are reported alongside the recovered configuration; in general
    they are not a rescaling of it.
    """
    b4, b3 = pair.b[0], pair.b[1]
    s2, chi2 = fd.sigma2, fd.chi2
    dp = s2 * (s2 + 2 * b4) * (s2**2 - (chi2 + 4 * b4) * s2 + 4 * b4**2)
    return (4 * s2 * b3 + dp / 2, 4 * s2 * b3 - dp / 2)


def _linear(p, k):
    return p.coeff_monomial(t**k) if k else p.coeff_monomial(1)


def config_from_factorization(A, B, Q1, root=None):
    """Branch configuration of the double sextic dual to (A, B).

    Q1 is taken to be Q_{nu nu}, Q2 = S / Q1 to be Q_{mu mu}. With r a
    square root of b4 the difference of the line parameters is
    mu - nu = sigma2 + 2 r; the remaining entries follow from the
    decomposition Q_{rho sigma} = alpha0 + alpha1 (rho + sigma)
    + alpha2 rho sigma.

    Args:
        A, B: polynomials of a normalized pair.
        Q1: monic cubic factor of A^2 - 4 B.
        root: rational r with r^2 = b4; the nonnegative root is used if
            b4 is a rational square and no root is given.

    Return:
        (SexticConfig, FactorizationData).
    """
    pair = ABPair(A, B)
    fd = factorize(pair, Q1)
    b4 = pair.b[0]
    if root is None:
        root = exactalg.rational_root(b4, 2)
        if root is None:
            raise PreconditionError("b4 = {} is not a rational square; "
                                    "supply a root".format(b4))
    root = rat(root)
    if root**2 != b4:
        raise PreconditionError("{} is not a square root of b4 = {}".format(
            root, b4))
    delta = fd.sigma2 + 2 * root
    if delta == 0:
        raise PreconditionError("mu = nu for this choice of root")
    L = fd.Q1 + fd.Q2 - 2 * pair.A
    M = fd.Q2 - fd.Q1
    l1 = _linear(L, 1)
    if l1 == 0:
        raise PreconditionError("sigma2^2 = 4 b4: degenerate factorization")
    total = (_linear(M, 1) * delta - 2 * _linear(L, 0)) / l1
    mu, nu = (total + delta) / 2, (total - delta) / 2
    alpha2 = L * (1 / delta**2)
    alpha1 = (M * (1 / delta) - L * (total / delta**2)) * Rational(1, 2)
    alpha0 = pair.A - alpha1 * total - alpha2 * (mu * nu)
    p = _linear(alpha2, 1)
    if (_linear(alpha1, 2) != (1 + p) / 2
            or _linear(alpha1, 1) != _linear(alpha2, 0)
            or _linear(alpha0, 3) != 1):
        raise InternalInvariantError("inconsistent decomposition of the "
                                     "factors")
    c0 = -_linear(alpha2, 0) / p
    d0 = 2 * _linear(alpha1, 0) / p
    cfg = SexticConfig(mu, nu, c0, 1 / p - 1, d0,
                       -_linear(alpha0, 2) / p - c0,
                       _linear(alpha0, 1) / p - d0,
                       -_linear(alpha0, 0) / p).validate()
    check = dual_pair(cfg)
    if check.A != pair.A or check.satake() != pair.satake():
        raise InternalInvariantError("recovered configuration does not "
                                     "reproduce (A, S)")
    log.sextic.info("Recovered configuration {}.".format(cfg.to_json()))
    return cfg, fd


def verify_sigma_chi_relations(fd, j4, j6, j8, j10, j12):
    """Check j10, j12 and sigma4 against their expressions in sigma2,
    chi2, j4, j6 and j8.
    """
    s2, s4, _ = fd.sigma
    c = fd.chi2
    j4, j6, j8, j10, j12 = (rat(j) for j in (j4, j6, j8, j10, j12))
    if s2 == 0:
        raise PreconditionError("sigma2 = 0")
    ok10 = j10 == (s2**2 * c**3 / 32
                   + (3 * s2**4 / 32 - 3 * s2**2 * j4 / 8 - j8 / 2) * c
                   - s2**2 * j6 / 2)
    ok12 = j12 == (s2**2 * c**4 / 256
                   - (9 * s2**4 / 128 - 3 * s2**2 * j4 / 32 + j8 / 8) * c**2
                   + s2**2 * j6 * c / 2
                   + (s2**4 - 12 * j4 * s2**2 + 16 * j8)**2 / (256 * s2**2))
    ok4 = s4 == s2**2 / 2 - s2 * c / 2 - 3 * j4
    return ok10 and ok12 and ok4


def parameter_correspondences(cfg):
    """Compare the specialization loci of the configuration with the
    vanishing of j4', j6' and j8 of the dual quartic.

    Return:
        dict locus -> (holds for cfg, holds for the invariants).
    """
    point = invariants_from_pair(dual_pair(cfg)).as_dict()
    d2, e2, e1 = cfg.d2 == 0, cfg.e2 == 0, cfg.e1 == 0
    j4p, j6p, j8 = point["j4'"] == 0, point["j6'"] == 0, point['j8'] == 0
    return {'d2 = 0': (d2, j4p),
            'd2 = e2 = 0': (d2 and e2, j4p and j6p),
            'd2 = e2 = e1 = 0': (d2 and e2 and e1, j4p and j6p and j8)}


def _shift_root(ct1, dt2, et3, rho):
    if rho is not None:
        rho = rat(rho)
        if rho**3 + ct1 * rho**2 + dt2 * rho + et3 != 0:
            raise PreconditionError("{} is not a root of the shift "
                                    "cubic".format(rho))
        return rho
    roots = upoly(t**3 + ct1 * t**2 + dt2 * t + et3).ground_roots()
    if not roots:
        raise PreconditionError("the shift cubic has no rational root; "
                                "supply a root")
    return min(roots, key=lambda x: (abs(x), -x))


def config_from_standard(mu, nu, tilde, rho=None, c1=None):
    """Branch configuration of a general standard fibration

        y^2 = X^3 + m (c1~ t + c0~) X^2 + m^2 (d2~ t^2 + d1~ t + d0~) X
              + m^3 (e3~ t^3 + e2~ t^2 + e1~ t + e0~),

    with m = (t + mu)(t + nu).

    Args:
        mu, nu: distinct rationals.
        tilde: dict with the entries c1, c0, d2, d1, d0, e3, e2, e1, e0.
        rho: rational root of rho^3 + c1~ rho^2 + d2~ rho + e3~.
        c1: rational square root of c1~^2 - 4 d2~.

    Return:
        SexticConfig.
    """
    mu, nu = rat(mu), rat(nu)
    try:
        ct1, ct0, dt2, dt1, dt0, et3, et2, et1, et0 = (
            rat(tilde[k]) for k in ('c1', 'c0', 'd2', 'd1', 'd0', 'e3', 'e2',
                                    'e1', 'e0'))
    except KeyError as e:
        raise InputFormatError("missing coefficient {}".format(e),
                               pointer='/' + e.args[0])
    rho = _shift_root(ct1, dt2, et3, rho)
    # X -> X + rho t m removes e3~.
    ct1, dt2, dt1, et2, et1 = (ct1 + 3 * rho,
                               dt2 + 2 * rho * ct1 + 3 * rho**2,
                               dt1 + 2 * rho * ct0,
                               et2 + rho * dt1 + rho**2 * ct0,
                               et1 + rho * dt0)
    if c1 is None:
        c1 = exactalg.rational_root(ct1**2 - 4 * dt2, 2)
        if c1 is None:
            raise PreconditionError("c1~^2 - 4 d2~ is not a rational square; "
                                    "supply c1")
    c1 = rat(c1)
    if c1**2 != ct1**2 - 4 * dt2:
        raise PreconditionError("c1^2 != c1~^2 - 4 d2~")
    k = c1 - ct1
    if k == 0 or c1 == 0:
        raise PreconditionError("degenerate standard fibration")
    c0 = 2 * dt1 / k + 4 * et2 / k**2 + ct0
    d0 = 2 * dt0 / k + 4 * et1 / k**2
    e0 = 4 * et0 / k**2
    d1 = -2 * dt1 / k - 8 * et2 / k**2
    e1 = -4 * et1 / k**2
    d2 = -(c1 + ct1) / 2
    e2 = 4 * et2 / k**2
    # Divide the cubic by c1.
    c0, d2, d1, d0, e2, e1, e0 = (c / c1 for c in (c0, d2, d1, d0, e2, e1,
                                                    e0))
    if d2 == -1:
        raise PreconditionError("the cubic passes through [1:1:0]")
    return _fix_gauge(mu, nu, c0, d2, d1, d0, e2, e1, e0)


def _fix_gauge(mu, nu, c0, d2, d1, d0, e2, e1, e0):
    """Remove d1 and impose the gauge by (Z1, Z2) -> (Z1 + a Z3, Z2 + s Z3).
    """
    s = (((1 + d2 / 2) * (mu + nu - d1) - c0 - e2 + d1 * d2 / 2)
         / (3 * (d2 + 1)))
    a = -(d1 + 2 * s * d2) / 2
    new = Poly(_cubic_expr(1, c0, d2, d1, d0, e2, e1, e0, Z1 + a * Z3,
                           Z2 + s * Z3, Z3), Z1, Z2, Z3, domain=QQ)
    coeff = new.coeff_monomial
    if coeff(Z1**2 * Z2) != 1 or coeff(Z1 * Z2 * Z3) != 0:
        raise InternalInvariantError("gauge fixing failed")
    log.sextic.debug("Gauge fixed by a = {}, s = {}.".format(a, s))
    return SexticConfig(mu + a - s, nu + a - s, coeff(Z1**2 * Z3),
                        coeff(Z1 * Z2**2), coeff(Z1 * Z3**2),
                        coeff(Z2**2 * Z3), coeff(Z2 * Z3**2),
                        coeff(Z3**3)).validate()
