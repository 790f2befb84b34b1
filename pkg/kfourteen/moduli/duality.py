"""Van Geemen-Sarti duality and the induced involutions of moduli spaces.

An elliptic fibration with the two-torsion section (x, y) = (0, 0) has the
form y^2 = x^3 + a x^2 + b x. Translation by that section is a symplectic
involution; the minimal resolution of the quotient is again of this form,
with (a, b) replaced by (-2 a, a^2 - 4 b).
"""

from dataclasses import dataclass
import sympy
from sympy import Rational
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import rat, t, upoly
from kfourteen.moduli.invariants import ModuliPoint, check_point
from kfourteen.surfaces.ellfib import WeierstrassModel, rescale_model
from kfourteen.utils import log
from kfourteen.utils.errors import (DegenerateModelError,
                                    InternalInvariantError,
                                    PreconditionError)

# Alternate fibrations of the P family and of their duals.
DUAL_FIBER_TABLE = (
    ('generic', 'I4* + 4I2 + 6I1', 'I2* + 6I2 + 4I1'),
    ('b4 = 0', 'I6* + 3I2 + 6I1', 'I3* + 6I2 + 3I1'),
    ('b3 = b4 = 0', 'I8* + 2I2 + 6I1', 'I4* + 6I2 + 2I1'),
)


@dataclass(frozen=True)
class TwoTorsionModel:

    """y^2 = x^3 + a x^2 + b x in the chart of weight k.

    Attributes:
        a: polynomial of degree at most 2 k.
        b: nonzero polynomial of degree at most 4 k.
        weight: chart weight k.
    """

    a: sympy.Poly
    b: sympy.Poly
    weight: int = 2

    def __post_init__(self):
        object.__setattr__(self, 'a', upoly(self.a))
        object.__setattr__(self, 'b', upoly(self.b))
        if self.b.is_zero:
            raise DegenerateModelError("b vanishes identically",
                                       certificate='b == 0')

    def weierstrass(self):
        return WeierstrassModel.build(self.a, self.b, 0, weight=self.weight)

    @classmethod
    def from_weierstrass(cls, m):
        if not m.a6.is_zero:
            raise PreconditionError("(0, 0) is not a two-torsion point: "
                                    "a6 = {}".format(
                                        exactalg.poly_to_text(m.a6)))
        return cls(m.a2, m.a4, m.weight)


def vgs_quotient(m):
    """The quotient by translation with the two-torsion section.

    Args:
        m: TwoTorsionModel.

    Return:
        TwoTorsionModel (-2 a, a^2 - 4 b) of the same chart weight.

    Raises:
        DegenerateModelError: if a^2 - 4 b vanishes identically.
    """
    b = m.a**2 - 4 * m.b
    if b.is_zero:
        raise DegenerateModelError("a^2 - 4 b vanishes identically",
                                   certificate='a^2 - 4b == 0')
    log.duality.debug("Van Geemen-Sarti quotient of a model of weight "
                      "{}.".format(m.weight))
    return TwoTorsionModel(-2 * m.a, b, m.weight)


def double_quotient_is_rescaling(m):
    """Whether the quotient of the quotient equals m up to
    (x, y) -> (4 x, 8 y).
    """
    twice = vgs_quotient(vgs_quotient(m))
    scaled = rescale_model(m.weierstrass(), 2)
    return twice.a == scaled.a2 and twice.b == scaled.a4


def _iota_prime_map(J2, J6, J8, J10, J12, J16, J20):
    R = Rational
    return (
        -J2,
        J6 + J2**3 / 10,
        J8 - J6 * J2 / 2 - J2**4 / 40,
        -J10 - J6 * J2**2 / 20 - J2**5 / 400,
        -J12 + J10 * J2 / 2 - R(3, 20) * J8 * J2**2 + J6**2 / 4
        + R(3, 40) * J6 * J2**3 + J2**6 / 400,
        J16 + J12 * J2**2 / 10 - J10 * J6 / 2 - J10 * J2**3 / 20
        + R(3, 400) * J8 * J2**4 - J6**2 * J2**2 / 40
        - R(3, 800) * J6 * J2**5 - R(3, 32000) * J2**8,
        -J20 - J16 * J2**2 / 20 - J12 * J2**4 / 400 + J10**2 / 4
        + J10 * J6 * J2**2 / 40 + J10 * J2**5 / 800 - J8 * J2**6 / 8000
        + J6**2 * J2**4 / 1600 + J6 * J2**7 / 16000 + J2**10 / 800000,
    )


def iota_prime(p):
    """The involution of the P' moduli space induced by the duality.

    Args:
        p: ModuliPoint of the Pprime family.

    Return:
        ModuliPoint of the Pprime family.
    """
    check_point(p, 'Pprime')
    image = ModuliPoint('Pprime', _iota_prime_map(*p.coords))
    if image != iota_prime_coefficients(p):
        raise InternalInvariantError(
            "invariant and coefficient routes of the duality disagree")
    return image


def cd_polynomials(p):
    """C(u) = J2 u^2 + J6 u + J10 and
    D(u) = u^5 + J8 u^3 + J12 u^2 + J16 u + J20.
    """
    check_point(p, 'Pprime')
    J2, J6, J8, J10, J12, J16, J20 = p.coords
    return (upoly(J2 * t**2 + J6 * t + J10),
            upoly(t**5 + J8 * t**3 + J12 * t**2 + J16 * t + J20))


def cd_model(p):
    """The alternate fibration y^2 = x^3 + C x^2 + D x of a P' point."""
    C, D = cd_polynomials(p)
    return TwoTorsionModel(C, D, 2)


def iota_prime_coefficients(p):
    """The duality on the level of (C, D).

    The quotient model (-2 C, C^2 - 4 D) is rescaled and pulled back along
    u -> s - u with s = J2^2 / 20, which restores the gauge of D.
    """
    C, D = cd_polynomials(p)
    s = p.coords[0]**2 / 20
    Cs = C.compose(upoly(s - t))
    C_new = -Cs
    D_new = -D.compose(upoly(s - t)) + Cs**2 * Rational(1, 4)
    if D_new.coeff_monomial(t**5) != 1 or D_new.coeff_monomial(t**4) != 0:
        raise InternalInvariantError("dual quintic is not in the gauge")
    c = C_new.coeff_monomial
    d = D_new.coeff_monomial
    return ModuliPoint('Pprime', (c(t**2), c(t), d(t**3), c(1), d(t**2),
                                  d(t), d(1)))


def iota_prime_is_involution():
    """Compose the map with itself on symbolic coordinates."""
    gens = sympy.symbols('J2 J6 J8 J10 J12 J16 J20')
    twice = _iota_prime_map(*_iota_prime_map(*gens))
    return all(sympy.expand(a - b) == 0 for a, b in zip(twice, gens))


# Lambda^2 of the scalings that fix a point of the P' moduli space.
SELFDUAL_SCALINGS = (1, -1, sympy.I)


def selfdual_component(p):
    """Lambda^2 for a Lambda with iota_prime(p) = Lambda . p, or None.

    The fixed locus has three components, told apart by Lambda^2:

    *  1 on J2 = J10 = J20 = 0, J12 = J6^2 / 8,
    * -1 on J6 = -J2^3 / 20 with J12 and J20 determined by the rest,
    *  I on J2 = J6 = J10 = 0.
    """
    check_point(p, 'Pprime')
    image = _iota_prime_map(*p.coords)
    for mu in SELFDUAL_SCALINGS:
        if all(sympy.expand(y - mu**(w // 2) * x) == 0
               for x, y, w in zip(p.coords, image, p.weights)):
            return mu
    return None


def selfdual_check(p):
    """Whether p is fixed by iota_prime up to weighted scaling."""
    return selfdual_component(p) is not None



def iota_rank18(c0, d1, d0):
    """Involution of the moduli space of the rank 18 self-dual family.

    Args:
        c0, d1, d0: rationals, d0 nonzero.

    Return:
        (-c0, c0^2 / 4 - d1, d0).
    """
    c0, d1, d0 = rat(c0), rat(d1), rat(d0)
    if d0 == 0:
        raise PreconditionError("d0 = 0 lies outside the moduli space")
    return (-c0, c0**2 / 4 - d1, d0)


def rank18_point(c0, d1, d0):
    return ModuliPoint('Rank18', (c0, d1, d0))


def rank18_model(c0, d1, d0):
    """y^2 = x^3 + c0 u^2 v^2 x^2 + u^3 v^3 (u^2 + d1 u v + d0 v^2) x."""
    c0, d1, d0 = rat(c0), rat(d1), rat(d0)
    if d0 == 0:
        raise PreconditionError("d0 = 0 lies outside the moduli space")
    return TwoTorsionModel(c0 * t**2, t**3 * (t**2 + d1 * t + d0), 2)
