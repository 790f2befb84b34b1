"""Tests for kfourteen.moduli.invariants."""

import pytest
from sympy import Rational
from kfourteen.algebra.exactalg import t, upoly
from kfourteen.moduli import invariants
from kfourteen.moduli.invariants import ABPair, ModuliPoint, SatakePowerSums
from kfourteen.surfaces.quartics import VinbergCoeffs
from kfourteen.utils.errors import (InputFormatError, PreconditionError,
                                    UnknownNameError)


def test_closed_form_agrees(p_coeffs, p15_coeffs, p16_coeffs):
    """The invariants computed from the pair (A, B) and from the closed
    expressions shall agree on every locus.
    """
    for c in (p_coeffs, p15_coeffs, p16_coeffs):
        point = invariants.invariants_P(c)
        assert point.family == 'P'
        assert point.in_moduli_space() == True


def test_rank15_has_vanishing_b4(p15_coeffs):
    assert invariants.invariants_P(p15_coeffs).coords[1] == 0


def test_intro_to_body(p_coeffs):
    """Converting the intro tuple shall give the body invariants."""
    intro = invariants.intro_invariants_P(p_coeffs)
    assert invariants.intro_to_body(intro) == \
        invariants.invariants_P(p_coeffs)


def test_gauge_normalize_shift(p_coeffs):
    """IF A and B are translated by t -> t - 1, WHEN the gauge is fixed,
    THEN the original pair shall be recovered.
    """
    pair = ABPair.from_coefficients(p_coeffs)
    back = upoly(t - 1)
    moved = invariants.gauge_normalize(pair.A.compose(back),
                                       pair.B.compose(back))
    assert moved == pair


def test_gauge_normalize_leading_coefficient():
    pair = invariants.gauge_normalize(2 * t**3 + 6 * t**2, t**4 - 1)
    assert pair.A.LC() == 1
    assert pair.A.coeff_monomial(t**2) == 0


def test_gauge_normalize_needs_cubic():
    with pytest.raises(PreconditionError):
        invariants.gauge_normalize(t**2, t)


def test_abpair_rejects_t2_term():
    with pytest.raises(PreconditionError):
        ABPair(t**3 + t**2, t)


def test_satake_of_point(p_coeffs):
    """The Satake sextic of the moduli point shall equal A^2 - 4 B."""
    pair = ABPair.from_coefficients(p_coeffs)
    assert invariants.satake_of_point(invariants.invariants_P(p_coeffs)) == \
        pair.satake()


def test_power_sums():
    """IF the Satake roots are +-1, +-2, +-3, THEN the power sums shall
    give (j4, j6, j8, j10, j12) = (7/3, 0, 0, 0, 9).
    """
    roots = (1, -1, 2, -2, 3, -3)
    sextic = upoly((t**2 - 1) * (t**2 - 4) * (t**2 - 9))
    sums = SatakePowerSums.from_roots(roots)
    assert sums == SatakePowerSums(28, 0, 196, 0, 1588)
    assert SatakePowerSums.from_sextic(sextic) == sums
    j = invariants.power_sums_to_j(sums)
    assert j == (Rational(7, 3), 0, 0, 0, 9)
    assert invariants.satake_sextic(*j) == sextic


def test_power_sums_need_balanced_roots():
    with pytest.raises(PreconditionError):
        SatakePowerSums.from_roots((1, 2, 3, 4, 5, 6))


@pytest.fixture
def pprime_point():
    return ModuliPoint('Pprime', (1, 2, 0, 1, 3, 0, 5))


def test_rational_scaling(pprime_point):
    q = pprime_point.scaled(3)
    assert invariants.wp_equivalent(pprime_point, q) == True
    assert invariants.wp_equivalent(pprime_point, q, strict=True) == True
    assert invariants.rational_scaling(pprime_point, q) == 3


def test_irrational_scaling(pprime_point):
    """IF the points differ by Lambda with Lambda^2 = 2, THEN they shall be
    equivalent, but not by a rational Lambda.
    """
    q = ModuliPoint('Pprime', (2, 16, 0, 32, 192, 0, 5120))
    assert invariants.wp_equivalent(pprime_point, q) == True
    assert invariants.wp_equivalent(pprime_point, q, strict=True) == False
    assert invariants.rational_scaling(pprime_point, q) is None


@pytest.mark.parametrize('weights,gcd', [((4, 4, 6, 6, 8, 10, 12), 2),
                                         ((2, 6, 8, 10, 12, 16, 20), 2),
                                         ((6, 10, 15), 1),
                                         ((8,), 8)])
def test_bezout(weights, gcd):
    """The Bezout coefficients shall combine the weights to their gcd."""
    g, coeffs = invariants._bezout(weights)
    assert g == gcd
    assert sum(c * w for c, w in zip(coeffs, weights)) == gcd
    assert all(isinstance(c, int) for c in coeffs) == True


def test_wp_equivalent_full_support():
    """IF every coordinate of a P point is nonzero, WHEN it is compared with
    a rescaling of itself, THEN the points shall be equivalent.
    """
    p = ModuliPoint('P', (1, 2, 3, 4, 5, 6, 7))
    assert invariants.wp_equivalent(p, p.scaled(2)) == True
    assert invariants.rational_scaling(p, p.scaled(-3)) in (-3, 3)
    assert invariants.wp_equivalent(p, ModuliPoint('P', (1, 2, 3, 4, 5, 6,
                                                         8))) == False


@pytest.mark.parametrize('coords', [(1, 2, 1, 1, 3, 0, 5),
                                    (1, 3, 0, 1, 3, 0, 5),
                                    (-1, 2, 0, 1, 3, 0, 5)])
def test_not_equivalent(pprime_point, coords):
    """IF the zero patterns or the weighted ratios differ, THEN the points
    shall not be equivalent.
    """
    q = ModuliPoint('Pprime', coords)
    assert invariants.wp_equivalent(pprime_point, q) == False


def test_equivalence_family_mismatch(pprime_point):
    with pytest.raises(PreconditionError):
        invariants.wp_equivalent(pprime_point,
                                 ModuliPoint('P', (1,) * 7))


def test_canonical(pprime_point):
    p = pprime_point.scaled(Rational(2, 3))
    assert p.canonical() == pprime_point
    assert ModuliPoint('Pprime', (2, 0, 0, 0, 0, 0, 1)).canonical().coords[0] \
        == 2


def test_in_moduli_space():
    assert ModuliPoint('Pprime', (1, 0, 0, 0, 0, 0, 0)).in_moduli_space() \
        == False
    assert ModuliPoint('Rank18', (1, 1, 0)).in_moduli_space() == False


def test_moduli_point_errors():
    with pytest.raises(UnknownNameError):
        ModuliPoint('Q', (1, 2))
    with pytest.raises(InputFormatError):
        ModuliPoint('Rank18', (1, 2))
    with pytest.raises(InputFormatError):
        ModuliPoint.from_json({'family': 'Rank18'})


def test_moduli_point_json(pprime_point):
    data = pprime_point.to_json()
    assert data['names'][0] == 'J2'
    assert data['coords'] == ['1', '2', '0', '1', '3', '0', '5']
    assert ModuliPoint.from_json(data) == pprime_point


def test_pprime_invariants(pprime_coeffs):
    point = invariants.invariants_PPrime(pprime_coeffs)
    assert point.coords == pprime_coeffs.curly_j()


def test_vinberg_and_pdoubleprime(vinberg_coeffs):
    """j14 shall be g0^2 and the P'' point shall drop it on g0 = 0."""
    point = invariants.invariants_Vinberg(vinberg_coeffs)
    assert point.coords[5] == vinberg_coeffs.g0**2
    with pytest.raises(PreconditionError):
        invariants.pdoubleprime_point(point)
    c = VinbergCoeffs(*(vinberg_coeffs.values()[:5] + (0,)
                        + vinberg_coeffs.values()[6:]))
    special = invariants.pdoubleprime_point(invariants.invariants_Vinberg(c))
    assert special.family == 'Pdoubleprime'
    assert special.coords == point.coords[:5] + point.coords[6:]


def test_invariants_for(p_coeffs):
    assert invariants.invariants_for("P", p_coeffs) == \
        invariants.invariants_P(p_coeffs)
