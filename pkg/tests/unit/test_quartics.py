"""Tests for kfourteen.surfaces.quartics."""

import random
import pytest
from sympy import Rational
from kfourteen.cli import verify
from kfourteen.moduli import invariants
from kfourteen.surfaces import ellfib, quartics
from kfourteen.surfaces.quartics import (QuarticCoeffsP, QuarticCoeffsPPrime,
                                         VinbergCoeffs, W, X, Y, Z)
from kfourteen.utils.errors import (InputFormatError,
                                    InvalidCoefficientsError,
                                    PreconditionError, UnknownNameError)


@pytest.mark.parametrize('name, family', [
    ('P', 'P'), ("P'", 'Pprime'), ('Pprime', 'Pprime'),
    ("P''", 'Pdoubleprime'), ('Vinberg', 'Pdoubleprime')])
def test_family_name(name, family):
    assert quartics.family_name(name) == family


def test_family_name_unknown():
    with pytest.raises(UnknownNameError):
        quartics.family_name('Q')


def test_check_fibration_unknown():
    """IF a family has no fibration of the given name, THEN an unknown name
    error shall be raised.
    """
    with pytest.raises(UnknownNameError):
        quartics.check_fibration('Pprime', 'maximal')


def test_coefficients_json(p_json):
    c = quartics.coefficients_from_json('P', p_json)
    assert c == QuarticCoeffsP(*verify.CERTIFIED['P'][0])
    assert c.to_json() == p_json
    assert c.as_dict()['lambda'] == c.lambda_


@pytest.mark.parametrize('change, pointer', [
    ({'mu': 1}, '/mu'), ({'alpha': '1/0'}, '/alpha'),
    ({'beta': [1]}, '/beta')])
def test_coefficients_json_malformed(p_json, change, pointer):
    """IF an entry is unknown or not a rational number, WHEN the
    coefficients are read, THEN an input format error shall point to it.
    """
    p_json.update(change)
    with pytest.raises(InputFormatError) as info:
        quartics.coefficients_from_json('P', p_json)
    assert info.value.pointer == pointer


def test_coefficients_json_missing(p_json):
    del p_json['kappa']
    with pytest.raises(InputFormatError) as info:
        quartics.coefficients_from_json('P', p_json)
    assert info.value.pointer == '/kappa'


def test_p_pair_must_not_vanish(p_json):
    p_json.update({'eta': '0', 'iota': '0'})
    with pytest.raises(InvalidCoefficientsError) as info:
        quartics.coefficients_from_json('P', p_json)
    assert info.value.names == ('eta', 'iota')
    unchecked = quartics.coefficients_from_json('P', p_json, checked=False)
    assert unchecked.eta == 0


def test_pprime_nonvanishing():
    c = QuarticCoeffsPPrime(3, 0, 0, 0, 0, 0, 0)
    with pytest.raises(InvalidCoefficientsError):
        c.validate()
    assert c.g1 == 0
    assert QuarticCoeffsPPrime(3, 0, 0, 0, 2, 0, 0).curly_j() == \
        (3, 0, -4, 0, 0, 0, 0)


def test_vinberg_nonvanishing():
    with pytest.raises(InvalidCoefficientsError):
        VinbergCoeffs(1, 2, 0, 0, 0, 0, 0, 0).validate()


def test_quartic_equation(p_coeffs):
    form = quartics.quartic_equation('P', p_coeffs)
    assert form.gens == (X, Y, Z, W)
    assert form.total_degree() == 4
    assert form.coeff_monomial(Y**2 * Z * W) == 1
    assert form.coeff_monomial(X**3 * Z) == -4


@pytest.mark.parametrize('fibration, fibers', sorted(
    quartics.FIBER_TABLES['P']['rank14'][1].items()))
def test_p_fiber_table(p_coeffs, fibration, fibers):
    """Every fibration of a generic member of P shall have the tabulated
    singular fibers.
    """
    m = quartics.fibration_model('P', fibration, p_coeffs)
    torsion = quartics.FIBRATIONS['P'][fibration]
    assert ellfib.classify_fibers(m, torsion).summary() == fibers
    assert ellfib.two_torsion_at_origin(m) == (torsion == 2)


@pytest.mark.parametrize('fibration', ['alternate', 'standard'])
def test_pprime_fiber_table(pprime_coeffs, fibration):
    m = quartics.fibration_model('Pprime', fibration, pprime_coeffs)
    assert ellfib.classify_fibers(m).summary() == \
        quartics.FIBER_TABLES['Pprime']['generic'][1][fibration]


@pytest.mark.parametrize('fibration', ['alternate', 'standard'])
def test_vinberg_fiber_table(vinberg_coeffs, fibration):
    m = quartics.fibration_model('Pdoubleprime', fibration, vinberg_coeffs)
    assert ellfib.classify_fibers(m).summary() == \
        quartics.FIBER_TABLES['Pdoubleprime']['rank13'][1][fibration]


def test_rank16_fiber_table(p16_coeffs):
    m = quartics.fibration_model('P', 'standard', p16_coeffs)
    assert ellfib.classify_fibers(m).summary() == '2III* + 6I1'


@pytest.mark.parametrize('family, fibration', [
    (family, fid) for family, fids in sorted(quartics.FIBRATIONS.items())
    for fid in sorted(fids)])
def test_pencil_substitution(family, fibration):
    """The pencil substitution of every fibration shall turn the quartic
    into a multiple of the Weierstrass equation.
    """
    c = verify.certified_points(family, next(iter(
        quartics.FIBER_TABLES[family])))[0]
    report = quartics.verify_pencil_substitution(family, fibration, c)
    assert report.holds == True
    assert report.exact == True
    assert report.cofactor is not None


def test_pencil_substitution_fast(pprime_coeffs):
    report = quartics.verify_pencil_substitution(
        'Pprime', 'standard', pprime_coeffs, fast=True,
        rng=random.Random(5), trials=4)
    assert (report.holds, report.exact) == (True, False)


def test_printed_substitution_fails(pprime_coeffs):
    """IF the printed substitution Z = 2 v^2 z is used for the alternate
    fibration of P', THEN the identity shall fail with a residual.
    """
    report = quartics.verify_pencil_substitution(
        'Pprime', 'alternate', pprime_coeffs, variant='printed')
    assert report.holds == False
    assert report.residual is not None


def test_unknown_variant(p_coeffs):
    with pytest.raises(UnknownNameError):
        quartics.pencil('P', 'standard', p_coeffs, variant='draft')


@pytest.mark.parametrize('family, coeffs', [
    ('P', QuarticCoeffsP(*verify.CERTIFIED['P'][0])),
    ('Pprime', QuarticCoeffsPPrime(*verify.CERTIFIED['Pprime'][1]))])
def test_nikulin_involution(family, coeffs):
    assert quartics.nikulin_involution_check(family, coeffs) == True


def test_nikulin_involution_broken_images(p_coeffs):
    """IF the coordinate images do not preserve the quartic, THEN the check
    shall fail.
    """
    assert quartics.nikulin_involution_check(
        'P', p_coeffs, images=(X, Y, Z, 2 * W)) == False


def test_nikulin_involution_vinberg(vinberg_coeffs):
    with pytest.raises(PreconditionError):
        quartics.nikulin_involution('Pdoubleprime', vinberg_coeffs)


def test_pencil_images(p_coeffs):
    """The involution shall map every pencil onto its corrected image."""
    report = quartics.pencil_image_report(p_coeffs)
    assert sorted(report) == sorted(quartics.PENCIL_NAMES)
    assert all(r['corrected'] for r in report.values()) == True
    assert report['L2']['printed'] == True


def test_vinberg_birational(p16_coeffs):
    assert quartics.vinberg_birational_check(p16_coeffs) == True


def test_vinberg_needs_rank16(p_coeffs):
    with pytest.raises(PreconditionError):
        quartics.vinberg_from_p(p_coeffs)


@pytest.mark.parametrize('generator', ['a', 'b', 'c'])
def test_symmetry_permutes_pairs(p_coeffs, generator):
    """Permuting the linear forms shall not change the moduli point."""
    moved = quartics.apply_symmetry(generator, p_coeffs)
    assert moved != p_coeffs
    assert invariants.invariants_P(moved) == invariants.invariants_P(p_coeffs)


def test_symmetry_rescaling(p_coeffs):
    moved = quartics.apply_symmetry('d', p_coeffs, 2)
    assert invariants.invariants_P(moved) == \
        invariants.invariants_P(p_coeffs).scaled(2)


def test_symmetry_rescaling_by_zero(p_coeffs):
    with pytest.raises(PreconditionError):
        quartics.apply_symmetry('d', p_coeffs, 0)


def test_pprime_scaling(pprime_coeffs):
    lam = Rational(-3, 2)
    assert invariants.invariants_PPrime(
        quartics.scale_pprime(pprime_coeffs, lam)) == \
        invariants.invariants_PPrime(pprime_coeffs).scaled(lam)


def test_pprime_shift_restores_gauge(pprime_coeffs):
    """IF the coordinates are shifted by X -> X - 3 Z, WHEN the gauge is
    restored, THEN the original coefficients shall be recovered.
    """
    shifted = quartics.shift_pprime(pprime_coeffs.general(), 3)
    assert shifted[3] + shifted[5] != 0
    assert quartics.restore_gauge(shifted) == pprime_coeffs


def test_vinberg_scaling(vinberg_coeffs):
    assert invariants.invariants_Vinberg(
        quartics.scale_vinberg(vinberg_coeffs, 2)) == \
        invariants.invariants_Vinberg(vinberg_coeffs).scaled(2)


@pytest.mark.parametrize('locus, zeros', [
    ('rank13', ()), ('g0 = 0', ('g0',)), ('g0 = g3 = 0', ('g0', 'g3')),
    ('g0 = g3 = f33 = 0', ('g0', 'g3', 'f33'))])
def test_specialize_vinberg(vinberg_coeffs, locus, zeros):
    c = quartics.specialize('Pdoubleprime', locus, vinberg_coeffs)
    assert all(getattr(c, name) == 0 for name in zeros)
    assert c.f12 == vinberg_coeffs.f12


def test_specialize_p(p_coeffs):
    c = quartics.specialize('P', 'rank16', p_coeffs)
    assert (c.eta, c.iota, c.kappa, c.lambda_) == (0, 1, 0, 1)
    c = quartics.specialize('P', 'rank15', p_coeffs)
    assert (c.eta, c.kappa, c.lambda_) == (p_coeffs.eta, 0, 1)


def test_specialize_unknown_locus(p_coeffs):
    with pytest.raises(UnknownNameError):
        quartics.specialize('P', 'rank17', p_coeffs)
