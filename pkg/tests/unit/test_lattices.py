"""Tests for kfourteen.lattices.lattices."""

import pytest
from sympy import Matrix, Rational
from kfourteen.lattices import lattices
from kfourteen.lattices.lattices import IntLattice
from kfourteen.surfaces import ellfib, quartics
from kfourteen.utils.errors import (DegenerateModelError, InputFormatError,
                                    PreconditionError, UnknownNameError)


@pytest.mark.parametrize('family, n, det', [('A', 1, 2), ('A', 4, 5),
                                            ('D', 4, 4), ('D', 9, 4),
                                            ('E', 6, 3), ('E', 7, 2),
                                            ('E', 8, 1)])
def test_cartan_determinant(family, n, det):
    assert Matrix(lattices.cartan_matrix(family, n)).det() == det


@pytest.mark.parametrize('family, n', [('E', 9), ('D', 2), ('B', 3)])
def test_cartan_unknown(family, n):
    with pytest.raises(UnknownNameError):
        lattices.cartan_matrix(family, n)


def test_build_lattice_normalizes():
    """The symbols U and '⊕' shall be read as H and '+'."""
    lattice = lattices.build_lattice('U ⊕ E8(-1) ⊕ A1(-1)^4')
    assert lattice.label == 'H + E8(-1) + A1(-1)^4'
    assert lattice.rank == 14
    assert lattice.gram == lattices.build_lattice(
        'H + E8(-1) + A1(-1)^4').gram
    assert lattice.is_even() == True


@pytest.mark.parametrize('expr, error', [
    ('', InputFormatError), ('H +', InputFormatError),
    ('E8(0)', InputFormatError), ('H + X7', UnknownNameError),
    ('N', PreconditionError)])
def test_build_lattice_errors(expr, error):
    with pytest.raises(error):
        lattices.build_lattice(expr)


def test_int_lattice_symmetric():
    with pytest.raises(PreconditionError):
        IntLattice.from_rows([[2, 1], [0, 2]])


@pytest.mark.parametrize('rows, inertia', [
    ([[0, 1], [1, 0]], (1, 1, 0)), ([[0, 0], [0, 1]], (1, 0, 1)),
    ([[-2, 1], [1, -2]], (0, 2, 0)), ([[0, 0], [0, 0]], (0, 0, 2))])
def test_signature(rows, inertia):
    assert lattices.signature(rows) == inertia


def test_smith_form():
    m = Matrix([[2, 4], [6, 8]])
    snf, left, right, rank = lattices.smith_form(m)
    assert rank == 2
    assert (snf[0, 0], snf[1, 1]) == (2, 4)
    assert left * m * right == snf
    assert abs(left.det()) == 1 and abs(right.det()) == 1


@pytest.mark.parametrize('rows, diagonal, rank', [
    ([[0, -6], [4, 0]], (2, 12), 2),
    ([[0, 0], [0, -3]], (3, 0), 1),
    ([[2, 4, 6], [1, 2, 3]], (1, 0), 1),
    ([[0, 0], [0, 0]], (0, 0), 0)])
def test_smith_form_normalized(rows, diagonal, rank):
    """IF the matrix has negative or vanishing invariants, THEN the diagonal
    shall be nonnegative with its zeros last.
    """
    m = Matrix(rows)
    snf, left, right, found = lattices.smith_form(m)
    assert found == rank
    assert tuple(snf[i, i] for i in range(len(diagonal))) == diagonal
    assert left * m * right == snf
    assert abs(left.det()) == 1 and abs(right.det()) == 1


@pytest.mark.parametrize('expr, group, parity, isotropic', [
    ('A1(-1)', 'Z2', 'odd', False), ('D4(-1)', 'Z2^2', 'even', False),
    ('A1(-1)^4', 'Z2^4', 'odd', True), ('D8(-1)', 'Z2^2', 'even', True),
    ('A3(-1)', 'Z4', 'odd', False), ('E8(-1)', '0', 'even', False)])
def test_discriminant_form(expr, group, parity, isotropic):
    form = lattices.discriminant_form(lattices.build_lattice(expr).gram)
    assert form.group_label() == group
    assert form.parity() == parity
    assert form.has_isotropic_involution() == isotropic


def test_discriminant_form_of_a1():
    form = lattices.discriminant_form(lattices.build_lattice('A1(-1)').gram)
    assert form.invariant_factors == (2,)
    assert form.q_values == ((Rational(3, 2),),)


def test_discriminant_form_degenerate():
    """IF the Gram matrix is degenerate, THEN the kernel shall be reported
    as certificate.
    """
    with pytest.raises(DegenerateModelError) as info:
        lattices.discriminant_form([[2, 2], [2, 2]])
    assert info.value.certificate is not None


def test_nondegenerate_quotient():
    quotient, basis = lattices.nondegenerate_quotient([[2, 2], [2, 2]])
    assert quotient.shape == (1, 1)
    assert abs(quotient[0, 0]) == 2
    assert basis.shape == (2, 1)


@pytest.mark.parametrize('expr, rank, sig, factors', lattices.LATTICE_TABLE)
def test_lattice_table(expr, rank, sig, factors):
    inv = lattices.lattice_invariants(lattices.build_lattice(expr))
    assert (inv.rank, inv.signature) == (rank, sig)
    assert inv.discriminant.invariant_factors == factors
    assert inv.two_elementary == all(d == 2 for d in factors)


@pytest.mark.parametrize('name', sorted(lattices.ISOMETRY_CHAINS))
def test_isometry_chains(name):
    """Every presentation in a chain shall have the invariants of the
    first one.
    """
    chain = [lattices.lattice_invariants(lattices.build_lattice(expr))
             for expr in lattices.ISOMETRY_CHAINS[name]]
    assert all(chain[0].matches(inv) for inv in chain[1:]) == True


def test_non_isometric():
    first = lattices.lattice_invariants(
        lattices.build_lattice('H + E8(-1) + A1(-1)^4'))
    second = lattices.lattice_invariants(
        lattices.build_lattice('H + D8(-1) + D4(-1)'))
    assert first.matches(second) == False


def test_frame_tables():
    reports = lattices.frame_table_reports()
    assert sorted(reports) == sorted(lattices.FRAME_TABLES)
    for key, rows in reports.items():
        for report in rows:
            assert report.passed == True
            assert report.table_row == key


def test_frame_with_wrong_torsion():
    """IF the torsion order does not fit the discriminants, THEN the
    determinant check shall fail.
    """
    ns = lattices.build_lattice('H + E8(-1) + A1(-1)^4')
    report = lattices.check_frame(
        lattices.build_lattice('E8(-1) + A1(-1)^4'), 2, ns)
    assert report.determinant_ok == False
    assert report.table_row is None


def test_root_expression():
    assert lattices.root_expression(['A1', 'D8', 'A1', 'E7']) == \
        'E7(-1) + D8(-1) + A1(-1)^2'


def test_frame_of_alternate_fibration(p_coeffs):
    """The fibers of the alternate fibration of P shall form the frame
    D8 + A1^4 with two-torsion in H + E8 + A1^4.
    """
    m = quartics.fibration_model('P', 'alternate', p_coeffs)
    cfg = ellfib.classify_fibers(m, 2)
    assert lattices.root_lattice_of_config(cfg).label == 'D8(-1) + A1(-1)^4'
    report = lattices.frame_consistency(
        cfg, lattices.build_lattice('H + E8(-1) + A1(-1)^4'))
    assert report.passed == True
    assert report.table_row == 'P14'
