"""Integer lattices and their discriminant forms.

Lattices are given by integer Gram matrices (sympy ``ImmutableMatrix``).
Root lattices A_n, D_n, E_n are positive definite; the twist (-1) makes them
negative definite as they occur inside Neron-Severi lattices.
"""

import re
from collections import Counter
from dataclasses import dataclass
from itertools import product
from sympy import ZZ, ImmutableMatrix, Matrix, Rational, eye, floor
from sympy.matrices.normalforms import smith_normal_decomp
from kfourteen.utils import log
from kfourteen.utils.errors import (DegenerateModelError, InputFormatError,
                                    PreconditionError, UnknownNameError)

# Discriminant groups larger than this are compared by generators only.
SPECTRUM_LIMIT = 4096

_TERM = re.compile(r'^([A-Za-z]+)(\d*)\s*(?:\(\s*([+-]?\d+)\s*\))?'
                   r'\s*(?:\^\s*(\d+))?$')


@dataclass(frozen=True)
class NamedLatticeRecord:

    """A lattice known by name, rank and discriminant group only."""

    name: str
    rank: int
    invariant_factors: tuple


# The Nikulin lattice: rank 8, discriminant group Z2^6.
NIKULIN = NamedLatticeRecord('N', 8, (2,) * 6)


def cartan_matrix(family, n):
    """Positive definite Cartan matrix of A_n, D_n or E_n.

    D_3 is the A_3 diagram.

    Args:
        family: 'A', 'D' or 'E'.
        n: rank.

    Return:
        list of lists of int.
    """
    bounds = {'A': 1, 'D': 3, 'E': 6}
    if family not in bounds:
        raise UnknownNameError("unknown root lattice {}{}".format(family, n))
    if n < bounds[family] or (family == 'E' and n > 8):
        raise UnknownNameError("no root lattice {}{}".format(family, n))
    edges = []
    if family == 'A':
        edges = [(i, i + 1) for i in range(n - 1)]
    elif family == 'D':
        edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    else:
        edges = [(i, i + 1) for i in range(n - 2)] + [(2, n - 1)]
    cartan = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in edges:
        cartan[i][j] = cartan[j][i] = -1
    return cartan


def block_sum(blocks):
    """Block-diagonal matrix of a list of square integer matrices."""
    size = sum(len(b) for b in blocks)
    gram = [[0] * size for _ in range(size)]
    offset = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, value in enumerate(row):
                gram[offset + i][offset + j] = value
        offset += len(b)
    return gram


@dataclass(frozen=True)
class IntLattice:

    """Integer lattice given by its Gram matrix.

    Attributes:
        gram: symmetric integer ImmutableMatrix.
        label: free-form name.
    """

    gram: ImmutableMatrix
    label: str = ''

    def __post_init__(self):
        if self.gram != self.gram.T:
            raise PreconditionError("Gram matrix is not symmetric")

    @classmethod
    def from_rows(cls, rows, label=''):
        if not rows:
            return cls(ImmutableMatrix.zeros(0, 0), label)
        return cls(ImmutableMatrix(rows), label)

    @property
    def rank(self):
        return self.gram.rows

    def is_even(self):
        return all(self.gram[i, i] % 2 == 0 for i in range(self.rank))

    def determinant(self):
        if self.rank == 0:
            return 1
        return int(self.gram.det(method='bareiss'))

    def discriminant_order(self):
        """|D(L)| = |det Gram|."""
        return abs(self.determinant())

    def direct_sum(self, other):
        gram = block_sum([self.gram.tolist(), other.gram.tolist()])
        return IntLattice.from_rows(gram, ' + '.join(
            x for x in (self.label, other.label) if x))


def _factor(name, n, twist):
    if name == 'H' and n is None:
        return [[0, twist], [twist, 0]]
    if name in ('A', 'D', 'E') and n is not None:
        return [[twist * c for c in row] for row in cartan_matrix(name, n)]
    if name == 'N' and n is None:
        raise PreconditionError(
            "the Nikulin lattice is stored without a Gram matrix")
    raise UnknownNameError("unknown lattice factor {}{}".format(
        name, '' if n is None else n))


def build_lattice(expr):
    """Parse a sum of named factors, e.g. 'H + E8(-1) + A1(-1)^4'.

    Grammar: term ('+' term)*, term = NAME ['(' INT ')'] ['^' INT].
    The symbol U is accepted for H and '⊕' for '+'.

    Return:
        IntLattice labelled with the normalized expression.
    """
    if not expr or not expr.strip():
        raise InputFormatError("empty lattice expression")
    blocks, labels = [], []
    for term in expr.replace('⊕', '+').split('+'):
        match = _TERM.match(term.strip())
        if not match:
            raise InputFormatError("cannot parse lattice term {!r}".format(
                term.strip()))
        name, n, twist, power = match.groups()
        name = 'H' if name == 'U' else name
        n = int(n) if n else None
        twist = int(twist) if twist else 1
        power = int(power) if power else 1
        if twist == 0 or power == 0:
            raise InputFormatError("zero twist or power in {!r}".format(term))
        factor = _factor(name, n, twist)
        blocks.extend([factor] * power)
        labels.append('{}{}{}{}'.format(
            name, '' if n is None else n,
            '' if twist == 1 else '({})'.format(twist),
            '' if power == 1 else '^{}'.format(power)))
    return IntLattice.from_rows(block_sum(blocks), ' + '.join(labels))


def signature(gram):
    """Inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Symmetric Gaussian elimination over Q; a zero diagonal with a nonzero
    off-diagonal entry is resolved by the congruence e_i -> e_i + e_j.
    """
    a = [[Rational(x) for x in row] for row in Matrix(gram).tolist()]
    n = len(a)
    plus = minus = 0
    active = list(range(n))
    while active:
        pivot = next((i for i in active if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in active for j in active
                         if a[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            pivot = i
        p = a[pivot][pivot]
        if p > 0:
            plus += 1
        else:
            minus += 1
        active.remove(pivot)
        for i in active:
            if a[i][pivot] == 0:
                continue
            ratio = a[i][pivot] / p
            for k in range(n):
                a[i][k] -= ratio * a[pivot][k]
            for k in range(n):
                a[k][i] -= ratio * a[k][pivot]
    return plus, minus, n - plus - minus


def smith_form(mat):
    """Smith normal form with transforms.

    Args:
        mat: integer matrix.

    Return:
        (S, L, R, rank) with L * mat * R = S, L and R unimodular and the
        diagonal of S nonnegative, each entry dividing the next and the
        zeros last.
    """
    mat = Matrix(mat)
    if 0 in mat.shape:
        return mat, eye(mat.rows), eye(mat.cols), 0
    snf, left, right = (Matrix(m) for m in
                        smith_normal_decomp(mat, domain=ZZ))
    n = min(snf.shape)
    order = sorted(range(n), key=lambda i: snf[i, i] == 0)
    rows = order + list(range(n, snf.rows))
    cols = order + list(range(n, snf.cols))
    snf = snf.extract(rows, cols)
    left = left.extract(rows, list(range(left.cols)))
    right = right.extract(list(range(right.rows)), cols)
    for i in range(n):
        if snf[i, i] < 0:
            snf[i, :] = -snf[i, :]
            left[i, :] = -left[i, :]
    rank = sum(1 for i in range(n) if snf[i, i] != 0)
    return snf, left, right, rank


def _mod(value, modulus):
    return value - modulus * floor(Rational(value, modulus))


@dataclass(frozen=True)
class DiscriminantForm:

    """Discriminant form (D(L), q_L) on a choice of cyclic generators.

    Attributes:
        invariant_factors: orders of the generators, each > 1 (tuple).
        q_values: q mod 2 on the diagonal, b mod 1 off the diagonal
            (tuple of tuples of Rational).
    """

    invariant_factors: tuple
    q_values: tuple

    @property
    def order(self):
        order = 1
        for d in self.invariant_factors:
            order *= d
        return order

    def group_label(self):
        """E.g. 'Z2^4', 'Z4', 'Z2 + Z4' or '0'."""
        if not self.invariant_factors:
            return '0'
        counts = Counter(self.invariant_factors)
        return ' + '.join('Z{}{}'.format(d, '' if n == 1 else '^{}'.format(n))
                          for d, n in sorted(counts.items()))

    def is_two_elementary(self):
        return all(d == 2 for d in self.invariant_factors)

    def q(self, coeffs):
        """q of the element sum(c_i x_i), mod 2."""
        value = Rational(0)
        for i, ci in enumerate(coeffs):
            if not ci:
                continue
            value += ci * ci * self.q_values[i][i]
            for j in range(i + 1, len(coeffs)):
                value += 2 * ci * coeffs[j] * self.q_values[i][j]
        return _mod(value, 2)

    def _two_torsion(self):
        """Coefficient vectors of the 2-torsion subgroup, zero excluded."""
        halves = [d // 2 if d % 2 == 0 else 0 for d in self.invariant_factors]
        basis = [i for i, h in enumerate(halves) if h]
        for bits in product((0, 1), repeat=len(basis)):
            if any(bits):
                coeffs = [0] * len(halves)
                for i, bit in zip(basis, bits):
                    coeffs[i] = halves[i] * bit
                yield coeffs

    def parity(self):
        """'even' if q takes integral values on the 2-torsion, else 'odd'."""
        if all(self.q(c).q == 1 for c in self._two_torsion()):
            return 'even'
        return 'odd'

    def has_isotropic_involution(self):
        """Whether some element of order 2 has q = 0 mod 2."""
        return any(self.q(c) == 0 for c in self._two_torsion())

    def spectrum(self):
        """Counter of q over all group elements, or over the generators
        when the group exceeds SPECTRUM_LIMIT.
        """
        if self.order > SPECTRUM_LIMIT:
            log.lattices.debug("Group of order {} compared by generators."
                               .format(self.order))
            return Counter(self.q_values[i][i]
                           for i in range(len(self.invariant_factors)))
        return Counter(self.q(c) for c in product(
            *(range(d) for d in self.invariant_factors)))

    def matches(self, other):
        """Same group and the same distribution of q values."""
        return (self.invariant_factors == other.invariant_factors
                and self.spectrum() == other.spectrum())

    def to_json(self):
        return {'group': self.group_label(),
                'invariant_factors': list(self.invariant_factors),
                'q': [[str(v) for v in row] for row in self.q_values]}


def discriminant_form(gram):
    """Discriminant form of a nondegenerate integer Gram matrix.

    With L G R = S, the vectors x_i = R e_i / d_i generate L*/L.
    """
    gram = Matrix(gram)
    if gram.rows == 0:
        return DiscriminantForm((), ())
    snf, _, right, rank = smith_form(gram)
    if rank < gram.rows:
        raise DegenerateModelError(
            "Gram matrix is degenerate",
            certificate=str([list(v) for v in gram.nullspace()]))
    gens = [(right[:, i] / snf[i, i], int(snf[i, i]))
            for i in range(rank) if snf[i, i] > 1]
    q_values = []
    for i, (xi, _) in enumerate(gens):
        row = []
        for j, (xj, _) in enumerate(gens):
            value = (xi.T * gram * xj)[0, 0]
            row.append(_mod(value, 2) if i == j else _mod(value, 1))
        q_values.append(tuple(row))
    return DiscriminantForm(tuple(d for _, d in gens), tuple(q_values))


def nondegenerate_quotient(gram):
    """Gram matrix of L / ker, where ker is the saturated radical.

    The first rank columns of the right Smith transform map onto a basis
    of the quotient.

    Return:
        (quotient Gram, basis columns as a Matrix).
    """
    gram = Matrix(gram)
    _, _, right, rank = smith_form(gram)
    basis = right[:, :rank]
    return basis.T * gram * basis, basis


@dataclass
class LatticeInvariants:

    """Rank, signature and discriminant form of a lattice."""

    rank: int
    signature: tuple
    discriminant: DiscriminantForm

    @property
    def two_elementary(self):
        return self.discriminant.is_two_elementary()

    @property
    def parity(self):
        return self.discriminant.parity()

    def matches(self, other):
        return (self.rank == other.rank and self.signature == other.signature
                and self.discriminant.matches(other.discriminant))

    def to_json(self):
        return {'rank': self.rank, 'signature': list(self.signature),
                'discriminant': self.discriminant.to_json(),
                'two_elementary': self.two_elementary,
                'parity': self.parity}


def lattice_invariants(lattice):
    """Rank, signature (n_plus, n_minus) and discriminant form.

    Raises:
        DegenerateModelError: for a degenerate Gram matrix, with a kernel
            basis as certificate.
    """
    plus, minus, null = signature(lattice.gram)
    if null:
        raise DegenerateModelError(
            "Gram matrix of {} is degenerate".format(lattice.label or 'L'),
            certificate=str([list(v) for v in lattice.gram.nullspace()]))
    form = discriminant_form(lattice.gram)
    log.lattices.debug("{}: rank {}, signature ({}, {}), D = {}.".format(
        lattice.label, lattice.rank, plus, minus, form.group_label()))
    return LatticeInvariants(lattice.rank, (plus, minus), form)


_NAME = re.compile(r'^([ADE])(\d+)$')
_ORDER = {'E': 0, 'D': 1, 'A': 2}


def root_expression(names):
    """Lattice expression of a list of root lattice names, e.g.
    ['D8', 'A1', 'A1'] -> 'D8(-1) + A1(-1)^2'.
    """
    counts = Counter(names)
    key = lambda name: (_ORDER[name[0]], -int(name[1:]))
    return ' + '.join('{}(-1){}'.format(name, '' if n == 1 else '^{}'.format(n))
                      for name, n in sorted(counts.items(),
                                            key=lambda item: key(item[0])))


def root_lattice_of_config(cfg):
    """The negated root lattice of the reducible fibers of a FiberConfig."""
    names = []
    for entry in cfg.entries:
        name = entry.kodaira.root_lattice()
        if name:
            names.extend([name] * entry.degree)
    if not names:
        return IntLattice.from_rows([], '0')
    return build_lattice(root_expression(names))


@dataclass
class FrameReport:

    """Arithmetic check of a frame (K^root, MW torsion) in a lattice NS.

    Attributes:
        root: label of K^root.
        torsion_order: |W|.
        root_order: |D(K^root)|.
        ns_order: |D(NS)|.
        determinant_ok: |D(K^root)| = |D(NS)| |W|^2.
        isotropic_ok: D(K^root) has an isotropic involution whenever W
            is nontrivial.
        table_row: name of the frame table this pair appears in, or None.
    """

    root: str
    torsion_order: int
    root_order: int
    ns_order: int
    determinant_ok: bool
    isotropic_ok: bool
    table_row: str = None

    @property
    def passed(self):
        return self.determinant_ok and self.isotropic_ok

    def to_json(self):
        return {'root': self.root, 'torsion_order': self.torsion_order,
                'root_order': self.root_order, 'ns_order': self.ns_order,
                'determinant_ok': self.determinant_ok,
                'isotropic_ok': self.isotropic_ok,
                'table_row': self.table_row, 'passed': self.passed}


def check_frame(root, torsion_order, ns):
    """FrameReport of a root lattice and torsion order inside ns."""
    root_order = root.discriminant_order()
    ns_order = ns.discriminant_order()
    isotropic = True
    if torsion_order % 2 == 0:
        isotropic = discriminant_form(root.gram).has_isotropic_involution()
    report = FrameReport(root.label, torsion_order, root_order, ns_order,
                         root_order == ns_order * torsion_order**2, isotropic)
    for key, row in FRAME_TABLES.items():
        if build_lattice(row['ns']).gram != ns.gram:
            continue
        for expr, w in row['frames']:
            if w == torsion_order and build_lattice(expr).gram == root.gram:
                report.table_row = key
    return report


def frame_consistency(cfg, ns):
    """FrameReport of the fibers and torsion of a FiberConfig in ns."""
    return check_frame(root_lattice_of_config(cfg), cfg.mw_torsion_order, ns)


# Rank, signature and discriminant group of the polarizing lattices.
LATTICE_TABLE = (
    ('H + E7(-1) + D6(-1)', 15, (1, 14), (2, 2, 2)),
    ('H + E8(-1) + D4(-1)', 14, (1, 13), (2, 2)),
    ('H + D8(-1) + D4(-1)', 14, (1, 13), (2, 2, 2, 2)),
    ('H + E8(-1) + A1(-1)^4', 14, (1, 13), (2, 2, 2, 2)),
    ('H + E8(-1) + A3(-1)', 13, (1, 12), (4,)),
)

# Isometric presentations of the same lattice.
ISOMETRY_CHAINS = {
    'P14': ('H + E8(-1) + A1(-1)^4', 'H + E7(-1) + D4(-1) + A1(-1)',
            'H + D10(-1) + A1(-1)^2', 'H + D6(-1)^2'),
    'P15': ('H + E8(-1) + D4(-1) + A1(-1)', 'H + E7(-1) + D6(-1)',
            'H + D12(-1) + A1(-1)'),
    'P16': ('H + E8(-1) + D6(-1)', 'H + E7(-1)^2', 'H + D14(-1)'),
}

# Jacobian elliptic fibrations: (K^root, |MW torsion|) for each lattice.
FRAME_TABLES = {
    'P15': {'ns': 'H + E7(-1) + D6(-1)',
            'frames': (('E7(-1) + D6(-1)', 1), ('E8(-1) + D4(-1) + A1(-1)', 1),
                       ('D12(-1) + A1(-1)', 1), ('D10(-1) + A1(-1)^3', 2))},
    'P14': {'ns': 'H + E8(-1) + A1(-1)^4',
            'frames': (('D6(-1)^2', 1), ('D10(-1) + A1(-1)^2', 1),
                       ('E7(-1) + D4(-1) + A1(-1)', 1),
                       ('E8(-1) + A1(-1)^4', 1), ('D8(-1) + A1(-1)^4', 2))},
    'P14_prime': {'ns': 'H + D8(-1) + D4(-1)',
                  'frames': (('D8(-1) + D4(-1)', 1), ('E7(-1) + A1(-1)^5', 2))},
    'P14_double_prime': {'ns': 'H + E8(-1) + D4(-1)',
                         'frames': (('E8(-1) + D4(-1)', 1), ('D12(-1)', 1))},
    'P13': {'ns': 'H + E8(-1) + A3(-1)',
            'frames': (('E8(-1) + D3(-1)', 1), ('D11(-1)', 1))},
}


def frame_table_reports():
    """FrameReport of every tabulated fibration, keyed by lattice name."""
    reports = {}
    for key, row in FRAME_TABLES.items():
        ns = build_lattice(row['ns'])
        reports[key] = [check_frame(build_lattice(expr), w, ns)
                        for expr, w in row['frames']]
    return reports
