"""Dual graphs of smooth rational curves.

Every vertex is a (-2)-curve; an m-fold edge records the intersection
number m. Graph data, fiber embeddings and divisor class identities are
read from graphs.json next to this module.
"""

import hashlib
import json
import os.path
from dataclasses import dataclass, field
from sympy import Matrix, ImmutableMatrix, ilcm, igcd
from kfourteen import basedir
from kfourteen.lattices import lattices
from kfourteen.utils import log
from kfourteen.utils.errors import InputFormatError, UnknownNameError

# Location of the transcribed graphs.
PATH = os.path.join(basedir, 'curvegraph', 'graphs.json')

ALIASES = {
    'P14': 'P14', 'P': 'P14',
    'P14_prime': 'P14_prime', 'Pprime14': 'P14_prime', 'Pprime': 'P14_prime',
    'P14_double_prime': 'P14_double_prime',
    'Pdoubleprime14': 'P14_double_prime',
    'Pdoubleprime': 'P14_double_prime',
    'P15': 'P15', 'P16': 'P16',
}

MULTIPLICITIES = (1, 2, 4, 6)

# Multiplicities of the components of the singular fibers, as multisets.
_FIBER_MULTIPLICITIES = {
    'E6': (1, 1, 1, 2, 2, 2, 3),
    'E7': (1, 1, 2, 2, 2, 3, 3, 4),
    'E8': (1, 2, 2, 3, 3, 4, 4, 5, 6),
}


def fiber_multiplicities(type_name):
    """Sorted multiplicities of the extended Dynkin diagram of A_n, D_n or
    E_n.
    """
    family, n = type_name[0], int(type_name[1:])
    if family == 'A':
        return (1,) * (n + 1)
    if family == 'D':
        return tuple(sorted((1,) * 4 + (2,) * (n - 3)))
    if type_name in _FIBER_MULTIPLICITIES:
        return _FIBER_MULTIPLICITIES[type_name]
    raise UnknownNameError("unknown root lattice {!r}".format(type_name))


@dataclass(frozen=True)
class CurveGraph:

    """A dual graph of smooth rational curves.

    Attributes:
        name: identifier (str).
        lattice: expression of the polarizing lattice (str).
        nodes: vertex labels in order (tuple).
        edges: tuples (u, v, m, source).
        polarization: node -> coefficient of the polarizing divisor H.
        embeddings: fibration id -> embedding record (dict).
        identities: divisor class identities (list of dicts).
        automorphisms: name -> node permutation and the embeddings it
            exchanges (dict).
    """

    name: str
    lattice: str
    nodes: tuple
    edges: tuple
    polarization: dict = field(default_factory=dict)
    embeddings: dict = field(default_factory=dict)
    identities: list = field(default_factory=list)
    automorphisms: dict = field(default_factory=dict)

    def index(self, node):
        try:
            return self.nodes.index(node)
        except ValueError:
            raise UnknownNameError("graph {} has no node {!r}".format(
                self.name, node))

    def gram(self):
        """-2 on the diagonal, m on the edges."""
        n = len(self.nodes)
        rows = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
        for u, v, m, _ in self.edges:
            i, j = self.index(u), self.index(v)
            rows[i][j] = rows[j][i] = m
        return ImmutableMatrix(rows)

    def vector(self, divisor):
        """Coefficient column of a divisor given as node -> int."""
        column = [0] * len(self.nodes)
        for node, coeff in divisor.items():
            column[self.index(node)] += coeff
        return Matrix(column)

    def pairing(self, d1, d2):
        return (self.vector(d1).T * self.gram() * self.vector(d2))[0, 0]

    def to_json(self):
        return {'name': self.name, 'lattice': self.lattice,
                'nodes': list(self.nodes),
                'edges': [{'u': u, 'v': v, 'm': m}
                          for u, v, m, _ in self.edges]}


def _parse_graph(name, data):
    try:
        nodes = tuple(data['nodes'])
        edges, seen = [], set()
        for group in data['edges']:
            m = group['m']
            for u, v in group['pairs']:
                key = frozenset((u, v))
                if u == v or m not in MULTIPLICITIES or key in seen:
                    raise InputFormatError(
                        "invalid edge {}-{} ({}) in graph {}".format(
                            u, v, m, name), pointer='/{}/edges'.format(name))
                seen.add(key)
                edges.append((u, v, m, group.get('source', '')))
        graph = CurveGraph(name, data['lattice'], nodes, tuple(edges),
                           data.get('polarization', {}),
                           data.get('embeddings', {}),
                           data.get('identities', []),
                           data.get('automorphisms', {}))
    except (KeyError, TypeError, ValueError) as e:
        raise InputFormatError("malformed graph {}: {}".format(name, e),
                               pointer='/' + name)
    if len(set(nodes)) != len(nodes):
        raise InputFormatError("duplicate node in graph {}".format(name),
                               pointer='/{}/nodes'.format(name))
    for u, v, _, _ in edges:
        graph.index(u)
        graph.index(v)
    return graph


def load_graphs(path=PATH):
    """Read all graphs of a graph file.

    Return:
        dict name -> CurveGraph.
    """
    try:
        with open(path, 'r') as stream:
            data = json.load(stream)
    except OSError as e:
        raise InputFormatError("cannot read {}: {}".format(path, e))
    except ValueError as e:
        raise InputFormatError("invalid JSON in {}: {}".format(path, e))
    return {name: _parse_graph(name, value) for name, value in data.items()}


_GRAPHS = {}


def builtin_graph(name):
    """One of the five transcribed graphs; aliases such as 'Pprime14' are
    accepted.
    """
    try:
        key = ALIASES[name]
    except KeyError:
        raise UnknownNameError("unknown graph {!r}".format(name))
    if not _GRAPHS:
        _GRAPHS.update(load_graphs())
    return _GRAPHS[key]


def checksum(path=PATH):
    """SHA-256 of the transcribed graph data."""
    with open(path, 'rb') as stream:
        return hashlib.sha256(stream.read()).hexdigest()


def graph_lattice_invariants(g):
    """Invariants of the lattice spanned by the nodes modulo the radical of
    the intersection form.

    Return:
        LatticeInvariants.
    """
    quotient, _ = lattices.nondegenerate_quotient(g.gram())
    lattice = lattices.IntLattice(ImmutableMatrix(quotient), g.name)
    return lattices.lattice_invariants(lattice)


def named_lattice_invariants(g):
    return lattices.lattice_invariants(lattices.build_lattice(g.lattice))


def class_identity_check(g, lhs, rhs):
    """Whether lhs and rhs agree in the nondegenerate quotient."""
    diff = g.vector(lhs) - g.vector(rhs)
    return (g.gram() * diff).is_zero_matrix


def identity_reports(g):
    """Check every recorded identity 'lhs = rhs_1 = rhs_2 = ...'.

    Return:
        list of (source, index of the right-hand side, passed).
    """
    reports = []
    for identity in g.identities:
        for k, rhs in enumerate(identity['rhs']):
            reports.append((identity.get('source', ''), k,
                            class_identity_check(g, identity['lhs'], rhs)))
    return reports


def _image(permutation, record):
    """The embedding record moved along a node permutation."""
    return {'fibers': [{'type': f['type'],
                        'nodes': [permutation.get(n, n) for n in f['nodes']]}
                       for f in record['fibers']],
            'section': permutation.get(record['section'], record['section'])}


def _fiber_sets(record):
    return sorted((f['type'], tuple(sorted(f['nodes'])))
                  for f in record['fibers'])


def automorphism_reports(g, name):
    """Check a recorded node permutation: it must be a bijection of the
    nodes that preserves the intersection form and carries the fibers and
    the section of each recorded embedding onto those of its partner.

    Return:
        list of (check, passed).
    """
    try:
        record = g.automorphisms[name]
    except KeyError:
        raise UnknownNameError("graph {} records no automorphism {!r}".format(
            g.name, name))
    permutation = record['map']
    for node in permutation:
        g.index(node)
    images = [permutation.get(n, n) for n in g.nodes]
    reports = [('bijective', sorted(images) == sorted(g.nodes))]
    if reports[0][1]:
        P = Matrix.zeros(len(g.nodes))
        for i, image in enumerate(images):
            P[g.index(image), i] = 1
        G = g.gram()
        reports.append(('isometry', (P.T * G * P - G).is_zero_matrix))
    for source, target in record.get('pairs', []):
        moved = _image(permutation, g.embeddings[source])
        ok = _fiber_sets(moved) == _fiber_sets(g.embeddings[target]) and \
            moved['section'] == g.embeddings[target]['section']
        reports.append(('{} -> {}'.format(source, target), ok))
    return reports



def _primitive(column):
    denominator = ilcm(*[x.q for x in column]) if len(column) > 1 \
        else column[0].q
    values = [int(x * denominator) for x in column]
    divisor = 0
    for x in values:
        divisor = igcd(divisor, x)
    values = [x // divisor for x in values]
    if values[0] < 0:
        values = [-x for x in values]
    return values


def kernel_vector(g, nodes):
    """Primitive kernel vector of the sub-Gram on nodes, or None unless it
    is negative semidefinite of corank one with positive kernel.
    """
    idx = [g.index(n) for n in nodes]
    sub = g.gram().extract(idx, idx)
    plus, _, null = lattices.signature(sub)
    if plus or null != 1:
        return None
    values = _primitive(list(sub.nullspace()[0]))
    if any(x <= 0 for x in values):
        return None
    return values


@dataclass
class EmbeddingReport:

    """Result of fiber_embedding_check.

    Attributes:
        graph, fibration: identifiers.
        fibers: one dict per reducible fiber: type, multiplicities, ok.
        checks: name -> bool of every performed check.
        values: intersection numbers that were only reported.
        failure: description of the first failed check, or None.
    """

    graph: str
    fibration: str
    fibers: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)
    values: dict = field(default_factory=dict)
    failure: str = None

    @property
    def passed(self):
        return self.failure is None

    def _check(self, name, ok):
        self.checks[name] = bool(ok)
        if not ok and self.failure is None:
            self.failure = name

    def to_json(self):
        return {'graph': self.graph, 'fibration': self.fibration,
                'fibers': self.fibers, 'checks': self.checks,
                'values': self.values, 'passed': self.passed,
                'failure': self.failure}


def fiber_embedding_check(g, fibration_id, record=None):
    """Verify that the recorded node sets form the reducible fibers of one
    elliptic fibration.

    Every node set must span an extended Dynkin diagram of the claimed type;
    the resulting fiber classes F have F.F = 0, meet the section (and the
    torsion section) once and agree modulo the radical. With a polarization
    H the checks H.H = 4 and, for pencils of lines, H.F = 3 are added, as
    well as the residual identity k H - F - L = R if recorded.

    Return:
        EmbeddingReport.
    """
    if record is None:
        try:
            record = g.embeddings[fibration_id]
        except KeyError:
            raise UnknownNameError("graph {} records no fibration {!r}".format(
                g.name, fibration_id))
    report = EmbeddingReport(g.name, fibration_id)
    classes = []
    for k, fiber in enumerate(record['fibers']):
        kernel = kernel_vector(g, fiber['nodes'])
        expected = fiber_multiplicities(fiber['type'])
        ok = kernel is not None and tuple(sorted(kernel)) == expected
        report.fibers.append({'type': fiber['type'], 'nodes': fiber['nodes'],
                              'multiplicities': kernel, 'ok': ok})
        report._check('fiber {} is affine {}'.format(k, fiber['type']), ok)
        if ok:
            classes.append(dict(zip(fiber['nodes'], kernel)))
    if not classes:
        return report
    F = classes[0]
    report._check('F.F = 0', g.pairing(F, F) == 0)
    for key in ('section', 'torsion'):
        if key in record:
            report._check('F.{} = 1'.format(key),
                          g.pairing(F, {record[key]: 1}) == 1)
    for k, other in enumerate(classes[1:], start=1):
        report._check('fiber {} has class F'.format(k),
                      class_identity_check(g, F, other))
    if g.polarization:
        H = g.polarization
        report._check('H.H = 4', g.pairing(H, H) == 4)
        report.values['H.F'] = int(g.pairing(H, F))
        if 'pencil' in record:
            report._check('H.F = 3', report.values['H.F'] == 3)
        if 'residual' in record:
            k, pencil, rhs = record['residual']
            lhs = {n: k * c for n, c in H.items()}
            for divisor in (F, pencil):
                for n, c in divisor.items():
                    lhs[n] = lhs.get(n, 0) - c
            report._check('residual class', class_identity_check(g, lhs,
                                                                 rhs))
    if report.passed:
        log.graphs.debug("{} {}: embedding verified.".format(g.name,
                                                             fibration_id))
    else:
        log.graphs.error("{} {}: {} failed.".format(g.name, fibration_id,
                                                   report.failure))
    return report


# Fill colors of highlighted fibers, in order.
_COLORS = ('lightblue', 'lightpink', 'palegreen', 'khaki', 'plum', 'orange')


def emit_dot(g, record=None):
    """Deterministic DOT text of a graph.

    Args:
        g: CurveGraph.
        record: optional embedding record; its fibers are drawn as colored
            clusters and its section and torsion nodes as boxes.
    """
    lines = ['graph "{}" {{'.format(g.name), '  node [shape=circle];']
    placed = set()
    if record:
        for k, fiber in enumerate(record['fibers']):
            color = _COLORS[k % len(_COLORS)]
            lines.append('  subgraph "cluster_{}" {{'.format(k))
            lines.append('    label="{}"; style=filled; color="{}";'.format(
                fiber['type'], color))
            for node in fiber['nodes']:
                lines.append('    "{}";'.format(node))
                placed.add(node)
            lines.append('  }')
        for key in ('section', 'torsion'):
            if key in record:
                lines.append('  "{}" [shape=box, xlabel="{}"];'.format(
                    record[key], key))
                placed.add(record[key])
    for node in g.nodes:
        if node not in placed:
            lines.append('  "{}";'.format(node))
    for u, v, m, _ in g.edges:
        if m == 1:
            lines.append('  "{}" -- "{}";'.format(u, v))
        else:
            lines.append('  "{}" -- "{}" [label="{}", penwidth={}];'.format(
                u, v, m, m))
    lines.append('}')
    return '\n'.join(lines) + '\n'
