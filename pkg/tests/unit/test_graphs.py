"""Tests for kfourteen.curvegraph.graphs."""

import copy
import dataclasses
import json
import pytest
from kfourteen.curvegraph import graphs
from kfourteen.utils.errors import InputFormatError, UnknownNameError

CHECKSUM = 'ecd60b9fb871987a6901afb37c3f4ac2fa64bc2be23dce717ed2684f144c1217'

EMBEDDINGS = [(name, fid) for name in ('P14', 'P14_prime', 'P14_double_prime',
                                       'P15', 'P16')
              for fid in sorted(graphs.builtin_graph(name).embeddings)]


def test_checksum():
    """The shipped graph data shall not change unnoticed."""
    assert graphs.checksum() == CHECKSUM


@pytest.mark.parametrize('alias, name', [('P', 'P14'), ('Pprime14',
                                                         'P14_prime'),
                                         ('Pdoubleprime', 'P14_double_prime'),
                                         ('P16', 'P16')])
def test_builtin_graph_aliases(alias, name):
    assert graphs.builtin_graph(alias).name == name


def test_builtin_graph_unknown():
    with pytest.raises(UnknownNameError):
        graphs.builtin_graph('P17')


@pytest.mark.parametrize('name', ['P14', 'P14_prime', 'P14_double_prime',
                                  'P15', 'P16'])
def test_graph_spans_named_lattice(name):
    """The nodes modulo the radical shall span a lattice with the
    invariants of the named polarizing lattice.
    """
    g = graphs.builtin_graph(name)
    found = graphs.graph_lattice_invariants(g)
    assert found.matches(graphs.named_lattice_invariants(g)) == True


@pytest.mark.parametrize('name, fibration', EMBEDDINGS)
def test_fiber_embeddings(name, fibration):
    report = graphs.fiber_embedding_check(graphs.builtin_graph(name),
                                          fibration)
    assert report.passed == True
    assert all(fiber['ok'] for fiber in report.fibers) == True


@pytest.mark.parametrize('fibration, value', [('alternate', 3),
                                              ('standard_dual', 7),
                                              ('base_fiber_dual_prime', 4)])
def test_polarization_degree(fibration, value):
    """H.F shall be reported for every fibration and equal 3 for pencils
    of planes through a line.
    """
    report = graphs.fiber_embedding_check(graphs.builtin_graph('P14'),
                                          fibration)
    assert report.values['H.F'] == value


def test_identities():
    reports = graphs.identity_reports(graphs.builtin_graph('P14'))
    assert len(reports) == 9
    assert all(passed for _, _, passed in reports) == True


def test_identity_off_by_a_node():
    """IF a node is added to one side of a true identity, THEN the classes
    shall no longer agree.
    """
    g = graphs.builtin_graph('P14')
    identity = g.identities[1]
    rhs = dict(identity['rhs'][0])
    assert graphs.class_identity_check(g, identity['lhs'], rhs) == True
    rhs['a1'] = rhs.get('a1', 0) + 1
    assert graphs.class_identity_check(g, identity['lhs'], rhs) == False


def test_psi_exchanges_dual_fibrations():
    """The recorded involution shall preserve the intersection form and map
    every fibration onto its dual.
    """
    g = graphs.builtin_graph('P14')
    reports = dict(graphs.automorphism_reports(g, 'psi'))
    assert reports['isometry'] == True
    assert reports['standard -> standard_dual'] == True
    assert all(reports.values()) == True
    assert len(reports) == 2 + len(g.automorphisms['psi']['pairs'])


def test_psi_moves_fiber_class():
    """Moving the standard fiber class along the involution shall give the
    recorded class after the involution.
    """
    g = graphs.builtin_graph('P14')
    psi = g.automorphisms['psi']['map']
    before, after = g.identities[1], g.identities[2]
    moved = {psi.get(n, n): c for n, c in before['lhs'].items()}
    assert moved == after['lhs']
    assert graphs.class_identity_check(g, moved, after['rhs'][0]) == True


@pytest.mark.parametrize('drop, expected', [
    (('R4', 'R5'), {'bijective': True, 'isometry': False,
                    'standard -> standard_dual': True}),
    (('b1',), {'bijective': False, 'standard -> standard_dual': False}),
])
def test_broken_automorphism(drop, expected):
    g = graphs.builtin_graph('P14')
    record = copy.deepcopy(g.automorphisms['psi'])
    for node in drop:
        del record['map'][node]
    record['pairs'] = [['standard', 'standard_dual']]
    g = dataclasses.replace(g, automorphisms={'broken': record})
    assert dict(graphs.automorphism_reports(g, 'broken')) == expected


def test_unknown_automorphism():
    with pytest.raises(UnknownNameError):
        graphs.automorphism_reports(graphs.builtin_graph('P15'), 'psi')



def test_wrong_fiber_type():
    """IF a node set is recorded with the wrong Kodaira type, THEN the
    embedding shall fail with the first failed check.
    """
    g = graphs.builtin_graph('P14')
    record = copy.deepcopy(g.embeddings['alternate'])
    record['fibers'][0]['type'] = 'D9'
    report = graphs.fiber_embedding_check(g, 'alternate', record)
    assert report.passed == False
    assert report.failure == 'fiber 0 is affine D9'


def test_unknown_fibration():
    with pytest.raises(UnknownNameError):
        graphs.fiber_embedding_check(graphs.builtin_graph('P14_prime'),
                                     'maximal')


@pytest.mark.parametrize('type_name, multiplicities', [
    ('A1', (1, 1)), ('D4', (1, 1, 1, 1, 2)), ('D6', (1, 1, 1, 1, 2, 2, 2)),
    ('E8', (1, 2, 2, 3, 3, 4, 4, 5, 6))])
def test_fiber_multiplicities(type_name, multiplicities):
    assert graphs.fiber_multiplicities(type_name) == multiplicities


def test_fiber_multiplicities_unknown():
    with pytest.raises(UnknownNameError):
        graphs.fiber_multiplicities('F4')


def test_kernel_vector():
    g = graphs.builtin_graph('P14')
    assert graphs.kernel_vector(g, ['a1']) is None
    assert graphs.kernel_vector(g, ['b1', 'b2', 'b3']) is None


def test_pairing():
    g = graphs.builtin_graph('P14')
    assert g.pairing({'a1': 1}, {'a1': 1}) == -2
    assert g.pairing({'a1': 1}, {'a2': 1}) == 1
    with pytest.raises(UnknownNameError):
        g.vector({'z9': 1})


@pytest.mark.parametrize('data, pointer', [
    ({'X': {'lattice': 'H', 'nodes': ['a'], 'edges': [
        {'m': 1, 'pairs': [['a', 'a']]}]}}, '/X/edges'),
    ({'X': {'lattice': 'H', 'nodes': ['a', 'b'], 'edges': [
        {'m': 3, 'pairs': [['a', 'b']]}]}}, '/X/edges'),
    ({'X': {'lattice': 'H', 'nodes': ['a', 'a'], 'edges': []}}, '/X/nodes'),
    ({'X': {'nodes': ['a'], 'edges': []}}, '/X')])
def test_load_graphs_malformed(tmp_path, data, pointer):
    """IF a graph has a loop, an unsupported multiplicity, a duplicate node
    or a missing entry, THEN an input format error shall point to it.
    """
    path = tmp_path / 'graphs.json'
    path.write_text(json.dumps(data))
    with pytest.raises(InputFormatError) as info:
        graphs.load_graphs(str(path))
    assert info.value.pointer == pointer


def test_load_graphs_invalid_json(tmp_path):
    path = tmp_path / 'graphs.json'
    path.write_text('{"X": ')
    with pytest.raises(InputFormatError):
        graphs.load_graphs(str(path))


def test_emit_dot():
    """The DOT text shall be deterministic and mark the fibers, the
    sections and the double edges.
    """
    g = graphs.builtin_graph('P14')
    record = g.embeddings['alternate']
    text = graphs.emit_dot(g, record)
    assert text == graphs.emit_dot(g, record)
    assert text.startswith('graph "P14" {\n')
    assert 'subgraph "cluster_0"' in text
    assert 'xlabel="section"' in text
    assert 'xlabel="torsion"' in text
    assert '[label="2", penwidth=2]' in text
    assert text.endswith('}\n')


def test_emit_dot_plain():
    g = graphs.builtin_graph('P14_double_prime')
    text = graphs.emit_dot(g)
    assert 'cluster' not in text
    assert text.count('" -- "') == len(g.edges)
