"""Command line parser."""

import argparse
import kfourteen
from kfourteen.cli import verify

FORMATS = ('json', 'text', 'dot')

FAMILIES = ('P', 'Pprime', 'Pdoubleprime', "P'", "P''", 'Vinberg')

LOG_LEVELS = ('debug', 'info', 'warning', 'error', 'critical')


def _add_input(parser):
    group = parser.add_mutually_exclusive_group()
    group.add_argument('--in', dest='input_path', metavar='PATH',
                       help="JSON input file ('-' reads stdin)")
    group.add_argument('--json', dest='inline', metavar='TEXT',
                       help='JSON input given inline')


def _add_format(parser, default='json'):
    parser.add_argument('--format', choices=FORMATS, default=default,
                        help='output format (default: {})'.format(default))


def build_parser():
    """The argparse parser of all subcommands."""
    parser = argparse.ArgumentParser(prog='kfourteen',
                                     description=kfourteen.__description__)
    parser.add_argument('--version', action='version',
                        version='%(prog)s {}'.format(kfourteen.__version__))
    parser.add_argument('--log-level', choices=LOG_LEVELS,
                        help='level of the console log')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND')
    sub.required = True

    p = sub.add_parser('invariants', help='moduli point of a quartic')
    p.add_argument('--family', required=True, choices=FAMILIES)
    _add_input(p)
    _add_format(p)

    p = sub.add_parser('fibration',
                       help='pencil substitution and Weierstrass model')
    p.add_argument('--family', required=True,
                   choices=FAMILIES + ('sextic',))
    p.add_argument('--fibration', required=True)
    p.add_argument('--variant', choices=('corrected', 'printed'),
                   default='corrected')
    _add_input(p)
    _add_format(p)

    p = sub.add_parser('classify', help='singular fibers of a fibration')
    p.add_argument('--family', choices=FAMILIES + ('sextic',))
    p.add_argument('--fibration')
    p.add_argument('--model', action='store_true',
                   help='the input is a Weierstrass model')
    _add_input(p)
    _add_format(p)

    p = sub.add_parser('dualize', help='van Geemen-Sarti dual of a model '
                                       'or a moduli point')
    _add_input(p)
    _add_format(p)

    p = sub.add_parser('lattice', help='lattice invariants')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument('--expr', help="e.g. 'H + E8(-1) + A1(-1)^4'")
    group.add_argument('--table', action='store_true',
                       help='the table of polarizing lattices')
    _add_format(p)

    p = sub.add_parser('graph', help='dual graph of rational curves')
    p.add_argument('--id', required=True, dest='graph_id')
    p.add_argument('--embed', metavar='FIBRATION')
    _add_format(p)

    p = sub.add_parser('verify-all', help='run the acceptance catalogue')
    p.add_argument('--only', type=int, nargs='+', choices=sorted(verify.ITEMS),
                   metavar='ITEM')
    p.add_argument('--fast', action='store_true',
                   help='probabilistic multivariate identities')
    p.add_argument('--seed', type=int)
    p.add_argument('--workers', type=int)
    _add_format(p, 'text')

    return parser
