"""Subcommands of the command line.

Every command returns a Result; run() renders it on stdout and maps errors
to exit codes: 0 success, 1 failed verification, 2 usage error.
"""

import json
import sys
from dataclasses import dataclass
from kfourteen.algebra import exactalg
from kfourteen.cli import verify
from kfourteen.config import config
from kfourteen.curvegraph import graphs
from kfourteen.lattices import lattices
from kfourteen.moduli import duality, invariants
from kfourteen.moduli.invariants import ModuliPoint
from kfourteen.surfaces import doublesextic, ellfib, quartics
from kfourteen.surfaces.ellfib import WeierstrassModel
from kfourteen.utils import log
from kfourteen.utils.errors import (InputFormatError, InternalInvariantError,
                                    KFourteenError, UnknownNameError)

OK = 0
FAILED = 1
USAGE = 2


@dataclass
class Result:

    """Output of a command.

    Attributes:
        data: JSON serializable artifact.
        text: plain text rendering, the JSON text if None.
        dot: DOT rendering, if the command has one.
        status: exit status.
    """

    data: object
    text: str = None
    dot: str = None
    status: int = OK

    def render(self, fmt):
        if fmt == 'dot':
            if self.dot is None:
                raise InputFormatError("this command has no DOT output")
            return self.dot
        if fmt == 'text' and self.text is not None:
            return self.text + '\n'
        return json.dumps(self.data, indent=2, sort_keys=True) + '\n'


def read_input(args):
    """Parse the JSON given by --in or --json."""
    if args.inline is not None:
        text, source = args.inline, '--json'
    elif args.input_path == '-':
        text, source = sys.stdin.read(), 'stdin'
    elif args.input_path:
        source = args.input_path
        try:
            with open(args.input_path, 'r') as stream:
                text = stream.read()
        except OSError as e:
            raise InputFormatError("cannot read {}: {}".format(source, e))
    else:
        raise InputFormatError("no input given, use --in or --json")
    try:
        return json.loads(text)
    except ValueError as e:
        raise InputFormatError("invalid JSON in {}: {}".format(source, e))


def _model_text(m):
    return 'y^2 = x^3 + ({}) x^2 + ({}) x + ({})   [weight {}]'.format(
        exactalg.poly_to_text(m.a2), exactalg.poly_to_text(m.a4),
        exactalg.poly_to_text(m.a6), m.weight)


def _point_text(p):
    return '\n'.join('{} = {}'.format(name, exactalg.rat_str(c))
                     for name, c in zip(p.names, p.coords))


def invariants_command(args):
    family = quartics.family_name(args.family)
    coeffs = quartics.coefficients_from_json(family, read_input(args))
    point = invariants.invariants_for(family, coeffs)
    data = point.to_json()
    text = _point_text(point)
    if point.family == 'Vinberg13' and point.coords[5] == 0:
        restricted = invariants.pdoubleprime_point(point)
        data['Pdoubleprime'] = restricted.to_json()
        text += '\n\n' + _point_text(restricted)
    return Result(data, text)


def _fibration_model(args, data):
    """(family, torsion order, WeierstrassModel, coefficients)."""
    if args.family is None or args.fibration is None:
        raise InputFormatError("--family and --fibration are required "
                               "unless --model is given")
    if args.family == 'sextic':
        if args.fibration not in doublesextic.FIBRATIONS:
            raise UnknownNameError("the double sextic has no fibration "
                                   "{!r}".format(args.fibration))
        cfg = doublesextic.SexticConfig.from_json(data)
        return ('sextic', doublesextic.FIBRATIONS[args.fibration],
                doublesextic.fibration_Y(cfg, args.fibration), cfg)
    family = quartics.check_fibration(args.family, args.fibration)
    coeffs = quartics.coefficients_from_json(family, data)
    return (family, quartics.FIBRATIONS[family][args.fibration],
            quartics.fibration_model(family, args.fibration, coeffs), coeffs)


def fibration_command(args):
    family, torsion, model, coeffs = _fibration_model(args, read_input(args))
    data = {'family': family, 'fibration': args.fibration,
            'mw_torsion_order': torsion, 'model': model.to_json()}
    text = _model_text(model)
    status = OK
    if family != 'sextic':
        pen = quartics.pencil(family, args.fibration, coeffs, args.variant)
        report = quartics.verify_pencil_substitution(
            family, args.fibration, coeffs, args.variant)
        data['variant'] = args.variant
        data['substitution'] = {str(k): str(v) for k, v in
                                sorted(pen.image.items(), key=str)}
        data['identity'] = report.to_json()
        text += '\nsubstitution: {}\nidentity holds: {}'.format(
            ', '.join('{} = {}'.format(k, v)
                      for k, v in sorted(data['substitution'].items())),
            report.holds)
        if not report.holds:
            status = FAILED
    return Result(data, text, status=status)


def classify_command(args):
    data = read_input(args)
    if args.model:
        model = WeierstrassModel.from_json(data)
        torsion = 2 if ellfib.two_torsion_at_origin(model) else 1
    else:
        _, torsion, model, _ = _fibration_model(args, data)
    cfg = ellfib.classify_fibers(model, torsion)
    out = cfg.to_json()
    out['euler'] = cfg.euler_sum()
    out['euler_ok'] = cfg.euler_sum() == ellfib.K3_EULER
    return Result(out, cfg.summary())


def dualize_command(args):
    data = read_input(args)
    if not isinstance(data, dict):
        raise InputFormatError("input must be a JSON object")
    if 'family' not in data:
        m = duality.TwoTorsionModel.from_weierstrass(
            WeierstrassModel.from_json(data))
        dual = duality.vgs_quotient(m).weierstrass()
        return Result(dual.to_json(), _model_text(dual))
    point = ModuliPoint.from_json(data)
    if point.family == 'Pprime':
        image = duality.iota_prime(point)
    elif point.family == 'Rank18':
        image = duality.rank18_point(*duality.iota_rank18(*point.coords))
    else:
        raise InputFormatError("no duality acts on {} points".format(
            point.family), pointer='/family')
    return Result(image.to_json(), _point_text(image))


def _lattice_text(expr, inv):
    return '{}: rank {}, signature ({}, {}), D = {} ({})'.format(
        expr, inv.rank, inv.signature[0], inv.signature[1],
        inv.discriminant.group_label(), inv.parity)


def lattice_command(args):
    if args.expr:
        inv = lattices.lattice_invariants(lattices.build_lattice(args.expr))
        return Result(inv.to_json(), _lattice_text(args.expr, inv))
    rows, lines, status = [], [], OK
    for expr, rank, sig, group in lattices.LATTICE_TABLE:
        inv = lattices.lattice_invariants(lattices.build_lattice(expr))
        ok = (inv.rank == rank and inv.signature == sig
              and tuple(sorted(inv.discriminant.invariant_factors)) == group)
        row = inv.to_json()
        row.update({'lattice': expr, 'matches_table': ok})
        rows.append(row)
        lines.append(_lattice_text(expr, inv) + ('' if ok else '  MISMATCH'))
        if not ok:
            status = FAILED
    return Result(rows, '\n'.join(lines), status=status)


def graph_command(args):
    g = graphs.builtin_graph(args.graph_id)
    data = {'graph': g.to_json(), 'checksum': graphs.checksum()}
    text = '{}: {} curves, {} edges, lattice {}'.format(
        g.name, len(g.nodes), len(g.edges), g.lattice)
    record, status = None, OK
    if args.embed:
        report = graphs.fiber_embedding_check(g, args.embed)
        record = g.embeddings[args.embed]
        data['embedding'] = report.to_json()
        text += '\n{}: {}'.format(args.embed, ', '.join(
            '{} {}'.format(name, 'ok' if ok else 'FAILED')
            for name, ok in report.checks.items()))
        if not report.passed:
            status = FAILED
    return Result(data, text, graphs.emit_dot(g, record), status)


def verify_command(args):
    ctx = verify.VerifyContext.from_config(args.seed, args.fast)
    workers = args.workers
    if workers is None:
        workers = config.var.setting('verify', 'workers')
    report = verify.run_all(ctx, args.only, workers)
    return Result(report.to_json(), report.to_text(),
                  status=OK if report.passed else FAILED)


COMMANDS = {
    'invariants': invariants_command,
    'fibration': fibration_command,
    'classify': classify_command,
    'dualize': dualize_command,
    'lattice': lattice_command,
    'graph': graph_command,
    'verify-all': verify_command,
}


def run(args):
    """Run a parsed command line and write its artifact to stdout.

    Return:
        Exit status.
    """
    log.cli.info("Running {}.".format(args.command))
    try:
        result = COMMANDS[args.command](args)
        sys.stdout.write(result.render(args.format))
    except InternalInvariantError as e:
        log.cli.error("Internal check failed: {}".format(e))
        return FAILED
    except KFourteenError as e:
        pointer = getattr(e, 'pointer', '')
        log.cli.error("{}: {}{}".format(type(e).__name__, e,
                                        ' at ' + pointer if pointer else ''))
        return USAGE
    except Exception:
        log.cli.exception("Unexpected error in {}.".format(args.command))
        return FAILED
    return result.status
