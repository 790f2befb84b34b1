"""The acceptance catalogue run by ``kfourteen verify-all``.

Every item is a pure function of a VerifyContext. Randomness comes from one
generator per item, seeded by the context seed and the item number, so the
report does not depend on how items are distributed over worker processes.
"""

import random
from contextlib import contextmanager
from dataclasses import dataclass, field
from multiprocessing import Pool
import sympy
from sympy import Rational
from kfourteen.algebra import exactalg
from kfourteen.algebra.exactalg import t
from kfourteen.config import config
from kfourteen.curvegraph import graphs
from kfourteen.lattices import lattices
from kfourteen.moduli import duality, invariants
from kfourteen.moduli.invariants import ABPair, ModuliPoint
from kfourteen.surfaces import doublesextic, ellfib, quartics
from kfourteen.surfaces.doublesextic import SexticConfig
from kfourteen.utils import log
from kfourteen.utils.errors import (InvalidCoefficientsError, KFourteenError,
                                    PreconditionError)

# Generic points known to reproduce the fiber tables; positional in the
# field order of the coefficient types.
CERTIFIED = {
    'P': ((2, 3, 1, 2, 1, 3, 1, 4, 1, 5), (1, 5, 2, 1, 3, -1, 1, 7, 5, 2)),
    'Pprime': ((1, 2, 3, 5, 2, -1, 3), (-2, 1, 4, -1, -3, 2, 7)),
    'Pdoubleprime': ((1, 2, 3, -1, 2, 3, 1, -2), (-2, 1, 1, 5, -3, 1, 2, 7)),
}

# Second certified points of the P family on the rank 15 and 16 loci.
CERTIFIED_P_SPECIAL = {
    'rank15': (1, -2, 3, 1, 2, 5, -1, 3, 0, 1),
    'rank16': (3, -1, 2, -3, 1, 4, 0, 1, 0, 1),
}

# Neron-Severi lattices of the loci on which the fibrations have no
# Mordell-Weil rank.
NS_LATTICES = {
    ('P', 'rank14'): 'H + E8(-1) + A1(-1)^4',
    ('P', 'rank15'): 'H + E7(-1) + D6(-1)',
    ('P', 'rank16'): 'H + E8(-1) + D6(-1)',
    ('Pprime', 'generic'): 'H + D8(-1) + D4(-1)',
    ('Pdoubleprime', 'rank13'): 'H + E8(-1) + A3(-1)',
    ('Pdoubleprime', 'g0 = 0'): 'H + E8(-1) + D4(-1)',
}

# Fibrations with a section of infinite order.
MW_RANKS = {('Pdoubleprime', 'g0 = g3 = 0', 'standard'): 1}

SELFDUAL_FIBERS = 'III* + III + 4I2 + 4I1'
RANK18_FIBERS = ('2III* + 2III', '2III* + 2I2 + 2I1')

# Attempts to find a generic point before an item gives up.
MAX_REDRAWS = 20

SUBSTITUTION_DRAWS = 5
FIXED_LOCUS_SAMPLES = 200
# Off the fixed locus, then on each of its components.
FIXED_LOCUS_COMPONENTS = (None,) + duality.SELFDUAL_SCALINGS
SATAKE_SAMPLES = 100

_LOCUS_ZEROS = (('generic', ()), ('d2 = 0', ('d2',)),
                ('d2 = e2 = 0', ('d2', 'e2')),
                ('d2 = e2 = e1 = 0', ('d2', 'e2', 'e1')))


@dataclass(frozen=True)
class VerifyContext:

    """Parameters of one verification run.

    Attributes:
        seed: seed of all random draws.
        draws: generic points per fiber table row.
        samples: sample count of the property checks.
        trials: evaluation points of the probabilistic identity test.
        bound: numerator bound of random rationals.
        fast: decide multivariate identities by random evaluation.
    """

    seed: int
    draws: int = 3
    samples: int = 20
    trials: int = 12
    bound: int = 9
    fast: bool = False

    @classmethod
    def from_config(cls, seed=None, fast=False):
        """Context from the configuration file; seed overrides it."""
        setting = config.var.setting
        ctx = cls(setting('verify', 'seed') if seed is None else seed,
                  setting('verify', 'draws'), setting('verify', 'samples'),
                  setting('verify', 'identity_trials'),
                  setting('verify', 'coefficient_range'), fast)
        for key in config.var.fallbacks:
            log.config.warning("verify.{} missing or invalid, using {}."
                               .format(key, config.DEFAULTS['verify'][key]))
        return ctx

    def rng(self, item):
        return random.Random('{}:{}'.format(self.seed, item))

    @property
    def generic_bound(self):
        """Numerator bound of generic draws."""
        return self.bound**3


@dataclass
class CheckResult:

    """Outcome of a single check."""

    check_id: str
    item: int
    passed: bool
    detail: str = ''

    def to_json(self):
        return {'id': self.check_id, 'item': self.item,
                'passed': self.passed, 'detail': self.detail}


class _Collector:

    """Collect the CheckResults of one item."""

    def __init__(self, item):
        self.item = item
        self.results = []

    def add(self, check_id, passed, detail=''):
        result = CheckResult('{}/{}'.format(self.item, check_id), self.item,
                             bool(passed), str(detail))
        self.results.append(result)
        if result.passed:
            log.verify.info("{} passed.".format(result.check_id))
        else:
            log.verify.error("{} failed: {}".format(result.check_id,
                                                    result.detail))

    @contextmanager
    def guard(self, check_id):
        """Record an error raised inside the block as a failed check."""
        try:
            yield
        except KFourteenError as e:
            self.add(check_id, False, '{}: {}'.format(type(e).__name__, e))
        except Exception as e:
            log.verify.exception("Unexpected error in {}/{}.".format(
                self.item, check_id))
            self.add(check_id, False, '{}: {}'.format(type(e).__name__, e))


def certified_points(family, locus):
    """Certified generic coefficient tuples of a FIBER_TABLES locus."""
    family = quartics.family_name(family)
    cls = quartics.COEFFICIENT_TYPES[family]
    points = [quartics.specialize(family, locus, cls(*values))
              for values in CERTIFIED[family]]
    if family == 'P' and locus in CERTIFIED_P_SPECIAL:
        points[1] = cls(*CERTIFIED_P_SPECIAL[locus])
    return points


def random_coefficients(rng, family, bound):
    """Coefficient tuple with random nonzero entries."""
    cls = quartics.COEFFICIENT_TYPES[quartics.family_name(family)]
    return cls(*(exactalg.random_rational(rng, bound, nonzero=True)
                 for _ in cls.KEYS))


def random_config(rng, bound, zeros=()):
    """Random SexticConfig in the gauge, with the given entries zero."""
    while True:
        values = {k: exactalg.random_rational(rng, bound, nonzero=True)
                  for k in ('mu', 'c0', 'd2', 'd0', 'e2', 'e1', 'e0')}
        values.update({k: Rational(0) for k in zeros})
        try:
            return SexticConfig.with_gauge(**values).validate()
        except (InvalidCoefficientsError, PreconditionError):
            continue


def _summary(model, torsion=1):
    return ellfib.classify_fibers(model, torsion).summary()


def generic_points(ctx, rng, out, family, locus, expected):
    """ctx.draws points of a locus: the certified ones, then random draws
    whose alternate fibration shows the expected fibers.
    """
    points = certified_points(family, locus)[:ctx.draws]
    attempts = 0
    while len(points) < ctx.draws:
        if attempts == MAX_REDRAWS:
            out.add('{}/{}/draw'.format(family, locus), False,
                    'no generic point after {} draws'.format(attempts))
            break
        attempts += 1
        c = quartics.specialize(family, locus, random_coefficients(
            rng, family, ctx.generic_bound))
        try:
            found = _summary(quartics.fibration_model(family, 'alternate', c))
        except KFourteenError as e:
            found = str(e)
        if found == expected:
            points.append(c)
        else:
            log.verify.info("Redraw: {} {} point {} gives {}.".format(
                family, locus, c.to_json(), found))
    return points


def fiber_tables(ctx):
    """Classify every fibration of the quartic families on each locus."""
    out, rng = _Collector(1), ctx.rng(1)
    for family, loci in quartics.FIBER_TABLES.items():
        torsion = quartics.FIBRATIONS[family]
        for locus, (_, table) in loci.items():
            points = generic_points(ctx, rng, out, family, locus,
                                    table['alternate'])
            for k, c in enumerate(points):
                for fid, expected in table.items():
                    cid = '{}/{}/{}/{}'.format(family, locus, fid, k)
                    with out.guard(cid):
                        m = quartics.fibration_model(family, fid, c)
                        found = _summary(m, torsion[fid])
                        marker = (ellfib.two_torsion_at_origin(m)
                                  == (torsion[fid] == 2))
                        out.add(cid, found == expected and marker, found)
    return out.results


def euler_and_frames(ctx):
    """Euler number and Shioda-Tate of every table row; the determinant
    condition of all tabulated frames.
    """
    out = _Collector(2)
    for family, loci in quartics.FIBER_TABLES.items():
        torsion = quartics.FIBRATIONS[family]
        for locus, (picard, table) in loci.items():
            ns = NS_LATTICES.get((family, locus))
            ns_order = (lattices.build_lattice(ns).discriminant_order()
                        if ns else None)
            c = certified_points(family, locus)[0]
            for fid in table:
                cid = '{}/{}/{}'.format(family, locus, fid)
                with out.guard(cid):
                    cfg = ellfib.classify_fibers(
                        quartics.fibration_model(family, fid, c),
                        torsion[fid], MW_RANKS.get((family, locus, fid), 0))
                    report = ellfib.consistency_report(cfg, picard, ns_order)
                    out.add(cid, report.passed, 'euler {}, rank {}'.format(
                        report.euler, report.shioda_tate))
    for key, reports in lattices.frame_table_reports().items():
        for report in reports:
            out.add('frame/{}/{}'.format(key, report.root), report.passed,
                    report.to_json())
    return out.results


def substitutions(ctx):
    """Pencil substitutions, Nikulin involutions, the pencil images and the
    comparison with Vinberg's quartic.
    """
    out, rng = _Collector(3), ctx.rng(3)
    for family, fibrations in quartics.FIBRATIONS.items():
        for k in range(SUBSTITUTION_DRAWS):
            c = random_coefficients(rng, family, ctx.bound)
            for fid in fibrations:
                cid = 'substitution/{}/{}/{}'.format(family, fid, k)
                with out.guard(cid):
                    report = quartics.verify_pencil_substitution(
                        family, fid, c, fast=ctx.fast, rng=rng,
                        trials=ctx.trials)
                    out.add(cid, report.holds,
                            report.cofactor or report.residual or '')
    for family in ('P', 'Pprime'):
        locus = next(iter(quartics.FIBER_TABLES[family]))
        for k, c in enumerate(certified_points(family, locus)):
            cid = 'nikulin/{}/{}'.format(family, k)
            with out.guard(cid):
                out.add(cid, quartics.nikulin_involution_check(family, c))
    for k, c in enumerate(certified_points('P', 'rank14')):
        cid = 'pencil_images/{}'.format(k)
        with out.guard(cid):
            report = quartics.pencil_image_report(c)
            out.add(cid, all(r['corrected'] for r in report.values()),
                    report)
    for k, c in enumerate(certified_points('P', 'rank16')):
        cid = 'vinberg/{}'.format(k)
        with out.guard(cid):
            out.add(cid, quartics.vinberg_birational_check(c))
    return out.results


def _random_point(rng, family, bound):
    return ModuliPoint(family, [
        exactalg.random_rational(rng, bound, nonzero=True)
        for _ in invariants.WEIGHTS[family]])


def _selfdual_point(rng, bound, mu=1):
    """A random point of the component of the fixed locus of iota_prime on
    which Lambda^2 = mu.
    """
    J2, J6, J8, J10, J12, J16, J20 = (
        exactalg.random_rational(rng, bound, nonzero=True) for _ in range(7))
    if mu == 1:
        return ModuliPoint('Pprime', (0, J6, J8, 0, J6**2 / 8, J16, 0))
    if mu == -1:
        coords = [J2, -J2**3 / 20, J8, J10, 0, J16, 0]
        # J12, then J20, is half its own image once it is set to zero.
        for i in (4, 6):
            image = duality.iota_prime(ModuliPoint('Pprime', coords))
            coords[i] = image.coords[i] / 2
        return ModuliPoint('Pprime', coords)
    return ModuliPoint('Pprime', (0, 0, J8, 0, J12, J16, J20))


def moduli_involutions(ctx):
    """The involutions of the P' and the rank 18 moduli spaces."""
    out, rng = _Collector(4), ctx.rng(4)
    with out.guard('iota_prime/involutive'):
        out.add('iota_prime/involutive', duality.iota_prime_is_involution())
    with out.guard('iota_prime/routes'):
        bad = []
        for _ in range(ctx.samples):
            p = _random_point(rng, 'Pprime', ctx.bound)
            if duality.iota_prime(duality.iota_prime(p)) != p:
                bad.append(p.to_json()['coords'])
        out.add('iota_prime/routes', not bad, bad)
    with out.guard('iota_prime/fixed_locus'):
        mismatches = 0
        for k in range(FIXED_LOCUS_SAMPLES):
            mu = FIXED_LOCUS_COMPONENTS[k % len(FIXED_LOCUS_COMPONENTS)]
            p = (_random_point(rng, 'Pprime', ctx.bound) if mu is None
                 else _selfdual_point(rng, ctx.bound, mu))
            fixed = invariants.wp_equivalent(duality.iota_prime(p), p)
            if fixed != duality.selfdual_check(p) or \
                    duality.selfdual_component(p) != mu:
                mismatches += 1
        out.add('iota_prime/fixed_locus', mismatches == 0,
                '{} of {} samples disagree'.format(mismatches,
                                                   FIXED_LOCUS_SAMPLES))
    with out.guard('iota_prime/selfdual_fibers'):
        p = _selfdual_point(rng, ctx.generic_bound)
        found = _summary(duality.cd_model(p).weierstrass(), 2)
        out.add('iota_prime/selfdual_fibers', found == SELFDUAL_FIBERS, found)
    with out.guard('rank18/involution'):
        bad = 0
        for k in range(ctx.samples):
            c0, d1, d0 = (exactalg.random_rational(rng, ctx.bound,
                                                   nonzero=True)
                          for _ in range(3))
            if k % 3 == 1:
                c0 = Rational(0)
            elif k % 3 == 2:
                d1 = c0**2 / 8
            image = duality.iota_rank18(c0, d1, d0)
            twice = duality.iota_rank18(*image)
            fixed = invariants.wp_equivalent(duality.rank18_point(*image),
                                             duality.rank18_point(c0, d1,
                                                                  d0))
            if twice != (c0, d1, d0) or fixed != (c0 == 0
                                                 or 8 * d1 == c0**2):
                bad += 1
        out.add('rank18/involution', bad == 0, '{} bad samples'.format(bad))
    with out.guard('rank18/fibers'):
        d1, d0 = (exactalg.random_rational(rng, ctx.generic_bound,
                                           nonzero=True) for _ in range(2))
        c0 = exactalg.random_rational(rng, ctx.generic_bound, nonzero=True)
        found = (_summary(duality.rank18_model(0, d1, d0).weierstrass(), 2),
                 _summary(duality.rank18_model(c0, d1, d0).weierstrass(), 2))
        out.add('rank18/fibers', found == RANK18_FIBERS, found)
    return out.results


def vgs_pairing(ctx):
    """Alternate fibrations of the P family and of their duals."""
    out = _Collector(5)
    for locus, row in zip(('rank14', 'rank15', 'rank16'),
                          duality.DUAL_FIBER_TABLE):
        name, expected, expected_dual = row
        for k, c in enumerate(certified_points('P', locus)):
            cid = '{}/{}'.format(name, k)
            with out.guard(cid):
                pair = ABPair.from_coefficients(c)
                b4, b3 = pair.b[:2]
                on_locus = {'generic': b4 != 0, 'b4 = 0': b4 == 0 and b3 != 0,
                            'b3 = b4 = 0': b4 == 0 and b3 == 0}[name]
                m = duality.TwoTorsionModel(pair.A, pair.B)
                found = (_summary(m.weierstrass(), 2),
                         _summary(duality.vgs_quotient(m).weierstrass(), 2))
                out.add(cid, on_locus and found == (expected, expected_dual)
                        and duality.double_quotient_is_rescaling(m), found)
    return out.results


def _factorized_samples(ctx, rng, count):
    """(cfg, pair, Q1, FactorizationData) of random configurations with
    sigma2 != 0.
    """
    samples = []
    while len(samples) < count:
        cfg = random_config(rng, ctx.bound)
        pair = doublesextic.dual_pair(cfg)
        Q1 = doublesextic.q_rho_sigma(cfg, cfg.nu, cfg.nu)
        try:
            fd = doublesextic.factorize(pair, Q1)
        except PreconditionError:
            continue
        samples.append((cfg, pair, Q1, fd))
    return samples


def satake_machinery(ctx):
    """Satake sextic, the sigma/chi identities and the recovery of branch
    configurations.
    """
    out, rng = _Collector(6), ctx.rng(6)
    with out.guard('satake/sextic'):
        bad = 0
        for _ in range(SATAKE_SAMPLES):
            a1, a0, b4, b3, b2, b1, b0 = (
                exactalg.random_rational(rng, ctx.bound) for _ in range(7))
            pair = ABPair(t**3 + a1 * t + a0,
                          b4 * t**4 + b3 * t**3 + b2 * t**2 + b1 * t + b0)
            point = invariants.invariants_from_pair(pair)
            j4, _, j6, _, j8, j10, j12 = point.coords
            sums = invariants.SatakePowerSums.from_sextic(pair.satake())
            if (invariants.satake_of_point(point) != pair.satake()
                    or invariants.power_sums_to_j(sums)
                    != (j4, j6, j8, j10, j12)):
                bad += 1
        out.add('satake/sextic', bad == 0, '{} bad samples'.format(bad))
    with out.guard('sigma_chi/witness'):
        pair = ABPair(t**3 - 7 * t, 9)
        fd = doublesextic.factorize(pair, (t - 1) * (t - 2) * (t - 3))
        j = (Rational(7, 3), 0, 0, 0, 9)
        perturbed = j[:4] + (10,)
        out.add('sigma_chi/witness',
                (fd.sigma2, fd.chi2) == (6, 0)
                and doublesextic.verify_sigma_chi_relations(fd, *j)
                and not doublesextic.verify_sigma_chi_relations(fd,
                                                                *perturbed)
                and doublesextic.printed_mu_nu(fd, pair) == (648, -648),
                fd.to_json())
    with out.guard('sigma_chi/random'):
        bad = 0
        for _, pair, _, fd in _factorized_samples(ctx, rng, SATAKE_SAMPLES):
            j4, _, j6, _, j8, j10, j12 = invariants.invariants_from_pair(
                pair).coords
            if not doublesextic.verify_sigma_chi_relations(fd, j4, j6, j8,
                                                           j10, j12):
                bad += 1
        out.add('sigma_chi/random', bad == 0, '{} bad samples'.format(bad))
    for k, (cfg, pair, Q1, fd) in enumerate(
            _factorized_samples(ctx, rng, ctx.draws)):
        cid = 'round_trip/{}'.format(k)
        with out.guard(cid):
            # mu - nu = sigma2 + 2 r singles out the root of b4
            root = (cfg.mu - cfg.nu - fd.sigma2) / 2
            try:
                recovered, _ = doublesextic.config_from_factorization(
                    pair.A, pair.B, Q1, root)
            except PreconditionError as e:
                log.verify.info("Round trip skipped: {}".format(e))
                continue
            model = doublesextic.fibration_Y(recovered, 'alternate')
            dual = duality.vgs_quotient(
                duality.TwoTorsionModel.from_weierstrass(model))
            back = invariants.gauge_normalize(dual.a, dual.b)
            out.add(cid, recovered == cfg and invariants.wp_equivalent(
                invariants.invariants_from_pair(back),
                invariants.invariants_from_pair(pair)), recovered.to_json())
    for locus, zeros in _LOCUS_ZEROS:
        for k in range(ctx.draws):
            cid = 'correspondences/{}/{}'.format(locus, k)
            with out.guard(cid):
                cfg = random_config(rng, ctx.generic_bound, zeros)
                found = doublesextic.parameter_correspondences(cfg)
                out.add(cid, all(a == b for a, b in found.values()), found)
    return out.results


def lattice_table(ctx):
    """Invariants of the polarizing lattices and their isometric
    presentations.
    """
    out = _Collector(7)
    for expr, rank, sig, group in lattices.LATTICE_TABLE:
        with out.guard(expr):
            inv = lattices.lattice_invariants(lattices.build_lattice(expr))
            out.add(expr, inv.rank == rank and inv.signature == sig
                    and tuple(sorted(inv.discriminant.invariant_factors))
                    == group, inv.discriminant.group_label())
    for name, chain in lattices.ISOMETRY_CHAINS.items():
        first = lattices.lattice_invariants(lattices.build_lattice(chain[0]))
        for expr in chain[1:]:
            cid = '{}/{}'.format(name, expr)
            with out.guard(cid):
                other = lattices.lattice_invariants(
                    lattices.build_lattice(expr))
                out.add(cid, first.matches(other))
    with out.guard('parity'):
        odd = lattices.lattice_invariants(
            lattices.build_lattice('H + E8(-1) + A1(-1)^4'))
        even = lattices.lattice_invariants(
            lattices.build_lattice('H + D8(-1) + D4(-1)'))
        out.add('parity', (odd.parity, even.parity) == ('odd', 'even')
                and not odd.matches(even))
    return out.results


GRAPHS = ('P14', 'P14_prime', 'P14_double_prime', 'P15', 'P16')


def graph_lattices(ctx):
    """Lattices, class identities and fiber embeddings of the graphs."""
    out = _Collector(8)
    for name in GRAPHS:
        with out.guard(name):
            g = graphs.builtin_graph(name)
            out.add('{}/lattice'.format(name),
                    graphs.graph_lattice_invariants(g).matches(
                        graphs.named_lattice_invariants(g)), g.lattice)
            for source, k, ok in graphs.identity_reports(g):
                out.add('{}/identity/{}/{}'.format(name, source, k), ok)
            for fid in sorted(g.embeddings):
                report = graphs.fiber_embedding_check(g, fid)
                out.add('{}/embedding/{}'.format(name, fid), report.passed,
                        report.failure or '')
            for aut in sorted(g.automorphisms):
                for check, ok in graphs.automorphism_reports(g, aut):
                    out.add('{}/automorphism/{}/{}'.format(name, aut, check),
                            ok)
    return out.results


def sextic_tables(ctx):
    """Both fibrations of the double sextic on the specialization loci."""
    out, rng = _Collector(9), ctx.rng(9)
    for (locus, zeros), (_, standard, alternate) in zip(
            _LOCUS_ZEROS, doublesextic.FIBER_TABLES):
        for k in range(ctx.draws):
            cid = '{}/{}'.format(locus, k)
            with out.guard(cid):
                for _ in range(MAX_REDRAWS):
                    cfg = random_config(rng, ctx.generic_bound, zeros)
                    found = _summary(doublesextic.fibration_Y(cfg,
                                                              'standard'))
                    if found == standard:
                        break
                    log.verify.info("Redraw: {} gives {}.".format(
                        cfg.to_json(), found))
                else:
                    out.add(cid, False, 'no generic configuration')
                    continue
                found = _summary(doublesextic.fibration_Y(cfg, 'alternate'),
                                 2)
                predicates = (doublesextic.cubic_tangent_at_q0(cfg)
                              == ('d2' in zeros)
                              and doublesextic.cubic_singular_at_q0(cfg)
                              == ('e2' in zeros))
                out.add(cid, found == alternate and predicates, found)
    return out.results


def _random_upoly(rng, bound, degree):
    return exactalg.upoly(sum(exactalg.random_rational(rng, bound) * t**k
                              for k in range(degree)) + t**degree)


def algebraic_laws(ctx):
    """Laws of the polynomial algebra, invariance of the classification,
    weighted projective equivalence and determinism of DOT output.
    """
    out, rng = _Collector(10), ctx.rng(10)
    x, y = sympy.symbols('x y')
    with out.guard('polynomials'):
        bad = 0
        for _ in range(ctx.samples):
            f, g, h = (_random_upoly(rng, ctx.bound, d) for d in (3, 2, 2))
            common = exactalg.gcd_univariate(f * h, g * h)
            sqf = exactalg.squarefree_decompose(f**2 * g)
            product = exactalg.upoly(1)
            for factor, m in sqf:
                product *= factor**m
            divisor = exactalg.mpoly(x * y**2 + h.as_expr().subs(t, x) * y
                                     + 1, (x, y))
            dividend = exactalg.mpoly(sympy.expand(
                divisor.as_expr() * f.as_expr().subs(t, x + y)), (x, y))
            if (not common.rem(h).is_zero
                    or not (f * h).rem(common).is_zero
                    or product != (f**2 * g).monic()
                    or not exactalg.pseudo_reduce(dividend, divisor,
                                                  y).is_zero):
                bad += 1
        out.add('polynomials', bad == 0, '{} bad samples'.format(bad))
    for k, c in enumerate(certified_points('P', 'rank14')):
        cid = 'classification_invariance/{}'.format(k)
        with out.guard(cid):
            m = quartics.fibration_model('P', 'alternate', c)
            expected = _summary(m, 2)
            p, q, r, s = 1, 0, 0, 1
            while p * s == q * r:
                p, q, r, s = (exactalg.random_rational(rng, ctx.bound)
                              for _ in range(4))
            lam = exactalg.random_rational(rng, ctx.bound, nonzero=True)
            moved = ellfib.rescale_model(ellfib.moebius_transform(
                m, p, q, r, s), lam)
            found = _summary(moved, 2)
            out.add(cid, found == expected, found)
    with out.guard('wp_equivalence'):
        bad = 0
        for _ in range(ctx.samples):
            p = _random_point(rng, 'P', ctx.bound)
            lam, mu = (exactalg.random_rational(rng, ctx.bound, nonzero=True)
                       for _ in range(2))
            q, r = p.scaled(lam), p.scaled(lam).scaled(mu)
            wp = invariants.wp_equivalent
            scale = invariants.rational_scaling(p, q)
            if not (wp(p, p) and wp(p, q) and wp(q, p) and wp(p, r)
                    and wp(p, q, strict=True)
                    and scale is not None and p.scaled(scale) == q):
                bad += 1
        out.add('wp_equivalence', bad == 0, '{} bad samples'.format(bad))
    with out.guard('dot'):
        fresh = graphs.load_graphs()
        same = True
        for name in GRAPHS:
            g = graphs.builtin_graph(name)
            for record in [None] + [g.embeddings[f]
                                    for f in sorted(g.embeddings)]:
                same = same and (graphs.emit_dot(g, record)
                                 == graphs.emit_dot(g, record)
                                 == graphs.emit_dot(fresh[name], record))
        out.add('dot', same)
    return out.results


# Acceptance items: number -> (topic, check function).
ITEMS = {
    1: ('singular fibers of the quartic fibrations', fiber_tables),
    2: ('Euler number, Shioda-Tate and frames', euler_and_frames),
    3: ('pencil substitutions and involutions of P^3', substitutions),
    4: ('involutions of the moduli spaces', moduli_involutions),
    5: ('van Geemen-Sarti pairing', vgs_pairing),
    6: ('Satake sextic and branch configurations', satake_machinery),
    7: ('polarizing lattices', lattice_table),
    8: ('dual graphs of rational curves', graph_lattices),
    9: ('fibrations of the double sextic', sextic_tables),
    10: ('algebraic laws', algebraic_laws),
}


def run_item(item, ctx):
    """Run one acceptance item; errors become failed checks."""
    log.verify.info("Item {}: {}.".format(item, ITEMS[item][0]))
    out = _Collector(item)
    with out.guard('run'):
        return ITEMS[item][1](ctx)
    return out.results


@dataclass
class VerifyReport:

    """Merged results of a verification run."""

    seed: int
    fast: bool
    items: list
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def item_passed(self, item):
        return all(c.passed for c in self.checks if c.item == item)

    def to_json(self):
        return {
            'seed': self.seed, 'fast': self.fast, 'passed': self.passed,
            'items': [{'item': n, 'topic': ITEMS[n][0],
                       'passed': self.item_passed(n),
                       'checks': sum(1 for c in self.checks if c.item == n)}
                      for n in self.items],
            'checks': [c.to_json() for c in self.checks],
        }

    def to_text(self):
        lines = ['seed {}{}'.format(self.seed, ', fast' if self.fast else '')]
        for n in self.items:
            checks = [c for c in self.checks if c.item == n]
            failed = [c for c in checks if not c.passed]
            lines.append('{:>2}  {:<48} {}  ({} checks)'.format(
                n, ITEMS[n][0], 'FAIL' if failed else 'PASS', len(checks)))
            for c in failed:
                lines.append('      {}: {}'.format(c.check_id, c.detail))
        lines.append('PASS' if self.passed else 'FAIL')
        return '\n'.join(lines)


def run_all(ctx, only=None, workers=0):
    """Run the selected acceptance items.

    Args:
        ctx: VerifyContext.
        only: item numbers, all items if None.
        workers: size of the worker pool; 0 runs the items in this process.

    Return:
        VerifyReport with the checks in item order.
    """
    items = sorted(set(only)) if only else sorted(ITEMS)
    if workers > 0:
        with Pool(workers) as pool:
            pending = [pool.apply_async(run_item, (n, ctx)) for n in items]
            results = [p.get() for p in pending]
    else:
        results = [run_item(n, ctx) for n in items]
    report = VerifyReport(ctx.seed, ctx.fast, items)
    for checks in results:
        report.checks.extend(checks)
    log.verify.info("{} of {} checks passed.".format(
        sum(c.passed for c in report.checks), len(report.checks)))
    return report
