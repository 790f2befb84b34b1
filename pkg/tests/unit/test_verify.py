"""Tests for kfourteen.cli.verify."""

from unittest import mock
from kfourteen.cli import verify
from kfourteen.cli.verify import CheckResult, VerifyContext
from kfourteen.config import config
from kfourteen.surfaces.quartics import QuarticCoeffsP
from kfourteen.utils.errors import PreconditionError


def test_context_from_config():
    """The context shall be read from the configuration file and the seed
    shall be overridable.
    """
    ctx = VerifyContext.from_config()
    assert ctx.seed == config.var.setting('verify', 'seed')
    assert ctx.draws == config.var.setting('verify', 'draws')
    assert VerifyContext.from_config(seed=5, fast=True).seed == 5
    assert VerifyContext(1, bound=9).generic_bound == 729


def test_context_rng():
    """Every item shall draw from its own reproducible generator."""
    ctx = VerifyContext(14)
    assert ctx.rng(3).random() == ctx.rng(3).random()
    assert ctx.rng(3).random() != ctx.rng(4).random()
    assert VerifyContext(15).rng(3).random() != ctx.rng(3).random()


def test_collector_guard():
    out = verify._Collector(4)
    with out.guard('x'):
        raise PreconditionError('outside the domain')
    out.add('y', True)
    assert [(r.check_id, r.passed) for r in out.results] == \
        [('4/x', False), ('4/y', True)]
    assert 'PreconditionError' in out.results[0].detail


def test_collector_guard_records_unexpected_errors():
    """IF a block raises an error outside the package hierarchy, THEN it
    shall be recorded as a failed check as well.
    """
    out = verify._Collector(4)
    with out.guard('x'):
        1 / 0
    assert [(r.check_id, r.passed) for r in out.results] == [('4/x', False)]
    assert out.results[0].detail.startswith('ZeroDivisionError')


def test_certified_points_special_loci():
    points = verify.certified_points('P', 'rank15')
    assert points[1] == QuarticCoeffsP(*verify.CERTIFIED_P_SPECIAL['rank15'])
    assert (points[0].kappa, points[0].lambda_) == (0, 1)


def test_random_config(rng):
    cfg = verify.random_config(rng, 9, zeros=('d2', 'e2'))
    assert (cfg.d2, cfg.e2) == (0, 0)
    assert cfg.validate() == cfg


def _failing(ctx):
    raise PreconditionError('broken item')


def _crashing(ctx):
    return {}['missing']


def _flaky(ctx):
    return [CheckResult('11/x', 11, False, 'bad value')]


def test_run_item_records_errors():
    """IF an item raises, WHEN it is run, THEN a failed check shall be
    recorded instead.
    """
    with mock.patch.dict(verify.ITEMS, {11: ('broken', _failing)}):
        results = verify.run_item(11, VerifyContext(14))
    assert [(r.check_id, r.passed) for r in results] == [('11/run', False)]


def test_run_item_records_unexpected_errors():
    with mock.patch.dict(verify.ITEMS, {11: ('crashing', _crashing)}):
        results = verify.run_item(11, VerifyContext(14))
    assert [(r.check_id, r.passed) for r in results] == [('11/run', False)]
    assert 'KeyError' in results[0].detail


def test_run_all_reports_failures():
    with mock.patch.dict(verify.ITEMS, {11: ('flaky', _flaky)}):
        report = verify.run_all(VerifyContext(14), [11])
        text = report.to_text()
        data = report.to_json()
    assert report.passed == False
    assert report.item_passed(11) == False
    assert '11/x: bad value' in text
    assert text.endswith('FAIL')
    assert data['items'] == [{'item': 11, 'topic': 'flaky', 'passed': False,
                              'checks': 1}]


def test_lattice_item():
    report = verify.run_all(VerifyContext(14), [7])
    assert report.passed == True
    assert report.to_text().endswith('PASS')
    assert all(c.item == 7 for c in report.checks) == True


def test_graph_item():
    report = verify.run_all(VerifyContext(14), [8])
    assert report.passed == True
