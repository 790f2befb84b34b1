"""Define shared fixtures."""

import random
import pytest
from kfourteen.cli import verify
from kfourteen.surfaces import quartics
from kfourteen.surfaces.doublesextic import SexticConfig


@pytest.fixture
def rng():
    """Seeded generator for random draws."""
    return random.Random(14)


@pytest.fixture(params=[0, 1])
def p_coeffs(request):
    """Certified generic members of the P family."""
    return verify.certified_points('P', 'rank14')[request.param]


@pytest.fixture(params=[0, 1])
def p15_coeffs(request):
    return verify.certified_points('P', 'rank15')[request.param]


@pytest.fixture(params=[0, 1])
def p16_coeffs(request):
    return verify.certified_points('P', 'rank16')[request.param]


@pytest.fixture(params=[0, 1])
def pprime_coeffs(request):
    """Certified generic members of the P' family."""
    return verify.certified_points('Pprime', 'generic')[request.param]


@pytest.fixture(params=[0, 1])
def vinberg_coeffs(request):
    """Certified generic rank 13 members of Vinberg's family."""
    return verify.certified_points('Pdoubleprime', 'rank13')[request.param]


@pytest.fixture
def p_json():
    """JSON object of the first certified member of the P family."""
    return quartics.QuarticCoeffsP(*verify.CERTIFIED['P'][0]).to_json()


@pytest.fixture
def sextic_config():
    """A branch configuration in the gauge."""
    return SexticConfig.with_gauge(3, 1, 2, -1, 5, 2, 7)
