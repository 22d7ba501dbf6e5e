"""
Shared fixtures
"""

import math

import pytest
import structlog

from app.models.channel import Geometry, LambertianParams, NoiseParams
from app.services.channel import reference_channel

SCENARIO_TEXT = """\
# LED and photodiode
m = 1
A_r = 1e-4
T_s = 1
g = 1
Psi = 1.0471975511965976

bob.D = 2
bob.phi = 0
bob.psi = 0
bob.sigma2 = 1
bob.varsigma2 = 1.5

eve.D = 4   # further away
eve.phi = 0.3
eve.psi = 0.3
eve.sigma2 = 1
eve.varsigma2 = 1.5
"""


@pytest.fixture(autouse=True)
def _reset_structlog():
    # configure_logging binds the current stderr, which pytest replaces per test
    yield
    structlog.reset_defaults()


@pytest.fixture
def noise() -> NoiseParams:
    return NoiseParams(sigma2=1.0, varsigma2=1.5)


@pytest.fixture
def channel_10():
    return reference_channel(10.0)


@pytest.fixture
def channel_1000():
    return reference_channel(1000.0)


@pytest.fixture
def lambertian() -> LambertianParams:
    return LambertianParams(m=1.0, A_r=1e-4, T_s=1.0, g=1.0, Psi=math.pi / 3)


@pytest.fixture
def on_axis() -> Geometry:
    return Geometry(D=2.0, phi=0.0, psi=0.0)


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "room.txt"
    path.write_text(SCENARIO_TEXT)
    return path
