import numpy as np
import pytest

from survbound.distributions import (BreitWigner, Discrete, GammaHalf, PowerLaw, Square, Tabulated,
                                     load_distribution)
from survbound.params import Params


# slack allowed on every bound check against the exact survival
SLACK = 1e-9


@pytest.fixture
def gamma_half():
    return GammaHalf(1.0)


@pytest.fixture
def power_law():
    return PowerLaw(1.0, 3.5)


@pytest.fixture
def breit_wigner():
    return BreitWigner(1.0, 0.0)


@pytest.fixture
def square():
    return Square(1.0)


@pytest.fixture
def three_level():
    return Discrete(np.array([0.0, 0.5, 1.0]), np.array([0.7, 0.2, 0.1]))


@pytest.fixture
def two_level():
    return Discrete(np.array([0.0, 1.0]), np.array([0.5, 0.5]))


@pytest.fixture
def triangle():
    return load_distribution("triangle")


@pytest.fixture
def skewed():
    # rho rising linearly on [0, 1], then falling to zero at 3
    return Tabulated(np.array([0.0, 1.0, 3.0]), np.array([0.0, 2.0 / 3.0, 0.0]))


@pytest.fixture
def params():
    p = Params()
    p.grid_size = 64
    p.c_grid_size = 32
    return p
