# Third-Party Library
import pytest
import numpy as np

# My Library
from utils.color import set_quiet
from tessellation.rght import Grid, grid_create
from stg.rght_stg import RghtStg, rght_stg
from stg.binary import BinaryStg, binary_stg
from oracle.brute import ball_graph


@pytest.fixture(autouse=True, scope="session")
def quiet_console():
    set_quiet(True)
    yield
    set_quiet(False)


@pytest.fixture(scope="session")
def grid710() -> Grid:
    return grid_create((7, 1, 0))


@pytest.fixture(scope="session")
def grid711() -> Grid:
    return grid_create((7, 1, 1))


@pytest.fixture(scope="session")
def grid811() -> Grid:
    return grid_create((8, 1, 1))


@pytest.fixture(scope="session")
def stg710(grid710) -> RghtStg:
    return rght_stg(grid710, 2)


@pytest.fixture(scope="session")
def stg711(grid711) -> RghtStg:
    return rght_stg(grid711, 3)


@pytest.fixture(scope="session")
def ball710(grid710):
    """ B_4(G_{7,1,0}) as a networkx graph """
    return ball_graph(grid710, 4)


@pytest.fixture(scope="session")
def binary2() -> BinaryStg:
    return binary_stg(2)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240501)
