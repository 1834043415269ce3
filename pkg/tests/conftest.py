import os
import shutil
from datetime import datetime
import numpy as np
import pytest
import pyteich as pt

def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=20211017,
                     help="Seed of the random surface points")
    parser.addoption("--n_points", type=int, default=5,
                     help="Number of random surface points per boundary length")

def pytest_generate_tests(metafunc):
    # This is called for every test. Only get/set command line arguments
    # if the argument is specified in the list of test "fixturenames".
    option_dict = vars(metafunc.config.option)
    for attr in ('seed', 'n_points'):
        option_value = option_dict.get(attr)
        if attr in metafunc.fixturenames and option_value is not None:
            metafunc.parametrize(attr, [option_value])

@pytest.fixture(scope='session')
def hexagonal() -> pt.SurfacePoint:
    """Return the punctured torus with the seed traces (3, 3, 3).
    """
    return pt.SurfacePoint.hexagonal()

@pytest.fixture(params=[0.0, 1.0, 2.0], scope='session')
def l_delta(request) -> float:
    return request.param

@pytest.fixture
def rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(seed)

@pytest.fixture(scope='session')
def temp_dir() -> str:
    now = datetime.now()
    path = now.strftime("temp_%m_%d_%H%M%S_%f")
    os.mkdir(path)
    yield path
    shutil.rmtree(path)

@pytest.fixture(scope='function')
def ini_path(temp_dir: str) -> str:
    path = os.path.join(temp_dir, 'test.ini')
    yield path
    if os.path.isfile(path):
        os.remove(path)
