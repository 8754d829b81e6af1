import numpy as np
import pytest

from chromawheel import default_model
from chromawheel.wheel import generate_reference_wheel


@pytest.fixture(scope="session")
def model():
    return default_model()


@pytest.fixture(scope="session")
def wheel_image():
    return generate_reference_wheel()


@pytest.fixture()
def rng():
    return np.random.default_rng(20240811)
