import random

import pytest

from jacobiforms import make_bundle


@pytest.fixture(scope="session")
def bundle():
    """Shared truncation at the desk-scale defaults (N=10, G=24)."""
    return make_bundle(10, 24)


@pytest.fixture()
def rng():
    return random.Random(20240)
