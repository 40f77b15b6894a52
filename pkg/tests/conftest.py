import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mukailab import abelian_model, elliptic_model, enriques_model, k3_model


@pytest.fixture
def rng():
    return random.Random(987654321)


@pytest.fixture
def k3_u():
    """K3 with NS = Ze + Zf, (e,f) = 1."""
    return k3_model()


@pytest.fixture
def abelian_u():
    return abelian_model()


@pytest.fixture
def enriques():
    return enriques_model()


@pytest.fixture
def elliptic():
    """Rank-2 elliptic model, gram [[-1, 1], [1, 0]], H = sigma + 3f."""
    return elliptic_model()
