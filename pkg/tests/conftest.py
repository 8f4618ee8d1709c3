import math

import numpy as np
import pytest


@pytest.fixture
def grid64():
    return np.linspace(0.0, 2 * math.pi, 64, endpoint=False)
