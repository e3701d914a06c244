import numpy as np
import pytest

from covertlink import SystemParams


# Representative results: (u_b, u_w, P*, R*_rob, loss in %)
TABLE_ROWS = [
    (0.0, 0.0, 0.253347, 0.038005, 0.00),
    (0.1, 0.1, 0.228012, 0.030860, 18.80),
    (0.2, 0.2, 0.202678, 0.024438, 35.70),
    (0.3, 0.3, 0.177343, 0.018747, 50.67),
    (0.4, 0.4, 0.152008, 0.013797, 63.70),
    (0.6, 0.6, 0.101339, 0.006148, 83.82),
    (0.3, 0.0, 0.253347, 0.026708, 29.72),
    (0.0, 0.3, 0.177343, 0.026708, 29.72),
    (0.6, 0.0, 0.253347, 0.015322, 59.68),
    (0.0, 0.6, 0.101339, 0.015322, 59.68),
]

P_NOM = 0.253347
R_NOM = 0.038005


@pytest.fixture
def baseline():
    return SystemParams.baseline()


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
