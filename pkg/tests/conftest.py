import math

import numpy as np
import pytest
from hypothesis import strategies as st

from pdw_tiling.tiling import build_tiling


@pytest.fixture(scope="session")
def tiling():
    return build_tiling()


def unit_quaternions():
    comp = st.floats(-1.0, 1.0, allow_nan=False)
    return st.tuples(comp, comp, comp, comp).filter(lambda q: sum(x * x for x in q) > 1e-2)


def quaternion_matrix(q) -> np.ndarray:
    w, x, y, z = np.asarray(q, float) / math.sqrt(sum(c * c for c in q))
    return np.array([
        [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
        [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
        [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
    ])


# one line per acceptance criterion, printed after the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
