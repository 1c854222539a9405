import numpy as np
import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "suite",
    derandomize=True,
    max_examples=50,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

PATH3 = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.uint8)
TRIANGLE = np.array([[0, 1, 1], [1, 0, 1], [1, 1, 0]], dtype=np.uint8)


@pytest.fixture
def path3():
    return PATH3.copy()


@pytest.fixture
def triangle():
    return TRIANGLE.copy()


def random_graph(rng: np.random.Generator, n: int, p: float = 0.4) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.uint8)
    iu = np.triu_indices(n, 1)
    a[iu] = rng.random(iu[0].size) < p
    a += a.T
    return a
