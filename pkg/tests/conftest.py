import numpy as np
import pytest


def random_dissim(rng, n, integer=False, with_inf=False):
    """Random valid dissimilarity matrix of order n."""
    if integer:
        vals = rng.integers(1, 30, size=(n, n)).astype(float)
    else:
        vals = rng.uniform(0.1, 10.0, size=(n, n))
    a = np.triu(vals, 1)
    a = a + a.T
    if with_inf and n > 1:
        iu, ju = np.triu_indices(n, 1)
        mask = rng.random(iu.size) < 0.15
        a[iu[mask], ju[mask]] = np.inf
        a[ju[mask], iu[mask]] = np.inf
    np.fill_diagonal(a, 0.0)
    return a


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)
