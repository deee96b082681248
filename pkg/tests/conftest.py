import numpy as np
import pytest

from discos import DiscreteDist, GpbSpec


def make_random_dist(rng, max_atoms=10, min_gap=0.2, lo=0.1 * np.pi, hi=0.9 * np.pi) -> DiscreteDist:
    """Random finite distribution with a guaranteed minimum atom gap.

    Atoms are placed by reserving (M+1) * min_gap of the span and spreading
    the slack with sorted uniforms, so no rejection loop is needed and the
    gap bound is exact.
    """
    m = int(rng.integers(2, max_atoms + 1))
    span = hi - lo
    slack = span - (m + 1) * min_gap
    if slack <= 0:
        raise ValueError(f"{m} atoms with gap {min_gap} do not fit in ({lo}, {hi})")
    u = np.sort(rng.uniform(0.0, 1.0, m))
    points = lo + u * slack + np.arange(1, m + 1) * min_gap
    probs = rng.dirichlet(np.ones(m))
    return DiscreteDist(points, probs)


def make_random_gpb(rng, max_n=12) -> GpbSpec:
    n = int(rng.integers(1, max_n + 1))
    a = rng.uniform(-1.0, 1.0, n)
    b = rng.uniform(-1.0, 1.0, n)
    p = rng.uniform(0.0, 1.0, n)
    return GpbSpec(a, b, p)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.Philox(987654321))
