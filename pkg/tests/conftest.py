import numpy as np
import pytest

from xyquench.measures import XStateDensity
from xyquench.oracle import EDChain


@pytest.fixture(scope="session")
def ed8():
    return EDChain(delta=0.5, N=8)


@pytest.fixture(scope="session")
def ed10():
    return EDChain(delta=0.5, N=10)


def random_xstate(rng, symmetric=False):
    """A valid (PSD, unit-trace) X-state; symmetric=True forces Yp = Ym."""
    p = rng.dirichlet(np.ones(4))
    if symmetric:
        y = 0.5 * (p[1] + p[2])
        p = np.array([p[0], y, y, p[3]])
    phase = lambda: np.exp(1j * rng.uniform(0, 2 * np.pi))
    z = rng.uniform(0, 1) * np.sqrt(p[1] * p[2]) * phase()
    f = rng.uniform(0, 1) * np.sqrt(p[0] * p[3]) * phase()
    return XStateDensity(Xp=p[0], Xm=p[3], Yp=p[1], Ym=p[2], Z=z, f=f)
