import numpy as np
import pytest

from cogharq.channel import ChannelParams, CsiModel


@pytest.fixture
def base_channel():
    """Unit fading means, unit noise, PU power 0.5 (the reference setup)."""
    return ChannelParams(mu_ss=1.0, mu_ps=1.0, mu_sp=1.0, n0=1.0, p_p=0.5)


@pytest.fixture
def perfect_csi():
    return CsiModel(beta=1.0)


@pytest.fixture
def partial_csi():
    return CsiModel(beta=0.8)


def random_valid_configs(n, seed):
    """Draw n random but valid parameter points for property-style checks."""
    rng = np.random.default_rng(seed)
    for _ in range(n):
        yield dict(
            mu_ss=rng.uniform(0.2, 3.0),
            mu_ps=rng.uniform(0.2, 3.0),
            mu_sp=rng.uniform(0.2, 3.0),
            n0=rng.uniform(0.2, 2.0),
            p_p=rng.uniform(0.1, 3.0),
            p_max=rng.uniform(0.5, 10.0),
            i_p=rng.uniform(0.1, 5.0),
            rate=rng.uniform(0.1, 2.0),
            m_max=int(rng.integers(0, 4)),
        )
