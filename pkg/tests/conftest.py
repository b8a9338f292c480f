import mpmath as mp
import pytest
from hypothesis import HealthCheck, settings

from auxz import PrecisionCtx

settings.register_profile(
    "auxz", deadline=None, max_examples=25, derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("auxz")


@pytest.fixture
def ctx():
    return PrecisionCtx(128)


@pytest.fixture
def ctx64():
    return PrecisionCtx(64)


def r_oracle(s, dps=40):
    """R(s) by tanh-sinh quadrature along the slope-1 line through 1/2, independent of auxz."""
    with mp.workdps(dps):
        s = mp.mpc(s)
        w = mp.expjpi(mp.mpf(1) / 4)

        def f(u):
            x = mp.mpf(1) / 2 + u * w
            return mp.exp(-s * mp.log(x) + 1j * mp.pi * x * x) / (mp.expjpi(x) - mp.expjpi(-x))

        return -w * mp.quad(f, [-mp.inf, 0, mp.inf])
