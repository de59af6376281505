import mpmath
import pytest

from crepant.scalars import NumField


@pytest.fixture(autouse=True)
def _default_precision():
    """Keep the ambient mpmath precision fixed across tests."""
    old = mpmath.mp.dps
    mpmath.mp.dps = 15
    yield
    mpmath.mp.dps = old


def elem_norm(el, dps=30):
    """Max absolute coefficient of an algebra element, numerically."""
    field = NumField(dps)
    with mpmath.workdps(dps):
        return max(abs(field.to_mpc(c)) for c in el.c)
