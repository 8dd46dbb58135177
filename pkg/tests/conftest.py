import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from fbmimo.channel import AntennaConfig, ChannelInstance, LinkGains, fig3_channel  # noqa: E402


@pytest.fixture
def fig3():
    return fig3_channel()


def siso(rho11=1.0, rho12=1.0, rho21=1.0, rho22=1.0, h=1.0):
    one = np.array([[h]], dtype=complex)
    return ChannelInstance(AntennaConfig(1, 1, 1, 1), one, one, one, one,
                           LinkGains(rho11, rho12, rho21, rho22))


@pytest.fixture
def siso_unit():
    return siso()
