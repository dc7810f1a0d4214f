import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mbzero import zerocensus as zc


@pytest.fixture(scope="session")
def beta_catalog():
    return zc.scan_zeros("beta", 17.0)


@pytest.fixture(scope="session")
def zeta_catalog_60():
    return zc.scan_zeros("zeta", 60.0)


@pytest.fixture(scope="session")
def zeta_catalog_110():
    return zc.scan_zeros("zeta", 110.0)


@pytest.fixture(scope="session")
def zeta_catalog_full():
    """Desk-scale ceiling census, ~79 zeros; shared by the heavy tests."""
    return zc.scan_zeros("zeta", 200.0)
