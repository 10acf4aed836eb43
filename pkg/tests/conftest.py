import pytest

from hhres.verify import VerifyContext


@pytest.fixture(scope="session")
def vctx():
    """Shared cache for the expensive artifacts (series, resonances)."""
    return VerifyContext()


@pytest.fixture(scope="session")
def series40(vctx):
    return vctx.series
