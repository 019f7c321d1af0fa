import pytest

from signflux import acceptance, arithmetic, eigenform

SMALL_LIMIT = 3000
MID_LIMIT = 10**4
FULL_LIMIT = 10**6


@pytest.fixture(scope="session")
def delta_small():
    return eigenform.build_delta_table(SMALL_LIMIT)


@pytest.fixture(scope="session")
def arith_small():
    return arithmetic.sieve_arithmetic(SMALL_LIMIT)


@pytest.fixture(scope="session")
def delta_mid():
    return eigenform.build_delta_table(MID_LIMIT)


@pytest.fixture(scope="session")
def arith_mid():
    return arithmetic.sieve_arithmetic(MID_LIMIT)


@pytest.fixture(scope="session")
def full_ctx():
    """Tables at the headline scale; built once per session."""
    return acceptance.build_context(FULL_LIMIT)
