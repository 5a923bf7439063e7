import time

import pytest

from quadsys import catalog, construct_rdsqs_4v


@pytest.fixture(scope="session")
def star28():
    return catalog.sqs28_star()


@pytest.fixture(scope="session")
def assembly112(star28):
    """The fully verified RDSQS(112); built once, wall time recorded."""
    t0 = time.perf_counter()
    asm = construct_rdsqs_4v(star28)
    asm.build_seconds = time.perf_counter() - t0
    return asm
