import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from peirce_lab import construct_catalog_ring


@pytest.fixture(scope="session")
def eg1_z5():
    return construct_catalog_ring("eg1", [5])


@pytest.fixture(scope="session")
def eg1_z2():
    return construct_catalog_ring("eg1", [2])


@pytest.fixture(scope="session")
def eg2():
    return construct_catalog_ring("eg2")


@pytest.fixture(scope="session")
def eg3_z5():
    return construct_catalog_ring("eg3", [5])


@pytest.fixture(scope="session")
def m2z2():
    return construct_catalog_ring("m2z2")


@pytest.fixture(scope="session")
def z4():
    return construct_catalog_ring("zn", [4])


@pytest.fixture(scope="session")
def z6():
    return construct_catalog_ring("zn", [6])


@pytest.fixture(scope="session")
def z2xz2():
    return construct_catalog_ring("product", [2, 2])
