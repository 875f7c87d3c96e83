import pytest

from moldcool.materials import bundled_library
from moldcool.thermal import CoolingProblem


@pytest.fixture(scope="session")
def library():
    return bundled_library()


@pytest.fixture(scope="session")
def pmma(library):
    return library.thermoplastic("plexiglas_8n")


@pytest.fixture
def case_problem(pmma):
    return CoolingProblem.from_material(pmma, thickness=9.6e-3)
