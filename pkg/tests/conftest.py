import pytest

from skillcell.fixtures import fixture_library, fixture_world
from skillcell.world.model import Iri


@pytest.fixture
def wm():
    return fixture_world()


@pytest.fixture
def library():
    return fixture_library()


def iri(local: str) -> Iri:
    return Iri("", local)


@pytest.fixture
def I():
    return iri
