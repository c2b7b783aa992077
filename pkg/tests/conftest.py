import pytest
from hypothesis import settings

from app.core.config import GARSIDE_HEAVY
from app.garside.artin import artin
from app.garside.tables import table_structure

settings.register_profile("garside", max_examples=60, deadline=None)
settings.load_profile("garside")


def pytest_collection_modifyitems(config, items):
    if GARSIDE_HEAVY:
        return
    skip = pytest.mark.skip(reason="set GARSIDE_HEAVY=1 to run heavy checks")
    for item in items:
        if "heavy" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def a2():
    return artin("A2")


@pytest.fixture(scope="session")
def a3():
    return artin("A3")


@pytest.fixture(scope="session")
def aa_bb():
    return table_structure("aa_bb.json")


@pytest.fixture(scope="session")
def aba_bb():
    return table_structure("aba_bb.json")


@pytest.fixture(scope="session")
def abc():
    return table_structure("abc.json")
