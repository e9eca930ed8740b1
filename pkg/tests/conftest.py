import shutil
from pathlib import Path

import pytest

from semmatch import parse_ontology, parse_ontology_path, parse_service_document

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

VEHICLES_DOC = """\
concept Vehicle
concept Car
concept SUV
concept Auto
concept Boat
subclass Car Vehicle
subclass SUV Car
equivalent Auto Car
"""


@pytest.fixture(scope="session")
def contacts_ontology():
    return parse_ontology_path(FIXTURES / "contacts.ont")


@pytest.fixture(scope="session")
def crashed_service():
    return parse_service_document((FIXTURES / "crashed.service.json").read_text())


@pytest.fixture(scope="session")
def adv_service():
    return parse_service_document((FIXTURES / "adv.service.json").read_text())


@pytest.fixture(scope="session")
def vehicles():
    return parse_ontology(VEHICLES_DOC)


@pytest.fixture
def registry_dir(tmp_path):
    """Throwaway copy of the shipped fixture registry."""
    target = tmp_path / "registry"
    shutil.copytree(FIXTURES / "registry", target)
    return target
