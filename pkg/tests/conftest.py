import os
import tempfile

# archivio dei test fuori dalla cartella di lavoro, prima di importare app.db
os.environ.setdefault("BERGMAN_DB_URL", f"sqlite:///{tempfile.mkdtemp(prefix='bergman-tests-')}/reports.db")

import pytest

from app.bergman import catalog
from app.bergman.basis import Truncation
from app.bergman.parser import parse_operator, parse_symbol
from app.config import RunConfig


@pytest.fixture
def phi():
    return catalog.phi()


@pytest.fixture
def psi():
    return catalog.psi()


@pytest.fixture
def sym():
    """parse_symbol con n esplicito: sym("z1", 2)."""
    return parse_symbol


@pytest.fixture
def op():
    return parse_operator


@pytest.fixture
def small_config():
    return RunConfig(n=2, caps=(16,), xi_count=8)


@pytest.fixture
def bidisc16():
    return Truncation.uniform(2, 16)
