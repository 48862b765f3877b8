import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from spexlab.search import enumerate_graphs


@pytest.fixture(scope="session")
def graphs_on_7():
    return list(enumerate_graphs(7))


@pytest.fixture(scope="session")
def graphs_on_8():
    return list(enumerate_graphs(8))
