import pytest

from core.model import new_diagram


def pytest_addoption(parser):
    parser.addoption("--runlong", action="store_true", default=False, help="run full census columns")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runlong"):
        return
    skip_long = pytest.mark.skip(reason="needs --runlong")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip_long)


@pytest.fixture
def decagon():
    """Orientable decagon on the double torus with vertices of degree 4 and 6."""
    return new_diagram(10, [(0, 2), (1, 4), (3, 7), (5, 8), (6, 9)])


@pytest.fixture
def twisted_decagon():
    """Non-orientable decagon on 3P2."""
    return new_diagram(10, [(0, 1, "-"), (2, 5, "+"), (3, 8, "-"), (4, 7, "-"), (6, 9, "+")])


@pytest.fixture
def diameters():
    return new_diagram(8, [(0, 4), (1, 5), (2, 6), (3, 7)])


@pytest.fixture
def store(tmp_path):
    from core.database import CheckpointStore

    return CheckpointStore(f"sqlite:///{tmp_path / 'census.db'}")
