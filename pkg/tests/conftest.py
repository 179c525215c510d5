import pytest
from hypothesis import settings, strategies as st

from hexpivot.cli_io import random_configuration
from hexpivot.configuration import Configuration
from hexpivot.hexgrid import Cell

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def shapes(min_n: int = 1, max_n: int = 12):
    """Random connected configurations via seeded boundary growth."""
    return st.builds(random_configuration, st.integers(min_n, max_n), st.integers(0, 10**6))


def cfg(*cells) -> Configuration:
    return Configuration([Cell(*c) for c in cells])


@pytest.fixture
def ring6() -> Configuration:
    from hexpivot.hexgrid import neighbors

    return Configuration(neighbors(Cell(0, 0)))
