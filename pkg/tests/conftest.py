import sys
from functools import lru_cache
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from polystress import corpus


@lru_cache(maxsize=None)
def instance(family, **params):
    """Session-wide cache; instances are immutable."""
    return corpus.generate(family, **params)


@pytest.fixture(scope="session")
def octahedron():
    return instance("cross", d=3)


@pytest.fixture(scope="session")
def full_corpus():
    return corpus.default_corpus()
