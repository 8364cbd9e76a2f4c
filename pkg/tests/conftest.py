import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from acceptance import minimal_six_vertex_complex
from core.complex import from_facets


@pytest.fixture
def p2():
    """Path u - v - w."""
    return from_facets([["u", "v"], ["v", "w"]])


@pytest.fixture
def triangle():
    """Cycle on a, b, c."""
    return from_facets([["a", "b"], ["b", "c"], ["c", "a"]])


@pytest.fixture
def minimal_six():
    return minimal_six_vertex_complex()


@pytest.fixture
def rng():
    return random.Random(7)
