import random

import pytest

from gitwin.gitcore import TorusActionProblem
from gitwin.gradedmod import WeightedRing

# One seed for the whole suite; every randomized test derives its own
# Random(SEED ^ hash) so reordering tests never changes what they see.
SEED = 20260817


@pytest.fixture
def rng():
    return random.Random(SEED)


@pytest.fixture
def pv():
    """Projective space P^2 presented as A^3 // G_m, weights (1,1,1)."""
    return TorusActionProblem(1, 3, ((1,), (1,), (1,)), (1,))


@pytest.fixture
def p1():
    return TorusActionProblem(1, 2, ((1,), (1,)), (1,))


@pytest.fixture
def conifold_wall():
    """Weights (1,1,-1,-1) at the wall chi = 0."""
    return TorusActionProblem(1, 4, ((1,), (1,), (-1,), (-1,)), (0,))


@pytest.fixture
def conifold_plus():
    return TorusActionProblem(1, 4, ((1,), (1,), (-1,), (-1,)), (1,))


@pytest.fixture
def blowup_wall():
    """Weights (1,1,1,-1) at the wall chi = 0 (unbalanced crossing)."""
    return TorusActionProblem(1, 4, ((1,), (1,), (1,), (-1,)), (0,))


@pytest.fixture
def quadrant():
    return TorusActionProblem(2, 2, ((1, 0), (0, 1)), (1, 1))


@pytest.fixture
def doubled():
    """Two copies of each quadrant weight; windows are 2x2 grids."""
    return TorusActionProblem(
        2, 4, ((1, 0), (1, 0), (0, 1), (0, 1)), (1, 1)
    )


@pytest.fixture
def ring11():
    return WeightedRing((1, 1))


@pytest.fixture
def ring111():
    return WeightedRing((1, 1, 1))
