from functools import lru_cache

import pytest

from diagrees.generators import L_generators, default_ring
from diagrees.groebner import buchberger, initial_ideal
from diagrees.poly import ProblemParams

DESK_PARAMS = [
    ProblemParams(2, 2, 2, 2, 2, 2),
    ProblemParams(2, 3, 2, 2, 2, 3),
    ProblemParams(3, 3, 2, 3, 2, 2),
    ProblemParams(3, 3, 3, 3, 2, 2),
    ProblemParams(3, 4, 3, 4, 2, 4),
]


@lru_cache(maxsize=None)
def gb_L(params: ProblemParams):
    ring = default_ring(params)
    return buchberger(L_generators(params, ring).polynomials)


@lru_cache(maxsize=None)
def in_L(params: ProblemParams):
    return initial_ideal(gb_L(params))


@pytest.fixture
def small():
    return ProblemParams(2, 2, 2, 2, 2, 2)


@pytest.fixture
def p34():
    return ProblemParams(3, 4, 3, 4, 2, 4)
