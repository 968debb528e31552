import random
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from heisvoa import linalg as la
from heisvoa.scalars import Exact

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def vec(*xs, backend="exact"):
    return la.vector(xs, backend)


def mat(rows, backend="exact"):
    return la.matrix(rows, backend)


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=50)
gaussians = st.builds(lambda a, b: Exact(a, b), rationals, rationals)
small_rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@pytest.fixture
def rng():
    return random.Random(1234)


@pytest.fixture
def half():
    return Exact(Fraction(1, 2))
