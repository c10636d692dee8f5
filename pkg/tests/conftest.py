import random

import pytest

from weillift.algebra import attach_frobenius, build_plural
from weillift.fixtures import standard_frobenius_fixtures, width_two_algebra


@pytest.fixture(scope="session")
def frobs():
    """Dual numbers, two truncated power algebras, and the width-two algebra."""
    return standard_frobenius_fixtures()


@pytest.fixture(scope="session")
def tangent():
    return attach_frobenius(build_plural(1), [0, 1])


@pytest.fixture(scope="session")
def tangent_shifted():
    return attach_frobenius(build_plural(1), [1, 1])


@pytest.fixture(scope="session")
def width_two():
    return attach_frobenius(width_two_algebra(), [0, 0, 0, 1])


@pytest.fixture
def rng():
    return random.Random(20240817)
