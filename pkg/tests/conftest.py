import random

import pytest

from quatfact import Quaternion


@pytest.fixture
def rng():
    return random.Random(0xC0FFEE)


def random_quaternion(rng, scale=1.0):
    return Quaternion(*(rng.gauss(0.0, scale) for _ in range(4)))


def random_rotation_like(rng):
    """A quaternion with imaginary part bounded away from zero.

    Its norm quadratic is then irreducible, which keeps randomly built
    factor products free of real polynomial factors.
    """
    while True:
        h = random_quaternion(rng)
        if h.x * h.x + h.y * h.y + h.z * h.z > 0.25:
            return h
