import numpy as np
import pytest

from threesided.core import Point

# the 8-point set used across modules: ids 1..8, x = id, y as below
P8_YS = [5, 3, 8, 1, 7, 2, 6, 4]


@pytest.fixture
def p8():
    return [Point(i + 1, i + 1, y) for i, y in enumerate(P8_YS)]


def rng(seed):
    return np.random.default_rng(seed)


def make_points(rng, n, xlo=0.0, xhi=1.0, ylo=0.0, yhi=1.0, start_id=0):
    xs = xlo + (xhi - xlo) * rng.random(n)
    ys = ylo + (yhi - ylo) * rng.random(n)
    return [Point(start_id + i, xs[i], ys[i]) for i in range(n)]
