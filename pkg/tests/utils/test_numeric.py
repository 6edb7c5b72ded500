# third party
import numpy as np
import pytest

# spikedse absolute
from spikedse.utils.distributions import keyed_rng
from spikedse.utils.numeric import ceil_div, discretize, round_half_away


def test_round_half_away() -> None:
    x = np.array([-2.5, -1.5, -0.5, 0.5, 1.5, 2.5, 0.49, -0.51])

    np.testing.assert_array_equal(round_half_away(x), [-3, -2, -1, 1, 2, 3, 0, -1])


@pytest.mark.parametrize("a,b,expected", [(0, 2, 0), (36, 2, 18), (37, 2, 19), (108, 1, 108)])
def test_ceil_div(a: int, b: int, expected: int) -> None:
    assert ceil_div(a, b) == expected


def test_discretize_includes_both_endpoints() -> None:
    assert discretize(0.1, 1.0, 0.2) == [0.1, 0.3, 0.5, 0.7, 0.9, 1.0]
    thresholds = discretize(0.1, 2.0, 0.2)
    assert thresholds[0] == 0.1
    assert thresholds[-2:] == [1.9, 2.0]
    assert len(thresholds) == 11
    assert discretize(0, 1, 0.25) == [0.0, 0.25, 0.5, 0.75, 1.0]


def test_keyed_rng_is_stateless() -> None:
    a = keyed_rng(3, 1, 2).uniform(size=5)
    keyed_rng(3, 1, 2).uniform(size=100)
    b = keyed_rng(3, 1, 2).uniform(size=5)

    np.testing.assert_array_equal(a, b)
    assert not np.array_equal(a, keyed_rng(3, 1, 3).uniform(size=5))
