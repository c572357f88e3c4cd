"""Shared fixtures: small hand-checkable point sets and sweep planes."""

import numpy as np
import pytest

from shadowlp.shadow_walk import SweepPlane


@pytest.fixture
def triangle():
    """Three points whose hull (with the origin) has facets {0,2} and {1,2}."""
    return np.array([[1.0, 0.0], [0.0, 1.0], [0.9, 0.9]])


@pytest.fixture
def square():
    return np.array([[1.0, 1.0], [-1.0, 1.0], [-1.0, -1.0], [1.0, -1.0]])


@pytest.fixture
def axis_plane():
    """Factory for the span(e1, e2) sweep plane in any ambient dimension."""

    def make(d):
        basis1 = np.zeros(d)
        basis2 = np.zeros(d)
        basis1[0] = 1.0
        basis2[1] = 1.0
        return SweepPlane(basis1, basis2)

    return make
