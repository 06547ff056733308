"""Shared fixtures: the standard-cube camera-pair instance used throughout.

The instance: world cube conv(+-e1 +- e2 +- e3) viewed by two translated
identity cameras.  Its image of the second camera contains points at
infinity, the coefficient matrix Z is integral, and the unique rank-2
kernel member is known in closed form.
"""

import numpy as np
import pytest

CUBE_VERTICES = np.array(
    [
        [-1.0, -1.0, -1.0, 1.0],
        [1.0, -1.0, -1.0, 1.0],
        [-1.0, 1.0, -1.0, 1.0],
        [1.0, 1.0, -1.0, 1.0],
        [-1.0, -1.0, 1.0, 1.0],
        [1.0, -1.0, 1.0, 1.0],
        [-1.0, 1.0, 1.0, 1.0],
        [1.0, 1.0, 1.0, 1.0],
    ]
)

A1 = np.array(
    [
        [1.0, 0.0, 0.0, 2.0],
        [0.0, 1.0, 0.0, 3.0],
        [0.0, 0.0, 1.0, 2.0],
    ]
)

A2 = np.array(
    [
        [1.0, 0.0, 0.0, 2.0],
        [0.0, 1.0, 0.0, 3.0],
        [0.0, 0.0, 1.0, 1.0],
    ]
)

X_IMAGE = np.array(
    [
        [1.0, 2.0, 1.0],
        [3.0, 2.0, 1.0],
        [1.0, 4.0, 1.0],
        [3.0, 4.0, 1.0],
        [1.0, 2.0, 3.0],
        [3.0, 2.0, 3.0],
        [1.0, 4.0, 3.0],
        [3.0, 4.0, 3.0],
    ]
)

Y_IMAGE = np.array(
    [
        [1.0, 2.0, 0.0],
        [3.0, 2.0, 0.0],
        [1.0, 4.0, 0.0],
        [3.0, 4.0, 0.0],
        [1.0, 2.0, 2.0],
        [3.0, 2.0, 2.0],
        [1.0, 4.0, 2.0],
        [3.0, 4.0, 2.0],
    ]
)

Z_EXPECTED = np.array(
    [
        [1, 2, 1, 2, 4, 2, 0, 0, 0],
        [9, 6, 3, 6, 4, 2, 0, 0, 0],
        [1, 4, 1, 4, 16, 4, 0, 0, 0],
        [9, 12, 3, 12, 16, 4, 0, 0, 0],
        [1, 2, 3, 2, 4, 6, 2, 4, 6],
        [9, 6, 9, 6, 4, 6, 6, 4, 6],
        [1, 4, 3, 4, 16, 12, 2, 8, 6],
        [9, 12, 9, 12, 16, 12, 6, 8, 6],
    ],
    dtype=float,
)

F_EXPECTED = np.array(
    [
        [0.0, 1.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0],
    ]
)


@pytest.fixture
def standard_instance():
    return {
        "cube": CUBE_VERTICES,
        "A1": A1,
        "A2": A2,
        "X": X_IMAGE,
        "Y": Y_IMAGE,
        "Z": Z_EXPECTED,
        "F": F_EXPECTED,
    }


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
