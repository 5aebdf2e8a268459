"""Shared bodies at modest grid resolutions."""

import math

import pytest

from pcenters.geometry import build_body


@pytest.fixture(scope="session")
def disc():
    return build_body(shape="ball", params={"radius": 1.0}, grid_resolution=128)


@pytest.fixture(scope="session")
def square():
    return build_body(shape="square", grid_resolution=96)


@pytest.fixture(scope="session")
def triangle():
    return build_body(shape="obtuse_triangle", grid_resolution=192)


@pytest.fixture(scope="session")
def dumbbell():
    return build_body(shape="dumbbell", params={"epsilon": 0.2}, grid_resolution=192)


@pytest.fixture(scope="session")
def annulus():
    return build_body(shape="annulus", params={"r_in": 1.0, "r_out": 3.0}, grid_resolution=128)


@pytest.fixture(scope="session")
def ball3():
    return build_body(shape="ball", dimension=3, params={"radius": 1.0}, grid_resolution=32)


@pytest.fixture
def half_space_cone():
    return {"alpha": -1.0, "kappa": math.pi, "delta": math.inf, "D": 6.0, "R0": 1.0}
