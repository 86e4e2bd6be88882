# tests/conftest.py
from __future__ import annotations

import numpy as np
import pytest

from vortexgas.services.core.vortex import Configuration
from vortexgas.services.geometry.surfaces import Geometry, minimum_image


def scattered_positions(rng: np.random.Generator, n: int, radius: float, min_sep: float) -> np.ndarray:
    """Uniform points in a disk, rejection-sampled to keep `min_sep` between any two."""
    pts: list[complex] = []
    while len(pts) < n:
        r = radius * np.sqrt(rng.uniform())
        z = r * np.exp(2j * np.pi * rng.uniform())
        if all(abs(z - p) >= min_sep for p in pts):
            pts.append(complex(z))
    return np.array(pts)


def neutral_charges(n: int) -> np.ndarray:
    return np.array([1 if k % 2 == 0 else -1 for k in range(n)], dtype=np.int64)


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240611)


@pytest.fixture
def unit_torus() -> Geometry:
    return Geometry.torus(1.0, 1.0)


@pytest.fixture
def random_plane_config():
    """Factory: random planar configuration with well separated vortices."""

    def make(rng: np.random.Generator, n: int = 10, *, radius: float = 3.0, min_sep: float = 0.6, neutral: bool = True):
        z = scattered_positions(rng, n, radius, min_sep)
        q = neutral_charges(n) if neutral else rng.choice([-2, -1, 1, 2], size=n)
        return Configuration.from_arrays(z, q)

    return make


@pytest.fixture
def random_torus_config(unit_torus):
    def make(rng: np.random.Generator, n: int = 8, *, min_sep: float = 0.05):
        z: list[complex] = []
        while len(z) < n:
            c = complex(rng.uniform(), rng.uniform())
            if all(abs(minimum_image(unit_torus, c - p)) >= min_sep for p in z):
                z.append(c)
        return Configuration.from_arrays(z, neutral_charges(n), unit_torus)

    return make
