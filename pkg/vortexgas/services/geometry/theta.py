# vortexgas/services/geometry/theta.py
"""First Jacobi theta function by its q-series.

    theta1(u; q) = 2 * sum_{n>=0} (-1)^n q^{(n+1/2)^2} sin((2n+1) u)

Only the nome regime produced by a rectangular torus is needed here
(q = exp(-pi L2/L1), real, 0 < q < 1), and callers hand in arguments
already reduced to the minimum image, so |Im u| <= pi*L2/(2*L1) and the
series converges geometrically.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike, NDArray

from vortexgas.errors import InvalidParameterError

ComplexArray = NDArray[np.complex128]

MAX_TERMS = 400


def nome(L1: float, L2: float) -> float:
    """q = exp(-pi * L2 / L1) for the rectangular torus with periods L1, i*L2."""
    return float(np.exp(-np.pi * L2 / L1))


def theta1(
    u: ArrayLike,
    q: float,
    *,
    rel_tol: float = 1e-16,
    max_terms: int = MAX_TERMS,
) -> tuple[ComplexArray, ComplexArray]:
    """
    Evaluate theta1(u; q) and its u-derivative elementwise.

    The sum stops once the newest term is below `rel_tol` times the running
    sum for every element (value and derivative alike).
    """
    if not 0.0 < q < 1.0:
        raise InvalidParameterError("nome must satisfy 0 < q < 1", q=q)
    u = np.asarray(u, dtype=np.complex128)
    total = np.zeros_like(u)
    dtotal = np.zeros_like(u)

    for n in range(max_terms):
        k = 2 * n + 1
        coeff = (-1.0) ** n * q ** ((n + 0.5) ** 2)
        term = coeff * np.sin(k * u)
        dterm = coeff * k * np.cos(k * u)
        total = total + term
        dtotal = dtotal + dterm
        if np.all(np.abs(term) <= rel_tol * np.abs(total)) and np.all(
            np.abs(dterm) <= rel_tol * np.abs(dtotal)
        ):
            break
    return 2.0 * total, 2.0 * dtotal
