"""Theta function of the main asymptotic formula."""
from __future__ import annotations

import math
from typing import Union

import numpy as np

from twogap.models.common import ThetaParams

ArrayLike = Union[float, np.ndarray]


def term_count(params: ThetaParams) -> int:
    """Number of cosine terms k with 2 h^(k^2) >= tol."""

    return max(1, math.ceil(math.sqrt(math.log(params.tol / 2.0) / math.log(params.h))))


def theta0(t: ArrayLike, params: ThetaParams) -> ArrayLike:
    """1 - 2h cos 2pi t + 2h^4 cos 4pi t - 2h^9 cos 6pi t + ..."""

    k = np.arange(1, term_count(params) + 1)
    coefficients = 2.0 * (-1.0) ** k * params.h ** (k * k)
    t_arr = np.asarray(t, dtype=float)
    values = 1.0 + np.cos(2.0 * math.pi * np.multiply.outer(t_arr, k)) @ coefficients
    if np.ndim(values) == 0:
        return float(values)
    return values
