"""Gauss-Jacobi quadrature for integrands with inverse-square-root endpoint weights."""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.special import roots_jacobi

from twogap.config import get_settings
from twogap.models.common import SingularInterval
from twogap.utils.errors import QuadratureError

SmoothFactor = Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=64)
def jacobi_rule(nodes: int, alpha: float, beta: float) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for the weight (1-s)^alpha (1+s)^beta on [-1, 1]."""

    s, w = roots_jacobi(nodes, alpha, beta)
    s.setflags(write=False)
    w.setflags(write=False)
    return s, w


def integrate_singular(f: SmoothFactor, interval: SingularInterval, tol: Optional[float] = None) -> float:
    """Integrate f(x) (x-lower)^left (upper-x)^right over the interval.

    The node count doubles from ``quad_min_nodes`` until two successive
    estimates agree to ``tol`` relative to the integral of |f| times the weight.
    """

    settings = get_settings()
    tol = settings.quad_tol if tol is None else tol
    if interval.compactified:
        return integrate_tail(
            f,
            interval.lower,
            exponent=interval.left_exponent,
            tol=tol,
            far_exponent=interval.right_exponent,
        )

    left, right = interval.left_exponent, interval.right_exponent
    half = 0.5 * (interval.upper - interval.lower)
    mid = 0.5 * (interval.upper + interval.lower)
    scale = half ** (1.0 + left + right)

    estimates: list[float] = []
    nodes = settings.quad_min_nodes
    while nodes <= settings.quad_max_nodes:
        s, w = jacobi_rule(nodes, right, left)
        values = np.asarray(f(mid + half * s), dtype=float)
        estimate = scale * float(np.dot(w, values))
        magnitude = max(abs(estimate), scale * float(np.dot(w, np.abs(values))))
        if estimates and abs(estimate - estimates[-1]) <= tol * magnitude:
            return estimate
        estimates.append(estimate)
        nodes *= 2
    raise QuadratureError(
        f"no convergence on [{interval.lower}, {interval.upper}] with {settings.quad_max_nodes} nodes",
        estimates[-2:],
    )


def integrate_tail(
    f: SmoothFactor,
    lower: float,
    exponent: float = -0.5,
    tol: Optional[float] = None,
    far_exponent: float = 0.0,
    upper: float = math.inf,
) -> float:
    """Integrate f(t) (t-lower)^exponent from lower to upper (default +inf).

    Uses t = lower + u/(1-u). For an infinite upper limit ``far_exponent``
    moves a known power (1-u)^far_exponent of the compactified integrand
    into the quadrature weight.
    """

    infinite = math.isinf(upper)
    u_upper = 1.0 if infinite else (upper - lower) / (1.0 + upper - lower)
    far = far_exponent if infinite else 0.0
    power = -exponent - 2.0 - far

    def compactified(u: np.ndarray) -> np.ndarray:
        s = 1.0 - u
        return f(lower + u / s) * s**power

    interval = SingularInterval(lower=0.0, upper=u_upper, left_exponent=exponent, right_exponent=far)
    return integrate_singular(compactified, interval, tol)
