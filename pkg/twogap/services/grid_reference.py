"""Discrete min-max reference for small degrees, in double precision."""
from __future__ import annotations

from typing import List, Optional, Tuple

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.optimize import linprog, minimize_scalar

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import TwoIntervalDomain
from twogap.utils.errors import GridReferenceError, InvalidInputError

settings = get_settings()
logger = get_logger(__name__)

MAX_DEGREE = 10

# Smallest feasibility tolerances HiGHS accepts.
LP_OPTIONS = {"primal_feasibility_tolerance": 1e-10, "dual_feasibility_tolerance": 1e-10}


class GridReferenceService:
    """Linear min-max on a dense grid, refined by adding the error's local extrema.

    After the first round the program is solved for a correction to the previous
    polynomial, with the residual divided by the previous maximum error, so the
    solver's absolute tolerances act relative to the error level.
    """

    def __init__(self, grid_size: Optional[int] = None, rounds: int = 20, tol: float = 1e-8) -> None:
        self._grid_size = grid_size or settings.grid_size
        self._rounds = rounds
        self._tol = tol

    @staticmethod
    def _solve(basis: np.ndarray, residual: np.ndarray, n: int) -> Tuple[np.ndarray, float]:
        """min t subject to |residual - basis @ delta| <= t."""

        ones = np.ones((basis.shape[0], 1))
        a_ub = np.block([[basis, -ones], [-basis, -ones]])
        b_ub = np.concatenate([residual, -residual])
        cost = np.zeros(n + 2)
        cost[-1] = 1.0
        bounds = [(None, None)] * (n + 1) + [(0.0, None)]
        res = linprog(cost, A_ub=a_ub, b_ub=b_ub, bounds=bounds, method="highs-ds", options=LP_OPTIONS)
        if not res.success:
            raise GridReferenceError(f"linear min-max failed: {res.message}", {"n": n, "points": basis.shape[0]})
        return res.x[: n + 1], float(res.x[-1])

    def grid_reference(self, domain: TwoIntervalDomain, n: int, grid_size: Optional[int] = None) -> float:
        if n < 0 or n > MAX_DEGREE:
            raise InvalidInputError(f"grid reference supports 0 <= n <= {MAX_DEGREE}, got {n}")
        size = grid_size or self._grid_size
        lower, upper = -domain.A, domain.B
        pieces = [(-domain.A, -1.0, -1.0), (1.0, domain.B, 1.0)]

        def scaled(x: np.ndarray) -> np.ndarray:
            return (2.0 * x - lower - upper) / (upper - lower)

        def grid(lo: float, hi: float) -> np.ndarray:
            if lo == hi:
                return np.array([lo])
            return 0.5 * (lo + hi) - 0.5 * (hi - lo) * np.cos(np.pi * np.arange(size) / (size - 1))

        grids: List[np.ndarray] = [grid(lo, hi) for lo, hi, _ in pieces]
        coefficients = np.zeros(n + 1)
        scale = 1.0
        best = level = np.inf
        for round_ in range(1, self._rounds + 1):
            points = np.concatenate(grids)
            basis = C.chebvander(scaled(points), n)
            residual = (np.sign(points) - basis @ coefficients) / scale
            delta, t = self._solve(basis, residual, n)
            coefficients = coefficients + scale * delta
            level = scale * t

            def error(x: float, sgn: float) -> float:
                return float(C.chebval(scaled(np.asarray(x)), coefficients) - sgn)

            extrema: List[float] = []
            best = 0.0
            for (lo, hi, sgn), xs in zip(pieces, grids):
                values = np.abs(C.chebval(scaled(xs), coefficients) - sgn)
                best = max(best, float(values.max()))
                for i in range(1, len(xs) - 1):
                    if values[i] > values[i - 1] and values[i] >= values[i + 1]:
                        sigma = np.sign(error(xs[i], sgn)) or 1.0
                        found = minimize_scalar(
                            lambda x: -sigma * error(x, sgn),
                            bounds=(xs[i - 1], xs[i + 1]),
                            method="bounded",
                            options={"xatol": 1e-14},
                        )
                        extrema.append(float(found.x))
                        best = max(best, abs(error(found.x, sgn)))
            logger.debug("Grid reference round", n=n, round=round_, level=level, max_error=best)
            if best - level <= self._tol * best:
                return best
            scale = best
            for index, (lo, hi, _) in enumerate(pieces):
                extra = [x for x in extrema if lo <= x <= hi]
                if extra:
                    grids[index] = np.unique(np.concatenate([grids[index], extra]))
        raise GridReferenceError(
            f"grid min-max did not settle in {self._rounds} rounds at n={n}",
            {"n": n, "max_error": best, "level": level},
        )
