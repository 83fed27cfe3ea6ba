"""Chebyshev-basis helpers in extended precision."""
from __future__ import annotations

from typing import Any, Callable, List, Sequence

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as C

from twogap.models.common import ChebPoly


def reference_variable(x: Any, lower: Any, upper: Any) -> Any:
    """Affine map of [lower, upper] onto [-1, 1]."""

    return (2 * x - lower - upper) / (upper - lower)


def arcsine_points(lo: Any, hi: Any, count: int, ctx: mpmath.MPContext) -> List[Any]:
    """``count`` Chebyshev extreme points of [lo, hi], endpoints included, increasing."""

    lo, hi = ctx.mpf(lo), ctx.mpf(hi)
    if count == 1 or lo == hi:
        return [lo]
    mid = (lo + hi) / 2
    half = (hi - lo) / 2
    points = [mid - half * ctx.cospi(ctx.mpf(j) / (count - 1)) for j in range(count)]
    points[0], points[-1] = lo, hi
    return points


def vandermonde(points: Sequence[Any], poly_lower: Any, poly_upper: Any, degree: int) -> np.ndarray:
    """Object array T_k(s_j) with s the reference variable of the points."""

    s = np.array([reference_variable(x, poly_lower, poly_upper) for x in points], dtype=object)
    return C.chebvander(s, degree)


def evaluate(poly: ChebPoly, x: Any, ctx: mpmath.MPContext) -> Any:
    """Clenshaw evaluation at a scalar or an object array of points."""

    lower, upper = ctx.mpf(poly.lower), ctx.mpf(poly.upper)
    coefficients = np.array(poly.coefficients, dtype=object)
    if isinstance(x, np.ndarray):
        s = np.array([reference_variable(ctx.mpf(v), lower, upper) for v in x], dtype=object)
        return C.chebval(s, coefficients)
    return C.chebval(reference_variable(ctx.mpf(x), lower, upper), coefficients)


def derivative(poly: ChebPoly, ctx: mpmath.MPContext) -> ChebPoly:
    """d/dx of the polynomial, kept in the same reference interval."""

    scale = ctx.mpf(2) / (ctx.mpf(poly.upper) - ctx.mpf(poly.lower))
    coefficients = C.chebder(np.array(poly.coefficients, dtype=object), scl=scale)
    return ChebPoly(lower=poly.lower, upper=poly.upper, coefficients=[ctx.mpf(c) for c in coefficients])


def interpolate(func: Callable[[Any], Any], lower: float, upper: float, degree: int, ctx: mpmath.MPContext) -> ChebPoly:
    """Chebyshev coefficients of a degree-``degree`` polynomial from its Gauss-Chebyshev samples."""

    count = degree + 1
    lo, hi = ctx.mpf(lower), ctx.mpf(upper)
    angles = [ctx.pi * (j + ctx.mpf(1) / 2) / count for j in range(count)]
    values = [func((hi - lo) / 2 * ctx.cos(theta) + (hi + lo) / 2) for theta in angles]
    coefficients = []
    for k in range(count):
        total = ctx.fsum(v * ctx.cos(k * theta) for v, theta in zip(values, angles))
        coefficients.append(total * (1 if k else ctx.mpf(1) / 2) * 2 / count)
    return ChebPoly(lower=lower, upper=upper, coefficients=coefficients)


def chebyshev_t(n: int, x: Any, ctx: mpmath.MPContext) -> Any:
    return ctx.chebyt(n, ctx.mpf(x))
