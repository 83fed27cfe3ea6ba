"""Remez exchange for the best uniform approximation of sgn(x) on two intervals."""
from __future__ import annotations

import math
from typing import Any, List, Literal, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import (
    AlternationPoint,
    BestApproxResult,
    CertificateReport,
    ChebPoly,
    GreenCharacteristics,
    PrecisionContext,
    TwoIntervalDomain,
)
from twogap.services.characteristics import CharacteristicsService
from twogap.services.predictor import degenerate_rate
from twogap.utils import chebyshev
from twogap.utils.errors import (
    AlternationError,
    ClassificationError,
    InsufficientPrecisionError,
    InvalidInputError,
    RemezConvergenceError,
    ZeroCountError,
)

settings = get_settings()
logger = get_logger(__name__)

Extremum = Tuple[Any, Any]


def scan_size(n: int) -> int:
    """Grid points per interval for the extrema search."""

    return max(20 * n, 512)


def _pieces(domain: TwoIntervalDomain) -> List[Tuple[float, float, int]]:
    """(lo, hi, sgn) for the two intervals; the right one is {1} when B = 1."""

    return [(-domain.A, -1.0, -1), (1.0, domain.B, 1)]


def _endpoints(domain: TwoIntervalDomain) -> List[float]:
    return sorted({-domain.A, -1.0, 1.0, domain.B})


def _sign(value: Any) -> int:
    return 1 if value > 0 else -1


class RemezService:
    """Multi-point Remez exchange in a private mpmath context per call."""

    def __init__(self, characteristics: Optional[CharacteristicsService] = None) -> None:
        self._chars = characteristics or CharacteristicsService()

    def auto_precision(self, domain: TwoIntervalDomain, n: int, eta: Optional[float] = None) -> int:
        """ceil(n * rate / ln 10) + guard digits, rate being eta (or its B = 1 analogue)."""

        if eta is None:
            eta = degenerate_rate(domain.A) if domain.degenerate else self._chars.characteristics(domain).eta
        return max(settings.remez_min_digits, math.ceil(n * eta / math.log(10.0)) + settings.remez_guard_digits)

    def _initial_reference(self, domain: TwoIntervalDomain, n: int, alpha: float, ctx: mpmath.MPContext) -> List[Any]:
        total = n + 2
        if domain.degenerate:
            left = total - 1
        else:
            left = min(max(int(round(total * alpha)), 1), total - 1)
        return chebyshev.arcsine_points(-domain.A, -1.0, left, ctx) + chebyshev.arcsine_points(
            1.0, domain.B, total - left, ctx
        )

    def _levelled_solve(
        self, domain: TwoIntervalDomain, n: int, reference: Sequence[Any], ctx: mpmath.MPContext
    ) -> Tuple[ChebPoly, Any]:
        """Solve sum c_k T_k(x_j) - (-1)^j E = sgn(x_j) for the coefficients and E."""

        size = n + 2
        basis = chebyshev.vandermonde(reference, ctx.mpf(-domain.A), ctx.mpf(domain.B), n)
        matrix = ctx.matrix(size, size)
        rhs = ctx.matrix(size, 1)
        for j, x in enumerate(reference):
            for k in range(n + 1):
                matrix[j, k] = basis[j, k]
            matrix[j, n + 1] = -1 if j % 2 == 0 else 1
            rhs[j] = 1 if x > 0 else -1
        try:
            solution = ctx.lu_solve(matrix, rhs)
        except ZeroDivisionError as exc:
            raise InsufficientPrecisionError(
                f"singular levelled system at n={n}; increase digits", {"digits": ctx.dps}
            ) from exc
        level = solution[n + 1]
        if abs(level) < ctx.mpf(10) ** (3 - ctx.dps) * size:
            raise InsufficientPrecisionError(
                f"levelled error {ctx.nstr(level, 5)} is below working precision; increase digits",
                {"digits": ctx.dps},
            )
        poly = ChebPoly(lower=-domain.A, upper=domain.B, coefficients=[solution[k] for k in range(n + 1)])
        return poly, level

    def _critical_point(self, dpoly: ChebPoly, left: Any, right: Any, ctx: mpmath.MPContext) -> Optional[Any]:
        """Zero of P' bracketed by [left, right], or None without a sign change."""

        d_left = chebyshev.evaluate(dpoly, left, ctx)
        d_right = chebyshev.evaluate(dpoly, right, ctx)
        if d_left == 0:
            return left
        if d_right == 0:
            return right
        if d_left * d_right > 0:
            return None
        try:
            root = ctx.findroot(lambda x: chebyshev.evaluate(dpoly, x, ctx), (left, right), solver="anderson", verify=False)
        except (ZeroDivisionError, ValueError):
            return None
        if not left <= root <= right:
            return None
        return root

    def _extrema(
        self, domain: TwoIntervalDomain, poly: ChebPoly, grids: Sequence[Sequence[Any]], ctx: mpmath.MPContext
    ) -> List[Extremum]:
        """Local maxima of |P - sgn| on the grids, interior ones refined to zeros of P'."""

        dpoly = chebyshev.derivative(poly, ctx)
        found: List[Extremum] = []
        for (_, _, target), xs in zip(_pieces(domain), grids):
            values = chebyshev.evaluate(poly, np.array(xs, dtype=object), ctx) - target
            mags = [abs(v) for v in values]
            last = len(xs) - 1
            for i in range(len(xs)):
                if i > 0 and not mags[i] > mags[i - 1]:
                    continue
                if i < last and not mags[i] >= mags[i + 1]:
                    continue
                x, e = xs[i], values[i]
                bracket: Optional[Tuple[Any, Any]] = None
                if 0 < i < last:
                    bracket = (xs[i - 1], xs[i + 1])
                elif last > 0:
                    slope = _sign(e) * chebyshev.evaluate(dpoly, xs[i], ctx)
                    if i == 0 and slope > 0:
                        bracket = (xs[0], xs[1])
                    elif i == last and slope < 0:
                        bracket = (xs[last - 1], xs[last])
                if bracket is not None:
                    refined = self._critical_point(dpoly, bracket[0], bracket[1], ctx)
                    if refined is not None:
                        e_refined = chebyshev.evaluate(poly, refined, ctx) - target
                        if abs(e_refined) >= mags[i]:
                            x, e = refined, e_refined
                found.append((x, e))
        found.sort(key=lambda item: item[0])
        return found

    @staticmethod
    def _alternating(candidates: Sequence[Extremum]) -> List[Extremum]:
        """Collapse runs of equal sign to their largest member."""

        merged: List[Extremum] = []
        for x, e in candidates:
            if merged and _sign(merged[-1][1]) == _sign(e):
                if abs(e) > abs(merged[-1][1]):
                    merged[-1] = (x, e)
                continue
            merged.append((x, e))
        return merged

    def _select(self, candidates: Sequence[Extremum], size: int) -> List[Extremum]:
        merged = self._alternating(candidates)
        while len(merged) > size:
            if abs(merged[0][1]) < abs(merged[-1][1]):
                merged.pop(0)
            else:
                merged.pop()
        return merged

    def _grids(self, domain: TwoIntervalDomain, n: int, ctx: mpmath.MPContext, factor: int = 1) -> List[List[Any]]:
        count = scan_size(n) * factor
        return [chebyshev.arcsine_points(lo, hi, count, ctx) for lo, hi, _ in _pieces(domain)]

    def best_approx(
        self,
        domain: TwoIntervalDomain,
        n: int,
        precision: Union[PrecisionContext, int, None] = None,
        tol: Optional[float] = None,
        chars: Optional[GreenCharacteristics] = None,
    ) -> BestApproxResult:
        """Best approximation of sgn by polynomials of degree <= n, certified by alternation."""

        if n < 0:
            raise InvalidInputError(f"degree must be non-negative, got {n}")
        if not domain.degenerate and chars is None:
            chars = self._chars.characteristics(domain)
        if precision is None:
            precision = PrecisionContext(digits=self.auto_precision(domain, n, chars.eta if chars else None))
        elif isinstance(precision, int):
            precision = PrecisionContext(digits=precision)
        tol = settings.remez_tol if tol is None else tol
        ctx = precision.context()
        size = n + 2

        reference = self._initial_reference(domain, n, chars.alpha if chars else 1.0, ctx)
        grids = self._grids(domain, n, ctx)
        bracket: Tuple[Any, Any] = (ctx.zero, ctx.inf)
        for iteration in range(1, settings.remez_max_iter + 1):
            poly, level = self._levelled_solve(domain, n, reference, ctx)
            candidates = self._extrema(domain, poly, grids, ctx)
            selected = self._select(candidates, size)
            if len(selected) < size:
                raise InsufficientPrecisionError(
                    f"alternation lost at iteration {iteration} ({len(selected)} < {size} points); increase digits",
                    {"digits": precision.digits, "n": n},
                )
            bracket = (min(abs(e) for _, e in selected), max(abs(e) for _, e in candidates))
            tol_eff = max(ctx.mpf(tol), ctx.mpf(10) ** (3 - precision.digits) * size / abs(level))
            logger.debug(
                "Remez iteration",
                n=n,
                iteration=iteration,
                lower=ctx.nstr(bracket[0], 12),
                upper=ctx.nstr(bracket[1], 12),
            )
            if bracket[1] - bracket[0] <= tol_eff * bracket[0]:
                break
            reference = [x for x, _ in selected]
        else:
            raise RemezConvergenceError(
                f"exchange did not converge in {settings.remez_max_iter} iterations at n={n}", bracket
            )

        endpoints = _endpoints(domain)
        span = domain.A + domain.B
        result = BestApproxResult(
            a=domain.A,
            b=domain.B,
            n=n,
            digits=precision.digits,
            poly=poly,
            L=bracket[1],
            bracket_lower=bracket[0],
            bracket_upper=bracket[1],
            alternation=[
                AlternationPoint(x=x, sign=_sign(e), endpoint=any(abs(x - p) < 1e-10 * span for p in endpoints))
                for x, e in selected
            ],
            m=size,
            K=0,
            N=0,
            n1=0,
            n2=0,
            iterations=iteration,
        )
        width = float((bracket[1] - bracket[0]) / bracket[1])
        report = self.verify_alternation(result, domain, max(10.0 ** (-precision.digits / 2), 10.0 * width))
        result = result.model_copy(update={"m": report.m, "K": report.K, "N": report.N})
        n1 = self.count_zeros(result, (-domain.A, -1.0))
        n2 = 0 if domain.degenerate else self.count_zeros(result, (1.0, domain.B))
        result = result.model_copy(update={"n1": n1, "n2": n2})
        result = result.model_copy(update={"case_label": self.classify_case(result, domain)})
        logger.info(
            "Remez converged",
            a=domain.A,
            b=domain.B,
            n=n,
            iterations=iteration,
            L=ctx.nstr(result.L, 15),
            case=result.case_label,
        )
        return result

    def verify_alternation(
        self, result: BestApproxResult, domain: TwoIntervalDomain, tol: float, raise_on_failure: bool = True
    ) -> CertificateReport:
        """Equioscillation certificate: global bound, alternation count, signs and level."""

        ctx = PrecisionContext(digits=result.digits).context()
        level = ctx.mpf(result.L)
        n = result.n
        candidates = self._extrema(domain, result.poly, self._grids(domain, n, ctx, factor=4), ctx)
        max_error = max(abs(e) for _, e in candidates)
        extremal = self._alternating([(x, e) for x, e in candidates if abs(e) >= level * (1 - ctx.mpf(tol))])
        endpoints = _endpoints(domain)
        span = domain.A + domain.B
        at_endpoints = sum(1 for x, _ in extremal if any(abs(x - p) < 1e-10 * span for p in endpoints))

        failed: Optional[Tuple[str, str]] = None
        if max_error > level * (1 + ctx.mpf(tol)):
            failed = ("global_bound", f"max error {ctx.nstr(max_error, 10)} exceeds L = {ctx.nstr(level, 10)}")
        elif len(extremal) < n + 2:
            failed = ("alternation_count", f"{len(extremal)} alternation points, need {n + 2}")
        elif any(p.sign == q.sign for p, q in zip(result.alternation, result.alternation[1:])):
            failed = ("sign_alternation", "reference signs do not alternate")
        else:
            for point in result.alternation:
                target = 1 if point.x > 0 else -1
                e = chebyshev.evaluate(result.poly, point.x, ctx) - target
                if _sign(e) != point.sign or abs(abs(e) - level) > ctx.mpf(tol) * level:
                    failed = ("level_equality", f"|error| at x = {ctx.nstr(point.x, 10)} differs from L")
                    break

        report = CertificateReport(
            passed=failed is None,
            tol=tol,
            m=len(extremal),
            K=len(extremal) - at_endpoints,
            N=at_endpoints,
            max_error=max_error,
            margin=float((level * (1 + ctx.mpf(tol)) - max_error) / level),
            alternation=[AlternationPoint(x=x, sign=_sign(e)) for x, e in extremal],
            failed_check=failed[0] if failed else None,
        )
        if failed and raise_on_failure:
            raise AlternationError(*failed)
        return report

    def classify_case(self, result: BestApproxResult, domain: TwoIntervalDomain) -> Optional[Literal["a", "b", "c"]]:
        """Alternance case a, b or c; None for n < 2."""

        n, m, big_k, big_n = result.n, result.m, result.K, result.N
        if n < 2:
            return None
        if m == n + 3 and big_n == 4 and big_k == n - 1:
            return "a"
        if m == n + 2 and big_n == 3:
            return "b"
        if m == n + 2 and big_n == 4 and big_k == n - 2:
            return "c"
        raise ClassificationError(f"counts m={m}, N={big_n}, K={big_k} match no case at n={n}")

    def count_zeros(
        self,
        result: BestApproxResult,
        interval: Tuple[float, float],
        which: Literal["derivative", "error"] = "derivative",
    ) -> int:
        """Real zeros of P' (default) or sign changes of P - sgn on [lo, hi]."""

        lo, hi = interval
        if hi <= lo or result.n == 0:
            return 0
        if which == "error" and lo < 0 < hi:
            raise InvalidInputError("error zeros are counted on one side of the gap at a time")
        ctx = PrecisionContext(digits=result.digits).context()
        if which == "derivative":
            target = chebyshev.derivative(result.poly, ctx)
            shift = 0
        else:
            target = result.poly
            shift = 1 if lo > 0 else -1
        slope = chebyshev.derivative(target, ctx)

        for factor in (1, 8):
            count, ambiguous = self._sign_changes(target, slope, shift, lo, hi, scan_size(result.n) * factor, ctx)
            if not ambiguous:
                return count
            logger.debug("Refining zero count", lo=lo, hi=hi, points=scan_size(result.n) * factor)
        raise ZeroCountError(
            f"zero count on [{lo}, {hi}] stays ambiguous", {"interval": [lo, hi], "n": result.n}
        )

    def _sign_changes(
        self,
        target: ChebPoly,
        slope: ChebPoly,
        shift: int,
        lo: float,
        hi: float,
        points: int,
        ctx: mpmath.MPContext,
    ) -> Tuple[int, bool]:
        xs = chebyshev.arcsine_points(lo, hi, points, ctx)
        values = chebyshev.evaluate(target, np.array(xs, dtype=object), ctx) - shift
        slopes = chebyshev.evaluate(slope, np.array(xs, dtype=object), ctx)
        noise = max(abs(v) for v in values) * ctx.mpf(10) ** (5 - ctx.dps)
        count = 0
        for i in range(len(xs) - 1):
            if values[i] == 0:
                count += 1
                continue
            if values[i] * values[i + 1] < 0:
                count += 1
                continue
            if slopes[i] * slopes[i + 1] < 0:
                turn = self._critical_point(slope, xs[i], xs[i + 1], ctx)
                if turn is None:
                    return count, True
                extreme = chebyshev.evaluate(target, turn, ctx) - shift
                if abs(extreme) <= noise:
                    return count, True
                if extreme * values[i] < 0:
                    count += 2
        if values[-1] == 0:
            count += 1
        return count, False
