"""Asymptotic predictions of the best approximation error and closed-form references."""
from __future__ import annotations

import math
from typing import Any, Iterable, Optional

from scipy.optimize import brentq

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import ChebPoly, GreenCharacteristics, PrecisionContext, PredictionRecord, ThetaParams
from twogap.services.characteristics import CharacteristicsService
from twogap.services.ring_green import RingGreenService
from twogap.utils import chebyshev
from twogap.utils.errors import InvalidInputError, OrientationError, PredictionError
from twogap.utils.theta import theta0

settings = get_settings()
logger = get_logger(__name__)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)


def degenerate_rate(a: float) -> float:
    """Decay rate arccosh(1 + 4/(A-1)) of the singleton case B = 1."""

    return math.acosh(1.0 + 4.0 / (a - 1.0))


class PredictorService:
    """Theorem and refined predictions of L_n for a complete set of characteristics."""

    def __init__(
        self,
        characteristics: Optional[CharacteristicsService] = None,
        ring: Optional[RingGreenService] = None,
    ) -> None:
        self._chars = characteristics or CharacteristicsService()
        self._ring = ring or RingGreenService(self._chars)

    @staticmethod
    def _require_complete(chars: GreenCharacteristics) -> None:
        if not chars.complete:
            raise InvalidInputError("characteristics need eta2; complete them with the ring service first")

    def phase(self, n: int, chars: GreenCharacteristics) -> float:
        """{alpha n + omega(C)}; values within snap_tol of 1 fold to 0."""

        value = math.fmod(chars.alpha * n + chars.omega_c, 1.0)
        if value < settings.snap_tol or 1.0 - value < settings.snap_tol:
            return 0.0
        return value

    def solve_dn(self, chars: GreenCharacteristics, phase: float, tol: Optional[float] = None) -> float:
        """The circuit point D with omega(D) = phase; math.inf when phase equals alpha.

        omega grows like sqrt(|D| - end) next to B and -A, so a phase within about
        sqrt(eps) of 0 or 1 has no double-precision D closer than the end itself.
        Such roots land on the end point and the residual is only logged
        at debug level.
        """

        if not 0.0 <= phase < 1.0:
            raise InvalidInputError(f"phase {phase} outside [0, 1)")
        tol = settings.dn_tol if tol is None else tol
        domain = chars.domain
        a, b = domain.A, domain.B
        if phase == 0.0:
            return b
        if abs(phase - chars.alpha) < settings.snap_tol:
            return math.inf

        # t = end + s^2/(1 - s^2) keeps omega close to linear in s at both ends.
        def circuit_point(s: float, end: float) -> float:
            if s >= 1.0:
                return math.inf
            return end + s * s / (1.0 - s * s)

        if phase < chars.alpha:
            def residual(s: float) -> float:
                return self._chars.ray_integral(b, a, circuit_point(s, b)) / chars.c0_abs - phase

            d = circuit_point(brentq(residual, 0.0, 1.0, xtol=0.1 * tol, maxiter=settings.dn_max_iter), b)
        else:
            def residual(s: float) -> float:
                return 1.0 - self._chars.ray_integral(a, b, circuit_point(s, a)) / chars.c0_abs - phase

            d = -circuit_point(brentq(residual, 0.0, 1.0, xtol=0.1 * tol, maxiter=settings.dn_max_iter), a)

        error = abs(self._chars.harmonic_measure(domain, d, chars.c0_abs) - phase)
        if error >= tol and (abs(d - b) <= 2 * math.ulp(b) or abs(d + a) <= 2 * math.ulp(a)):
            logger.debug("D_n at the end point resolution", phase=phase, residual=error)
        elif error >= tol:
            logger.warning("D_n residual above tolerance", phase=phase, residual=error)
        return d

    def _theta_params(self, chars: GreenCharacteristics) -> ThetaParams:
        return ThetaParams(h=chars.nome, tol=settings.theta_tol)

    def theta_ratio(self, n: int, chars: GreenCharacteristics) -> float:
        """exp G(D_n, C) as theta0((phase + omega_C)/2) / theta0((phase - omega_C)/2)."""

        phi = self.phase(n, chars)
        params = self._theta_params(chars)
        return theta0(0.5 * (phi + chars.omega_c), params) / theta0(0.5 * (phi - chars.omega_c), params)

    def green_dn(self, n: int, chars: GreenCharacteristics) -> float:
        d = self.solve_dn(chars, self.phase(n, chars))
        return self._ring.green_dc(chars.domain, chars, d)

    def a_n(self, n: int, chars: GreenCharacteristics) -> float:
        self._require_complete(chars)
        return self._a_n(n, chars, self.green_dn(n, chars))

    @staticmethod
    def _a_n(n: int, chars: GreenCharacteristics, green: float) -> float:
        assert chars.eta2 is not None
        return chars.eta * n - green - 0.5 * math.log(2.0 * chars.eta / chars.eta1) + chars.eta2

    def predict(self, n: int, chars: GreenCharacteristics, variant: str = "theorem") -> PredictionRecord:
        if n < 1:
            raise InvalidInputError(f"n must be positive, got {n}")
        if variant not in ("theorem", "refined"):
            raise InvalidInputError(f"unknown variant {variant!r}")
        self._require_complete(chars)

        phi = self.phase(n, chars)
        d = self.solve_dn(chars, phi)
        green = self._ring.green_dc(chars.domain, chars, d)
        ratio = self.theta_ratio(n, chars)
        a_n = self._a_n(n, chars, green)
        l_theorem = chars.constant_c / math.sqrt(n) * math.exp(-n * chars.eta) * ratio

        l_refined: Optional[float] = None
        if a_n > 0.0:
            l_refined = SQRT_2_OVER_PI / math.sqrt(a_n) * math.exp(-a_n)
        elif variant == "refined":
            raise PredictionError(f"a_n = {a_n} is not positive at n = {n}; refined prediction undefined")

        return PredictionRecord(
            n=n,
            variant=variant,  # type: ignore[arg-type]
            phase=phi,
            D_n=d,
            G_DC=green,
            a_n=a_n,
            theta_ratio=ratio,
            theta_ratio_raw=1.0 / ratio,
            L_theorem=l_theorem,
            L_refined=l_refined,
        )

    def certify_orientation(self, chars: GreenCharacteristics, ns: Iterable[int] = (1, 2, 3), tol: float = 1e-8) -> None:
        """Check the theta route against the ring route at a few n."""

        for n in ns:
            theta_route = self.theta_ratio(n, chars)
            ring_route = math.exp(self.green_dn(n, chars))
            if abs(theta_route - ring_route) > tol * ring_route:
                raise OrientationError(
                    f"theta ratio {theta_route} and exp G(D_n, C) = {ring_route} disagree at n = {n}",
                    {"n": n, "theta": theta_route, "ring": ring_route},
                )

    def normalized_error(self, n: int, chars: GreenCharacteristics, value: Any) -> float:
        """sqrt(n) e^(n eta) L."""

        return math.exp(0.5 * math.log(n) + n * chars.eta + math.log(float(value)))

    @staticmethod
    def symmetric_reference(m: int, a: float) -> float:
        if a <= 1.0 or m < 0:
            raise InvalidInputError(f"need A > 1 and m >= 0, got A={a}, m={m}")
        return SQRT_2_OVER_PI * (a - 1.0) / math.sqrt(a) / math.sqrt(2 * m + 1) * ((a - 1.0) / (a + 1.0)) ** m

    @staticmethod
    def symmetric_scaled(m: int, a: float, value: Any) -> float:
        """sqrt(2m+1) ((A+1)/(A-1))^m sqrt(A)/(A-1) L, which tends to sqrt(2/pi)."""

        log_scale = 0.5 * math.log(2 * m + 1) + m * math.log((a + 1.0) / (a - 1.0)) + 0.5 * math.log(a) - math.log(a - 1.0)
        return math.exp(log_scale + math.log(float(value)))

    @staticmethod
    def degenerate_reference(n: int, a: float, digits: Optional[int] = None) -> Any:
        """2 / (T_n(1 + 4/(A-1)) + 1); extended precision when digits is given."""

        if a <= 1.0 or n < 0:
            raise InvalidInputError(f"need A > 1 and n >= 0, got A={a}, n={n}")
        if digits is None:
            # 2 / (cosh x + 1) = 4 e^-x / (1 + e^-x)^2, which underflows to 0 instead of overflowing.
            decay = math.exp(-n * degenerate_rate(a))
            return 4.0 * decay / (1.0 + decay) ** 2
        ctx = PrecisionContext(digits=digits).context()
        x0 = 1 + ctx.mpf(4) / (ctx.mpf(a) - 1)
        return 2 / (chebyshev.chebyshev_t(n, x0, ctx) + 1)

    @staticmethod
    def degenerate_asymptote(n: int, a: float) -> float:
        return 4.0 * math.exp(-n * degenerate_rate(a))

    @classmethod
    def degenerate_polynomial(cls, n: int, a: float, digits: int = 40) -> ChebPoly:
        """Extremal polynomial L_n T_n((2x+A+1)/(A-1)) - 1 for B = 1, on [-A, 1]."""

        ctx = PrecisionContext(digits=digits).context()
        level = cls.degenerate_reference(n, a, digits)
        big_a = ctx.mpf(a)

        def extremal(x: Any) -> Any:
            return level * chebyshev.chebyshev_t(n, (2 * x + big_a + 1) / (big_a - 1), ctx) - 1

        return chebyshev.interpolate(extremal, -a, 1.0, n, ctx)
