"""Conformal characteristics of the complement of two real intervals."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import GreenCharacteristics, SingularInterval, TwoIntervalDomain
from twogap.utils.errors import DomainError
from twogap.utils.quadrature import integrate_singular, integrate_tail

settings = get_settings()
logger = get_logger(__name__)

_HALF = -0.5


def _gap_interval(lower: float, upper: float) -> SingularInterval:
    """Sub-interval of [-1, 1] carrying the weights of the endpoints it touches."""

    return SingularInterval(
        lower=lower,
        upper=upper,
        left_exponent=_HALF if lower == -1.0 else 0.0,
        right_exponent=_HALF if upper == 1.0 else 0.0,
    )


class CharacteristicsService:
    """Critical point, Green values, harmonic measure and modulus of the domain.

    The weight w(x) = ((1-x^2)(x+A)(B-x))^(-1/2) drives every integral here;
    factors that vanish at an integration endpoint go into the Jacobi weight
    and the rest is passed as the smooth factor.
    """

    def __init__(self, tol: Optional[float] = None) -> None:
        self._tol = settings.quad_tol if tol is None else tol

    def _gap_integral(self, domain: TwoIntervalDomain, lower: float, upper: float, moment: Optional[float] = None) -> float:
        """Integral of w (or (moment - t) w) over [lower, upper] within [-1, 1]."""

        a, b = domain.A, domain.B
        interval = _gap_interval(lower, upper)

        def factor(t: np.ndarray) -> np.ndarray:
            value = 1.0 / np.sqrt((t + a) * (b - t))
            if interval.left_exponent == 0.0:
                value = value / np.sqrt(1.0 + t)
            if interval.right_exponent == 0.0:
                value = value / np.sqrt(1.0 - t)
            if moment is not None:
                value = (moment - t) * value
            return value

        return integrate_singular(factor, interval, self._tol)

    def c0_abs(self, domain: TwoIntervalDomain) -> float:
        domain.require_regular()
        return self._gap_integral(domain, -1.0, 1.0)

    def critical_point(self, domain: TwoIntervalDomain, tol: Optional[float] = None) -> float:
        """Ratio of the first moment of w to its mass, certified by the residual."""

        domain.require_regular()
        tol = self._tol if tol is None else tol
        mass = self._gap_integral(domain, -1.0, 1.0)
        first_moment = -self._gap_integral(domain, -1.0, 1.0, moment=0.0)
        c = first_moment / mass
        residual = self._gap_integral(domain, -1.0, 1.0, moment=c)
        if abs(residual) >= max(tol, 1e-12) * mass:
            logger.warning("Critical point residual above tolerance", residual=residual, mass=mass)
        return c

    def green_gap(self, domain: TwoIntervalDomain, c: float, x: float) -> float:
        """G(x) on the gap; integrated from the nearer of the two gap endpoints."""

        domain.require_regular()
        if not -1.0 < x < 1.0:
            raise DomainError(f"x={x} is outside the gap (-1, 1)")
        if x <= 0.0:
            return self._gap_integral(domain, -1.0, x, moment=c)
        return -self._gap_integral(domain, x, 1.0, moment=c)

    def eta1(self, domain: TwoIntervalDomain, c: float) -> float:
        if not -1.0 < c < 1.0:
            raise DomainError(f"critical point {c} is outside the gap")
        return 1.0 / (2.0 * math.sqrt((1.0 - c * c) * (c + domain.A) * (domain.B - c)))

    def ray_integral(self, near: float, far: float, upper: float = math.inf) -> float:
        """Integral of ((t^2-1)(t+far)(t-near))^(-1/2) from near to upper."""

        def factor(t: np.ndarray) -> np.ndarray:
            return 1.0 / np.sqrt((t * t - 1.0) * (t + far))

        if upper <= near:
            return 0.0
        return integrate_tail(factor, near, exponent=_HALF, tol=self._tol, upper=upper)

    def harmonic_measure(self, domain: TwoIntervalDomain, x: float, c0: Optional[float] = None) -> float:
        """omega on the boundary circuit B -> +inf -> -inf -> -A.

        Both infinities give alpha; +inf is read on the right ray, -inf on the left.
        """

        domain.require_regular()
        a, b = domain.A, domain.B
        c0 = self.c0_abs(domain) if c0 is None else c0
        if x >= b:
            return self.ray_integral(b, a, x) / c0
        if x <= -a:
            return 1.0 - self.ray_integral(a, b, -x) / c0
        raise DomainError(f"x={x} is not on the circuit [B, +inf] U [-inf, -A]")

    def harmonic_measure_gap(self, domain: TwoIntervalDomain, x: float, c0: Optional[float] = None) -> float:
        domain.require_regular()
        if not -1.0 < x < 1.0:
            raise DomainError(f"x={x} is outside the gap (-1, 1)")
        c0 = self.c0_abs(domain) if c0 is None else c0
        if x >= 0.0:
            return self._gap_integral(domain, x, 1.0) / c0
        return 1.0 - self._gap_integral(domain, -1.0, x) / c0

    def alpha(self, domain: TwoIntervalDomain) -> float:
        return self.harmonic_measure(domain, math.inf)

    def modulus_p(self, domain: TwoIntervalDomain) -> float:
        """Rectangle modulus p with tau = i p."""

        domain.require_regular()
        a, b = domain.A, domain.B
        interval = SingularInterval(lower=1.0, upper=b, left_exponent=_HALF, right_exponent=_HALF)
        edge = integrate_singular(lambda t: 1.0 / np.sqrt((t + 1.0) * (t + a)), interval, self._tol)
        return edge / self.c0_abs(domain)

    def period_residual(self, domain: TwoIntervalDomain) -> float:
        """Relative defect of ray(B) + ray(-A) = |c0|."""

        domain.require_regular()
        a, b = domain.A, domain.B
        c0 = self.c0_abs(domain)
        return abs(self.ray_integral(b, a) + self.ray_integral(a, b) - c0) / c0

    def characteristics(self, domain: TwoIntervalDomain, tol: Optional[float] = None) -> GreenCharacteristics:
        """All constants but eta2, which the ring construction fills in."""

        domain.require_regular()
        c0 = self.c0_abs(domain)
        c = self.critical_point(domain, tol)
        p = self.modulus_p(domain)
        chars = GreenCharacteristics(
            a=domain.A,
            b=domain.B,
            c_crit=c,
            eta=self.green_gap(domain, c, c),
            eta1=self.eta1(domain, c),
            alpha=self.harmonic_measure(domain, math.inf, c0),
            omega_c=self.harmonic_measure_gap(domain, c, c0),
            p=p,
            rho=math.exp(-math.pi / p),
            c0_abs=c0,
        )
        logger.info("Characteristics computed", a=domain.A, b=domain.B, eta=chars.eta, alpha=chars.alpha)
        return chars
