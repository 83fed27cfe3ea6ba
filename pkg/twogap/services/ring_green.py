"""Rectangle and ring images of the domain; Green function of the ring."""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from twogap.config import get_settings
from twogap.logging import get_logger
from twogap.models.common import GreenCharacteristics, RectanglePoint, RingPoint, SingularInterval, TwoIntervalDomain
from twogap.services.characteristics import CharacteristicsService
from twogap.utils.errors import ConvergenceError, DomainError, InvalidInputError, PoleError
from twogap.utils.quadrature import integrate_singular

settings = get_settings()
logger = get_logger(__name__)

_BOUNDARY_SLACK = 1e-12


def _product_terms(rho: float, tol: float) -> int:
    """Number of factor pairs k with rho^(2k) >= tol."""

    if rho == 0.0:
        return 0
    return max(1, math.ceil(math.log(tol) / (2.0 * math.log(rho))))


def _log_abs_product(x: complex, q: float, terms: int) -> float:
    """ln |(1-x) prod_k (1 - q^k x)(1 - q^k / x)|."""

    value = math.log(abs(1.0 - x))
    if terms:
        qk = q ** np.arange(1, terms + 1)
        value += float(np.sum(np.log(np.abs(1.0 - qk * x)) + np.log(np.abs(1.0 - qk / x))))
    return value


def ring_green(rho: float, w: RingPoint, c: RingPoint, tol: Optional[float] = None) -> float:
    """Green function of rho < |w| < 1 with a pole at the real point c.

    G(w, c) = ln|P(w c) / P(w / c)| - ln c + (ln c / ln rho) ln|w| where P is
    the q-product with q = rho^2. rho = 0 gives the unit disk.
    """

    tol = settings.quad_tol if tol is None else tol
    if c.argument != 0.0 or not rho < c.modulus < 1.0:
        raise InvalidInputError(f"pole must be real in ({rho}, 1), got {c.value}")
    if not rho - _BOUNDARY_SLACK <= w.modulus <= 1.0 + _BOUNDARY_SLACK:
        raise DomainError(f"|w|={w.modulus} is outside the ring [{rho}, 1]")
    z = w.value
    a = c.modulus
    if z == a:
        raise PoleError(f"w coincides with the pole {a}")
    if w.modulus == 0.0:
        return -math.log(a)

    q = rho * rho
    terms = _product_terms(rho, tol)
    value = _log_abs_product(z * a, q, terms) - _log_abs_product(z / a, q, terms) - math.log(a)
    if rho > 0.0:
        value += math.log(a) / math.log(rho) * math.log(w.modulus)
    return value


def ring_robin(rho: float, c: float, tol: Optional[float] = None) -> float:
    """lim_{w->c} [G(w, c) + ln|w - c|], from the expansion of the product at the pole."""

    tol = settings.quad_tol if tol is None else tol
    if not rho < c < 1.0:
        raise InvalidInputError(f"pole must lie in ({rho}, 1), got {c}")
    q = rho * rho
    terms = _product_terms(rho, tol)
    value = _log_abs_product(c * c, q, terms)
    if terms:
        value -= 2.0 * float(np.sum(np.log1p(-(q ** np.arange(1, terms + 1)))))
    if rho > 0.0:
        value += math.log(c) ** 2 / math.log(rho)
    return value


def ring_robin_limit(rho: float, c: float, direction: int = 1, step: float = 1e-3, tol: Optional[float] = None) -> float:
    """Numeric Robin limit by Richardson extrapolation along w = c(1 + direction*eps)."""

    pole = RingPoint(modulus=c)

    def regular_part(eps: float) -> float:
        w = RingPoint(modulus=c * (1.0 + direction * eps))
        return ring_green(rho, w, pole, tol) + math.log(c * eps)

    f1, f2, f4 = (regular_part(step / k) for k in (1, 2, 4))
    r1 = 2.0 * f2 - f1
    r2 = 2.0 * f4 - f2
    return (4.0 * r2 - r1) / 3.0


class RingGreenService:
    """Maps real points of the domain to the ring and evaluates G(., C) there."""

    def __init__(self, characteristics: Optional[CharacteristicsService] = None, tol: Optional[float] = None) -> None:
        self._chars = characteristics or CharacteristicsService(tol)
        self._tol = settings.quad_tol if tol is None else tol

    def _edge_integral(self, end: float, other: float, z: float) -> float:
        """Integral of ((t^2-1)(t+other)(end-t))^(-1/2) over [1, z], z <= end."""

        if z <= 1.0:
            return 0.0
        at_end = z >= end
        interval = SingularInterval(
            lower=1.0,
            upper=end if at_end else z,
            left_exponent=-0.5,
            right_exponent=-0.5 if at_end else 0.0,
        )

        def factor(t: np.ndarray) -> np.ndarray:
            value = 1.0 / np.sqrt((t + 1.0) * (t + other))
            if not at_end:
                value = value / np.sqrt(end - t)
            return value

        return integrate_singular(factor, interval, self._tol)

    def rect_map(self, domain: TwoIntervalDomain, chars: GreenCharacteristics, z: float) -> RectanglePoint:
        """Image of a real point under the rectangle map F with F(1) = 0, F(B) = p, F(-A) = p + i."""

        domain.require_regular()
        a, b = domain.A, domain.B
        if 1.0 <= z <= b:
            return RectanglePoint(u=min(chars.p, self._edge_integral(b, a, z) / chars.c0_abs), v=0.0)
        if -a <= z <= -1.0:
            return RectanglePoint(u=min(chars.p, self._edge_integral(a, b, -z) / chars.c0_abs), v=1.0)
        if -1.0 < z < 1.0:
            return RectanglePoint(u=0.0, v=self._chars.harmonic_measure_gap(domain, z, chars.c0_abs))
        return RectanglePoint(u=chars.p, v=self._chars.harmonic_measure(domain, z, chars.c0_abs))

    def ring_map(self, domain: TwoIntervalDomain, chars: GreenCharacteristics, z: float) -> RingPoint:
        """w = exp(i pi F(z) / p)."""

        point = self.rect_map(domain, chars, z)
        scale = math.pi / chars.p
        return RingPoint(modulus=math.exp(-scale * point.v), argument=scale * point.u)

    def pole(self, chars: GreenCharacteristics) -> RingPoint:
        return RingPoint(modulus=math.exp(-math.pi / chars.p * chars.omega_c))

    def robin_constant(self, domain: TwoIntervalDomain, chars: GreenCharacteristics) -> float:
        """eta2 = gamma(w_C) - ln|w'(C)| with |w'(C)| = (pi/p) (2 eta1 / |c0|) w_C."""

        domain.require_regular()
        w_c = self.pole(chars).modulus
        gamma = ring_robin(chars.rho, w_c, self._tol)
        numeric = 0.5 * (ring_robin_limit(chars.rho, w_c, 1) + ring_robin_limit(chars.rho, w_c, -1))
        if abs(numeric - gamma) > settings.robin_check_tol * max(1.0, abs(gamma)):
            raise ConvergenceError(
                "analytic and numeric Robin constants disagree",
                {"analytic": gamma, "numeric": numeric, "pole": w_c},
            )
        derivative = math.pi / chars.p * 2.0 * chars.eta1 / chars.c0_abs * w_c
        return gamma - math.log(derivative)

    def complete(self, domain: TwoIntervalDomain, chars: GreenCharacteristics) -> GreenCharacteristics:
        if chars.complete:
            return chars
        eta2 = self.robin_constant(domain, chars)
        logger.info("Robin constant computed", a=domain.A, b=domain.B, eta2=eta2)
        return chars.model_copy(update={"eta2": eta2})

    def green_dc(self, domain: TwoIntervalDomain, chars: GreenCharacteristics, d: float) -> float:
        """G(D, C) for D on the circuit [B, +inf] U [-inf, -A]."""

        domain.require_regular()
        if -domain.A < d < domain.B:
            raise DomainError(f"D={d} lies inside (-A, B)")
        if d in (domain.B, -domain.A):
            return 0.0
        omega = self._chars.harmonic_measure(domain, d, chars.c0_abs)
        return self.green_at_measure(chars, omega)

    def green_at_measure(self, chars: GreenCharacteristics, omega: float) -> float:
        """G(D, C) for the circuit point with harmonic measure omega."""

        w = RingPoint(modulus=math.exp(-math.pi / chars.p * omega), argument=math.pi)
        return ring_green(chars.rho, w, self.pole(chars), self._tol)
