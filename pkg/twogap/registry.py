"""Service wiring shared by the CLI and the sweep workers."""
from __future__ import annotations

from functools import lru_cache
from typing import Dict, Optional

from twogap.logging import get_logger
from twogap.models.common import GreenCharacteristics, TwoIntervalDomain
from twogap.services.characteristics import CharacteristicsService
from twogap.services.grid_reference import GridReferenceService
from twogap.services.predictor import PredictorService
from twogap.services.remez import RemezService
from twogap.services.ring_green import RingGreenService

logger = get_logger(__name__)


class ServiceRegistry:
    def __init__(self, tol: Optional[float] = None) -> None:
        self.characteristics_service = CharacteristicsService(tol)
        self.ring = RingGreenService(self.characteristics_service, tol)
        self.predictor = PredictorService(self.characteristics_service, self.ring)
        self.remez = RemezService(self.characteristics_service)
        self.grid = GridReferenceService()
        self._chars: Dict[TwoIntervalDomain, GreenCharacteristics] = {}

    def characteristics(self, domain: TwoIntervalDomain) -> GreenCharacteristics:
        """Complete characteristics (eta2 included), orientation-certified, cached per domain."""

        cached = self._chars.get(domain)
        if cached is None:
            chars = self.characteristics_service.characteristics(domain)
            cached = self.ring.complete(domain, chars)
            self.predictor.certify_orientation(cached)
            self._chars[domain] = cached
            logger.debug("Characteristics cached", a=domain.A, b=domain.B)
        return cached


@lru_cache(maxsize=1)
def get_services() -> ServiceRegistry:
    return ServiceRegistry()
