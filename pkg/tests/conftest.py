import os
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

# Provide default environment variables for settings
os.environ.setdefault("TWOGAP_THREADS", "1")
os.environ.setdefault("TWOGAP_LOG_LEVEL", "WARNING")

from twogap.models.common import TwoIntervalDomain  # noqa: E402
from twogap.registry import ServiceRegistry, get_services  # noqa: E402


@pytest.fixture(scope="session")
def services() -> ServiceRegistry:
    return get_services()


@pytest.fixture(scope="session")
def symmetric_domain() -> TwoIntervalDomain:
    return TwoIntervalDomain(A=2.0, B=2.0)


@pytest.fixture(scope="session")
def asymmetric_domain() -> TwoIntervalDomain:
    return TwoIntervalDomain(A=2.0, B=3.0)


@pytest.fixture(scope="session")
def symmetric_chars(services, symmetric_domain):
    return services.characteristics(symmetric_domain)


@pytest.fixture(scope="session")
def asymmetric_chars(services, asymmetric_domain):
    return services.characteristics(asymmetric_domain)
