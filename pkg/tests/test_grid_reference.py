import pytest

from twogap.models.common import TwoIntervalDomain
from twogap.services.grid_reference import GridReferenceService
from twogap.utils.errors import GridReferenceError, InvalidInputError


def test_degenerate_quadratic(services):
    value = services.grid.grid_reference(TwoIntervalDomain(A=3.0, B=1.0), 2)
    assert value == pytest.approx(1.0 / 9.0, rel=1e-8)


def test_constant_approximation(services, asymmetric_domain):
    assert services.grid.grid_reference(asymmetric_domain, 0) == pytest.approx(1.0, abs=1e-10)


def test_degree_cap(services, asymmetric_domain):
    with pytest.raises(InvalidInputError):
        services.grid.grid_reference(asymmetric_domain, 11)


def test_round_cap_reports_the_last_gap(asymmetric_domain):
    service = GridReferenceService(grid_size=50, rounds=1, tol=1e-15)
    with pytest.raises(GridReferenceError) as excinfo:
        service.grid_reference(asymmetric_domain, 6)
    assert excinfo.value.diagnostics["max_error"] >= excinfo.value.diagnostics["level"]


@pytest.mark.parametrize("a,b", [(2.0, 2.0), (2.0, 3.0), (3.0, 1.5)])
def test_agrees_with_remez_up_to_degree_eight(services, a, b):
    domain = TwoIntervalDomain(A=a, B=b)
    for n in range(0, 9):
        remez = float(services.remez.best_approx(domain, n).L)
        assert services.grid.grid_reference(domain, n) == pytest.approx(remez, rel=1e-7), n
