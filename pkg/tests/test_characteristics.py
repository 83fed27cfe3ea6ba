import math

import numpy as np
import pytest
from pydantic import ValidationError
from scipy.integrate import quad
from scipy.optimize import brentq
from scipy.special import ellipk

from twogap.models.common import TwoIntervalDomain
from twogap.utils.errors import DomainError, InvalidInputError


@pytest.mark.parametrize("a", [1.5, 2.0, 5.0])
def test_symmetric_closed_forms(services, a):
    chars = services.characteristics_service.characteristics(TwoIntervalDomain(A=a, B=a))
    assert abs(chars.c_crit) < 1e-12
    assert chars.eta == pytest.approx(0.5 * math.log((a + 1.0) / (a - 1.0)), rel=1e-10)
    assert chars.eta1 == pytest.approx(1.0 / (2.0 * a), rel=1e-10)
    assert chars.alpha == pytest.approx(0.5, abs=1e-10)
    assert chars.omega_c == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("a", [1.5, 2.0, 5.0])
def test_symmetric_modulus_is_half_the_elliptic_period_ratio(services, a):
    chars = services.characteristics_service.characteristics(TwoIntervalDomain(A=a, B=a))
    k2 = 1.0 / (a * a)
    assert chars.p == pytest.approx(ellipk(1.0 - k2) / (2.0 * ellipk(k2)), rel=1e-10)
    assert chars.rho == pytest.approx(math.exp(-math.pi / chars.p), rel=1e-12)


def test_gap_mass_for_a_equals_b_equals_two(symmetric_chars):
    assert symmetric_chars.c0_abs == pytest.approx(ellipk(0.25), rel=1e-11)


def test_asymmetric_critical_point_matches_independent_root(services, asymmetric_domain):
    a, b = asymmetric_domain.A, asymmetric_domain.B

    def moment(c):
        return quad(lambda x: (c - x) / math.sqrt((x + a) * (b - x)), -1.0, 1.0, weight="alg", wvar=(-0.5, -0.5))[0]

    expected = brentq(moment, -0.99, 0.99, xtol=1e-15)
    c = services.characteristics_service.critical_point(asymmetric_domain)
    assert -1.0 < c < 0.0
    assert c == pytest.approx(expected, abs=1e-10)


def test_green_vanishes_at_gap_endpoints(services, asymmetric_domain, asymmetric_chars):
    service = services.characteristics_service
    c = asymmetric_chars.c_crit
    assert abs(service.green_gap(asymmetric_domain, c, -1.0 + 1e-12)) < 1e-5
    assert abs(service.green_gap(asymmetric_domain, c, 1.0 - 1e-12)) < 1e-5


def test_green_peaks_at_critical_point(services, asymmetric_domain, asymmetric_chars):
    service = services.characteristics_service
    c = asymmetric_chars.c_crit
    peak = service.green_gap(asymmetric_domain, c, c)
    assert peak == pytest.approx(asymmetric_chars.eta, rel=1e-14)
    for delta in (1e-3, 1e-2, 0.1):
        assert service.green_gap(asymmetric_domain, c, c + delta) < peak
        assert service.green_gap(asymmetric_domain, c, c - delta) < peak


def test_curvature_at_critical_point(services, asymmetric_domain, asymmetric_chars):
    service = services.characteristics_service
    c = asymmetric_chars.c_crit

    def second_difference(delta):
        g = lambda x: service.green_gap(asymmetric_domain, c, x)  # noqa: E731
        return (g(c + delta) - 2.0 * g(c) + g(c - delta)) / delta**2

    curvature = (4.0 * second_difference(5e-3) - second_difference(1e-2)) / 3.0
    assert curvature == pytest.approx(-2.0 * asymmetric_chars.eta1, rel=1e-5)


def test_symmetric_green_at_origin(services, symmetric_domain, symmetric_chars):
    value = services.characteristics_service.green_gap(symmetric_domain, symmetric_chars.c_crit, 0.0)
    assert value == pytest.approx(0.5 * math.log(3.0), rel=1e-12)


def test_harmonic_measure_along_the_circuit(services, asymmetric_domain):
    service = services.characteristics_service
    a, b = asymmetric_domain.A, asymmetric_domain.B
    assert service.harmonic_measure(asymmetric_domain, b) == 0.0
    assert service.harmonic_measure(asymmetric_domain, -a) == pytest.approx(1.0, abs=1e-14)
    circuit = [b, b + 0.5, 10.0, 1e6, math.inf, -1e6, -10.0, -a - 0.5, -a]
    values = [service.harmonic_measure(asymmetric_domain, x) for x in circuit]
    assert all(later >= earlier for earlier, later in zip(values, values[1:]))


def test_symmetric_measure_of_infinity_is_one_half(services, symmetric_domain):
    assert services.characteristics_service.harmonic_measure(symmetric_domain, math.inf) == pytest.approx(0.5, abs=1e-12)


def test_harmonic_measure_rejects_points_between_the_intervals(services, asymmetric_domain):
    with pytest.raises(DomainError):
        services.characteristics_service.harmonic_measure(asymmetric_domain, 0.0)


def test_gap_measure_runs_from_one_to_zero(services, asymmetric_domain):
    service = services.characteristics_service
    xs = np.linspace(-0.999, 0.999, 21)
    values = [service.harmonic_measure_gap(asymmetric_domain, float(x)) for x in xs]
    assert values[0] > 0.97
    assert values[-1] < 0.03
    assert all(later < earlier for earlier, later in zip(values, values[1:]))


def test_symmetric_gap_measure_at_origin(services, symmetric_domain):
    assert services.characteristics_service.harmonic_measure_gap(symmetric_domain, 0.0) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("a,b", [(2.0, 2.0), (2.0, 3.0), (5.0, 1.5)])
def test_rays_add_up_to_the_gap_integral(services, a, b):
    assert services.characteristics_service.period_residual(TwoIntervalDomain(A=a, B=b)) < 1e-10


def test_symmetric_ray_is_half_the_gap(services, symmetric_chars):
    assert services.characteristics_service.ray_integral(2.0, 2.0) == pytest.approx(0.5 * symmetric_chars.c0_abs, rel=1e-11)


def test_degenerate_domain_has_no_characteristics(services):
    with pytest.raises(InvalidInputError):
        services.characteristics_service.characteristics(TwoIntervalDomain(A=3.0, B=1.0))


@pytest.mark.parametrize("a,b", [(1.0, 2.0), (0.5, 2.0), (2.0, 0.9)])
def test_invalid_domains_are_rejected(a, b):
    with pytest.raises(ValidationError):
        TwoIntervalDomain(A=a, B=b)
