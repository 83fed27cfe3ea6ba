import math

import numpy as np
import pytest

from twogap.models.common import RingPoint, TwoIntervalDomain
from twogap.services.ring_green import ring_green, ring_robin, ring_robin_limit
from twogap.utils.errors import DomainError, InvalidInputError, PoleError

RHO = 0.0073605
POLE = RingPoint(modulus=0.5)


@pytest.mark.parametrize("radius", [RHO, 1.0])
def test_green_vanishes_on_both_circles(radius):
    for theta in np.linspace(0.0, 2.0 * math.pi, 32, endpoint=False):
        value = ring_green(RHO, RingPoint(modulus=radius, argument=float(theta)), POLE)
        assert abs(value) < 1e-10


def test_disk_limit():
    value = ring_green(0.0, RingPoint(modulus=0.25), POLE)
    assert value == pytest.approx(math.log(0.875 / 0.25), rel=1e-14)


def test_disk_robin_constant():
    assert ring_robin(0.0, 0.5) == pytest.approx(math.log(0.75), rel=1e-14)


def test_symmetric_in_real_arguments():
    forward = ring_green(RHO, RingPoint(modulus=0.3), RingPoint(modulus=0.6))
    backward = ring_green(RHO, RingPoint(modulus=0.6), RingPoint(modulus=0.3))
    assert forward == pytest.approx(backward, rel=1e-12)


def test_positive_inside_the_ring():
    assert ring_green(RHO, RingPoint(modulus=0.1, argument=1.0), POLE) > 0.0


def test_pole_and_outside_points_are_rejected():
    with pytest.raises(PoleError):
        ring_green(RHO, RingPoint(modulus=0.5), POLE)
    with pytest.raises(DomainError):
        ring_green(RHO, RingPoint(modulus=1.5), POLE)
    with pytest.raises(InvalidInputError):
        ring_green(RHO, RingPoint(modulus=0.2), RingPoint(modulus=1.2))


@pytest.mark.parametrize("direction", [1, -1])
def test_robin_constant_matches_pole_limit(direction):
    assert ring_robin_limit(RHO, 0.5, direction) == pytest.approx(ring_robin(RHO, 0.5), abs=1e-8)


@pytest.mark.parametrize("a", [1.5, 2.0, 5.0])
def test_symmetric_eta2(services, a):
    domain = TwoIntervalDomain(A=a, B=a)
    chars = services.characteristics(domain)
    assert chars.eta2 == pytest.approx(math.log(2.0 * a / math.sqrt(a * a - 1.0)), rel=1e-8)


def test_ring_radius_for_a_equals_b_equals_two(symmetric_chars):
    assert symmetric_chars.rho == pytest.approx(RHO, rel=1e-4)


def test_green_dc_at_circuit_ends(services, asymmetric_domain, asymmetric_chars):
    ring = services.ring
    assert ring.green_dc(asymmetric_domain, asymmetric_chars, asymmetric_domain.B) == 0.0
    assert ring.green_dc(asymmetric_domain, asymmetric_chars, -asymmetric_domain.A) == 0.0


@pytest.mark.parametrize("domain_fixture,chars_fixture", [
    ("symmetric_domain", "symmetric_chars"),
    ("asymmetric_domain", "asymmetric_chars"),
])
def test_green_dc_at_infinity_is_eta(services, request, domain_fixture, chars_fixture):
    domain = request.getfixturevalue(domain_fixture)
    chars = request.getfixturevalue(chars_fixture)
    assert services.ring.green_dc(domain, chars, math.inf) == pytest.approx(chars.eta, rel=1e-8)


def test_green_dc_is_continuous_through_infinity(services, asymmetric_domain, asymmetric_chars):
    ring = services.ring
    at_infinity = ring.green_dc(asymmetric_domain, asymmetric_chars, math.inf)
    assert ring.green_dc(asymmetric_domain, asymmetric_chars, 1e12) == pytest.approx(at_infinity, abs=1e-6)
    assert ring.green_dc(asymmetric_domain, asymmetric_chars, -1e12) == pytest.approx(at_infinity, abs=1e-6)


def test_green_dc_rejects_points_between_the_intervals(services, asymmetric_domain, asymmetric_chars):
    with pytest.raises(DomainError):
        services.ring.green_dc(asymmetric_domain, asymmetric_chars, 0.5)


def test_rectangle_vertices(services, asymmetric_domain, asymmetric_chars):
    ring = services.ring
    p = asymmetric_chars.p
    expected = {
        1.0: (0.0, 0.0),
        asymmetric_domain.B: (p, 0.0),
        math.inf: (p, asymmetric_chars.alpha),
        -asymmetric_domain.A: (p, 1.0),
        -1.0: (0.0, 1.0),
        asymmetric_chars.c_crit: (0.0, asymmetric_chars.omega_c),
    }
    for z, (u, v) in expected.items():
        point = ring.rect_map(asymmetric_domain, asymmetric_chars, z)
        assert point.u == pytest.approx(u, abs=1e-10)
        assert point.v == pytest.approx(v, abs=1e-10)


def test_ring_images_of_the_boundary(services, asymmetric_domain, asymmetric_chars):
    ring = services.ring
    right = ring.ring_map(asymmetric_domain, asymmetric_chars, 2.0)
    left = ring.ring_map(asymmetric_domain, asymmetric_chars, -1.5)
    gap = ring.ring_map(asymmetric_domain, asymmetric_chars, 0.2)
    assert right.modulus == pytest.approx(1.0, abs=1e-14)
    assert left.modulus == pytest.approx(asymmetric_chars.rho, rel=1e-12)
    assert gap.argument == 0.0
    assert asymmetric_chars.rho < gap.modulus < 1.0
