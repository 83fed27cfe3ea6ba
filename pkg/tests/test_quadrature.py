import math

import numpy as np
import pytest
from scipy.special import ellipk

from twogap.config import get_settings
from twogap.models.common import SingularInterval
from twogap.utils.errors import QuadratureError
from twogap.utils.quadrature import integrate_singular, integrate_tail

ARCSINE = SingularInterval(lower=-1.0, upper=1.0, left_exponent=-0.5, right_exponent=-0.5)


def test_arcsine_weight_integrates_to_pi():
    assert integrate_singular(lambda x: np.ones_like(x), ARCSINE) == pytest.approx(math.pi, rel=1e-14)


def test_odd_integrand_vanishes():
    assert abs(integrate_singular(lambda x: x, ARCSINE)) < 1e-13


def test_symmetric_gap_weight_matches_complete_elliptic_integral():
    value = integrate_singular(lambda x: 1.0 / np.sqrt((x + 2.0) * (2.0 - x)), ARCSINE)
    assert value == pytest.approx(ellipk(0.25), rel=1e-11)


def test_tail_of_inverse_square():
    assert integrate_tail(lambda t: t**-2, 1.0, exponent=0.0) == pytest.approx(1.0, rel=1e-13)


def test_tail_with_endpoint_singularity_matches_beta_function():
    value = integrate_tail(lambda t: t**-1.5, 1.0, exponent=-0.5)
    assert value == pytest.approx(2.0, rel=1e-12)


def test_symmetric_ray_is_half_the_gap_integral():
    ray = integrate_tail(lambda t: 1.0 / np.sqrt((t * t - 1.0) * (t + 2.0)), 2.0, exponent=-0.5)
    assert ray == pytest.approx(0.5 * ellipk(0.25), rel=1e-11)


def test_finite_upper_limit_in_tail_form():
    value = integrate_tail(lambda t: np.ones_like(t), 0.0, exponent=-0.5, upper=4.0)
    assert value == pytest.approx(4.0, rel=1e-12)


def test_additivity_across_an_interior_split():
    factor = lambda x: np.exp(x)  # noqa: E731
    whole = integrate_singular(factor, ARCSINE)
    left = integrate_singular(lambda x: factor(x) / np.sqrt(1.0 - x), SingularInterval(lower=-1.0, upper=0.3, left_exponent=-0.5))
    right = integrate_singular(lambda x: factor(x) / np.sqrt(1.0 + x), SingularInterval(lower=0.3, upper=1.0, right_exponent=-0.5))
    assert left + right == pytest.approx(whole, rel=1e-12)


def test_nonnegative_integrand_gives_nonnegative_value():
    value = integrate_singular(lambda x: (x - 0.2) ** 2, ARCSINE)
    assert value >= 0.0


def test_node_cap_raises_with_last_two_estimates(monkeypatch):
    monkeypatch.setattr(get_settings(), "quad_max_nodes", 32)
    with pytest.raises(QuadratureError) as excinfo:
        integrate_singular(lambda x: np.cos(300.0 * x), ARCSINE)
    assert len(excinfo.value.estimates) == 2


def test_empty_interval_is_rejected():
    with pytest.raises(ValueError):
        SingularInterval(lower=1.0, upper=1.0)
