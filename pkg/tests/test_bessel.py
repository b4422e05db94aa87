"""Bessel J0 / J_nu and log-gamma building blocks.

scipy.special is used as a second, fully independent reference next to the
frozen mpmath constants.
"""

import math

import numpy as np
import pytest
import scipy.special as sps

from altseries.bessel import (
    BesselEvalConfig,
    bessel_j0,
    bessel_j_series,
    j0_zeros,
    log_gamma,
)
from altseries.core import DomainError, RangeError

import oracle_values as ov


@pytest.mark.parametrize("u,expected", sorted(ov.J0.items()))
def test_j0_frozen_values(u, expected):
    assert abs(bessel_j0(u) - expected) <= 1e-12


def test_j0_against_scipy_dense():
    u = np.linspace(0.0, 200.0, 4001)
    mine = bessel_j0(u)
    ref = sps.j0(u)
    assert np.max(np.abs(mine - ref)) <= 1e-12


def test_j0_bounded_by_one():
    u = np.linspace(0.0, 300.0, 6001)
    assert np.all(np.abs(bessel_j0(u)) <= 1.0 + 1e-15)


def test_j0_even_and_vectorized():
    u = np.array([-3.0, -1.0, 0.0, 1.0, 3.0])
    vals = bessel_j0(u)
    assert vals.shape == u.shape
    assert vals[0] == vals[4] and vals[1] == vals[3]
    assert isinstance(bessel_j0(2.0), float)


def test_j0_series_asymptotic_overlap():
    """The two evaluation regimes agree on a band around the switch point."""
    cfg = BesselEvalConfig()
    cut = cfg.series_cutoff
    for u in np.linspace(cut - 2.0, cut + 2.0, 81):
        s = bessel_j_series(0.0, float(u))
        a = bessel_j0(float(u), BesselEvalConfig(series_cutoff=5.0))
        assert abs(s - a) <= 1e-12, u


def test_j0_switch_point_continuity():
    cut = BesselEvalConfig().series_cutoff
    below = bessel_j0(cut * (1.0 - 2e-16))
    above = bessel_j0(cut * (1.0 + 2e-16))
    assert abs(below - above) <= 1e-13


def test_j0_rejects_nan():
    with pytest.raises(DomainError):
        bessel_j0(math.nan)


def test_j0_zeros_frozen():
    zs = j0_zeros(7)
    np.testing.assert_allclose(zs, ov.J0_ZEROS, rtol=0, atol=1e-12)


def test_j0_zeros_increasing_and_small_residual():
    zs = j0_zeros(200)
    assert all(b > a for a, b in zip(zs, zs[1:]))
    resid = np.abs(bessel_j0(np.array(zs)))
    assert np.max(resid) <= 1e-10


def test_j0_zeros_against_scipy():
    zs = np.array(j0_zeros(50))
    np.testing.assert_allclose(zs, sps.jn_zeros(0, 50), rtol=0, atol=5e-12)


@pytest.mark.parametrize("bad", [0, -1, 2.5, 10_001])
def test_j0_zeros_rejects_bad_count(bad):
    with pytest.raises(DomainError):
        j0_zeros(bad)


@pytest.mark.parametrize(
    "nu,u,expected",
    [
        (0.5, 2.0, ov.J_HALF_2),
        (1.5, 3.0, ov.J_3HALF_3),
        (1.0, 1.0, 0.44005058574493351596),
    ],
)
def test_j_series_frozen(nu, u, expected):
    assert abs(bessel_j_series(nu, u) - expected) <= 1e-13


def test_j_series_against_scipy_grid():
    # roundoff grows with the largest series term, so the bar is looser
    # toward the u = 18 range guard
    for nu in (0.5, 1.0, 1.5, 2.25, 4.0):
        for u in (0.01, 0.5, 2.0, 7.0, 15.0):
            cap = 1e-13 if u <= 7.0 else 2e-11
            assert abs(bessel_j_series(nu, u) - sps.jv(nu, u)) <= cap


def test_j_series_zero_argument():
    assert bessel_j_series(1.5, 0.0) == 0.0
    assert bessel_j_series(0.0, 0.0) == 1.0


def test_j_series_range_guard():
    with pytest.raises(RangeError):
        bessel_j_series(1.5, 25.0)
    with pytest.raises(RangeError):
        bessel_j_series(0.0, 31.0)


@pytest.mark.parametrize("kwargs", [dict(nu=-0.5, u=1.0), dict(nu=1.0, u=-1.0),
                                    dict(nu=1.0, u=1.0, tol=0.0)])
def test_j_series_domain_guard(kwargs):
    with pytest.raises(DomainError):
        bessel_j_series(**kwargs)


def test_log_gamma_against_stdlib():
    for x in [0.1, 0.5, 1.0, 1.5, 2.0, 3.75, 7.25, 12.0, 20.0, 151.0]:
        ref = math.lgamma(x)
        assert abs(log_gamma(x) - ref) <= 1e-13 * max(1.0, abs(ref))


@pytest.mark.parametrize("x", [0.5, 1.5, 7.25])
def test_log_gamma_functional_equation(x):
    # Gamma(x+1) = x Gamma(x), checked in exponentiated form
    lhs = math.exp(log_gamma(x + 1.0))
    rhs = x * math.exp(log_gamma(x))
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


def test_log_gamma_domain():
    with pytest.raises(DomainError):
        log_gamma(0.0)
    with pytest.raises(DomainError):
        log_gamma(-2.5)


def test_bessel_config_validation():
    with pytest.raises(DomainError):
        BesselEvalConfig(series_cutoff=4.0)
    with pytest.raises(DomainError):
        BesselEvalConfig(series_cutoff=31.0)
    with pytest.raises(DomainError):
        BesselEvalConfig(series_tol=0.0)
