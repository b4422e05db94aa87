"""Bessel-transform quadrature route, for the alternating case and the
general parameters."""

import math

import numpy as np
import pytest

from altseries.core import DomainError, ToleranceSpec, WorkLimitError
from altseries.hankel import (
    QuadConfig,
    hankel_general,
    hankel_s_star,
    oscillatory_edges,
    panel_quadrature,
)
from altseries.hankel import _accelerated_tail, _s_star_panels
from altseries.series import SeriesParams, sum_series

import oracle_values as ov

LN2 = math.log(2.0)


class TestPanelQuadrature:
    def test_polynomial_exact(self):
        value, refine, absint, sums, work = panel_quadrature(
            lambda x: x * x, [0.0, 0.5, 1.0], order=8)
        assert value == pytest.approx(1.0 / 3.0, rel=1e-15)
        assert absint == pytest.approx(1.0 / 3.0, rel=1e-14)
        assert len(sums) == 2 and work > 0

    def test_sine_with_estimate(self):
        value, refine, absint, _, _ = panel_quadrature(
            np.sin, [0.0, 1.0, 2.0, math.pi], order=16)
        assert abs(value - 2.0) <= refine + 1e-14
        assert isinstance(value, float)

    def test_complex_integrand(self):
        value, refine, absint, _, _ = panel_quadrature(
            lambda x: np.exp(1j * x), [0.0, 0.5, 1.0], order=12)
        expected = complex(math.sin(1.0), 1.0 - math.cos(1.0))
        assert abs(value - expected) <= 1e-14
        assert isinstance(value, complex)
        # |e^(ix)| = 1, so the absolute integral is the length
        assert absint == pytest.approx(1.0, rel=1e-13)


class TestOscillatoryEdges:
    def test_contains_zeros_and_bounds(self):
        zeros = [0.7, 1.9, 3.3]
        edges = oscillatory_edges(zeros, 4.0)
        assert edges[0] == 0.0 and edges[-1] == 4.0
        for z in zeros:
            assert z in edges
        assert all(b > a for a, b in zip(edges, edges[1:]))

    def test_gap_subdivision(self):
        edges = oscillatory_edges([], 5.0, base_step=0.9)
        gaps = np.diff(edges)
        assert np.max(gaps) <= 0.9 + 1e-12

    def test_zeros_beyond_upper_ignored(self):
        edges = oscillatory_edges([0.5, 6.0], 1.0)
        assert edges[-1] == 1.0
        assert all(e <= 1.0 for e in edges)


def test_quad_config_validation():
    with pytest.raises(DomainError):
        QuadConfig(truncation_x=4.0)
    with pytest.raises(DomainError):
        QuadConfig(panel_rule_order=4)
    with pytest.raises(DomainError):
        QuadConfig(max_panels=2)
    with pytest.raises(DomainError):
        QuadConfig(acceleration_depth=-1)


def test_s_star_at_zero_is_minus_ln2():
    out = hankel_s_star(0.0)
    assert abs(out.value + LN2) <= 1e-14
    assert out.method == "hankel"


@pytest.mark.parametrize("lam,expected", sorted(ov.S_STAR.items()))
def test_s_star_frozen_values(lam, expected):
    out = hankel_s_star(lam)
    assert abs(out.value - expected) <= 2e-15
    assert abs(out.value - expected) <= out.error_estimate


def test_error_floor_never_below_j0_model():
    # integral of the positive weight is ln 2 exactly, and each J0 call
    # carries the model error, so the estimate can never drop below that
    for lam in (0.0, 5.0, 20.0, 26.0):
        out = hankel_s_star(lam)
        assert out.error_estimate >= 1e-15 * LN2


def test_precision_wall_is_reported_honestly():
    # true magnitude at lambda = 40 is ~1e-22, far below the floor
    out = hankel_s_star(40.0)
    assert out.error_estimate >= abs(out.value)


def test_relative_tolerance_unreachable_past_wall():
    with pytest.raises(WorkLimitError) as exc:
        hankel_s_star(40.0, tol=ToleranceSpec(abs_tol=0.0, rel_tol=1e-3))
    partial = exc.value.partial
    assert partial is not None
    assert partial.error_estimate >= abs(partial.value)


def test_panel_sums_alternate_in_sign():
    """Between consecutive scaled Bessel zeros the integrand keeps one sign
    and flips at each zero."""
    edges, (value, _, _, sums, _) = _s_star_panels(10.0, QuadConfig())
    sums = np.real(sums)
    live = sums[np.abs(sums) > 1e-20]
    signs = np.sign(live)
    assert np.all(signs[1:] * signs[:-1] == -1.0)


def test_acceleration_agrees_within_estimate():
    cfg = QuadConfig()
    for lam in (6.0, 12.0):
        out = hankel_s_star(lam, cfg=cfg)
        _, (_, _, _, sums, _) = _s_star_panels(lam, cfg)
        accel = _accelerated_tail(sums, cfg.acceleration_depth)
        assert abs(accel - out.value) <= out.error_estimate


@pytest.mark.parametrize("lam", [1.0, 5.0, 10.0, 20.0])
def test_order_doubling_within_estimate(lam):
    base = hankel_s_star(lam)
    fine = hankel_s_star(lam, cfg=QuadConfig(panel_rule_order=48))
    assert abs(base.value - fine.value) <= base.error_estimate


def test_truncation_extension_within_estimate():
    base = hankel_s_star(3.0)
    wide = hankel_s_star(3.0, cfg=QuadConfig(truncation_x=10.0))
    assert abs(base.value - wide.value) <= base.error_estimate + wide.error_estimate


def test_s_star_domain_and_budget():
    with pytest.raises(DomainError):
        hankel_s_star(-1.0)
    with pytest.raises(DomainError):
        hankel_s_star(math.nan)
    with pytest.raises(WorkLimitError):
        hankel_s_star(10.0, cfg=QuadConfig(max_panels=4))
    with pytest.raises(WorkLimitError):
        hankel_s_star(5000.0)


@pytest.mark.parametrize("t", [0.25, 1.0, 4.0, 25.0])
def test_general_specializes_to_alternating(t):
    gen = hankel_general(SeriesParams(-1.0, 1.0, t))
    star = hankel_s_star(2.0 * math.sqrt(t))
    assert abs(gen.value - star.value) <= gen.error_estimate + star.error_estimate


@pytest.mark.parametrize("key,expected", sorted(ov.S_GENERAL.items(),
                                                key=lambda kv: repr(kv[0])))
def test_general_frozen_values(key, expected):
    z, nu, t = key
    out = hankel_general(SeriesParams(z, nu, t))
    assert abs(out.value - expected) <= max(1e-13, out.error_estimate)


def test_general_agrees_with_direct_sum_off_table():
    p = SeriesParams(0.35 + 0.2j, 3.7, 1.3)
    quad = hankel_general(p)
    direct = sum_series(p)
    assert abs(quad.value - direct.value) <= quad.error_estimate + direct.error_estimate


def test_general_real_input_gives_real_value():
    out = hankel_general(SeriesParams(0.5, 2.0, 0.5))
    assert isinstance(out.value, float)


def test_general_near_one_boundary_is_stable():
    # z close to 1 stresses the 1/(1 - z e^(-x)) factor near x = 0, where
    # naive evaluation loses six digits to cancellation
    quad = hankel_general(SeriesParams(0.999999, 1.0, 0.5))
    assert abs(quad.value - ov.S_NEAR_ONE) <= 1e-12
    assert quad.error_estimate <= 1e-11
    assert abs(quad.value - ov.S_NEAR_ONE) <= quad.error_estimate


def test_general_rejects_nu_below_one():
    with pytest.raises(DomainError):
        hankel_general(SeriesParams(0.5, 0.8, 1.0))


def test_general_unreachable_tolerance_keeps_partial():
    tol = ToleranceSpec(abs_tol=1e-18, rel_tol=1e-18)
    with pytest.raises(WorkLimitError) as exc:
        hankel_general(SeriesParams(0.5, 1.0, 1.0), tol)
    partial = exc.value.partial
    assert partial is not None
    assert abs(partial.value - ov.S_GENERAL[(0.5, 1.0, 1.0)]) <= 1e-12
