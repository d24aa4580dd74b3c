"""Smoke tests for the python bindings against the table-1 configuration."""

import math

import pytest

import femtodl

TABLE1 = {
    "power_macro_dbm": 43,
    "power_femto_dbm": 13,
    "wall_loss_linear": 0.5,
    "alpha": 4,
    "beta": 4,
    "radius_macro_m": 500,
    "radius_indoor_m": 20,
    "num_femtocells": 20,
    "num_cellular_users": 20,
    "num_home_users": 1,
    "shannon_gap_db": 3,
    "num_mod_levels": 8,
    "qos_omega_c": 0.01,
    "qos_omega_h": 0.1,
    "qos_epsilon": 0.01,
}


@pytest.fixture(scope="module")
def params():
    return femtodl.load_params(TABLE1)


def test_derived_constants(params):
    d = femtodl.derive_constants(params)
    assert d.kappa == pytest.approx(2000.0, rel=1e-12)
    assert abs(d.d_th_m - 130.0) < 1.0
    assert d.c_alpha == pytest.approx(math.pi**2 / 2, rel=1e-12)
    assert d.n_f_inner + d.n_f_outer == pytest.approx(20.0, abs=0)


def test_config_validation_rejects_bad_wall_loss():
    bad = dict(TABLE1, wall_loss_linear=2.0)
    with pytest.raises(femtodl.ConfigError):
        femtodl.load_params(bad)


def test_coverage_and_zones(params):
    d = femtodl.derive_constants(params)
    assert femtodl.coverage_radius(params, d.d_th_m) == pytest.approx(20.0, rel=1e-9)
    assert femtodl.classify_zone(params, 300.0, 10.0, True) == femtodl.Zone.Fi
    assert femtodl.classify_zone(params, 300.0, 30.0, False) == femtodl.Zone.Fo
    u = femtodl.user_counts(params, 300.0)
    assert u.u_o > 0.0
    assert u.u_i == 1.0


def test_sir_cdf_monotone(params):
    cdf = femtodl.SirCdf(params, femtodl.Zone.Fo, femtodl.Access.Closed, 300.0)
    values = [cdf(10 ** (g / 10.0)) for g in range(-30, 31, 5)]
    assert all(0.0 <= v <= 1.0 for v in values)
    assert values == sorted(values)
    with pytest.raises(femtodl.ZoneUndefinedError):
        femtodl.SirCdf(params, femtodl.Zone.Fo, femtodl.Access.Closed, 50.0)


def test_backends_agree(params):
    closed = femtodl.SirCdf(
        params, femtodl.Zone.Fi, femtodl.Access.Closed, 300.0, femtodl.Backend.ClosedForm
    )
    quad = femtodl.SirCdf(
        params, femtodl.Zone.Fi, femtodl.Access.Closed, 300.0, femtodl.Backend.Quadrature
    )
    for g in (0.01, 1.0, 100.0):
        assert closed(g) == pytest.approx(quad(g), abs=1e-8)


def test_tier_throughput(params):
    ca = femtodl.tier_throughput_closed(params, 300.0)
    oa = femtodl.tier_throughput_open(params, 300.0)
    assert ca.home_sum > oa.home_sum  # closed access favors home users outside
    assert oa.cellular_sum > ca.cellular_sum
    tca = femtodl.network_throughput(params, 300.0, "closed")
    toa = femtodl.network_throughput(params, 300.0, "open")
    assert tca >= toa


def test_shared_access(params):
    r = femtodl.optimal_eta(params, 450.0)
    assert r.feasible
    assert 0.0 <= r.eta_star <= 1.0
    g = femtodl.grid_search_eta(params, 450.0, 1e-3)
    assert abs(r.eta_star - g.eta_star) <= 1e-3


def test_special_functions():
    assert femtodl.hyp2f1_neg(4.0, 0.0) == 1.0
    assert femtodl.expint_ei(1.0 + 0.0j).real == pytest.approx(1.8951178163559368)
    z = femtodl.expint_ei(2.0 + 3.0j)
    zc = femtodl.expint_ei(2.0 - 3.0j)
    assert z.real == zc.real and z.imag == -zc.imag


def test_monte_carlo_deterministic(params):
    mc = femtodl.McConfig()
    mc.seed = 3
    mc.n_drops = 300
    mc.n_fading = 3
    a = femtodl.empirical_cdf(params, mc, femtodl.Zone.Fi, femtodl.Access.Closed, 300.0)
    b = femtodl.empirical_cdf(params, mc, femtodl.Zone.Fi, femtodl.Access.Closed, 300.0)
    assert a.cdf == b.cdf
    assert a.n_samples == 900
    assert 0.0 < a.throughput_bps_hz <= 8.0
