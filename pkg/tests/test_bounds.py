import math

import numpy as np
import pytest

from conftest import siso
from oracles import six_bounds_mp, six_bounds_zero_mp
from fbmimo import hermitian_core as hc
from fbmimo.bounds import (SixBounds, gap_certificate, inner_bounds, inner_region,
                           outer_bounds, outer_region, power_split, received_private,
                           region_of, ro0_region, sampled_hull, sampled_q,
                           six_bounds, six_bounds_block, six_bounds_zero,
                           zero_q_slack)
from fbmimo.channel import AntennaConfig, LinkGains, random_channel, reciprocal
from fbmimo.hermitian_core import CrossCovariance, sample_cross_covariance
from fbmimo.regions import Rect, contains, ominus, per_constraint_gap

# frozen from tests/oracles.py (mpmath, 50 digits) on the bundled fixture
FIG3_I_ZERO = (
    129.586897247080755203826345683,
    76.9982598533143623086035810825,
    100.738517194628271738073849234,
    105.68066210556209850080085122,
    100.739070224270770378282387261,
    129.587065229098914262984083627,
)
FIG3_OUTER = (106.738517194628271738073849234, 79.9982598533143623086035810825,
              109.739070224270770378282387261)
FIG3_INNER = (91.7385171946282717380738492337, 73.9982598533143623086035810825,
              91.7390702242707703782823872608)

GAINS = (1.0, 1e2, 1e4, 1e8)


def _random(seed, dims=(1, 6), gains=GAINS):
    rng = np.random.default_rng(seed)
    cfg = AntennaConfig(*(int(rng.integers(dims[0], dims[1] + 1)) for _ in range(4)))
    g = LinkGains(*(float(rng.choice(gains)) for _ in range(4)))
    return random_channel(cfg, g, seed)


def test_fig3_golden_values(fig3):
    got = six_bounds_zero(fig3)
    for g, want in zip(got, FIG3_I_ZERO):
        assert abs(g - want) <= 1e-8 * abs(want)
    assert np.allclose(outer_bounds(fig3), FIG3_OUTER, rtol=1e-12)
    assert np.allclose(inner_bounds(fig3), FIG3_INNER, rtol=1e-12)


def test_fig3_matches_live_oracle(fig3):
    want = [float(x) for x in six_bounds_zero_mp(fig3)]
    assert np.allclose(six_bounds_zero(fig3), want, rtol=1e-12, atol=0)


def test_siso_interference_free():
    ch = siso(1, 0, 0, 1)
    assert np.allclose(six_bounds_zero(ch), (1, 1, 1, 1, 2, 2), atol=1e-14)
    assert outer_region(ch).as_tuple() == pytest.approx((2, 2, 4))


def test_siso_all_ones(siso_unit):
    b = six_bounds_zero(siso_unit)
    assert b.i1 == pytest.approx(math.log2(3), abs=1e-14)
    assert b.i3 == pytest.approx(math.log2(3), abs=1e-14)


def test_zero_q_specialization():
    for seed in range(30):
        ch = _random(seed)
        z = CrossCovariance.zero(ch.config.m1, ch.config.m2)
        assert np.allclose(six_bounds(ch, z), six_bounds_zero(ch), rtol=1e-12, atol=1e-9)


def test_block_route_agrees_at_moderate_gain():
    for seed in range(40):
        ch = _random(seed, gains=(1.0, 10.0, 100.0))
        q = sample_cross_covariance(ch.config.m1, ch.config.m2, seed, "interior")
        assert np.allclose(six_bounds(ch, q), six_bounds_block(ch, q), rtol=1e-9, atol=1e-9)


def test_oracle_at_interior_q():
    for seed in range(10):
        ch = _random(100 + seed, dims=(1, 4))
        q = sample_cross_covariance(ch.config.m1, ch.config.m2, seed, "interior")
        want = [float(x) for x in six_bounds_mp(ch, q.q)]
        assert np.allclose(six_bounds(ch, q), want, rtol=1e-10, atol=1e-9)


def test_oracle_at_boundary_q():
    # With unit singular values, I - Q Q^H is known only to about 1e-16 in
    # double precision; gains up to 1e8 amplify that into ~1e-7 bits.
    for seed in range(10):
        ch = _random(200 + seed, dims=(1, 4))
        q = sample_cross_covariance(ch.config.m1, ch.config.m2, seed, "boundary")
        want = [float(x) for x in six_bounds_mp(ch, q.q)]
        assert np.allclose(six_bounds(ch, q), want, rtol=0, atol=1e-6)


def test_q_shape_and_feasibility_checked(fig3):
    with pytest.raises(ValueError):
        six_bounds(fig3, np.zeros((2, 2)))
    with pytest.raises(ValueError):
        six_bounds(fig3, 2 * np.eye(3, 4))


def test_zero_q_slack_inequalities():
    for seed in range(60):
        ch = _random(300 + seed)
        style = ("interior", "boundary")[seed % 2]
        q = sample_cross_covariance(ch.config.m1, ch.config.m2, seed, style)
        iq, iz = six_bounds(ch, q), six_bounds_zero(ch)
        for v, z, d in zip(iq, iz, zero_q_slack(ch)):
            assert v <= z + d + 1e-8


def test_reciprocity_pairings():
    for seed in range(50):
        ch = _random(400 + seed)
        a, b = six_bounds_zero(ch), six_bounds_zero(reciprocal(ch))
        for i, j in ((0, 2), (1, 3), (2, 0), (3, 1), (4, 5), (5, 4)):
            assert abs(a[i] - b[j]) <= 1e-8 * max(1.0, abs(a[i]))
        assert np.allclose(ro0_region(ch).as_tuple(), ro0_region(reciprocal(ch)).as_tuple(),
                           rtol=0, atol=1e-8)


def test_region_of_takes_minima():
    r = region_of(SixBounds(5, 6, 4, 7, 9, 8))
    assert r.as_tuple() == (4, 6, 8)


def test_power_split_no_cross_gain():
    ps = power_split(siso(1, 0, 0, 1))
    assert np.allclose(ps.k1p, 1) and np.allclose(ps.k1u, 0)


def test_power_split_strong_cross_gain():
    ps = power_split(siso(1, 1e8, 1e8, 1))
    assert ps.k1p[0, 0] == pytest.approx(1 / (1 + 1e8))
    assert ps.k1u[0, 0] == pytest.approx(1 - 1 / (1 + 1e8))


def test_power_split_invariants_random():
    for seed in range(50):
        ch = _random(500 + seed, gains=(1e-2, 1.0, 1e4, 1e8))
        ps = power_split(ch)
        assert np.allclose(ps.k1p + ps.k1u, np.eye(ch.config.m1), atol=1e-9)
        rx = received_private(ch.h12, ch.gains.rho12, ps.w1p)
        assert hc.loewner_leq(rx, np.eye(ch.config.n2), hc.PSD_TOL)
        rx = received_private(ch.h21, ch.gains.rho21, ps.w2p)
        assert hc.loewner_leq(rx, np.eye(ch.config.n1), hc.PSD_TOL)


def test_sampled_q_order_and_determinism(fig3):
    qs = sampled_q(fig3, 5, 7)
    assert len(qs) == 6 and not np.any(qs[0].q)
    again = sampled_q(fig3, 5, 7)
    assert all(np.array_equal(a.q, b.q) for a, b in zip(qs, again))


def test_sampled_hull_containments(fig3):
    hull = sampled_hull(fig3, 40, 0)
    assert contains(hull, ro0_region(fig3))
    # hull of R_o(Q) stays inside R_o(0) grown by (N1, N2)
    assert contains(outer_region(fig3), hull, tol=1e-6)


def test_gap_certificate_siso(siso_unit):
    rep = gap_certificate(siso_unit)
    assert rep.passed and all(rep.containments.values())
    assert rep.gap_limit_bits == 3


def test_gap_certificate_fig3(fig3):
    rep = gap_certificate(fig3)
    assert rep.passed
    assert rep.max_gap_bits == pytest.approx(15.0, abs=1e-9)
    d = rep.to_dict()
    assert list(d) == ["channel", "i_zero", "inner", "outer", "reciprocal",
                       "containments", "per_constraint_gap", "max_gap_bits",
                       "gap_limit_bits", "violations", "status"]


def test_gap_certificate_random_channels():
    for seed in range(100):
        ch = _random(600 + seed)
        rep = gap_certificate(ch)
        assert rep.passed, (seed, rep.violations)
        n1, n2 = ch.config.n1, ch.config.n2
        limit = (2 * n1 + n2, n1 + 2 * n2, 2 * (n1 + n2))
        assert all(g <= lim + 1e-8 for g, lim in zip(rep.per_constraint_gap, limit))


def test_blanket_mode_is_smaller(fig3):
    blanket = inner_region(fig3, "blanket")
    assert contains(inner_region(fig3), blanket)
    s = fig3.config.n1 + fig3.config.n2
    assert blanket == ominus(ro0_region(fig3), Rect(s, s))
    assert gap_certificate(fig3, "blanket").containments["inner_in_outer"]
    with pytest.raises(ValueError):
        inner_bounds(fig3, "nope")


def test_zero_gain_inner_collapses_to_origin():
    ch = siso(0, 0, 0, 0)
    assert inner_region(ch).vertices().tolist() == [[0, 0]]
    per_constraint_gap(outer_bounds(ch), inner_bounds(ch))


def test_monotone_in_direct_gain():
    base = _random(700, gains=(1.0,))
    prev = None
    for rho in (1.0, 10.0, 1e3, 1e6):
        g = base.gains
        cur = six_bounds_zero(base.with_gains(LinkGains(rho, g.rho12, g.rho21, rho)))
        if prev is not None:
            assert all(c >= p - 1e-12 for c, p in zip(cur, prev))
        prev = cur
