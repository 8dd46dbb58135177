import numpy as np
import pytest
from hypothesis import given, strategies as st

from fbmimo.channel import AntennaConfig, ScalingExponents
from fbmimo.gdof import (curve_breakpoints, curve_grid, empirical_slope, f_level,
                         gdof_region, symmetric_gdof_nf, symmetric_gdof_pf,
                         symmetric_point)

SHAPES = ((1, 1), (2, 1), (3, 2), (4, 2), (5, 3))
dim = st.integers(0, 6)
expo = st.floats(0, 3, allow_nan=False)


def sym_region(m, n, alpha):
    return gdof_region(AntennaConfig(m, n, m, n), ScalingExponents(1, alpha, alpha, 1))


def test_f_level_examples():
    assert f_level(1, 1, 1, 0.5, 1) == 1
    assert f_level(2, 1, 1, 0.5, 2) == 1.5
    assert f_level(3, 1, 2, 0.5, 2) == 2.5
    assert f_level(0, 1, 2, 3, 4) == 0


@given(dim, expo, dim, expo, dim)
def test_f_level_symmetric_and_monotone(u, a1, u1, a2, u2):
    assert f_level(u, a1, u1, a2, u2) == pytest.approx(f_level(u, a2, u2, a1, u1))
    assert f_level(u + 1, a1, u1, a2, u2) >= f_level(u, a1, u1, a2, u2)


@given(dim, expo, dim, dim)
def test_f_level_tie_branches_agree(u, a, u1, u2):
    # at a tie both orderings give a * min(u, u1 + u2)
    assert f_level(u, a, u1, a, u2) == pytest.approx(a * min(u, u1 + u2))


def test_f_level_rejects_negative_dims():
    with pytest.raises(ValueError):
        f_level(-1, 1, 1, 1, 1)


def test_region_no_interference():
    r = gdof_region(AntennaConfig(1, 1, 1, 1), ScalingExponents(1, 0, 0, 1))
    assert r.vertices().tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]
    assert symmetric_point(r) == 1


def test_region_siso_full_interference():
    r = sym_region(1, 1, 1.0)
    assert min(r.rhs()[4], r.rhs()[5]) == 1
    assert symmetric_point(r) == 0.5
    assert r.contains(0.5, 0.5) and not r.contains(0.6, 0.5)


def test_zero_direct_exponent_rejected():
    with pytest.raises(ValueError):
        gdof_region(AntennaConfig(1, 1, 1, 1), ScalingExponents(0, 1, 1, 1))


def test_reciprocal_region_is_permutation():
    rng = np.random.default_rng(0)
    for _ in range(20):
        m1, n1, m2, n2 = (int(x) for x in rng.integers(1, 6, 4))
        a11, a12, a21, a22 = rng.uniform(0.1, 3, 4)
        r = gdof_region(AntennaConfig(m1, n1, m2, n2),
                        ScalingExponents(a11, a12, a21, a22)).constraints
        rr = gdof_region(AntennaConfig(n1, m1, n2, m2),
                         ScalingExponents(a11, a21, a12, a22)).constraints
        assert np.allclose([rr[j] for j in (2, 3, 0, 1, 5, 4)], r, rtol=1e-12)


def test_pf_examples():
    assert symmetric_gdof_pf(3, 2, 0) == 2
    assert symmetric_gdof_pf(1, 1, 0.5) == 0.75
    assert symmetric_gdof_pf(2, 1, 2) == 1.5
    # continuity at alpha = 1
    assert symmetric_gdof_pf(5, 3, 1 - 1e-12) == pytest.approx(symmetric_gdof_pf(5, 3, 1))


def test_nf_examples():
    assert symmetric_gdof_nf(1, 1, 0.5) == 0.5
    assert symmetric_gdof_nf(1, 1, 2 / 3) == pytest.approx(2 / 3)
    left = symmetric_gdof_nf(1, 1, 2 / 3 - 1e-12)
    assert left == pytest.approx(symmetric_gdof_nf(1, 1, 2 / 3), abs=1e-11)
    assert symmetric_gdof_nf(1, 1, 0.5 + 1e-12) == pytest.approx(0.5, abs=1e-11)


def test_swapped_shape_matches():
    for al in np.linspace(0, 3, 31):
        assert symmetric_gdof_pf(2, 3, al) == symmetric_gdof_pf(3, 2, al)
        assert symmetric_gdof_nf(1, 2, al) == symmetric_gdof_nf(2, 1, al)


@pytest.mark.parametrize("m,n", SHAPES + ((2, 3), (1, 2)))
def test_symmetric_point_equals_closed_form(m, n):
    for al in curve_grid(m, n, 3.0, 0.1):
        got = symmetric_point(sym_region(m, n, al))
        assert abs(got - symmetric_gdof_pf(m, n, al)) <= 1e-12, al


@pytest.mark.parametrize("m,n", SHAPES)
def test_pf_dominates_nf(m, n):
    big, small = max(m, n), min(m, n)
    for al in curve_grid(m, n, 3.0, 0.1):
        pf, nf = symmetric_gdof_pf(m, n, al), symmetric_gdof_nf(m, n, al)
        assert pf >= nf - 1e-15
        if 2 / 3 <= al <= 1:
            assert pf == nf
        if (0 < al < 2 / 3 and big / 2 < small) or al > 3 - big / small:
            assert pf > nf


def test_saturation_for_few_receive_antennas():
    for n in (1, 2):
        for m in range(2 * n, 7):
            for al in np.linspace(0, 3, 31):
                assert symmetric_gdof_pf(m, n, al) == symmetric_gdof_pf(m + 1, n, al)


def test_negative_alpha_rejected():
    with pytest.raises(ValueError):
        symmetric_gdof_pf(1, 1, -0.1)
    with pytest.raises(ValueError):
        symmetric_gdof_nf(1, 1, -0.1)


def test_breakpoints_and_grid():
    assert curve_breakpoints(3, 2) == [0.5, 2 / 3, 1.0, 1.5, 2.0]
    g = curve_grid(1, 1, 1.0, 0.5)
    assert g == [0.0, 0.5, 2 / 3, 1.0]
    with pytest.raises(ValueError):
        curve_grid(1, 1, 1.0, 0)


def test_slope_single_link():
    sl = empirical_slope(AntennaConfig(2, 2, 1, 1), (1, 0, 0, 0.5), 0)
    assert sl.i1 == pytest.approx(2, abs=0.05)


def test_slope_siso_sum():
    sl = empirical_slope(AntennaConfig(1, 1, 1, 1), ScalingExponents(1, 1, 1, 1), 3)
    assert min(sl.i5, sl.i6) == pytest.approx(1, abs=0.05)


def test_slope_all_zero_exponents():
    sl = empirical_slope(AntennaConfig(2, 3, 3, 2), (0, 0, 0, 0), 5)
    assert max(abs(x) for x in sl) < 1e-3


def test_slope_deterministic_and_validated():
    cfg = AntennaConfig(2, 1, 2, 1)
    a = ScalingExponents(1, 0.5, 0.5, 1)
    assert empirical_slope(cfg, a, 9) == empirical_slope(cfg, a, 9)
    with pytest.raises(ValueError):
        empirical_slope(cfg, a, 0, snr_lo=2.0 ** 5)
    with pytest.raises(ValueError):
        empirical_slope(cfg, (1, -1, 0, 1), 0)
