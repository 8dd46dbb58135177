import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fbmimo import hermitian_core as hc
from fbmimo.channel import complex_gaussian


def rand(rng, *shape):
    return complex_gaussian(rng, shape)


def test_is_psd_basic():
    rng = np.random.default_rng(1)
    assert hc.is_psd(np.eye(4))
    assert not hc.is_psd(np.diag([1.0, -1e-3]), 1e-9)
    b = rand(rng, 5, 3)
    assert hc.is_psd(b @ b.conj().T)


def test_is_psd_relative_tolerance():
    assert hc.is_psd(np.diag([1e6, -1e-4]), 1e-9)
    assert not hc.is_psd(np.diag([1e6, -1e-2]), 1e-9)


def test_non_hermitian_rejected():
    with pytest.raises(ValueError):
        hc.is_psd(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_logdet2_examples():
    assert hc.logdet2(np.eye(3)) == 0.0
    assert hc.logdet2(np.diag([2.0, 2.0])) == pytest.approx(2.0, abs=1e-15)


def test_logdet2_against_eigen_oracle():
    rng = np.random.default_rng(2024)
    b = rand(rng, 3, 3)
    a = np.eye(3) + b @ b.conj().T
    oracle = float(np.sum(np.log2(np.linalg.eigvalsh(a))))
    assert hc.logdet2(a) == pytest.approx(oracle, rel=1e-10)


def test_logdet2_rejects_non_pd():
    with pytest.raises(hc.DomainError):
        hc.logdet2(np.diag([1.0, 0.0]))
    with pytest.raises(hc.DomainError):
        hc.logdet2(np.diag([1.0, -2.0]))


def test_logdet2_block_diag_additive():
    rng = np.random.default_rng(3)
    for _ in range(20):
        p, q = rng.integers(1, 6, 2)
        x, y = rand(rng, p, p), rand(rng, q, q)
        a = np.eye(p) + x @ x.conj().T
        b = np.eye(q) + y @ y.conj().T
        blk = np.block([[a, np.zeros((p, q))], [np.zeros((q, p)), b]])
        assert hc.logdet2(blk) == pytest.approx(hc.logdet2(a) + hc.logdet2(b), rel=1e-10)


def test_logdet2_gram_matches_logdet2():
    rng = np.random.default_rng(4)
    g = rand(rng, 4, 6) * 30
    assert hc.logdet2_gram(g) == pytest.approx(hc.logdet2(np.eye(4) + g @ g.conj().T), rel=1e-12)
    assert hc.logdet2_gram(np.zeros((0, 3))) == 0.0


def test_loewner_leq():
    rng = np.random.default_rng(5)
    b = rand(rng, 3, 3)
    g = b @ b.conj().T
    assert hc.loewner_leq(g, g)
    assert hc.loewner_leq(np.zeros((3, 3)), g)
    a, c = np.diag([2.0, 0.0]), np.diag([1.0, 1.0])
    assert not hc.loewner_leq(a, c) and not hc.loewner_leq(c, a)
    with pytest.raises(ValueError):
        hc.loewner_leq(np.eye(2), np.eye(3))


def test_block_inverse_apply_examples():
    v = np.array([1.0, 2.0, 3.0])
    x = hc.block_inverse_apply(np.eye(2), np.zeros((2, 1)), np.zeros((1, 2)), np.eye(1), v)
    assert np.allclose(x, v)
    x = hc.block_inverse_apply([[2]], [[0]], [[0]], [[4]], [1, 1])
    assert np.allclose(x, [0.5, 0.25])


def test_block_inverse_apply_residual():
    rng = np.random.default_rng(6)
    a = rand(rng, 5, 5) + 4 * np.eye(5)
    d = rand(rng, 4, 4) + 4 * np.eye(4)
    b, c = rand(rng, 5, 4), rand(rng, 4, 5)
    rhs = rand(rng, 9, 3)
    x = hc.block_inverse_apply(a, b, c, d, rhs)
    m = np.block([[a, b], [c, d]])
    assert np.linalg.norm(m @ x - rhs) <= 1e-10 * np.linalg.norm(rhs)


def test_block_inverse_apply_ridge_and_failure():
    # condition 1e13 is rescued by the ridge; a singular indefinite matrix
    # with zero trace gets no ridge and is reported
    a = np.diag([1.0, 1e-13])
    x = hc.block_inverse_apply(a, np.zeros((2, 1)), np.zeros((1, 2)), np.eye(1), [1.0, 0.0, 1.0])
    assert np.allclose(x, [1.0, 0.0, 1.0], atol=1e-9)
    with pytest.raises(hc.IllConditionedError) as exc:
        hc.block_inverse_apply(np.diag([1.0, -1.0]), np.zeros((2, 1)), np.zeros((1, 2)),
                               [[0.0]], [1, 1, 1])
    assert exc.value.condition > hc.COND_THRESHOLD or not np.isfinite(exc.value.condition)
    with pytest.raises(ValueError):
        hc.block_inverse_apply(np.eye(2), np.zeros((1, 1)), np.zeros((1, 2)), np.eye(1), [1, 1, 1])


def test_sample_cross_covariance_styles():
    assert np.array_equal(hc.sample_cross_covariance(3, 2, 0, "zero").q, np.zeros((3, 2)))
    q = hc.sample_cross_covariance(1, 1, 9, "boundary").q
    assert abs(abs(q[0, 0]) - 1) < 1e-15
    qb = hc.sample_cross_covariance(5, 4, 9, "boundary").q
    assert np.allclose(np.linalg.svd(qb, compute_uv=False), 1.0)
    with pytest.raises(ValueError):
        hc.sample_cross_covariance(2, 2, 0, "other")


def test_interior_samples_feasible():
    for seed in range(1000):
        q = hc.sample_cross_covariance(5, 4, seed, "interior").q
        assert np.linalg.svd(q, compute_uv=False)[0] <= 1 + 1e-12


def test_cross_covariance_rejects_infeasible():
    with pytest.raises(ValueError):
        hc.CrossCovariance(np.array([[1.5]]))


def test_L_operator_examples():
    rng = np.random.default_rng(7)
    s = rand(rng, 4, 3)
    assert np.allclose(hc.L_operator(np.zeros((4, 4)), s), 0)
    woodbury = np.eye(4) - s @ np.linalg.solve(np.eye(3) + s.conj().T @ s, s.conj().T)
    assert np.allclose(hc.L_operator(np.eye(4), s), woodbury, atol=1e-12)


def test_L_operator_factored_agrees():
    rng = np.random.default_rng(8)
    for _ in range(50):
        m, n = rng.integers(1, 7, 2)
        kh = rand(rng, m, int(rng.integers(1, m + 1)))
        s = rand(rng, m, n) * 10 ** rng.uniform(-1, 1)
        lit = hc.L_operator(kh @ kh.conj().T, s)
        fac = hc.l_operator_factored(kh, s)
        assert np.allclose(lit, fac, atol=1e-9 * max(1, np.abs(lit).max()))


def test_L_monotone_sampled():
    rng = np.random.default_rng(9)
    for _ in range(1000):
        m, n = rng.integers(1, 7, 2)
        b1, b2 = rand(rng, m, m), rand(rng, m, 2)
        k1 = b1 @ b1.conj().T
        k2 = k1 + b2 @ b2.conj().T
        s = rand(rng, m, n)
        assert hc.loewner_leq(hc.L_operator(k1, s), hc.L_operator(k2, s), 1e-8)


def test_psd_sqrt():
    rng = np.random.default_rng(10)
    b = rand(rng, 4, 2)
    k = b @ b.conj().T
    r = hc.psd_sqrt(k)
    assert np.allclose(r @ r, k, atol=1e-12)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.integers(0, 2 ** 32))
def test_block_det_identity(p, q, seed):
    rng = np.random.default_rng(seed)
    a = rand(rng, p, p) + 3 * np.eye(p)
    d = rand(rng, q, q)
    b, c = rand(rng, p, q), rand(rng, q, p)
    m = np.block([[a, b], [c, d]])
    lhs = np.linalg.slogdet(m)[1]
    rhs = np.linalg.slogdet(a)[1] + np.linalg.slogdet(d - c @ np.linalg.solve(a, b))[1]
    assert abs(lhs - rhs) <= 1e-8 * max(1, abs(lhs))
