"""
Seeded Monte Carlo checks of the matrix lemmas and region inequalities.

Each ``check_*`` function runs a number of randomized trials and returns a
:class:`PropertyVerdict`. ``worst_margin`` is the smallest signed slack
observed, in the units of the assertion (bits or eigenvalue scale):
negative means a violation.
"""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass
from typing import Callable, Sequence

import numpy as np

from . import hermitian_core as hc
from .bounds import power_split, received_private, six_bounds, six_bounds_zero, zero_q_slack
from .channel import AntennaConfig, LinkGains, complex_gaussian, random_channel, reciprocal
from .hermitian_core import NumericError

__all__ = [
    "PropertyVerdict",
    "GAINS_GRID",
    "POWER_GAINS_GRID",
    "check_L_monotone",
    "check_block_det",
    "check_det_bound",
    "check_gram_psd",
    "check_diagonal_identity",
    "check_zero_q_slack",
    "check_reciprocity",
    "check_power_split",
    "run_all",
    "verdicts_to_jsonl",
]

GAINS_GRID = (1.0, 1e2, 1e4, 1e8)
POWER_GAINS_GRID = (1e-2, 1.0, 1e2, 1e4, 1e8)
LEMMA_DIMS = (1, 8)
CHANNEL_DIMS = (1, 6)


@dataclass(frozen=True)
class PropertyVerdict:
    property_id: str
    trials: int
    failures: int
    worst_margin: float
    seed: int

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def to_json(self) -> str:
        d = asdict(self)
        d["status"] = "PASS" if self.passed else "FAIL"
        return json.dumps(d)


class _Tally:
    def __init__(self, name: str, seed: int):
        self.name = name
        self.seed = seed
        self.trials = 0
        self.failures = 0
        self.worst = math.inf

    def record(self, margin: float):
        self.trials += 1
        if not margin >= 0:  # NaN counts as a failure
            self.failures += 1
        self.worst = min(self.worst, margin) if not math.isnan(margin) else -math.inf

    def verdict(self) -> PropertyVerdict:
        worst = self.worst if self.trials else 0.0
        return PropertyVerdict(self.name, self.trials, self.failures, float(worst), self.seed)


def _dim(rng, dims: Sequence[int]) -> int:
    lo, hi = dims
    if not 1 <= lo <= hi:
        raise ValueError(f"bad dimension range {dims}")
    return int(rng.integers(lo, hi + 1))


def _gram(rng, n: int, rank: int | None = None) -> np.ndarray:
    b = complex_gaussian(rng, (n, n if rank is None else rank))
    return b @ b.conj().T


def _psd_margin(a: np.ndarray, tol: float) -> float:
    """Slack ``lambda_min + tol * max(1, lambda_max)``; >= 0 iff ``is_psd``."""
    w = np.linalg.eigvalsh(hc.as_hermitian(a))
    return float(w[0] + tol * max(1.0, float(w[-1])))


def check_L_monotone(trials: int = 1000, seed: int = 0,
                     dims: Sequence[int] = LEMMA_DIMS, tol: float = 1e-8) -> PropertyVerdict:
    """``K1 <= K2`` implies ``L(K1, S) <= L(K2, S)``."""
    rng = np.random.default_rng(seed)
    t = _Tally("L_monotone", seed)
    for _ in range(trials):
        m, n = _dim(rng, dims), _dim(rng, dims)
        k1 = _gram(rng, m, _dim(rng, (1, m)))
        k2 = k1 + _gram(rng, m, _dim(rng, (1, m)))
        s = complex_gaussian(rng, (m, n)) * 10.0 ** rng.uniform(-2, 2)
        diff = hc.L_operator(k2, s) - hc.L_operator(k1, s)
        t.record(_psd_margin(diff, tol))
    return t.verdict()


def check_block_det(trials: int = 1000, seed: int = 0,
                    dims: Sequence[int] = LEMMA_DIMS, tol: float = 1e-8) -> PropertyVerdict:
    """``det M = det A det(D - C A^-1 B) = det D det(A - B D^-1 C)``."""
    rng = np.random.default_rng(seed)
    t = _Tally("block_det", seed)
    for _ in range(trials):
        p, q = _dim(rng, dims), _dim(rng, dims)
        a = complex_gaussian(rng, (p, p)) + 2 * math.sqrt(p) * np.eye(p)
        d = complex_gaussian(rng, (q, q)) + 2 * math.sqrt(q) * np.eye(q)
        b = complex_gaussian(rng, (p, q))
        c = complex_gaussian(rng, (q, p))
        direct = np.linalg.slogdet(np.block([[a, b], [c, d]]))[1]
        via_a = (np.linalg.slogdet(a)[1]
                 + np.linalg.slogdet(d - c @ np.linalg.solve(a, b))[1])
        via_d = (np.linalg.slogdet(d)[1]
                 + np.linalg.slogdet(a - b @ np.linalg.solve(d, c))[1])
        scale = max(1.0, abs(direct))
        err = max(abs(via_a - direct), abs(via_d - direct)) / scale
        t.record(tol - err)
    return t.verdict()


def det_bound_value(s: np.ndarray) -> float:
    """``log2 det(I + V - V (I + V)^-1 V)`` with ``V = S^H S``.

    The matrix equals ``2 I - (I + V)^-1``; it is assembled in the right
    singular basis of ``S`` so that ``||S||`` up to ``1e6`` costs nothing
    in accuracy.
    """
    _, sig, vh = np.linalg.svd(s, full_matrices=True)
    lam = np.zeros(vh.shape[0])
    lam[:sig.size] = sig * sig
    mat = (vh.conj().T * (2.0 - 1.0 / (1.0 + lam))) @ vh
    return hc.logdet2(mat)


def check_det_bound(trials: int = 1000, seed: int = 0,
                    dims: Sequence[int] = LEMMA_DIMS, slack: float = 1e-6) -> PropertyVerdict:
    """The displayed determinant never exceeds ``2 ** N``."""
    rng = np.random.default_rng(seed)
    t = _Tally("det_bound", seed)
    for _ in range(trials):
        m, n = _dim(rng, dims), _dim(rng, dims)
        s = complex_gaussian(rng, (m, n))
        s *= 10.0 ** rng.uniform(-3, 6) / max(np.linalg.norm(s, 2), 1e-300)
        t.record(n + slack - det_bound_value(s))
    return t.verdict()


def check_gram_psd(trials: int = 1000, seed: int = 0,
                   dims: Sequence[int] = LEMMA_DIMS, tol: float = hc.PSD_TOL) -> PropertyVerdict:
    """``S (I + S^H S)^-1 S^H`` is PSD."""
    rng = np.random.default_rng(seed)
    t = _Tally("gram_psd", seed)
    for _ in range(trials):
        m, n = _dim(rng, dims), _dim(rng, dims)
        s = complex_gaussian(rng, (m, n)) * 10.0 ** rng.uniform(-3, 3)
        x = s @ np.linalg.solve(np.eye(n) + s.conj().T @ s, s.conj().T)
        t.record(_psd_margin(x, tol))
    return t.verdict()


def check_diagonal_identity(trials: int = 1000, seed: int = 0,
                            dims: Sequence[int] = LEMMA_DIMS, tol: float = 1e-12) -> PropertyVerdict:
    """Diagonal ``Sigma`` (N x M): the weighted Gram matrix has the closed form."""
    rng = np.random.default_rng(seed)
    t = _Tally("diagonal_identity", seed)
    for _ in range(trials):
        n, m = _dim(rng, dims), _dim(rng, dims)
        k = min(m, n)
        sig = complex_gaussian(rng, k) * 10.0 ** rng.uniform(-2, 2)
        big = np.zeros((n, m), dtype=complex)
        big[np.arange(k), np.arange(k)] = sig
        lam = np.abs(sig) ** 2
        mid = np.eye(n, dtype=complex)
        mid[np.arange(k), np.arange(k)] = 1.0 / (1.0 + lam)
        lhs = big.conj().T @ mid @ big
        rhs = np.zeros((m, m), dtype=complex)
        rhs[np.arange(k), np.arange(k)] = 1.0 - 1.0 / (1.0 + lam)
        t.record(tol - float(np.max(np.abs(lhs - rhs))))
    return t.verdict()


def _random_instance(rng, ch_dims, gains_grid):
    cfg = AntennaConfig(*(_dim(rng, ch_dims) for _ in range(4)))
    gains = LinkGains(*(float(rng.choice(gains_grid)) for _ in range(4)))
    return random_channel(cfg, gains, int(rng.integers(0, 2 ** 63)))


def check_zero_q_slack(trials: int = 500, seed: int = 0,
                       ch_dims: Sequence[int] = CHANNEL_DIMS,
                       gains_grid: Sequence[float] = GAINS_GRID,
                       abs_tol: float = 1e-8) -> PropertyVerdict:
    """``I_k(Q) <= I_k(0) + (N1, N2, 0, 0, N2, N1)_k`` for sampled ``Q``."""
    rng = np.random.default_rng(seed)
    t = _Tally("zero_q_slack", seed)
    for k in range(trials):
        ch = _random_instance(rng, ch_dims, gains_grid)
        style = ("interior", "boundary")[k % 2] if k % 10 else "zero"
        q = hc.sample_cross_covariance(ch.config.m1, ch.config.m2,
                                       int(rng.integers(0, 2 ** 63)), style)
        try:
            iq = six_bounds(ch, q)
            iz = six_bounds_zero(ch)
        except NumericError:
            t.record(-math.inf)
            continue
        delta = zero_q_slack(ch)
        t.record(min(z + dk + abs_tol - v for v, z, dk in zip(iq, iz, delta)))
    return t.verdict()


RECIPROCAL_PAIRS = ((0, 2), (1, 3), (2, 0), (3, 1), (4, 5), (5, 4))


def check_reciprocity(trials: int = 500, seed: int = 0,
                      ch_dims: Sequence[int] = CHANNEL_DIMS,
                      gains_grid: Sequence[float] = GAINS_GRID,
                      rel_tol: float = 1e-8) -> PropertyVerdict:
    """``Q = 0`` bounds of the reciprocal channel are a permutation of the originals."""
    rng = np.random.default_rng(seed)
    t = _Tally("reciprocity", seed)
    for _ in range(trials):
        ch = _random_instance(rng, ch_dims, gains_grid)
        a = six_bounds_zero(ch)
        b = six_bounds_zero(reciprocal(ch))
        worst = min(rel_tol - abs(a[i] - b[j]) / max(1.0, abs(a[i]))
                    for i, j in RECIPROCAL_PAIRS)
        t.record(worst)
    return t.verdict()


def check_power_split(trials: int = 1000, seed: int = 0,
                      ch_dims: Sequence[int] = CHANNEL_DIMS,
                      gains_grid: Sequence[float] = POWER_GAINS_GRID,
                      tol: float = hc.PSD_TOL) -> PropertyVerdict:
    """Private/public covariances are PSD, sum to ``I`` and stay below the noise floor."""
    rng = np.random.default_rng(seed)
    t = _Tally("power_split", seed)
    for _ in range(trials):
        ch = _random_instance(rng, ch_dims, gains_grid)
        try:
            ps = power_split(ch, tol)
        except NumericError:
            t.record(-math.inf)
            continue
        margins = [_psd_margin(k, tol) for k in (ps.k1p, ps.k1u, ps.k2p, ps.k2u)]
        for kp, ku in ((ps.k1p, ps.k1u), (ps.k2p, ps.k2u)):
            margins.append(tol - float(np.max(np.abs(kp + ku - np.eye(kp.shape[0])))))
        for h, rho, w in ((ch.h12, ch.gains.rho12, ps.w1p),
                          (ch.h21, ch.gains.rho21, ps.w2p)):
            rx = received_private(h, rho, w)
            margins.append(_psd_margin(np.eye(rx.shape[0]) - rx, tol))
        t.record(min(margins))
    return t.verdict()


CHECKS: tuple[tuple[Callable[..., PropertyVerdict], int], ...] = (
    (check_L_monotone, 1000),
    (check_block_det, 1000),
    (check_det_bound, 1000),
    (check_gram_psd, 1000),
    (check_diagonal_identity, 1000),
    (check_zero_q_slack, 500),
    (check_reciprocity, 500),
    (check_power_split, 1000),
)


def run_all(seed: int = 0, trials: int | None = None) -> list[PropertyVerdict]:
    """Run every check; ``trials`` overrides the per-check default counts."""
    return [fn(trials=default if trials is None else trials, seed=seed)
            for fn, default in CHECKS]


def verdicts_to_jsonl(verdicts: Sequence[PropertyVerdict]) -> str:
    return "".join(v.to_json() + "\n" for v in verdicts)
