"""
Outer and inner capacity-region bounds for a concrete channel.

The six outer-bound constraints are indexed ``i1 .. i6``: ``i1`` and ``i3``
bound ``R1``, ``i2`` and ``i4`` bound ``R2``, ``i5`` and ``i6`` bound
``R1 + R2``.

Evaluation strategy
-------------------
Every constraint is a log-determinant of ``I + G G^H`` for some matrix
``G``, and is evaluated from the singular values of ``G``. The
cross-covariance enters through square-root factors of
``[[I, Q], [Q^H, I]]``, ``I - Q Q^H`` and ``I - Q^H Q``, and the
Schur-complement terms through the factored form of ``L(K, S)``. This
avoids the large cancellations of the literal block expressions at gains
around ``1e8``. The literal block-matrix assembly is kept as
:func:`six_bounds_block` for cross-checking.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from . import hermitian_core as hc
from .channel import ChannelInstance, channel_to_dict, reciprocal, require_valid
from .hermitian_core import CrossCovariance, NumericError
from .regions import (RegionError, Rect, TriBoundRegion, ConvexRegion2D, first_violation,
                      hull_union, oplus, ominus, per_constraint_gap,
                      scalar_gap, tighten)

__all__ = [
    "SixBounds",
    "RegionBounds",
    "PowerSplit",
    "GapReport",
    "zero_q_slack",
    "six_bounds",
    "six_bounds_zero",
    "six_bounds_block",
    "region_of",
    "ro0_region",
    "outer_bounds",
    "inner_bounds",
    "outer_region",
    "inner_region",
    "power_split",
    "received_private",
    "sampled_q",
    "sampled_hull",
    "gap_certificate",
]


class SixBounds(NamedTuple):
    """The six constraint values in bits."""

    i1: float
    i2: float
    i3: float
    i4: float
    i5: float
    i6: float


class RegionBounds(NamedTuple):
    """Raw ``(b1, b2, b12)`` triple before redundant-bound removal."""

    b1: float
    b2: float
    b12: float

    def region(self) -> TriBoundRegion:
        return tighten(*self)


def zero_q_slack(ch: ChannelInstance) -> tuple[int, ...]:
    """Per-index slack ``(N1, N2, 0, 0, N2, N1)`` between ``I_k(Q)`` and ``I_k(0)``."""
    n1, n2 = ch.config.n1, ch.config.n2
    return (n1, n2, 0, 0, n2, n1)


# ---------------------------------------------------------------------------
# factored evaluation
# ---------------------------------------------------------------------------

def _sqrt_complements(q: np.ndarray):
    """Square roots of ``I - Q Q^H`` (M1 x M1) and ``I - Q^H Q`` (M2 x M2)."""
    u, s, vh = np.linalg.svd(q, full_matrices=True)
    m1, m2 = q.shape
    s = np.clip(s, 0.0, 1.0)
    c = np.sqrt(np.clip(1.0 - s * s, 0.0, None))
    d1 = np.ones(m1)
    d1[:s.size] = c
    d2 = np.ones(m2)
    d2[:s.size] = c
    r_left = (u * d1) @ u.conj().T
    v = vh.conj().T
    r_right = (v * d2) @ vh
    return r_left, r_right


def _l_factor(k_half: np.ndarray, s: np.ndarray) -> np.ndarray:
    """``W`` with ``W W^H = L(K_h K_h^H, S)``."""
    a = s.conj().T @ k_half
    _, sig, vh = np.linalg.svd(a, full_matrices=True)
    full = np.zeros(vh.shape[0])
    full[:sig.size] = sig
    return k_half @ vh.conj().T / np.sqrt(1.0 + full * full)


def _ld(g: np.ndarray, index: int) -> float:
    try:
        val = hc.logdet2_gram(g)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"constraint i{index}: SVD failed") from exc
    if not np.isfinite(val):
        raise NumericError(f"constraint i{index}: non-finite value")
    return val


def _check_q(ch: ChannelInstance, q) -> np.ndarray:
    if isinstance(q, CrossCovariance):
        q = q.q
    else:
        q = CrossCovariance(q).q
    want = (ch.config.m1, ch.config.m2)
    if q.shape != want:
        raise ValueError(f"Q must be {want[0]}x{want[1]}, got {q.shape}")
    return q


def six_bounds(ch: ChannelInstance, q) -> SixBounds:
    """Evaluate the six constraints at cross-covariance ``q``."""
    require_valid(ch)
    q = _check_q(ch, q)
    r11, r12, r21, r22 = (np.sqrt(x) for x in ch.gains.as_tuple())
    h11, h12, h21, h22 = ch.h11, ch.h12, ch.h21, ch.h22
    rl, rr = _sqrt_complements(q)
    qh = q.conj().T

    # [[I, Q], [Q^H, I]] = F F^H with F = [[I, 0], [Q^H, R]]
    g1 = np.hstack([r11 * h11 + r21 * h21 @ qh, r21 * h21 @ rr])
    g2 = np.hstack([r12 * h12 + r22 * h22 @ qh, r22 * h22 @ rr])
    i1 = _ld(g1, 1)
    i2 = _ld(g2, 2)

    # user 1 conditioned on X2 and on its own interference at receiver 2
    a3 = _ld(r12 * h12 @ rl, 3)
    b3 = _ld(r11 * h11 @ _l_factor(rl, r12 * h12.conj().T), 3)
    a4 = _ld(r21 * h21 @ rr, 4)
    b4 = _ld(r22 * h22 @ _l_factor(rr, r21 * h21.conj().T), 4)
    return SixBounds(i1, i2, a3 + b3, a4 + b4, i2 + b3, i1 + b4)


def six_bounds_zero(ch: ChannelInstance) -> SixBounds:
    """The six constraints at ``Q = 0``.

    Uses the push-through form
    ``I + rho11 H11 (I + rho12 H12^H H12)^{-1} H11^H`` of the
    Schur-complement terms.
    """
    require_valid(ch)
    r11, r12, r21, r22 = (np.sqrt(x) for x in ch.gains.as_tuple())
    h11, h12, h21, h22 = ch.h11, ch.h12, ch.h21, ch.h22
    i1 = _ld(np.hstack([r11 * h11, r21 * h21]), 1)
    i2 = _ld(np.hstack([r12 * h12, r22 * h22]), 2)
    m1, m2 = ch.config.m1, ch.config.m2
    b3 = _ld(r11 * h11 @ _l_factor(np.eye(m1), r12 * h12.conj().T), 3)
    b4 = _ld(r22 * h22 @ _l_factor(np.eye(m2), r21 * h21.conj().T), 4)
    i3 = _ld(r12 * h12, 3) + b3
    i4 = _ld(r21 * h21, 4) + b4
    return SixBounds(i1, i2, i3, i4, i2 + b3, i1 + b4)


# ---------------------------------------------------------------------------
# literal block-matrix evaluation
# ---------------------------------------------------------------------------

def _logdet_checked(a: np.ndarray, index: int) -> float:
    try:
        return hc.logdet2(a)
    except hc.DomainError as exc:
        raise hc.DomainError(f"constraint i{index}: {exc}") from exc


def _schur_block(hd, hc_, q, rd, rc, index):
    """``I + rd H_d H_d^H - B M^{-1} B^H`` assembled literally.

    ``hd`` is the direct matrix at the receiver of interest, ``hc_`` the
    cross matrix of the same transmitter, and ``q`` the covariance between
    that transmitter and the other one.
    """
    n_c = hc_.shape[0]
    m_o = q.shape[1]
    a = np.eye(n_c) + rc * hc_ @ hc_.conj().T
    b = np.sqrt(rc) * hc_ @ q
    c = b.conj().T
    d = np.eye(m_o)
    row = np.hstack([np.sqrt(rd * rc) * hd @ hc_.conj().T, np.sqrt(rd) * hd @ q])
    try:
        x = hc.block_inverse_apply(a, b, c, d, row.conj().T)
    except hc.IllConditionedError as exc:
        raise hc.IllConditionedError(f"constraint i{index}: block system",
                                     exc.condition) from exc
    m = np.eye(hd.shape[0]) + rd * hd @ hd.conj().T - row @ x
    return _logdet_checked(m, index)


def six_bounds_block(ch: ChannelInstance, q) -> SixBounds:
    """Same six values from the literal block expressions.

    Only reliable when the block systems are well conditioned (moderate
    gains, ``Q`` away from the unit-singular-value boundary).
    """
    require_valid(ch)
    q = _check_q(ch, q)
    p11, p12, p21, p22 = ch.gains.as_tuple()
    h11, h12, h21, h22 = ch.h11, ch.h12, ch.h21, ch.h22
    qh = q.conj().T
    n1, n2 = ch.config.n1, ch.config.n2

    x1 = np.sqrt(p11 * p21) * h11 @ q @ h21.conj().T
    i1 = _logdet_checked(np.eye(n1) + p11 * h11 @ h11.conj().T
                         + p21 * h21 @ h21.conj().T + x1 + x1.conj().T, 1)
    x2 = np.sqrt(p22 * p12) * h22 @ qh @ h12.conj().T
    i2 = _logdet_checked(np.eye(n2) + p22 * h22 @ h22.conj().T
                         + p12 * h12 @ h12.conj().T + x2 + x2.conj().T, 2)
    a3 = _logdet_checked(np.eye(n2) + p12 * h12 @ h12.conj().T
                         - p12 * h12 @ q @ qh @ h12.conj().T, 3)
    a4 = _logdet_checked(np.eye(n1) + p21 * h21 @ h21.conj().T
                         - p21 * h21 @ qh @ q @ h21.conj().T, 4)
    b3 = _schur_block(h11, h12, q, p11, p12, 3)
    b4 = _schur_block(h22, h21, qh, p22, p21, 4)
    return SixBounds(i1, i2, a3 + b3, a4 + b4, i2 + b3, i1 + b4)


# ---------------------------------------------------------------------------
# regions
# ---------------------------------------------------------------------------

def region_of(b: SixBounds) -> TriBoundRegion:
    """Tri-bound region of one ``R_o(Q)``."""
    return tighten(min(b.i1, b.i3), min(b.i2, b.i4), min(b.i5, b.i6))


def ro0_region(ch: ChannelInstance) -> TriBoundRegion:
    return region_of(six_bounds_zero(ch))


def outer_bounds(ch: ChannelInstance, i_zero: SixBounds | None = None) -> RegionBounds:
    """Untightened outer triple: ``R_o(0)`` bounds plus ``(N1, N2, N1 + N2)``."""
    b = six_bounds_zero(ch) if i_zero is None else i_zero
    n1, n2 = ch.config.n1, ch.config.n2
    return RegionBounds(min(b.i1, b.i3) + n1, min(b.i2, b.i4) + n2,
                        min(b.i5, b.i6) + n1 + n2)


def inner_bounds(ch: ChannelInstance, mode: str = "per-constraint",
                 i_zero: SixBounds | None = None) -> RegionBounds:
    """Untightened inner triple, each bound clamped at zero.

    ``"per-constraint"`` removes ``N1`` from ``i1``, ``N2`` from ``i2`` and
    ``N1 + N2`` from ``i3 .. i6``. ``"blanket"`` shrinks by the square
    ``[0, N1 + N2]^2``, costing ``N1 + N2`` on each single-rate bound and
    twice that on the sum.
    """
    b = six_bounds_zero(ch) if i_zero is None else i_zero
    n1, n2 = ch.config.n1, ch.config.n2
    s = n1 + n2

    def pos(x):
        return max(x, 0.0)

    if mode == "per-constraint":
        return RegionBounds(min(pos(b.i1 - n1), pos(b.i3 - s)),
                            min(pos(b.i2 - n2), pos(b.i4 - s)),
                            min(pos(b.i5 - s), pos(b.i6 - s)))
    if mode == "blanket":
        return RegionBounds(*ominus(region_of(b), Rect(s, s)).as_tuple())
    raise ValueError(f"unknown inner-bound mode {mode!r}")


def outer_region(ch: ChannelInstance) -> TriBoundRegion:
    """``R_o(0)`` grown by ``[0, N1] x [0, N2]``."""
    return oplus(ro0_region(ch), Rect(ch.config.n1, ch.config.n2))


def inner_region(ch: ChannelInstance, mode: str = "per-constraint") -> TriBoundRegion:
    """Achievable region derived from ``R_o(0)``; see :func:`inner_bounds`."""
    return inner_bounds(ch, mode).region()


# ---------------------------------------------------------------------------
# power split
# ---------------------------------------------------------------------------

def _private_factor(h: np.ndarray, rho: float) -> np.ndarray:
    """``W`` with ``W W^H = I - rho H^H (I + rho H H^H)^{-1} H``.

    The right-hand side equals ``(I + rho H^H H)^{-1}``; with
    ``H = U S V^H`` this is ``V diag(1 / (1 + rho s^2)) V^H``.
    """
    _, sig, vh = np.linalg.svd(h, full_matrices=True)
    lam = np.zeros(vh.shape[0])
    lam[:sig.size] = sig * sig
    return vh.conj().T / np.sqrt(1.0 + rho * lam)


def received_private(h: np.ndarray, rho: float, w: np.ndarray) -> np.ndarray:
    """``rho H K H^H`` for ``K = W W^H``, as a Gram matrix.

    Forming ``H K H^H`` directly at gains near ``1e8`` leaks roundoff from
    the null space of ``H`` at the ``1e-8`` level; the Gram form does not.
    """
    g = np.sqrt(rho) * h @ w
    return g @ g.conj().T


@dataclass(frozen=True, eq=False)
class PowerSplit:
    """Private/public covariance pairs of both transmitters.

    ``w1p`` and ``w2p`` are square-root factors of the private parts.
    """

    k1p: np.ndarray
    k1u: np.ndarray
    k2p: np.ndarray
    k2u: np.ndarray
    w1p: np.ndarray
    w2p: np.ndarray


def power_split(ch: ChannelInstance, tol: float = hc.PSD_TOL) -> PowerSplit:
    """Private-signal covariances kept below the noise floor at the other receiver."""
    require_valid(ch)
    w1 = _private_factor(ch.h12, ch.gains.rho12)
    w2 = _private_factor(ch.h21, ch.gains.rho21)
    k1p = w1 @ w1.conj().T
    k2p = w2 @ w2.conj().T
    k1u = np.eye(ch.config.m1) - k1p
    k2u = np.eye(ch.config.m2) - k2p
    for name, k in (("k1p", k1p), ("k1u", k1u), ("k2p", k2p), ("k2u", k2u)):
        if not hc.is_psd(k, tol):
            raise NumericError(f"power split: {name} is not PSD")
    for name, h, rho, w in (("user 1", ch.h12, ch.gains.rho12, w1),
                            ("user 2", ch.h21, ch.gains.rho21, w2)):
        rx = received_private(h, rho, w)
        if not hc.loewner_leq(rx, np.eye(rx.shape[0]), tol):
            raise NumericError(f"power split: {name} private signal above noise floor")
    return PowerSplit(k1p, k1u, k2p, k2u, w1, w2)


# ---------------------------------------------------------------------------
# sampled hull
# ---------------------------------------------------------------------------

def sampled_q(ch: ChannelInstance, n_samples: int, seed: int) -> list[CrossCovariance]:
    """``Q = 0`` followed by ``n_samples`` draws alternating interior and boundary."""
    m1, m2 = ch.config.m1, ch.config.m2
    seeds = np.random.SeedSequence(seed).generate_state(max(n_samples, 1), np.uint64)
    out = [CrossCovariance.zero(m1, m2)]
    for k in range(n_samples):
        style = "interior" if k % 2 == 0 else "boundary"
        out.append(hc.sample_cross_covariance(m1, m2, int(seeds[k]), style))
    return out


def sampled_hull(ch: ChannelInstance, n_samples: int = 200,
                 seed: int = 0) -> ConvexRegion2D:
    """Convex hull of ``R_o(Q)`` over sampled ``Q`` (``Q = 0`` always included)."""
    if n_samples < 0:
        raise ValueError("n_samples must be >= 0")
    return hull_union(region_of(six_bounds(ch, q))
                      for q in sampled_q(ch, n_samples, seed))


# ---------------------------------------------------------------------------
# gap certificate
# ---------------------------------------------------------------------------

def _bounds_dict(r) -> dict:
    return {"b1": float(r.b1), "b2": float(r.b2), "b12": float(r.b12)}


@dataclass
class GapReport:
    """Containment and gap figures for a channel and its reciprocal."""

    channel: dict
    i_zero: SixBounds
    inner: TriBoundRegion
    outer: TriBoundRegion
    reciprocal_i_zero: SixBounds
    reciprocal_inner: TriBoundRegion
    reciprocal_outer: TriBoundRegion
    containments: dict
    per_constraint_gap: tuple
    max_gap_bits: float
    gap_limit_bits: float
    violations: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        ok = all(self.containments.values()) and self.max_gap_bits <= self.gap_limit_bits + 1e-9
        return "PASS" if ok else "FAILED"

    @property
    def passed(self) -> bool:
        return self.status == "PASS"

    def to_dict(self) -> dict:
        return {
            "channel": self.channel,
            "i_zero": [float(x) for x in self.i_zero],
            "inner": _bounds_dict(self.inner),
            "outer": _bounds_dict(self.outer),
            "reciprocal": {
                "i_zero": [float(x) for x in self.reciprocal_i_zero],
                "inner": _bounds_dict(self.reciprocal_inner),
                "outer": _bounds_dict(self.reciprocal_outer),
            },
            "containments": dict(self.containments),
            "per_constraint_gap": [float(x) for x in self.per_constraint_gap],
            "max_gap_bits": float(self.max_gap_bits),
            "gap_limit_bits": float(self.gap_limit_bits),
            "violations": {k: list(v) for k, v in self.violations.items()},
            "status": self.status,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def gap_certificate(ch: ChannelInstance, mode: str = "per-constraint",
                    tol: float = 1e-9) -> GapReport:
    """Check the constant-gap and reciprocity containments for ``ch``."""
    require_valid(ch)
    rec = reciprocal(ch)
    cfg = ch.config
    iz = six_bounds_zero(ch)
    iz_r = six_bounds_zero(rec)
    inner_raw = inner_bounds(ch, mode, iz)
    outer_raw = outer_bounds(ch, iz)
    inner = inner_raw.region()
    outer = outer_raw.region()
    inner_r = inner_bounds(rec, mode, iz_r).region()
    outer_r = outer_bounds(rec, iz_r).region()

    rect_n = Rect(cfg.n1 + cfg.n2 + cfg.m1, cfg.n1 + cfg.n2 + cfg.m2)
    rect_m = Rect(cfg.m1 + cfg.m2 + cfg.n1, cfg.m1 + cfg.m2 + cfg.n2)
    checks = {
        "inner_in_outer": (outer, inner),
        "reciprocal_inner_in_outer": (outer_r, inner_r),
        "reciprocal_shrunk_in_inner": (inner, ominus(outer_r, rect_n)),
        "outer_in_reciprocal_grown": (oplus(inner_r, rect_m), outer),
        "shrunk_in_reciprocal_inner": (inner_r, ominus(outer, rect_m)),
        "reciprocal_outer_in_grown": (oplus(inner, rect_n), outer_r),
    }
    containments = {}
    violations = {}
    for name, (big, small) in checks.items():
        bad = first_violation(big, small, tol)
        containments[name] = bad is None
        if bad is not None:
            violations[name] = bad

    try:
        gaps = tuple(per_constraint_gap(outer_raw, inner_raw, tol))
    except RegionError:
        gaps = (outer_raw.b1 - inner_raw.b1, outer_raw.b2 - inner_raw.b2,
                outer_raw.b12 - inner_raw.b12)
        containments["raw_bounds_ordered"] = False
    return GapReport(
        channel=channel_to_dict(ch),
        i_zero=iz, inner=inner, outer=outer,
        reciprocal_i_zero=iz_r, reciprocal_inner=inner_r,
        reciprocal_outer=outer_r,
        containments=containments,
        per_constraint_gap=gaps,
        max_gap_bits=scalar_gap(outer, inner),
        gap_limit_bits=float(cfg.n1 + cfg.n2 + max(cfg.n1, cfg.n2)),
        violations=violations,
    )
