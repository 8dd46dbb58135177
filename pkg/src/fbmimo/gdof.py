"""
Generalized degrees of freedom (GDoF) with perfect feedback.

Link gains scale as ``rho_ij = SNR ** alpha_ij``. The GDoF region is a
polytope in ``(d1, d2)`` described by six linear constraints whose
coefficients are ``alpha_11`` and ``alpha_22``. Closed forms for the
symmetric case (``M1 = M2 = M``, ``N1 = N2 = N``, direct exponent 1, cross
exponent ``alpha``) are provided both with feedback and without.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import AntennaConfig, LinkGains, ScalingExponents, random_channel
from .regions import tighten
from .bounds import SixBounds, six_bounds_zero

__all__ = [
    "GdofRegion",
    "f_level",
    "gdof_region",
    "symmetric_gdof_pf",
    "symmetric_gdof_nf",
    "symmetric_point",
    "empirical_slope",
    "curve_breakpoints",
    "curve_grid",
    "DEFAULT_SNR_PAIR",
]

DEFAULT_SNR_PAIR = (2.0 ** 30, 2.0 ** 40)


def _pos(x: float) -> float:
    return x if x > 0 else 0.0


def f_level(u: float, a1: float, u1: float, a2: float, u2: float) -> float:
    """Levels collected by ``u`` receive dimensions from two signal groups.

    The stronger group (exponent ``a1`` over ``u1`` dimensions, or ``a2``
    over ``u2``) fills the receive space first; whatever remains goes to the
    other group. Ties use the first ordering.
    """
    if min(u, u1, u2) < 0:
        raise ValueError("dimensions must be nonnegative")
    if a1 >= a2:
        return min(u, u1) * _pos(a1) + min(_pos(u - u1), u2) * _pos(a2)
    return min(u, u2) * _pos(a2) + min(_pos(u - u2), u1) * _pos(a1)


def _private_part(a_dir: float, a_cross: float, m: int, n_dir: int,
                  n_cross: int) -> float:
    """Levels a transmitter delivers below the other receiver's noise floor."""
    free = min(_pos(m - n_cross), n_dir)
    return a_dir * free + _pos(a_dir - a_cross) * (min(m, n_dir) - free)


@dataclass(frozen=True)
class GdofRegion:
    """Six constraints ``c1 * d1 + c2 * d2 <= rhs``, fixed order."""

    constraints: tuple[tuple[float, float, float], ...]
    config: AntennaConfig
    exponents: ScalingExponents

    def rhs(self) -> tuple[float, ...]:
        return tuple(c[2] for c in self.constraints)

    def contains(self, d1: float, d2: float, tol: float = 1e-12) -> bool:
        return (d1 >= -tol and d2 >= -tol
                and all(c1 * d1 + c2 * d2 <= r + tol
                        for c1, c2, r in self.constraints))

    def vertices(self) -> np.ndarray:
        """Counterclockwise vertices in ``(d1, d2)``."""
        r = self.rhs()
        scaled = tighten(min(r[0], r[2]), min(r[1], r[3]), min(r[4], r[5]))
        v = scaled.vertices().copy()
        v[:, 0] /= self.exponents.a11
        v[:, 1] /= self.exponents.a22
        return v


def gdof_region(config: AntennaConfig, a: ScalingExponents) -> GdofRegion:
    """The six GDoF constraints for antennas ``config`` and exponents ``a``."""
    if not isinstance(a, ScalingExponents):
        a = ScalingExponents(*a)
    m1, n1, m2, n2 = config.as_tuple()
    a11, a12, a21, a22 = a.as_tuple()
    f1 = f_level(n1, a11, m1, a21, m2)
    f2 = f_level(n2, a22, m2, a12, m1)
    p1 = _private_part(a11, a12, m1, n1, n2)
    p2 = _private_part(a22, a21, m2, n2, n1)
    cons = (
        (a11, 0.0, f1),
        (0.0, a22, f2),
        (a11, 0.0, a12 * min(m1, n2) + p1),
        (0.0, a22, a21 * min(m2, n1) + p2),
        (a11, a22, f2 + p1),
        (a11, a22, f1 + p2),
    )
    return GdofRegion(cons, config, a)


def _symmetric_terms(m: int, n: int) -> tuple[int, int]:
    if m < 1 or n < 1:
        raise ValueError("antenna counts must be >= 1")
    if n > m:
        m, n = n, m
    return n, max(2 * n - m, 0)


def symmetric_gdof_pf(m: int, n: int, alpha: float) -> float:
    """Symmetric GDoF with feedback (the V-shaped curve)."""
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    n, excess = _symmetric_terms(m, n)
    if alpha <= 1:
        return float(n - alpha / 2 * excess)
    return float(n * (alpha + 1) / 2 - excess / 2)


def symmetric_gdof_nf(m: int, n: int, alpha: float) -> float:
    """Symmetric GDoF without feedback (the W-shaped curve).

    Adjacent branches agree at the shared endpoints; from ``alpha = 2/3`` on
    the moderate-interference branch is used, so on ``[2/3, 1]`` the value
    is bit-identical to :func:`symmetric_gdof_pf`.
    """
    if alpha < 0:
        raise ValueError("alpha must be >= 0")
    n, excess = _symmetric_terms(m, n)
    if alpha <= 0.5:
        return float(n - alpha * excess)
    if alpha < 2 / 3:
        return float(n - (1 - alpha) * excess)
    if alpha <= 1:
        return float(n - alpha / 2 * excess)
    return float(min(n, n * (alpha + 1) / 2 - excess / 2))


def symmetric_point(region: GdofRegion) -> float:
    """Largest ``d`` with ``(d, d)`` in the region."""
    best = math.inf
    for c1, c2, r in region.constraints:
        if c1 + c2 > 0:
            best = min(best, r / (c1 + c2))
    return best


def empirical_slope(ch_template: AntennaConfig, a, seed: int,
                    snr_lo: float = DEFAULT_SNR_PAIR[0],
                    snr_hi: float = DEFAULT_SNR_PAIR[1]) -> SixBounds:
    """Two-point high-SNR slopes of the six ``Q = 0`` bounds.

    One channel with CN(0, 1) entries is drawn from ``seed``; with
    ``rho_ij = SNR ** alpha_ij`` the bounds are evaluated at both SNRs and
    each slope is ``delta I_k / delta log2 SNR``.

    ``a`` may be a :class:`ScalingExponents` or any four numbers; the
    latter allows all-zero exponents, which have no GDoF region but still
    have well-defined slopes.
    """
    if not snr_hi > snr_lo >= 2.0 ** 10:
        raise ValueError("need snr_hi > snr_lo >= 2**10")
    alphas = a.as_tuple() if isinstance(a, ScalingExponents) else tuple(map(float, a))
    if len(alphas) != 4 or any(x < 0 or not math.isfinite(x) for x in alphas):
        raise ValueError("exponents must be four finite nonnegative numbers")
    ch = random_channel(ch_template, LinkGains(1, 1, 1, 1), seed)
    lo = six_bounds_zero(ch.with_gains(LinkGains(*(snr_lo ** x for x in alphas))))
    hi = six_bounds_zero(ch.with_gains(LinkGains(*(snr_hi ** x for x in alphas))))
    span = math.log2(snr_hi) - math.log2(snr_lo)
    return SixBounds(*((h - l) / span for h, l in zip(hi, lo)))


def curve_breakpoints(m: int, n: int) -> list[float]:
    """Kinks of the symmetric curves: 1/2, 2/3, 1, 3 - M/N and 2."""
    big, small = max(m, n), min(m, n)
    return sorted({0.5, 2 / 3, 1.0, 3 - big / small, 2.0})


def curve_grid(m: int, n: int, alpha_max: float, step: float) -> list[float]:
    """``0, step, 2 step, ...`` up to ``alpha_max`` merged with the breakpoints."""
    if not step > 0 or not math.isfinite(step):
        raise ValueError("step must be a positive number")
    if alpha_max < 0:
        raise ValueError("alpha_max must be >= 0")
    count = int(math.floor(alpha_max / step + 1e-9))
    grid = {round(k * step, 12) for k in range(count + 1)}
    grid.update(b for b in curve_breakpoints(m, n) if 0 <= b <= alpha_max)
    return sorted(grid)
