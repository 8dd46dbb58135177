"""
Capacity-region bounds and generalized degrees of freedom for the two-user
MIMO Gaussian interference channel with perfect output feedback.

Modules
-------
channel         channel instances, validation, reciprocal transform, JSON I/O
hermitian_core  PSD tests, base-2 log-determinants, block solves, L(K, S)
regions         three-bound rate regions, rectangle algebra, hulls, gaps
bounds          the six outer-bound constraints, inner/outer regions, certificates
gdof            GDoF region, symmetric curves, high-SNR slope checks
verify          seeded Monte Carlo checks of the supporting matrix lemmas
cli             the ``fbmimo`` command
"""

from .channel import (AntennaConfig, ChannelInstance, LinkGains, ScalingExponents,
                      fig3_channel, load_channel, random_channel, reciprocal,
                      save_channel, validate)
from .hermitian_core import CrossCovariance, sample_cross_covariance
from .regions import ConvexRegion2D, Rect, TriBoundRegion, hull_union, oplus, ominus, tighten
from .bounds import (SixBounds, gap_certificate, inner_region, outer_region,
                     power_split, sampled_hull, six_bounds, six_bounds_zero)
from .gdof import (gdof_region, symmetric_gdof_nf, symmetric_gdof_pf,
                   symmetric_point)

__version__ = "0.1.0"

__all__ = [
    "AntennaConfig", "ChannelInstance", "LinkGains", "ScalingExponents",
    "fig3_channel", "load_channel", "random_channel", "reciprocal",
    "save_channel", "validate", "CrossCovariance", "sample_cross_covariance",
    "ConvexRegion2D", "Rect", "TriBoundRegion", "hull_union", "oplus",
    "ominus", "tighten", "SixBounds", "gap_certificate", "inner_region",
    "outer_region", "power_split", "sampled_hull", "six_bounds",
    "six_bounds_zero", "gdof_region", "symmetric_gdof_nf",
    "symmetric_gdof_pf", "symmetric_point",
]
