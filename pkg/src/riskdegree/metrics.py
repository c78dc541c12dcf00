"""Geometric readings of the p = 1 degree.

``r_1`` is the Gini coefficient of the dual utility ``w`` (twice the area
between ``w`` and the diagonal) and, equivalently, twice the Wasserstein-1
distance between the law with cdf ``w`` and the uniform law on [0, 1].
Convexity with ``w(0) = 0`` and ``w(1) = 1`` gives ``w(t) <= t``, so the
absolute cdf difference in the W1 integral is just ``t - w(t)``.
"""

from __future__ import annotations

from .riskcore import DualUtilityCdf
from .stieltjes import integrate_cdf


def gini(w: DualUtilityCdf) -> float:
    return 1.0 - 2.0 * integrate_cdf(w)


def wasserstein1_to_uniform(w: DualUtilityCdf) -> float:
    """``W1(P_w, Unif[0, 1]) = integral_0^1 (t - w(t)) dt``."""
    return 0.5 - integrate_cdf(w)
