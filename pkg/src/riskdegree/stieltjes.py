"""Closed-form Stieltjes integrals against a piecewise-linear convex cdf.

On each segment ``[a, b]`` of ``w`` the measure ``dw`` is ``slope * dt``, so
every integral reduces to an antiderivative evaluated at breakpoints.  The
atom of ``w`` at 1 contributes ``atom_at_one * f(1)``, which is where the
extended-real conventions enter.
"""

from __future__ import annotations

import numpy as np

from .errors import UnsupportedExponent
from .extended import NEG_INF, POS_INF, ExtendedReal
from .riskcore import DualUtilityCdf

ZERO_P_TOL = 1e-12


def _power_increments(a: np.ndarray, b: np.ndarray, q: float) -> np.ndarray:
    """``(a**q - b**q) / q`` for ``1 >= a >= b >= 0`` without cancellation at small ``q``."""
    out = np.empty_like(a)
    pos = b > 0.0
    la, lb = np.log(a[pos]), np.log(b[pos])
    out[pos] = np.exp(q * lb) * np.expm1(q * (la - lb)) / q
    # b == 0 only on the last segment; q > 0 there so b**q vanishes
    out[~pos] = np.power(a[~pos], q) / q
    return out


def integrate_power(w: DualUtilityCdf, p: float) -> ExtendedReal:
    """``integral_0^1 (1 - t)**p dw(t)`` for ``p > -1``, ``p != 0``.

    The atom at 1 adds ``atom_at_one * 0**p``: zero for ``p > 0`` and an
    infinite contribution for ``p < 0``.

    Raises:
        UnsupportedExponent: ``p <= -1`` (divergent) or ``|p| < 1e-12``
            (use :func:`integrate_log`).
    """
    p = float(p)
    if p <= -1.0:
        raise UnsupportedExponent(f"integral of (1-t)^p dw diverges for p <= -1, got p={p!r}")
    if abs(p) < ZERO_P_TOL:
        raise UnsupportedExponent("p is zero to working precision; use integrate_log")
    if w.atom_at_one > 0.0 and p < 0.0:
        return POS_INF
    upper = 1.0 - w.t[:-1]
    lower = 1.0 - w.t[1:]
    # antiderivative of (1-t)^p is -(1-t)^(p+1)/(p+1)
    seg = _power_increments(upper, lower, p + 1.0)
    return ExtendedReal.finite(float(np.dot(w.slopes, seg)))


def _log_antiderivative(u: np.ndarray) -> np.ndarray:
    """``integral_0^u log(s) ds = u (log u - 1)`` with the value 0 at u = 0."""
    out = np.zeros_like(u)
    pos = u > 0.0
    out[pos] = u[pos] * (np.log(u[pos]) - 1.0)
    return out


def integrate_log(w: DualUtilityCdf) -> ExtendedReal:
    """``integral_0^1 log(1 - t) dw(t)``; minus infinity when ``w`` jumps at 1."""
    if w.atom_at_one > 0.0:
        return NEG_INF
    # substitute u = 1 - t: integral over [1-b, 1-a] of log(u) du
    upper = _log_antiderivative(1.0 - w.t[:-1])
    lower = _log_antiderivative(1.0 - w.t[1:])
    return ExtendedReal.finite(float(np.dot(w.slopes, upper - lower)))


def integrate_identity(w: DualUtilityCdf) -> float:
    """Mean of the distribution with cdf ``w``: ``integral_0^1 t dw(t)``."""
    t = w.t
    seg = 0.5 * (t[1:] - t[:-1]) * (t[1:] + t[:-1])
    return float(np.dot(w.slopes, seg)) + w.atom_at_one


def integrate_cdf(w: DualUtilityCdf) -> float:
    """Area under the continuous part of ``w`` on [0, 1] (trapezoids are exact)."""
    return float(np.dot(0.5 * (w.w[1:] + w.w[:-1]), np.diff(w.t)))
