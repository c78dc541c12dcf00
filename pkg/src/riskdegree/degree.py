"""Degree of risk aversion ``r_p`` of a spectral risk measure.

Two routes are implemented and cross-checked:

* through the Kusuoka measure: ``r_p = 1 - M_p``, where ``M_p`` is the
  p-generalized (power) mean of ``1 - alpha`` under ``mu``.  Total for every
  real ``p`` and every finite ``mu``.
* through the dual utility: ``1 - [(p+1) int (1-t)^p dw]^(1/p)``, with the
  log form at ``p = 0`` and the left slope of ``w`` at 1 for ``p = -1``.
  Defined for ``p >= -1`` only, since the integral diverges below.

``r_p`` is the unique functional with ``r_p(CVaR_a) = a`` whose transform
``s_p = (1 - r_p)^p`` (``log(1 - r_p)`` at ``p = 0``) is linear under mixing.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EmptyFamily, UnsupportedExponent
from .extended import NEG_INF, POS_INF, ExtendedReal
from .riskcore import DualUtilityCdf, KusuokaMeasure, SpectralMeasure, as_spectral, left_derivative_at_one
from .stieltjes import ZERO_P_TOL, integrate_log, integrate_power

CROSS_RESIDUAL_TOL = 1e-9


class Branch(str, enum.Enum):
    GENERIC = "generic"
    P_ZERO = "p_zero"
    P_MINUS_ONE = "p_minus_one"
    MU_FORMULA = "mu_formula"


@dataclass(frozen=True)
class DegreeReport:
    p: float
    value: float
    branch: Branch
    cross_residual: float | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "degree": self.value,
            "branch": self.branch.value,
            "cross_residual": self.cross_residual,
        }


def _is_zero(p: float) -> bool:
    return abs(p) < ZERO_P_TOL


def _is_minus_one(p: float) -> bool:
    return abs(p + 1.0) < ZERO_P_TOL


def _clip01(x: float) -> float:
    return min(1.0, max(0.0, x))


def generalized_mean(mu: KusuokaMeasure, p: float) -> float:
    """p-generalized mean of ``1 - alpha`` under ``mu``.

    ``p = 0`` is the geometric mean, ``p = -1`` the harmonic mean.  Arguments
    equal to zero (atoms at ``alpha = 1``) contribute ``0`` for ``p > 0`` and
    force the mean to zero for ``p <= 0``.  The result always lies in [0, 1].
    """
    p = float(p)
    x = 1.0 - mu.alphas
    lam = mu.weights / mu.weights.sum()
    has_zero = bool(np.any(x == 0.0))
    if has_zero and p <= ZERO_P_TOL:
        return 0.0
    with np.errstate(divide="ignore"):
        logs = np.log(x)
    if _is_zero(p):
        return _clip01(math.exp(float(np.dot(lam, logs))))
    scaled = p * logs  # zero arguments (p > 0 here) give -inf
    # near p = 0 accumulate sum lam * x^p - 1 around 1; elsewhere that
    # cancels against -1, so take a shifted log-sum-exp instead
    excess = float(np.dot(lam, np.expm1(scaled)))
    if abs(excess) <= 0.5:
        log_total = math.log1p(excess)
    else:
        top = float(np.max(scaled))
        if top == -math.inf:
            return 0.0
        log_total = top + math.log(float(np.dot(lam, np.exp(scaled - top))))
    return _clip01(math.exp(log_total / p))


def degree_from_mu(mu: KusuokaMeasure, p: float) -> float:
    """``r_p = 1 - generalized_mean(mu, p)``."""
    return _clip01(1.0 - generalized_mean(mu, p))


def degree_from_w(w: DualUtilityCdf, p: float) -> float:
    """Degree through the dual utility ``w`` (``p >= -1``).

    Raises:
        UnsupportedExponent: ``p < -1``; use :func:`degree_from_mu`.
    """
    p = float(p)
    if _is_minus_one(p):
        slope = left_derivative_at_one(w)
        if slope.is_pos_inf:
            return 1.0
        return _clip01(1.0 - 1.0 / slope.value)
    if p < -1.0:
        raise UnsupportedExponent(f"the dual-utility formula needs p >= -1, got p={p!r}")
    if _is_zero(p):
        integral = integrate_log(w)
        if integral.is_neg_inf:
            return 1.0
        return _clip01(1.0 - math.exp(integral.value + 1.0))
    integral = integrate_power(w, p)
    if integral.is_pos_inf:
        # p in (-1, 0): base**(1/p) -> 0
        return 1.0
    base = (p + 1.0) * integral.value
    if base <= 0.0:
        return 1.0
    return _clip01(1.0 - math.exp(math.log(base) / p))


def _branch_for(p: float) -> Branch:
    if _is_zero(p):
        return Branch.P_ZERO
    if _is_minus_one(p):
        return Branch.P_MINUS_ONE
    if p < -1.0:
        return Branch.MU_FORMULA
    return Branch.GENERIC


def degree(measure, p: float) -> DegreeReport:
    """Degree ``r_p`` of ``measure`` with the branch taken and a cross-check.

    The Kusuoka formula supplies the value.  For ``p >= -1`` the
    dual-utility formula is evaluated as well and ``cross_residual`` holds
    the absolute difference between the two.
    """
    p = float(p)
    if not math.isfinite(p):
        raise DomainError(f"p must be finite, got {p!r}")
    m = as_spectral(measure)
    value = degree_from_mu(m.kusuoka, p)
    branch = _branch_for(p)
    residual = None
    if branch is not Branch.MU_FORMULA:
        residual = abs(degree_from_w(m.dual_utility, p) - value)
    return DegreeReport(p=p, value=value, branch=branch, cross_residual=residual)


def h_p_curve(p: float, alphas: Iterable[float]) -> list[tuple[float, float]]:
    """Points ``(alpha, h_p(alpha))`` of the transform that linearizes ``r_p``.

    ``h_p(a) = -((1 - a)^p - 1) / p``, and ``-log(1 - a)`` at ``p = 0``.
    """
    p = float(p)
    out = []
    for a in alphas:
        a = float(a)
        if not 0.0 <= a <= 1.0:
            raise DomainError(f"alpha must lie in [0, 1], got {a!r}")
        if a == 1.0:
            if p <= ZERO_P_TOL:
                raise DomainError(f"h_p(1) is infinite for p={p!r} <= 0")
            out.append((a, 1.0 / p))
            continue
        log1m = math.log1p(-a)
        h = -log1m if _is_zero(p) else -math.expm1(p * log1m) / p
        out.append((a, h))
    return out


def s_p_value(measure, p: float) -> ExtendedReal:
    """The mixing-linear transform of the degree: ``(1 - r_p)^p`` or ``log(1 - r_p)``."""
    p = float(p)
    one_minus_r = 1.0 - degree(measure, p).value
    if _is_zero(p):
        return NEG_INF if one_minus_r <= 0.0 else ExtendedReal.finite(math.log(one_minus_r))
    if one_minus_r <= 0.0:
        return POS_INF if p < 0.0 else ExtendedReal.finite(0.0)
    return ExtendedReal.finite(one_minus_r**p)


def equivalent_cvar(measure, p: float) -> float:
    """Level ``alpha`` of the CVaR with the same p-degree as ``measure``."""
    return degree(measure, p).value


def coherent_degree(family: Sequence[KusuokaMeasure | SpectralMeasure], p: float) -> float:
    """Worst-case degree ``max_i r_p(mu_i)`` over a finite Kusuoka family."""
    if not family:
        raise EmptyFamily("coherent_degree needs at least one Kusuoka measure")
    return max(degree_from_mu(as_spectral(mu).kusuoka, p) for mu in family)
