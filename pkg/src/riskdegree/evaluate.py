"""Evaluate spectral risk measures on data.

Two kinds of loss distributions are supported exactly:

* an empirical sample, whose quantile function is the left-continuous step
  function equal to the k-th order statistic on ``((k-1)/n, k/n]``, so that
  ``rho(Z) = sum_k z_(k) * (w(k/n) - w((k-1)/n))``;
* the one-parameter family ``Z_p`` (uniform at p=1, exponential at p=0,
  Pareto-type for p<0) with quantile function
  ``Phi_p(t) = -((1-t)^p - 1) / (theta p)``.  Any two spectral measures with
  the same p-degree assign the same risk to ``Z_p``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .degree import degree
from .errors import DomainError, EmptySample, InfiniteRisk
from .riskcore import as_spectral, cvar_measure
from .stieltjes import ZERO_P_TOL


class EmpiricalSample:
    """Immutable, ascending sample of finite losses."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[float]):
        if not isinstance(values, np.ndarray):
            values = list(values)
        arr = np.sort(np.asarray(values, dtype=np.float64))
        if arr.ndim != 1:
            raise DomainError("a sample is a 1-d sequence of losses")
        if arr.size == 0:
            raise EmptySample("the sample contains no values")
        if not np.all(np.isfinite(arr)):
            raise DomainError("sample values must be finite")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return int(self._values.size)

    def __repr__(self) -> str:
        return f"EmpiricalSample(n={len(self)})"


def _as_sample(sample) -> EmpiricalSample:
    return sample if isinstance(sample, EmpiricalSample) else EmpiricalSample(sample)


def quantile_weights(measure, n: int) -> np.ndarray:
    """Weight of each order statistic: ``w(k/n) - w((k-1)/n)``, k = 1..n."""
    w = as_spectral(measure).dual_utility
    grid = np.arange(n + 1, dtype=np.float64) / n
    grid[-1] = 1.0
    return np.diff(w(grid))


def rho_empirical(measure, sample) -> float:
    """Spectral risk of an empirical loss sample."""
    sample = _as_sample(sample)
    z = sample.values
    return float(np.dot(quantile_weights(measure, z.size), z))


def cvar_empirical(alpha: float, sample) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    sample = _as_sample(sample)
    if alpha == 1.0:
        return float(sample.values[-1])
    return rho_empirical(cvar_measure(alpha), sample)


@dataclass(frozen=True)
class ZpFamily:
    """Loss distribution on which r_p alone determines every spectral risk."""

    p: float
    theta: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p > -1.0):
            raise DomainError(f"Z_p needs p > -1 (finite mean), got p={self.p!r}")
        if not (math.isfinite(self.theta) and self.theta > 0.0):
            raise DomainError(f"theta must be positive, got {self.theta!r}")

    @property
    def is_exponential(self) -> bool:
        return abs(self.p) < ZERO_P_TOL

    @property
    def upper_bound(self) -> float:
        """Right end of the support (``inf`` unless ``p > 0``)."""
        if self.is_exponential or self.p < 0.0:
            return math.inf
        return 1.0 / (self.theta * self.p)


def zp_quantile(fam: ZpFamily, t: float) -> float:
    t = float(t)
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"t must lie in [0, 1), got {t!r}")
    if t == 1.0:
        if fam.is_exponential or fam.p < 0.0:
            raise DomainError(f"the quantile at t=1 is infinite for p={fam.p!r} <= 0")
        return fam.upper_bound
    log1m = math.log1p(-t)
    if fam.is_exponential:
        return -log1m / fam.theta
    return -math.expm1(fam.p * log1m) / (fam.theta * fam.p)


def zp_cdf(fam: ZpFamily, z: float) -> float:
    z = float(z)
    if z < 0.0 or math.isnan(z):
        raise DomainError(f"Z_p is supported on [0, inf), got z={z!r}")
    if fam.is_exponential:
        return -math.expm1(-fam.theta * z)
    x = fam.theta * fam.p * z
    if x >= 1.0:
        return 1.0
    return min(1.0, max(0.0, -math.expm1(math.log1p(-x) / fam.p)))


def cvar_zp(fam: ZpFamily, alpha: float) -> float:
    """Closed-form ``CVaR_alpha(Z_p)``.

    ``alpha = 1`` is the essential supremum, finite only when ``p > 0``.
    """
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    p, theta = fam.p, fam.theta
    if alpha == 1.0:
        if fam.is_exponential or p < 0.0:
            raise DomainError(f"CVaR_1(Z_p) is infinite for p={p!r} <= 0")
        return fam.upper_bound
    log1m = math.log1p(-alpha)
    if fam.is_exponential:
        return (1.0 - log1m) / theta
    return (1.0 - math.exp(p * log1m) / (p + 1.0)) / (theta * p)


def rho_zp(measure, fam: ZpFamily) -> float:
    """``rho(Z_p)`` as the Kusuoka mixture of closed-form CVaRs.

    Raises:
        InfiniteRisk: the measure puts mass on the ess sup of an unbounded ``Z_p``.
    """
    mu = as_spectral(measure).kusuoka
    if mu.mass_at_one > 0.0 and not fam.upper_bound < math.inf:
        raise InfiniteRisk(f"ess sup of Z_p is infinite for p={fam.p!r}")
    return float(sum(lam * cvar_zp(fam, a) for a, lam in zip(mu.alphas.tolist(), mu.weights.tolist())))


def rho_zp_from_degree(r: float, fam: ZpFamily) -> float:
    """``rho(Z_p)`` written as a function of the degree ``r = r_p(rho)`` alone.

    Raises:
        InfiniteRisk: ``r = 1`` on an unbounded ``Z_p``.
    """
    if float(r) == 1.0 and not math.isfinite(fam.upper_bound):
        raise InfiniteRisk(f"degree 1 gives infinite risk on Z_p with p={fam.p!r} <= 0")
    return cvar_zp(fam, r)


@dataclass(frozen=True)
class EquivalenceReport:
    p: float
    theta: float
    degree_a: float
    degree_b: float
    risk_a: float
    risk_b: float
    tol: float

    @property
    def degrees_equal(self) -> bool:
        return abs(self.degree_a - self.degree_b) <= self.tol

    @property
    def risk_tol(self) -> float:
        return self.tol * max(1.0, abs(self.risk_a), abs(self.risk_b))

    @property
    def risks_equal(self) -> bool:
        return abs(self.risk_a - self.risk_b) <= self.risk_tol

    @property
    def consistent(self) -> bool:
        """Equal degrees imply equal risks on Z_p."""
        return (not self.degrees_equal) or self.risks_equal


def check_equivalence(a, b, fam: ZpFamily, tol: float = 1e-9) -> EquivalenceReport:
    return EquivalenceReport(
        p=fam.p,
        theta=fam.theta,
        degree_a=degree(a, fam.p).value,
        degree_b=degree(b, fam.p).value,
        risk_a=rho_zp(a, fam),
        risk_b=rho_zp(b, fam),
        tol=float(tol),
    )
