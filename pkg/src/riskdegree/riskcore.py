"""Spectral risk measures in Kusuoka (mu) and dual-utility (w) form.

A spectral risk measure is a mixture of CVaRs.  The mixing measure ``mu`` on
[0, 1] is carried by :class:`KusuokaMeasure` as a finite list of atoms.  The
same measure as a convex cdf on [0, 1] (its dual utility ``w``) is carried by
:class:`DualUtilityCdf` as an exact piecewise-linear function plus an
optional jump at 1.  Conversions between the two are exact:

    w(u) = sum_{alpha_i < 1} lambda_i * max(0, (u - alpha_i) / (1 - alpha_i))
    atom_at_one = mu({1})

and in reverse each slope jump ``d`` at an interior breakpoint ``t`` gives an
atom of mass ``d * (1 - t)`` at ``t``; the first slope is the mass at 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ConvexityError, DomainError, WeightSumError
from .extended import POS_INF, ExtendedReal

WEIGHT_SUM_TOL = 1e-12
RENORMALIZE_TOL = 1e-9
ALPHA_MERGE_TOL = 1e-12
CONVEXITY_TOL = 1e-12
# Atoms recovered from slope jumps below this mass are representation noise.
_NOISE_MASS = 1e-14


def _frozen(a) -> np.ndarray:
    arr = np.array(a, dtype=np.float64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class KusuokaMeasure:
    """Finite probability measure on [0, 1] mixing CVaR levels.

    Use :func:`make_kusuoka` for unsorted or slightly unnormalized input;
    the constructor only validates.
    """

    alphas: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        alphas = _frozen(self.alphas)
        weights = _frozen(self.weights)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "weights", weights)
        if alphas.ndim != 1 or alphas.shape != weights.shape or alphas.size == 0:
            raise DomainError("alphas and weights must be nonempty 1-d arrays of equal length")
        if not np.all(np.isfinite(alphas)) or np.any(alphas < 0.0) or np.any(alphas > 1.0):
            raise DomainError(f"every alpha must lie in [0, 1], got {alphas.tolist()}")
        if np.any(np.diff(alphas) <= 0.0):
            raise DomainError("alphas must be strictly increasing")
        if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0) or np.any(weights > 1.0 + WEIGHT_SUM_TOL):
            raise DomainError(f"every weight must lie in (0, 1], got {weights.tolist()}")
        total = float(np.sum(weights))
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumError(f"weights sum to {total!r}, expected 1")

    @property
    def atoms(self) -> list[tuple[float, float]]:
        return list(zip(self.alphas.tolist(), self.weights.tolist()))

    @property
    def mass_at_one(self) -> float:
        return float(self.weights[-1]) if self.alphas[-1] == 1.0 else 0.0

    def __len__(self) -> int:
        return int(self.alphas.size)

    def __repr__(self) -> str:
        return f"KusuokaMeasure(atoms={self.atoms!r})"


@dataclass(frozen=True, eq=False)
class DualUtilityCdf:
    """Convex piecewise-linear cdf ``w`` on [0, 1] with a possible jump at 1.

    ``t`` are the breakpoints (0 first, 1 last), ``w`` the values of the
    continuous part there, so ``w[-1]`` is the left limit ``w(1-)`` and
    ``w[-1] + atom_at_one == 1``.  ``slopes[j]`` is the slope on
    ``[t[j], t[j+1]]``; callers that know the slopes exactly (e.g.
    :func:`kusuoka_to_w`) pass them to avoid recomputing them by division.
    """

    t: np.ndarray
    w: np.ndarray
    atom_at_one: float = 0.0
    slopes: np.ndarray | None = field(default=None)

    def __post_init__(self):
        t = _frozen(self.t)
        w = _frozen(self.w)
        atom = float(self.atom_at_one)
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "atom_at_one", atom)
        if t.ndim != 1 or t.shape != w.shape or t.size < 2:
            raise DomainError("need at least two breakpoints (t=0 and t=1)")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(w))):
            raise DomainError("breakpoints must be finite")
        if t[0] != 0.0 or t[-1] != 1.0:
            raise DomainError(f"breakpoints must start at t=0 and end at t=1, got {t[0]!r}..{t[-1]!r}")
        if np.any(np.diff(t) <= 0.0):
            raise DomainError("breakpoint t values must be strictly increasing")
        if not 0.0 <= atom <= 1.0:
            raise DomainError(f"atom_at_one must lie in [0, 1], got {atom!r}")
        if abs(w[0]) > WEIGHT_SUM_TOL:
            raise DomainError(f"w(0) must be 0, got {w[0]!r}")
        if abs(w[-1] + atom - 1.0) > WEIGHT_SUM_TOL:
            raise WeightSumError(f"w(1-) + atom_at_one = {w[-1] + atom!r}, expected 1")

        if self.slopes is None:
            slopes = np.diff(w) / np.diff(t)
        else:
            slopes = np.array(self.slopes, dtype=np.float64)
            if slopes.shape != (t.size - 1,):
                raise DomainError("slopes must have one entry per segment")
        slopes.setflags(write=False)
        object.__setattr__(self, "slopes", slopes)

        if slopes[0] < -CONVEXITY_TOL:
            raise ConvexityError(f"w is decreasing on its first segment (slope {slopes[0]!r})")
        jumps = np.diff(slopes)
        bad = np.flatnonzero(jumps < -CONVEXITY_TOL * np.maximum(1.0, np.abs(slopes[1:])))
        if bad.size:
            j = int(bad[0]) + 1
            raise ConvexityError(
                f"w is not convex: slope drops from {slopes[j - 1]!r} to {slopes[j]!r} at t={t[j]!r}"
            )

    @classmethod
    def from_slopes(cls, t: Sequence[float], slopes: Sequence[float], atom_at_one: float = 0.0) -> DualUtilityCdf:
        """Build ``w`` from breakpoints and segment slopes by exact accumulation."""
        t = np.asarray(t, dtype=np.float64)
        slopes = np.asarray(slopes, dtype=np.float64)
        w = np.concatenate(([0.0], np.cumsum(slopes * np.diff(t))))
        return cls(t, w, atom_at_one, slopes)

    @property
    def breakpoints(self) -> list[tuple[float, float]]:
        return list(zip(self.t.tolist(), self.w.tolist()))

    def __call__(self, u):
        """Evaluate ``w`` (right-continuous, so ``w(1) == 1``)."""
        u = np.asarray(u, dtype=np.float64)
        out = np.interp(u, self.t, self.w)
        out = np.where(u >= 1.0, 1.0, out)
        return out if out.ndim else float(out)

    def __repr__(self) -> str:
        return f"DualUtilityCdf(breakpoints={self.breakpoints!r}, atom_at_one={self.atom_at_one!r})"


def make_kusuoka(atoms: Iterable[tuple[float, float]]) -> KusuokaMeasure:
    """Build a :class:`KusuokaMeasure` from ``(alpha, weight)`` pairs.

    Atoms are sorted, alphas within ``1e-12`` of each other are merged, and
    weights are renormalized if their sum is within ``1e-9`` of one.

    Raises:
        DomainError: an alpha outside [0, 1] or a nonpositive weight.
        WeightSumError: weights sum further than ``1e-9`` from one.
    """
    pairs = [(float(a), float(lam)) for a, lam in atoms]
    if not pairs:
        raise DomainError("a Kusuoka measure needs at least one atom")
    alphas = np.array([a for a, _ in pairs])
    weights = np.array([lam for _, lam in pairs])
    if not np.all(np.isfinite(alphas)) or np.any((alphas < 0.0) | (alphas > 1.0)):
        raise DomainError(f"every alpha must lie in [0, 1], got {alphas.tolist()}")
    if not np.all(np.isfinite(weights)) or np.any(weights <= 0.0):
        raise DomainError(f"every weight must be positive, got {weights.tolist()}")
    total = float(np.sum(weights))
    if abs(total - 1.0) > RENORMALIZE_TOL:
        raise WeightSumError(f"weights sum to {total!r}, expected 1 within {RENORMALIZE_TOL}")
    return _merge_atoms(alphas, weights / total)


def _merge_atoms(alphas: np.ndarray, weights: np.ndarray) -> KusuokaMeasure:
    order = np.argsort(alphas, kind="stable")
    alphas, weights = alphas[order], weights[order]
    out_a: list[float] = []
    out_w: list[float] = []
    start = 0
    n = alphas.size
    while start < n:
        stop = start + 1
        while stop < n and alphas[stop] - alphas[start] <= ALPHA_MERGE_TOL:
            stop += 1
        group_a, group_w = alphas[start:stop], weights[start:stop]
        mass = float(np.sum(group_w))
        if group_a[0] == 0.0:
            a = 0.0
        elif group_a[-1] == 1.0:
            a = 1.0
        else:
            a = float(np.dot(group_a, group_w) / mass)
        out_a.append(a)
        out_w.append(mass)
        start = stop
    out_w_arr = np.array(out_w)
    out_w_arr /= np.sum(out_w_arr)
    return KusuokaMeasure(np.array(out_a), np.minimum(out_w_arr, 1.0))


def cvar_measure(alpha: float) -> KusuokaMeasure:
    """Dirac measure at ``alpha``: CVaR_0 is the mean, CVaR_1 the ess sup."""
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha!r}")
    return KusuokaMeasure(np.array([alpha]), np.array([1.0]))


def kusuoka_to_w(mu: KusuokaMeasure) -> DualUtilityCdf:
    alphas, weights = mu.alphas, mu.weights
    inner = alphas < 1.0
    a_in, lam_in = alphas[inner], weights[inner]
    atom = mu.mass_at_one
    # breakpoints: 0, every alpha < 1, 1
    t = np.unique(np.concatenate(([0.0], a_in, [1.0])))
    # slope on [t_j, t_{j+1}] collects lambda_i / (1 - alpha_i) for alpha_i <= t_j
    slope_jump = np.zeros(t.size - 1)
    idx = np.searchsorted(t, a_in)
    np.add.at(slope_jump, idx, lam_in / (1.0 - a_in))
    slopes = np.cumsum(slope_jump)
    return DualUtilityCdf.from_slopes(t, slopes, atom)


def w_to_kusuoka(w: DualUtilityCdf) -> KusuokaMeasure:
    """Invert :func:`kusuoka_to_w` through the slope jumps of ``w``.

    Raises:
        ConvexityError: some slope jump is negative beyond tolerance.
    """
    t, slopes = w.t, w.slopes
    jumps = np.concatenate(([slopes[0]], np.diff(slopes)))
    if np.any(jumps < -CONVEXITY_TOL * np.maximum(1.0, np.abs(slopes))):
        raise ConvexityError("w is not convex")
    masses = np.clip(jumps, 0.0, None) * (1.0 - t[:-1])
    keep = masses > _NOISE_MASS
    alphas = list(t[:-1][keep])
    weights = list(masses[keep])
    if w.atom_at_one > _NOISE_MASS:
        alphas.append(1.0)
        weights.append(w.atom_at_one)
    weights_arr = np.array(weights)
    total = float(np.sum(weights_arr))
    if abs(total - 1.0) > RENORMALIZE_TOL:
        raise WeightSumError(f"recovered Kusuoka weights sum to {total!r}")
    return _merge_atoms(np.array(alphas), weights_arr / total)


def left_derivative_at_one(w: DualUtilityCdf) -> ExtendedReal:
    """Left derivative of ``w`` at 1; infinite when ``w`` jumps at 1."""
    if w.atom_at_one > 0.0:
        return POS_INF
    return ExtendedReal.finite(float(w.slopes[-1]))


class SpectralMeasure:
    """A spectral risk measure held in either representation.

    The other representation is derived on first access and cached; both
    are immutable, so the object behaves as a value.
    """

    __slots__ = ("_kusuoka", "_dual_utility", "_native")

    def __init__(self, repr: KusuokaMeasure | DualUtilityCdf):
        if isinstance(repr, KusuokaMeasure):
            self._kusuoka, self._dual_utility, self._native = repr, None, "kusuoka"
        elif isinstance(repr, DualUtilityCdf):
            self._kusuoka, self._dual_utility, self._native = None, repr, "dual_utility"
        else:
            raise TypeError(f"expected KusuokaMeasure or DualUtilityCdf, got {type(repr).__name__}")

    @property
    def native(self) -> str:
        """Which representation the measure was built from."""
        return self._native

    @property
    def kusuoka(self) -> KusuokaMeasure:
        if self._kusuoka is None:
            self._kusuoka = w_to_kusuoka(self._dual_utility)
        return self._kusuoka

    @property
    def dual_utility(self) -> DualUtilityCdf:
        if self._dual_utility is None:
            self._dual_utility = kusuoka_to_w(self._kusuoka)
        return self._dual_utility

    def __repr__(self) -> str:
        inner = self._kusuoka if self._native == "kusuoka" else self._dual_utility
        return f"SpectralMeasure({inner!r})"


def as_spectral(measure) -> SpectralMeasure:
    if isinstance(measure, SpectralMeasure):
        return measure
    return SpectralMeasure(measure)


def mix(measures: Sequence, weights: Sequence[float]) -> SpectralMeasure:
    """Convex combination of spectral measures, formed on the Kusuoka side.

    Components may be :class:`SpectralMeasure`, :class:`KusuokaMeasure` or
    :class:`DualUtilityCdf`.  Zero-weight components are dropped.
    """
    if len(measures) != len(weights) or not measures:
        raise DomainError("mix needs equally many (nonzero count) measures and weights")
    lam = np.asarray(weights, dtype=np.float64)
    if not np.all(np.isfinite(lam)) or np.any(lam < 0.0):
        raise DomainError(f"mixture weights must be nonnegative, got {lam.tolist()}")
    if abs(float(lam.sum()) - 1.0) > RENORMALIZE_TOL:
        raise WeightSumError(f"mixture weights sum to {float(lam.sum())!r}, expected 1")
    alphas, masses = [], []
    for m, lk in zip(measures, lam):
        if lk == 0.0:
            continue
        mu = as_spectral(m).kusuoka
        alphas.append(mu.alphas)
        masses.append(lk * mu.weights)
    alphas_arr = np.concatenate(alphas)
    masses_arr = np.concatenate(masses)
    return SpectralMeasure(_merge_atoms(alphas_arr, masses_arr / masses_arr.sum()))


def expectation() -> SpectralMeasure:
    return SpectralMeasure(cvar_measure(0.0))


def ess_sup() -> SpectralMeasure:
    return SpectralMeasure(cvar_measure(1.0))

