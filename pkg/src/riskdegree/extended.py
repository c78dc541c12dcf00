"""Extended reals: a finite float or one of the two signed infinities.

Integrals against a dual utility with an atom at 1 and generalized means
with zero arguments legitimately take infinite values.  Public functions
return :class:`ExtendedReal` in those places so that an infinity is always
an explicit state rather than a stray ``float('inf')``.
"""

from __future__ import annotations

import enum
import functools
import math
from dataclasses import dataclass


class Kind(enum.Enum):
    FINITE = "finite"
    POS_INF = "+inf"
    NEG_INF = "-inf"


@functools.total_ordering
@dataclass(frozen=True)
class ExtendedReal:
    kind: Kind
    value: float = 0.0

    def __post_init__(self):
        if self.kind is Kind.FINITE and not math.isfinite(self.value):
            raise ValueError(f"finite ExtendedReal needs a finite value, got {self.value!r}")

    @classmethod
    def finite(cls, x: float) -> ExtendedReal:
        return cls(Kind.FINITE, float(x))

    @classmethod
    def from_float(cls, x: float) -> ExtendedReal:
        """Classify a float, mapping +-inf onto the matching state."""
        x = float(x)
        if math.isnan(x):
            raise ValueError("NaN is not an extended real")
        if x == math.inf:
            return POS_INF
        if x == -math.inf:
            return NEG_INF
        return cls(Kind.FINITE, x)

    @property
    def is_finite(self) -> bool:
        return self.kind is Kind.FINITE

    @property
    def is_pos_inf(self) -> bool:
        return self.kind is Kind.POS_INF

    @property
    def is_neg_inf(self) -> bool:
        return self.kind is Kind.NEG_INF

    def __float__(self) -> float:
        if self.kind is Kind.POS_INF:
            return math.inf
        if self.kind is Kind.NEG_INF:
            return -math.inf
        return self.value

    def __lt__(self, other):
        if isinstance(other, ExtendedReal):
            return float(self) < float(other)
        if isinstance(other, (int, float)):
            return float(self) < other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, ExtendedReal):
            return self.kind is other.kind and (self.kind is not Kind.FINITE or self.value == other.value)
        if isinstance(other, (int, float)):
            return float(self) == other
        return NotImplemented

    def __hash__(self):
        return hash((self.kind, self.value))

    def __str__(self):
        if self.kind is Kind.FINITE:
            return repr(self.value)
        return self.kind.value


POS_INF = ExtendedReal(Kind.POS_INF)
NEG_INF = ExtendedReal(Kind.NEG_INF)
