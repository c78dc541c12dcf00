"""Degree of risk aversion for spectral risk measures."""

from .degree import (
    Branch,
    DegreeReport,
    coherent_degree,
    degree,
    degree_from_mu,
    degree_from_w,
    equivalent_cvar,
    generalized_mean,
    h_p_curve,
    s_p_value,
)
from .errors import (
    ConvexityError,
    DomainError,
    EmptyFamily,
    EmptySample,
    InfiniteRisk,
    MeasureFormatError,
    RiskDegreeError,
    UnsupportedExponent,
    WeightSumError,
)
from .evaluate import (
    EmpiricalSample,
    EquivalenceReport,
    ZpFamily,
    check_equivalence,
    cvar_empirical,
    cvar_zp,
    rho_empirical,
    rho_zp,
    zp_cdf,
    zp_quantile,
)
from .extended import NEG_INF, POS_INF, ExtendedReal
from .metrics import gini, wasserstein1_to_uniform
from .riskcore import (
    DualUtilityCdf,
    KusuokaMeasure,
    SpectralMeasure,
    cvar_measure,
    kusuoka_to_w,
    left_derivative_at_one,
    make_kusuoka,
    mix,
    w_to_kusuoka,
)
from .stieltjes import integrate_cdf, integrate_identity, integrate_log, integrate_power

__version__ = "0.1.0"
