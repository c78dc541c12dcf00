import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import random_kusuoka, random_w
from riskdegree import (
    Branch,
    DomainError,
    DualUtilityCdf,
    EmptyFamily,
    SpectralMeasure,
    UnsupportedExponent,
    coherent_degree,
    cvar_measure,
    degree,
    degree_from_mu,
    degree_from_w,
    equivalent_cvar,
    generalized_mean,
    gini,
    h_p_curve,
    kusuoka_to_w,
    make_kusuoka,
    mix,
    s_p_value,
)

TWO_ATOM = make_kusuoka([(0.0, 0.5), (0.5, 0.5)])


def w_alpha(alpha):
    return DualUtilityCdf([0.0, alpha, 1.0], [0.0, 0.0, 1.0])


class TestGeneralizedMean:
    @pytest.mark.parametrize("p", [-3.0, -1.0, 0.0, 0.5, 1.0, 4.0])
    def test_dirac(self, p):
        assert generalized_mean(cvar_measure(0.5), p) == pytest.approx(0.5, abs=1e-15)

    def test_geometric(self):
        # mpmath, 40 digits: sqrt(1 * 0.5) = 0.70710678118654752440...
        assert generalized_mean(TWO_ATOM, 0.0) == pytest.approx(0.7071067811865475244, abs=1e-15)

    def test_harmonic(self):
        assert generalized_mean(TWO_ATOM, -1.0) == pytest.approx(2.0 / 3.0, abs=1e-15)

    def test_zero_argument_conventions(self):
        mu = make_kusuoka([(0.0, 0.5), (1.0, 0.5)])
        assert generalized_mean(mu, 1.0) == pytest.approx(0.5, abs=1e-15)
        assert generalized_mean(mu, 0.0) == 0.0
        assert generalized_mean(mu, -2.0) == 0.0
        assert generalized_mean(cvar_measure(1.0), 3.0) == 0.0


class TestDegreeFromMu:
    @pytest.mark.parametrize("alpha", [0.0, 0.3, 0.9, 1.0])
    @pytest.mark.parametrize("p", [-4.0, -1.0, 0.0, 1.0, 2.5])
    def test_normalization(self, alpha, p):
        assert degree_from_mu(cvar_measure(alpha), p) == pytest.approx(alpha, abs=1e-12)

    def test_arithmetic(self):
        assert degree_from_mu(TWO_ATOM, 1.0) == pytest.approx(0.25, abs=1e-15)

    def test_harmonic(self):
        assert degree_from_mu(TWO_ATOM, -1.0) == pytest.approx(1.0 / 3.0, abs=1e-15)


class TestDegreeFromW:
    def test_generic(self):
        assert degree_from_w(w_alpha(0.5), 2.0) == pytest.approx(0.5, abs=1e-14)

    def test_p_zero_expectation(self):
        assert degree_from_w(DualUtilityCdf([0.0, 1.0], [0.0, 1.0]), 0.0) == pytest.approx(0.0, abs=1e-15)

    def test_p_minus_one(self):
        assert degree_from_w(w_alpha(0.25), -1.0) == pytest.approx(0.25, abs=1e-15)

    def test_rejects_below_minus_one(self):
        with pytest.raises(UnsupportedExponent):
            degree_from_w(w_alpha(0.25), -1.5)

    def test_tiny_p_uses_log_branch(self):
        w = w_alpha(0.3)
        assert degree_from_w(w, 1e-13) == degree_from_w(w, 0.0)


class TestDegree:
    def test_cvar(self):
        rep = degree(cvar_measure(0.7), 3.0)
        assert rep.value == pytest.approx(0.7, abs=1e-12)
        assert rep.branch is Branch.GENERIC
        assert rep.cross_residual <= 1e-12

    def test_mu_branch(self):
        rep = degree(TWO_ATOM, -2.0)
        # 1 - 2.5^(-1/2), mpmath: 0.36754446796632413360...
        assert rep.value == pytest.approx(0.3675444679663241336, abs=1e-15)
        assert rep.branch is Branch.MU_FORMULA
        assert rep.cross_residual is None

    def test_atom_at_one_p_zero(self):
        rep = degree(make_kusuoka([(0.2, 0.5), (1.0, 0.5)]), 0.0)
        assert rep.value == 1.0
        assert rep.branch is Branch.P_ZERO

    def test_branches(self):
        assert degree(TWO_ATOM, -1.0).branch is Branch.P_MINUS_ONE
        assert degree(TWO_ATOM, 5e-13).branch is Branch.P_ZERO
        assert degree(TWO_ATOM, 0.3).branch is Branch.GENERIC

    def test_accepts_dual_utility(self):
        assert degree(w_alpha(0.4), 1.0).value == pytest.approx(0.4, abs=1e-14)

    def test_cross_residual_random(self, rng):
        for _ in range(200):
            m = SpectralMeasure(random_kusuoka(rng))
            for p in (-1.0, -0.7, 0.0, 0.3, 1.0, 3.0):
                assert degree(m, p).cross_residual <= 1e-9


class TestAxioms:
    def test_normalization_random(self, rng):
        for alpha, p in zip(rng.uniform(0, 1, 200), rng.uniform(-5, 5, 200)):
            assert degree(cvar_measure(alpha), p).value == pytest.approx(alpha, abs=1e-10)

    def test_p_linearity(self, rng):
        for _ in range(200):
            mu1 = random_kusuoka(rng, allow_one=False)
            mu2 = random_kusuoka(rng, allow_one=False)
            lam = float(rng.uniform())
            p = float(rng.uniform(-3, 3))
            mixed = mix([mu1, mu2], [lam, 1.0 - lam])
            lhs = float(s_p_value(mixed, p))
            rhs = lam * float(s_p_value(mu1, p)) + (1.0 - lam) * float(s_p_value(mu2, p))
            assert abs(lhs - rhs) <= 1e-9 * max(1.0, abs(rhs))

    def test_monotone_in_p(self, rng):
        grid = np.linspace(-6, 6, 61)
        for _ in range(100):
            mu = random_kusuoka(rng)
            vals = [degree_from_mu(mu, p) for p in grid]
            assert np.all(np.diff(vals) <= 1e-12)

    def test_continuity_at_zero(self, rng):
        for _ in range(100):
            mu = random_kusuoka(rng, allow_one=False)
            d0 = degree_from_mu(mu, 0.0)
            assert abs(degree_from_mu(mu, 1e-6) - d0) <= 1e-4
            assert abs(degree_from_mu(mu, -1e-6) - d0) <= 1e-4

    def test_dominance(self, rng):
        # w1 <= w2 pointwise => r_1 ordered the other way; build w1 = mix of w2 with ess sup
        for _ in range(100):
            w2 = random_w(rng)
            lam = float(rng.uniform())
            m1 = mix([SpectralMeasure(w2), cvar_measure(1.0)], [1.0 - lam, lam])
            w1 = m1.dual_utility
            grid = np.linspace(0, 1, 101)[:-1]
            assert np.all(w1(grid) <= w2(grid) + 1e-12)
            assert degree(m1, 1.0).value >= degree(w2, 1.0).value - 1e-12

    @settings(max_examples=200, deadline=None)
    @given(
        st.lists(st.tuples(st.floats(0.0, 1.0), st.floats(0.01, 1.0)), min_size=1, max_size=10),
        st.floats(-8.0, 8.0),
    )
    def test_bounds(self, pairs, p):
        total = sum(lam for _, lam in pairs)
        mu = make_kusuoka([(a, lam / total) for a, lam in pairs])
        assert 0.0 <= degree(mu, p).value <= 1.0


class TestHp:
    def test_p_one_identity(self):
        for a, h in h_p_curve(1.0, [0.0, 0.2, 0.7, 0.99]):
            assert h == pytest.approx(a, abs=1e-15)

    def test_p_zero(self):
        assert h_p_curve(0.0, [0.5])[0][1] == pytest.approx(math.log(2.0), abs=1e-15)

    def test_p_two(self):
        assert h_p_curve(2.0, [0.5])[0][1] == pytest.approx(0.375, abs=1e-15)

    def test_alpha_one(self):
        with pytest.raises(DomainError):
            h_p_curve(0.0, [1.0])
        with pytest.raises(DomainError):
            h_p_curve(-1.0, [1.0])
        assert h_p_curve(2.0, [1.0])[0][1] == 0.5

    def test_linearizes_degree(self, rng):
        # h_p(r_p(mix)) is the same mixture of h_p(alpha_i)
        for _ in range(50):
            mu = random_kusuoka(rng, allow_one=False)
            p = float(rng.uniform(-3, 3))
            hs = [h for _, h in h_p_curve(p, mu.alphas)]
            target = float(np.dot(mu.weights, hs))
            got = h_p_curve(p, [degree_from_mu(mu, p)])[0][1]
            assert got == pytest.approx(target, rel=1e-9, abs=1e-9)


class TestSp:
    def test_values(self):
        assert s_p_value(cvar_measure(0.5), 1.0).value == pytest.approx(0.5, abs=1e-15)
        assert s_p_value(cvar_measure(0.5), 0.0).value == pytest.approx(math.log(0.5), abs=1e-15)
        assert s_p_value(cvar_measure(1.0), 2.0).value == 0.0

    def test_infinite(self):
        assert s_p_value(cvar_measure(1.0), -1.0).is_pos_inf
        assert s_p_value(cvar_measure(1.0), 0.0).is_neg_inf


class TestEquivalentCvar:
    def test_arithmetic(self):
        assert equivalent_cvar(make_kusuoka([(0.25, 0.5), (0.75, 0.5)]), 1.0) == pytest.approx(0.5, abs=1e-15)

    def test_fixed_point(self):
        for p in (-2.0, 0.0, 1.5):
            assert equivalent_cvar(cvar_measure(0.3), p) == pytest.approx(0.3, abs=1e-12)

    def test_geometric(self):
        assert equivalent_cvar(TWO_ATOM, 0.0) == pytest.approx(0.2928932188134524756, abs=1e-15)

    def test_same_degree(self, rng):
        for _ in range(50):
            mu = random_kusuoka(rng)
            p = float(rng.uniform(-4, 4))
            a = equivalent_cvar(mu, p)
            assert degree(cvar_measure(a), p).value == pytest.approx(degree(mu, p).value, abs=1e-12)


class TestCoherent:
    def test_max(self):
        assert coherent_degree([cvar_measure(0.3), cvar_measure(0.6)], 1.0) == pytest.approx(0.6, abs=1e-15)

    def test_singleton(self):
        assert coherent_degree([TWO_ATOM], 0.0) == degree_from_mu(TWO_ATOM, 0.0)

    def test_atom_at_one(self):
        fam = [cvar_measure(0.5), make_kusuoka([(0.0, 0.5), (1.0, 0.5)])]
        assert coherent_degree(fam, 0.0) == 1.0

    def test_empty(self):
        with pytest.raises(EmptyFamily):
            coherent_degree([], 1.0)


def test_gini_matches_r1(rng):
    for _ in range(100):
        mu = random_kusuoka(rng)
        assert gini(kusuoka_to_w(mu)) == pytest.approx(degree_from_mu(mu, 1.0), abs=1e-12)
