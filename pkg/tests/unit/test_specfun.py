"""
Tests for spectral_instability.specfun
"""

import cmath
import math

import numpy as np
import pytest

from spectral_instability.specfun import (
    BranchedSqrtState,
    QuadratureConfig,
    airy_ai,
    airy_ai_with_derivative,
    branched_sqrt,
    branched_sqrt_path,
    gamma_real,
    integrate_line,
)
from spectral_instability.utils.exceptions import (
    BranchCutError,
    ConfigurationError,
    DomainError,
    QuadratureConvergenceError,
)


@pytest.mark.unit
class TestGamma:
    """Test gamma_real."""

    def test_half(self):
        """Gamma(1/2) is sqrt(pi)."""
        assert gamma_real(0.5) == pytest.approx(1.7724538509055160, rel=1e-15)

    def test_one(self):
        """Gamma(1) is 1."""
        assert gamma_real(1.0) == pytest.approx(1.0, abs=1e-15)

    def test_matches_integral(self):
        """Gamma(3/4) agrees with the integral of t^{-1/4} e^{-t}, computed via t = s^4."""
        # substitution t = s^4 removes the endpoint singularity
        value = integrate_line(lambda s: 4.0 * s**2 * np.exp(-(s**4)), 0.0, 8.0)
        assert gamma_real(0.75) == pytest.approx(value.real, rel=1e-10)

    def test_recurrence(self):
        """Gamma(x+1) = x Gamma(x)."""
        for x in (0.3, 1.7, 4.2):
            assert gamma_real(x + 1) == pytest.approx(x * gamma_real(x), rel=1e-13)

    @pytest.mark.parametrize("x", [0.0, -1.5, float("inf"), float("nan")])
    def test_rejects_non_positive(self, x):
        """Non-positive or non-finite arguments are domain errors."""
        with pytest.raises(DomainError):
            gamma_real(x)


@pytest.mark.unit
class TestAiry:
    """Test airy_ai."""

    def test_value_at_zero(self):
        """Ai(0) = 3^{-2/3} / Gamma(2/3)."""
        assert airy_ai(0).real == pytest.approx(0.3550280538878172, rel=1e-14)
        assert abs(airy_ai(0).imag) < 1e-16

    def test_large_positive_asymptotics(self):
        """Ai(25) follows the leading exponential decay within 2%."""
        zeta = 25.0
        leading = math.exp(-(2.0 / 3.0) * zeta**1.5) / (2.0 * math.sqrt(math.pi) * zeta**0.25)
        assert airy_ai(zeta).real == pytest.approx(leading, rel=0.02)

    def test_first_zero(self):
        """Ai vanishes at its first zero."""
        assert abs(airy_ai(-2.338107410459767)) < 1e-9

    def test_satisfies_airy_equation(self):
        """Ai'' = z Ai at a complex point, by central differences of Ai'."""
        z = 0.7 + 0.4j
        step = 1e-5
        _, forward = airy_ai_with_derivative(z + step)
        _, backward = airy_ai_with_derivative(z - step)
        second = (forward - backward) / (2.0 * step)
        assert abs(second - z * airy_ai(z)) < 1e-8

    def test_conjugate_symmetry(self):
        """Ai is real on the real axis, so Ai(conj z) = conj Ai(z)."""
        z = -1.2 + 2.5j
        assert airy_ai(z.conjugate()) == pytest.approx(airy_ai(z).conjugate(), rel=1e-13)


@pytest.mark.unit
class TestBranchedSqrt:
    """Test branched_sqrt and branched_sqrt_path."""

    def test_minus_one_is_i(self):
        """The first root of -1 is i."""
        assert branched_sqrt(-1, BranchedSqrtState()) == pytest.approx(1j)

    def test_continuity_selection(self):
        """The root closest to the previous value is chosen."""
        state = BranchedSqrtState(previous_value=-2 + 0.1j, initialized=True)
        assert branched_sqrt(4, state) == pytest.approx(-2)
        assert state.previous_value == pytest.approx(-2)

    def test_cut_rejected_when_uninitialized(self):
        """Starting on [0, +inf) is a branch-cut error."""
        with pytest.raises(BranchCutError):
            branched_sqrt(2.0, BranchedSqrtState())

    def test_path_has_no_sign_jump(self):
        """Tracking around e^{it}, t in [pi/2, 3pi/2], gives a continuous root."""
        ts = np.linspace(math.pi / 2, 3 * math.pi / 2, 400)
        roots = np.array(branched_sqrt_path(np.exp(1j * ts), BranchedSqrtState()))
        assert np.max(np.abs(np.diff(roots))) < 0.05
        assert np.allclose(roots**2, np.exp(1j * ts))

    def test_path_crosses_principal_cut(self):
        """The tracked root stays continuous where the principal root would flip."""
        ts = np.linspace(0.5, 2 * math.pi - 0.5, 200)
        roots = np.array(branched_sqrt_path(np.exp(1j * ts), BranchedSqrtState()))
        principal = np.array([cmath.sqrt(w) for w in np.exp(1j * ts)])
        assert np.max(np.abs(np.diff(roots))) < 0.05
        assert np.max(np.abs(np.diff(principal))) > 1.0

    def test_reset(self):
        """reset() forgets the history."""
        state = BranchedSqrtState(previous_value=1 + 0j, initialized=True)
        state.reset()
        assert not state.initialized
        assert state.previous_value == 0j


@pytest.mark.unit
class TestIntegrateLine:
    """Test integrate_line."""

    def test_constant(self):
        """A constant integrates to the segment length."""
        value = integrate_line(lambda t: np.ones_like(t), 0.0, 1 + 1j)
        assert value == pytest.approx(1 + 1j, abs=1e-14)

    def test_scalar_integrand_is_broadcast(self):
        """An integrand returning a scalar is broadcast over the nodes."""
        assert integrate_line(lambda t: 1.0, 0.0, 2.0) == pytest.approx(2.0, abs=1e-14)

    def test_linear(self):
        """The integral of t over [0, 2] is 2."""
        assert integrate_line(lambda t: t, 0.0, 2.0) == pytest.approx(2.0, abs=1e-14)

    def test_quarter_circle(self):
        """sqrt(1 - t^2) over [0, 1] is pi/4 despite the endpoint singularity."""
        value = integrate_line(lambda t: np.sqrt(1.0 - t**2), 0.0, 1.0)
        assert abs(value - math.pi / 4) < 1e-10

    def test_complex_path(self):
        """The integral of e^t along [0, i pi] is -2."""
        value = integrate_line(np.exp, 0.0, 1j * math.pi)
        assert value == pytest.approx(-2.0, abs=1e-13)

    def test_empty_segment(self):
        """A degenerate segment integrates to 0."""
        assert integrate_line(np.exp, 1 + 1j, 1 + 1j) == 0j

    @pytest.mark.parametrize(
        "f, a, b",
        [
            (np.exp, 0.0, 1 + 1j),
            (lambda t: t**5 - 3j * t**2 + np.cos(t), -1 - 0.5j, 2 + 1j),
            (lambda t: np.exp(-(t**2)) * np.sin(3 * t), 0.0, 3.0 - 0.5j),
        ],
    )
    @pytest.mark.parametrize("fraction", [0.5, 1 / 3])
    def test_additive_over_split_segment(self, f, a, b, fraction):
        """Integrals over [a, c] and [c, b] add up to the one over [a, b]."""
        cfg = QuadratureConfig()
        c = a + fraction * (b - a)
        whole = integrate_line(f, a, b, cfg)
        split = integrate_line(f, a, c, cfg) + integrate_line(f, c, b, cfg)
        assert abs(split - whole) <= 2 * cfg.tolerance(whole)

    def test_budget_exhaustion_carries_estimate(self):
        """Running out of subdivisions raises with the best estimate attached."""
        cfg = QuadratureConfig(max_subdivisions=2)
        with pytest.raises(QuadratureConvergenceError) as exc_info:
            integrate_line(lambda t: np.abs(t - 0.3) ** -0.5, 0.0, 1.0, cfg)
        assert math.isfinite(abs(exc_info.value.best_estimate))

    @pytest.mark.parametrize(
        "kwargs",
        [{"abs_tol": 0.0}, {"rel_tol": -1.0}, {"rule_order": 1}, {"max_subdivisions": 0}],
    )
    def test_invalid_config(self, kwargs):
        """QuadratureConfig validates its tolerances."""
        with pytest.raises(ConfigurationError):
            QuadratureConfig(**kwargs)
