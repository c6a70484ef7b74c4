"""
End-to-end acceptance checks of the numerical pipeline against closed forms.
"""

import math

import numpy as np
import pytest

from spectral_instability.asymptotics import (
    OscillatorParams,
    davies_kuijlaars_c1,
    phi_prime,
    rate_c,
    saddle_x,
    weyl_modulus,
)
from spectral_instability.evaluation import AcceptanceSuite, run_acceptance
from spectral_instability.optimization import get_spectrum
from spectral_instability.pseudospectra import disk_inclusion_check
from spectral_instability.semigroup import Convergence, compare_partial_sum, semigroup_report
from spectral_instability.spectral import (
    DiscretizationConfig,
    fit_instability_rate,
    kappa_rows,
    wkb_leading_error,
)

DEFAULT = DiscretizationConfig()


@pytest.mark.integration
class TestInstabilityRate:
    """log kappa_n grows at the closed-form rate."""

    def test_harmonic(self):
        params = OscillatorParams(k=1, theta=math.pi / 2)
        rows = kappa_rows(get_spectrum(params, DiscretizationConfig(300, 25)))
        fit = fit_instability_rate(rows, params, (10, 25))
        assert fit.relative_gap <= 0.10

    def test_quartic(self):
        params = OscillatorParams(k=2, theta=0.8)
        rows = kappa_rows(get_spectrum(params, DiscretizationConfig(300, 25)))
        fit = fit_instability_rate(rows, params, (8, 18))
        assert fit.relative_gap <= 0.15
        assert fit.rate_c == pytest.approx(rate_c(params))


@pytest.mark.integration
class TestClosedForms:
    """Identities that need no eigensolve."""

    @pytest.mark.parametrize("theta", [0.2, 0.7, 1.2, 1.5])
    def test_davies_kuijlaars(self, theta):
        params = OscillatorParams(k=1, theta=theta)
        assert abs(rate_c(params) - davies_kuijlaars_c1(theta)) <= 1e-10

    @pytest.mark.parametrize("k", [1, 2, 3, 4])
    @pytest.mark.parametrize("fraction", [0.05, 0.3, 0.6, 0.95])
    def test_saddle_stationarity(self, k, fraction):
        params = OscillatorParams(k=k, theta=fraction * (k + 1) * math.pi / (2 * k))
        assert abs(phi_prime(params, saddle_x(params))) <= 1e-10


@pytest.mark.integration
class TestSpectralStructure:
    """Half-line spectrum, Weyl law, biorthogonality and the selfadjoint limit."""

    @pytest.mark.parametrize("k,theta", [(1, 1.0), (2, 0.6), (3, 0.5)])
    def test_half_line(self, k, theta):
        params = OscillatorParams(k=k, theta=theta)
        eigenvalues = get_spectrum(params, DEFAULT).eigenvalues
        assert np.max(np.abs(np.angle(eigenvalues) - theta / (k + 1))) <= 1e-8

    def test_weyl_law(self):
        spectrum = get_spectrum(OscillatorParams(k=2, theta=0.0), DEFAULT)
        gaps = [abs(spectrum.pair(n).modulus / weyl_modulus(n - 1, 2) - 1.0) for n in (10, 20)]
        assert gaps[0] <= 0.01
        assert gaps[1] <= 0.005
        assert gaps[1] < gaps[0]

    @pytest.mark.parametrize("k,theta", [(1, 1.0), (2, 0.6)])
    def test_biorthogonality(self, k, theta):
        spectrum = get_spectrum(OscillatorParams(k=k, theta=theta), DEFAULT)
        b = np.array([pair.biorthonormal_coeffs for pair in spectrum.pairs[:10]])
        gram = b @ b.T
        assert np.max(np.abs(gram - np.diag(np.diag(gram)))) <= 1e-8

    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_selfadjoint_kappa(self, k):
        spectrum = get_spectrum(OscillatorParams(k=k, theta=0.0), DEFAULT)
        assert np.max(np.abs(spectrum.kappas[:15] - 1.0)) <= 1e-12


@pytest.mark.integration
class TestPseudospectralDisk:
    """||R(z)|| delta approaches kappa_n next to lambda_n."""

    def test_harmonic_fourth_eigenvalue(self):
        params = OscillatorParams(k=1, theta=math.pi / 2)
        modulus = get_spectrum(params, DEFAULT).pair(4).modulus
        results = disk_inclusion_check(params, DEFAULT, 4, [1e-3 * modulus, 1e-4 * modulus])
        ratios = [ratio for _, ratio in results]
        assert all(0.85 <= ratio <= 1.15 for ratio in ratios)
        assert abs(ratios[1] - 1.0) <= abs(ratios[0] - 1.0)


@pytest.mark.integration
class TestSemigroupSeries:
    """Normal convergence of the projection series."""

    @pytest.mark.parametrize("t", [0.1, 0.5, 1.0])
    def test_quartic_converges(self, t):
        params = OscillatorParams(k=2, theta=math.pi / 4)
        assert semigroup_report(params, DEFAULT, t).classification is Convergence.CONVERGING
        v = np.zeros(DEFAULT.basis_size, dtype=complex)
        v[0] = 1.0
        assert compare_partial_sum(params, DEFAULT, t, v, 20) <= 1e-6

    def test_harmonic_crossover(self):
        """Diverging below both threshold candidates, converging above both."""
        params = OscillatorParams(k=1, theta=math.pi / 2)
        reference = semigroup_report(params, DEFAULT, 1.0)
        thresholds = [reference.semigroup_threshold, reference.rate_threshold]
        early = semigroup_report(params, DEFAULT, 0.1 * min(thresholds))
        late = semigroup_report(params, DEFAULT, 3.0 * max(thresholds))
        assert early.classification is Convergence.DIVERGING
        assert late.classification is Convergence.CONVERGING
        assert early.empirical_crossover == pytest.approx(late.empirical_crossover)
        assert 0.1 * min(thresholds) < late.empirical_crossover < 3.0 * max(thresholds)


@pytest.mark.integration
class TestWkb:
    """Leading-order WKB error shrinks like h."""

    def test_harmonic_twenty_and_forty(self):
        params = OscillatorParams(k=1, theta=0.0)
        config = DiscretizationConfig(200, 40)
        spectrum = get_spectrum(params, config)
        coarse = wkb_leading_error(params, spectrum.pair(20), config)
        fine = wkb_leading_error(params, spectrum.pair(40), config)
        assert fine <= 0.7 * coarse


@pytest.mark.integration
class TestAcceptanceSuite:
    """The verify command's suite passes on representative parameters."""

    @pytest.mark.parametrize("k,theta", [(1, 0.0), (1, math.pi / 2), (2, math.pi / 4), (3, 0.0)])
    def test_all_checks_pass(self, k, theta):
        results = run_acceptance(OscillatorParams(k=k, theta=theta), DEFAULT)
        failed = [result for result in results if not result.passed]
        assert not failed, [result.to_dict() for result in failed]

    def test_half_line_at_steep_angle(self):
        """Near theta = pi the leading pairs are ill-conditioned; the check still holds."""
        suite = AcceptanceSuite(OscillatorParams(k=1, theta=2.0), DEFAULT)
        result = suite.check_half_line()
        assert result.passed, result.detail
        assert result.value <= result.threshold == 1.0
        kappas = [pair.kappa for pair in suite.spectrum.pairs[:20]]
        assert max(kappas) > 1e6

    def test_check_selection(self):
        rotated = AcceptanceSuite(OscillatorParams(k=1, theta=1.0), DEFAULT)
        names = [name for name, _ in rotated.applicable_checks()]
        assert "davies_kuijlaars" in names
        assert "selfadjoint_kappa" not in names
        assert "wkb_leading_order" not in names

        selfadjoint = AcceptanceSuite(OscillatorParams(k=2, theta=0.0), DEFAULT)
        names = [name for name, _ in selfadjoint.applicable_checks()]
        assert "selfadjoint_kappa" in names
        assert "rate_fit" not in names

    @pytest.mark.slow
    def test_wkb_check_runs_with_forty_pairs(self):
        results = run_acceptance(OscillatorParams(k=1, theta=0.0), DiscretizationConfig(200, 40))
        wkb = [result for result in results if result.name == "wkb_leading_order"]
        assert len(wkb) == 1 and wkb[0].passed

    @pytest.mark.slow
    def test_rotated_wkb_check_uses_selfadjoint_rotation(self):
        """At theta != 0 the WKB check reports the value of the theta = 0 problem."""
        config = DiscretizationConfig(200, 40)
        rotated = AcceptanceSuite(OscillatorParams(k=1, theta=math.pi / 2), config).check_wkb()
        selfadjoint = AcceptanceSuite(OscillatorParams(k=1, theta=0.0), config).check_wkb()
        assert rotated.passed
        assert rotated.value == selfadjoint.value
