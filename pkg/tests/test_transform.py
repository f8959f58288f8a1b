import math

import pytest

import hhm
from hhm import DomainError, MaxSubdivisionsError, ModelParams

H3 = ModelParams(3, 2.0, 2.0)
CH2 = ModelParams(4, 1.0, 2.0)


class TestQuadrature:
    def test_polynomial(self):
        val, err = hhm.quadrature(lambda x: x * x, 0.0, 1.0, 1e-10)
        assert val == pytest.approx(1.0 / 3.0, abs=1e-14)
        assert err <= 1e-10

    def test_sinh_squared_antiderivative(self):
        # int_0^r sinh^2 = sinh(2r)/4 - r/2
        val, _ = hhm.quadrature(lambda t: math.sinh(t) ** 2, 0.0, 2.0, 1e-12)
        assert val == pytest.approx(math.sinh(4.0) / 4.0 - 1.0, rel=1e-12)

    def test_zero_integrand(self):
        val, err = hhm.quadrature(lambda x: 0.0, 0.0, 1.0, 1e-12)
        assert val == 0.0
        assert err == 0.0

    def test_panel_budget_exhaustion(self):
        with pytest.raises(MaxSubdivisionsError):
            hhm.quadrature(math.sin, 0.0, 10.0, 1e-30, max_panels=4)

    def test_bad_interval(self):
        with pytest.raises(DomainError):
            hhm.quadrature(math.sin, 1.0, 0.0, 1e-8)

    def test_deterministic(self):
        f = lambda x: math.exp(3.0 * x) * math.sin(7.0 * x)
        a = hhm.quadrature(f, 0.0, 4.0, 1e-11)
        b = hhm.quadrature(f, 0.0, 4.0, 1e-11)
        assert a == b

    def test_interval_additivity(self):
        f = lambda x: math.cos(3.0 * x) / (1.0 + x * x)
        whole, _ = hhm.quadrature(f, 0.0, 5.0, 1e-12)
        left, _ = hhm.quadrature(f, 0.0, 1.7, 1e-12)
        right, _ = hhm.quadrature(f, 1.7, 5.0, 1e-12)
        assert whole == pytest.approx(left + right, abs=1e-11)


class TestProfiles:
    def test_bump_shape(self):
        bump = hhm.bump_profile(2.0)
        assert bump.eval(0.0) == 1.0
        assert bump.eval(1.9) > 0.0
        assert bump.eval(2.0) == 0.0
        assert bump.eval(5.0) == 0.0

    def test_bump_rejects_bad_radius(self):
        with pytest.raises(DomainError):
            hhm.bump_profile(0.0)

    def test_sampled_profile_interpolates(self):
        prof = hhm.profile_from_samples([(0.0, 1.0), (1.0, 3.0), (2.0, 0.0)])
        assert prof.support_radius == 2.0
        assert prof.eval(0.5) == pytest.approx(2.0)
        assert prof.eval(1.5) == pytest.approx(1.5)
        assert prof.eval(2.5) == 0.0

    def test_sampled_profile_validation(self):
        with pytest.raises(DomainError):
            hhm.profile_from_samples([(0.0, 1.0)])
        with pytest.raises(DomainError):
            hhm.profile_from_samples([(-1.0, 1.0), (1.0, 1.0)])


class TestSphericalFourier:
    def test_zero_profile(self):
        zero = hhm.RadialProfile(support_radius=2.0, eval=lambda r: 0.0)
        out = hhm.spherical_fourier(H3, zero, 1.0, tol=1e-10)
        assert out.value == 0.0

    def test_even_in_lambda(self):
        bump = hhm.bump_profile(2.0)
        tol = 1e-10
        for lam in (0.6, 1.4):
            plus = hhm.spherical_fourier(H3, bump, lam, tol=tol)
            minus = hhm.spherical_fourier(H3, bump, -lam, tol=tol)
            assert abs(plus.value - minus.value) <= 2 * tol

    def test_refined_simpson_oracle(self):
        # frozen oracle: Simpson's rule with 4096 panels on the closed-form
        # integrand 4 pi * bump(r) * sin(r)/sinh(r) * sinh^2(r), which is
        # independent of both the quadrature and the series kernel
        # (a tenfold refinement changes the value below 1e-14)
        expected = 9.344167057878723
        bump = hhm.bump_profile(2.0)
        out = hhm.spherical_fourier(H3, bump, 1.0, tol=1e-10)
        assert out.value == pytest.approx(expected, abs=1e-7)
        assert out.kernel_used == "2f1"

    def test_linearity(self):
        tol = 1e-9
        f1 = hhm.bump_profile(2.0)
        f2 = hhm.profile_from_samples([(0.0, 0.5), (1.0, 0.25), (2.0, 0.0)])
        alpha = 1.7
        combo = hhm.RadialProfile(
            support_radius=2.0,
            eval=lambda r: alpha * f1.eval(r) + f2.eval(r),
        )
        lam = 0.8
        lhs = hhm.spherical_fourier(CH2, combo, lam, tol=tol).value
        rhs = (
            alpha * hhm.spherical_fourier(CH2, f1, lam, tol=tol).value
            + hhm.spherical_fourier(CH2, f2, lam, tol=tol).value
        )
        assert abs(lhs - rhs) <= 3 * tol * max(1.0, abs(lhs))

    def test_ode_fallback_for_wide_support(self):
        # beyond r ~ 9 on this profile scale the series kernel gives up and
        # the transform must fall back to the integrated solution
        bump = hhm.bump_profile(12.0)
        out = hhm.spherical_fourier(ModelParams(3, 2.0, 2.0), bump, 0.5, tol=1e-8)
        assert out.kernel_used in ("ode", "mixed")
        assert math.isfinite(out.value)


class TestBallVolume:
    def test_hyperbolic_closed_form(self):
        # vol B(r) = pi (sinh 2r - 2r) on the three-dimensional profile
        for r in (1.0, 2.0, 5.0):
            want = math.pi * (math.sinh(2 * r) - 2 * r)
            assert hhm.ball_volume(H3, r, tol=1e-13) == pytest.approx(want, abs=1e-8)

    def test_euclidean_limit(self):
        for n in (3, 5):
            p = ModelParams(n, 1.0, float(n - 1))
            r = 1e-3
            euclid = hhm.sphere_surface_constant(n) * r**n / n
            assert hhm.ball_volume(p, r, tol=1e-12) / euclid == pytest.approx(
                1.0, abs=1e-5
            )

    def test_monotone_in_radius(self):
        vols = [hhm.ball_volume(CH2, r, tol=1e-10) for r in (0.5, 1.0, 2.0, 4.0, 8.0)]
        assert all(b > a for a, b in zip(vols, vols[1:]))

    def test_rejects_nonpositive_radius(self):
        with pytest.raises(DomainError):
            hhm.ball_volume(CH2, 0.0)

    def test_bishop_integral_comparison(self):
        # normalized interior profiles enclose less volume than the
        # constant-curvature profile at every radius
        for n in (3, 4):
            hyperbolic = hhm.normalized_model(n, 2.0)
            for ell in (1.2, math.sqrt(2.0), 1.8):
                p = hhm.normalized_model(n, ell)
                for r in (1.0, 5.0, 10.0):
                    vp = hhm.ball_volume(p, r, tol=1e-11)
                    vh = hhm.ball_volume(hyperbolic, r, tol=1e-11)
                    assert vp <= vh * (1 + 1e-10)


class TestEntropyEstimators:
    def test_sigma_estimator(self):
        assert abs(hhm.entropy_from_sigma(CH2, 40.0) - 2.0) <= 1e-10
        assert abs(hhm.entropy_from_sigma(H3, 40.0) - 2.0) <= 1e-12

    def test_sigma_estimator_precondition(self):
        with pytest.raises(DomainError):
            hhm.entropy_from_sigma(CH2, 5.0)

    def test_sigma_estimator_error_decays_exponentially(self):
        e1 = abs(hhm.entropy_from_sigma(CH2, 10.0) - CH2.q)
        e2 = abs(hhm.entropy_from_sigma(CH2, 20.0) - CH2.q)
        assert math.log(e2) / math.log(e1) == pytest.approx(2.0, abs=0.25)

    def test_volume_estimator(self):
        assert abs(hhm.entropy_from_volume(H3, 40.0) - 2.0) <= 1e-1
        assert abs(hhm.entropy_from_volume(CH2, 80.0) - 2.0) <= 5e-2

    def test_volume_estimator_precondition(self):
        with pytest.raises(DomainError):
            hhm.entropy_from_volume(CH2, 10.0)

    def test_estimators_converge_together(self):
        diffs = [
            abs(hhm.entropy_from_volume(CH2, r) - hhm.entropy_from_sigma(CH2, r))
            for r in (20.0, 40.0, 80.0)
        ]
        assert diffs[0] > diffs[1] > diffs[2]
