import math

import numpy as np
import pytest

import hhm
from hhm import (
    DomainError,
    GridTooShortError,
    ModelParams,
    RadialSolution,
    StepTooLargeError,
)
from hhm.model import hypergeometric_parameters

H3 = ModelParams(3, 2.0, 2.0)
CH2 = ModelParams(4, 1.0, 2.0)
DR7 = ModelParams(7, 1.0, 4.0)


def h3_phi(lam, r):
    # closed-form spherical function of the constant-curvature 3-space
    if lam == 0.0:
        return r / math.sinh(r) if r > 0 else 1.0
    return math.sin(lam * r) / (lam * math.sinh(r)) if r > 0 else 1.0


class TestFrobeniusStart:
    def test_matches_hyperbolic_series(self):
        r0 = 1e-3
        phi0, dphi0 = hhm.frobenius_start(H3, 1.0, r0)
        assert phi0 == pytest.approx(h3_phi(1.0, r0), abs=1e-12)
        h = 1e-4
        fd = (h3_phi(1.0, r0 + h) - h3_phi(1.0, r0 - h)) / (2 * h)
        assert dphi0 == pytest.approx(fd, abs=1e-10)

    def test_leading_coefficient(self):
        # phi ~ 1 - mu r^2 / (2n) with mu = q^2/4 at lam = 0; at this offset
        # the quartic correction sits below 1e-15
        r0 = 1e-4
        phi0, _ = hhm.frobenius_start(CH2, 0.0, r0)
        assert phi0 == pytest.approx(1.0 - CH2.q**2 / 8.0 / CH2.n * r0 * r0, abs=1e-15)

    def test_below_one_for_positive_eigenvalue(self):
        phi0, dphi0 = hhm.frobenius_start(DR7, 0.7, 5e-3)
        assert phi0 < 1.0
        assert dphi0 < 0.0

    def test_offset_domain(self):
        with pytest.raises(DomainError):
            hhm.frobenius_start(H3, 1.0, 0.0)
        with pytest.raises(DomainError):
            hhm.frobenius_start(H3, 1.0, 0.05)


class TestSolveEigenOde:
    def test_hyperbolic_closed_form(self):
        sol = hhm.solve_eigen_ode(H3, 1.0, r_max=5.0, h=1e-3)
        mask = sol.r_grid >= 0.01
        exact = np.array([h3_phi(1.0, r) for r in sol.r_grid[mask]])
        assert np.max(np.abs(sol.phi[mask] - exact)) <= 1e-8

    def test_cross_oracle_against_2f1(self):
        sol = hhm.solve_eigen_ode(CH2, 0.5, r_max=5.0, h=1e-3)
        for r in np.linspace(0.01, 5.0, 40):
            assert abs(sol.at(r) - hhm.spherical_function(CH2, 0.5, r)) <= 1e-6

    def test_lambda_sign_is_bitwise_irrelevant(self):
        a = hhm.solve_eigen_ode(DR7, 1.5, r_max=3.0, h=1e-3)
        b = hhm.solve_eigen_ode(DR7, -1.5, r_max=3.0, h=1e-3)
        assert np.array_equal(a.phi, b.phi)
        assert np.array_equal(a.dphi, b.dphi)

    def test_fourth_order_convergence(self):
        def err(h):
            sol = hhm.solve_eigen_ode(H3, 1.0, r_max=5.0, h=h)
            mask = sol.r_grid >= 0.01
            exact = np.array([h3_phi(1.0, r) for r in sol.r_grid[mask]])
            return np.max(np.abs(sol.phi[mask] - exact))

        assert err(8e-3) / err(4e-3) >= 8.0

    def test_grid_covers_requested_range(self):
        sol = hhm.solve_eigen_ode(H3, 0.0, r_max=2.0, h=1e-3)
        assert sol.r_grid[-1] >= 2.0
        assert sol.r_grid[0] == pytest.approx(1e-4)

    def test_start_matches_frobenius(self):
        sol = hhm.solve_eigen_ode(DR7, 0.9, r_max=1.0, h=1e-3, r_start=1e-3)
        phi0, dphi0 = hhm.frobenius_start(DR7, 0.9, 1e-3)
        assert sol.phi[0] == phi0
        assert sol.dphi[0] == dphi0

    def test_step_ceiling(self):
        with pytest.raises(StepTooLargeError):
            hhm.solve_eigen_ode(H3, 1.0, r_max=5.0, h=2e-2)

    def test_bad_ranges(self):
        with pytest.raises(DomainError):
            hhm.solve_eigen_ode(H3, 1.0, r_max=-1.0, h=1e-3)
        with pytest.raises(DomainError):
            hhm.solve_eigen_ode(H3, 1.0, r_max=5e-5, h=1e-3)

    def test_dense_output_accuracy(self):
        sol = hhm.solve_eigen_ode(H3, 1.0, r_max=5.0, h=1e-3)
        for r in (0.0123457, 0.98765, 4.321):
            assert sol.at(r) == pytest.approx(h3_phi(1.0, r), abs=1e-10)

    def test_dense_output_outside_span(self):
        sol = hhm.solve_eigen_ode(H3, 1.0, r_max=2.0, h=1e-3)
        with pytest.raises(DomainError):
            sol.at(3.5)

    def test_dense_output_exact_at_nodes(self):
        sol = hhm.solve_eigen_ode(CH2, 0.7, r_max=2.0, h=1e-3)
        for i in (0, 17, len(sol.r_grid) - 1):
            assert sol.at(sol.r_grid[i]) == sol.phi[i]


class TestRadialSolutionValidation:
    def test_rejects_short_grid(self):
        with pytest.raises(DomainError):
            RadialSolution(
                r_grid=np.array([1.0]),
                phi=np.array([1.0]),
                dphi=np.array([0.0]),
                lam=0.0,
                model=H3,
            )

    def test_rejects_non_increasing_grid(self):
        with pytest.raises(DomainError):
            RadialSolution(
                r_grid=np.array([1.0, 1.0, 2.0]),
                phi=np.zeros(3),
                dphi=np.zeros(3),
                lam=0.0,
                model=H3,
            )


def _manual_solution(p, lam, values, h=1e-3, n=201):
    grid = np.array([0.5 + i * h for i in range(n)])
    return RadialSolution(
        r_grid=grid, phi=values(grid), dphi=np.zeros(n), lam=lam, model=p
    )


class TestOdeResidual:
    def test_solver_output_is_consistent(self):
        for p, lam in ((H3, 1.0), (CH2, 0.5)):
            sol = hhm.solve_eigen_ode(p, lam, r_max=5.0, h=1e-3)
            assert hhm.ode_residual(sol) <= 1e-6

    def test_constant_shift_is_detected(self):
        sol = hhm.solve_eigen_ode(H3, 1.0, r_max=2.0, h=1e-3)
        shifted = RadialSolution(
            r_grid=sol.r_grid,
            phi=sol.phi + 0.01,
            dphi=sol.dphi,
            lam=sol.lam,
            model=sol.model,
        )
        assert hhm.ode_residual(shifted) >= 0.009 * shifted.mu

    def test_zero_function_is_degenerate_solution(self):
        sol = _manual_solution(H3, 1.0, lambda g: np.zeros_like(g))
        assert hhm.ode_residual(sol) == 0.0

    def test_grid_too_short(self):
        sol = RadialSolution(
            r_grid=np.array([0.5, 0.6, 0.7]),
            phi=np.zeros(3),
            dphi=np.zeros(3),
            lam=0.0,
            model=H3,
        )
        with pytest.raises(GridTooShortError):
            hhm.ode_residual(sol)


class TestHypergeometricResidual:
    def test_2f1_samples_satisfy_equation(self):
        hp = hypergeometric_parameters(CH2, 0.5)
        dz = 5e-4
        z = [-1.0 + i * dz for i in range(int(round(0.99 / dz)) + 1)]
        f = [hhm.gauss_2f1(hp, zi, tol=1e-14).value.real for zi in z]
        assert hhm.hypergeometric_residual(hp, z, f) <= 1e-6

    def test_transported_ode_solution(self):
        # f(z) = Phi(r(z)) with z = -sinh^2(ell r / 2) solves the
        # hypergeometric equation
        p, lam = CH2, 1.0
        hp = hypergeometric_parameters(p, lam)
        sol = hhm.solve_eigen_ode(p, lam, r_max=3.5, h=2e-4)
        dz = 5e-4
        z = np.array([-2.0 + i * dz for i in range(int(round(1.95 / dz)) + 1)])
        f = sol.at((2.0 / p.ell) * np.arcsinh(np.sqrt(-z)))
        assert hhm.hypergeometric_residual(hp, z, f) <= 1e-5

    def test_constant_function_residual(self):
        hp = hypergeometric_parameters(DR7, 0.8)
        z = [-1.0 + 0.1 * i for i in range(9)]
        const = 0.37
        got = hhm.hypergeometric_residual(hp, z, [const] * 9)
        assert got == pytest.approx(abs(hp.a * hp.b) * const, rel=1e-12)

    def test_decreasing_grid_accepted(self):
        hp = hypergeometric_parameters(CH2, 0.5)
        dz = 1e-3
        z = [-0.01 - i * dz for i in range(400)]
        f = [hhm.gauss_2f1(hp, zi, tol=1e-14).value.real for zi in z]
        assert hhm.hypergeometric_residual(hp, z, f) <= 1e-6

    def test_grid_too_short(self):
        hp = hypergeometric_parameters(CH2, 0.5)
        with pytest.raises(GridTooShortError):
            hhm.hypergeometric_residual(hp, [-0.3, -0.2, -0.1], [1.0, 1.0, 1.0])

    def test_non_monotone_grid_rejected(self):
        hp = hypergeometric_parameters(CH2, 0.5)
        with pytest.raises(DomainError):
            hhm.hypergeometric_residual(
                hp, [-0.5, -0.3, -0.4, -0.2, -0.1], [1.0] * 5
            )
