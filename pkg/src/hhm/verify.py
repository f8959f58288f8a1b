"""Executable verification battery.

Each check turns one analytic claim about the model family into a
measured number compared against a fixed tolerance: the curvature reading
of the density expansion, the small-radius limits, the volume comparison
inequality, equivalence of the ODE and hypergeometric routes to the
spherical functions, the variable-change residuals, and the entropy
bounds with their equality cases.  Tolerances are pinned by the stencil
orders of the estimators, not tuned per run.

``run_all`` executes the battery over the standard model set and returns
a report that is bit-for-bit reproducible for a fixed configuration.
Negative controls (perturbed solutions, wrong parameters) are part of the
battery: they pass when the corrupted data *fails* its residual floor.
"""

import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .damek_ricci import enumerate_lower_bound, enumerate_spaces
from .errors import NotNormalizedError
from .model import (
    BoundTag,
    HypergeometricParams,
    ModelParams,
    einstein_constant,
    entropy_lower_bound,
    entropy_upper_bound,
    entropy_of_normalized,
    hypergeometric_parameters,
    log_theta,
    normalize_ricci,
    normalized_model,
    sigma,
    theta,
)
from .radial_ode import RadialSolution, hypergeometric_residual, ode_residual, solve_eigen_ode
from .special import gauss_2f1, spherical_function
from .transform import ball_volume, entropy_from_sigma, entropy_from_volume

__all__ = [
    "CheckResult",
    "VerifyConfig",
    "VerifyReport",
    "STANDARD_MODELS",
    "ledger_check",
    "ledger_limits_check",
    "bishop_check",
    "ode_vs_2f1_check",
    "transformation_check",
    "z_reflection_check",
    "entropy_bound_scan",
    "run_all",
]

STANDARD_MODELS: Tuple[ModelParams, ...] = (
    ModelParams(3, 2.0, 2.0),
    ModelParams(4, 1.0, 2.0),
    ModelParams(7, 1.0, 4.0),
    ModelParams(13, 1.0, 8.0),
    ModelParams(4, math.sqrt(2.0), 2.0 * math.sqrt(2.0)),
)

SPECTRAL_MODELS: Tuple[ModelParams, ...] = (
    ModelParams(3, 2.0, 2.0),
    ModelParams(4, 1.0, 2.0),
    ModelParams(7, 1.0, 4.0),
)

SPECTRAL_LAMBDAS: Tuple[float, ...] = (0.0, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class CheckResult:
    """One measurement against its tolerance; passed <=> measured <= tol."""

    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""

    @classmethod
    def of(cls, name: str, measured: float, tolerance: float, detail: str = ""):
        return cls(
            name=name,
            passed=bool(measured <= tolerance),
            measured=float(measured),
            tolerance=float(tolerance),
            detail=detail,
        )


def _label(p: ModelParams) -> str:
    return f"n={p.n},ell={p.ell:g},q={p.q:g}"


# ----------------------------------------------------------------------
# curvature / small-radius checks


def ledger_check(p: ModelParams) -> CheckResult:
    """Second derivative of theta/r^(n-1) at 0 must equal -kappa/3.

    Uses the even-symmetry central difference 2(G(h)-1)/h^2 at h = 1e-3
    and 5e-4 with one Richardson step; tolerance 1e-5.
    """
    kappa = einstein_constant(p).kappa
    nm1 = p.n - 1

    def second_diff(h: float) -> float:
        g = theta(p, h) / h**nm1
        return 2.0 * (g - 1.0) / (h * h)

    d1 = second_diff(1e-3)
    d2 = second_diff(5e-4)
    extrapolated = (4.0 * d2 - d1) / 3.0
    measured = abs(extrapolated + kappa / 3.0)
    return CheckResult.of(
        f"ledger[{_label(p)}]",
        measured,
        1e-5,
        f"FD2 = {extrapolated:.6e}, -kappa/3 = {-kappa / 3.0:.6e}",
    )


def ledger_limits_check(p: ModelParams) -> CheckResult:
    """Small-radius limits: theta/r^(n-1) -> 1, its slope -> 0, and
    sigma - (n-1)/r -> 0, extrapolated from r = 1e-3 and 1e-4."""
    nm1 = p.n - 1
    r1, r2 = 1e-3, 1e-4

    def ratio(r: float) -> float:
        return theta(p, r) / r**nm1

    # G(r) = 1 + c2 r^2 + ...: eliminate the r^2 term
    g1, g2 = ratio(r1), ratio(r2)
    lim_ratio = (r1 * r1 * g2 - r2 * r2 * g1) / (r1 * r1 - r2 * r2)

    def slope(r: float) -> float:
        s = 0.1 * r
        return (ratio(r + s) - ratio(r - s)) / (2.0 * s)

    # odd functions of r: eliminate the linear term
    def odd_extrap(f: Callable[[float], float]) -> float:
        return (r1 * f(r2) - r2 * f(r1)) / (r1 - r2)

    lim_slope = odd_extrap(slope)
    lim_tau = odd_extrap(lambda r: sigma(p, r) - nm1 / r)
    measured = max(abs(lim_ratio - 1.0), abs(lim_slope), abs(lim_tau))
    return CheckResult.of(
        f"ledger_limits[{_label(p)}]",
        measured,
        1e-3,
        f"ratio-1 = {lim_ratio - 1.0:.2e}, slope = {lim_slope:.2e}, "
        f"sigma-(n-1)/r = {lim_tau:.2e}",
    )


def bishop_check(p: ModelParams, tol: float = 1e-9) -> CheckResult:
    """Volume comparison: theta(r) <= sinh^(n-1)(r) for normalized models.

    The margin is measured in the log domain, max(log theta - (n-1)
    log sinh r) over 2000 radii in (0, 20]; values reach e^100 and more,
    where a fixed linear-scale tolerance is not representable in doubles.
    """
    kappa = einstein_constant(p).kappa
    if abs(kappa + (p.n - 1)) > tol:
        raise NotNormalizedError(
            f"bishop_check requires Ric = -(n-1); kappa = {kappa}"
        )
    nm1 = p.n - 1
    margin = -math.inf
    for i in range(1, 2001):
        r = 20.0 * i / 2000.0
        margin = max(margin, log_theta(p, r) - nm1 * math.log(math.sinh(r)))
    return CheckResult.of(
        f"bishop[{_label(p)}]",
        margin,
        1e-12,
        "max log-domain margin over 2000 radii in (0, 20]",
    )


# ----------------------------------------------------------------------
# spectral checks


def _comparison_radii(lo: float = 0.01, hi: float = 5.0, count: int = 60):
    return [lo + i * (hi - lo) / (count - 1) for i in range(count)]


def ode_vs_2f1_check(p: ModelParams, lam: float) -> CheckResult:
    """Independent routes to the spherical function must agree to 1e-6."""
    sol = solve_eigen_ode(p, lam, r_max=5.0, h=1e-3)
    measured = 0.0
    for r in _comparison_radii():
        diff = abs(sol.at(r) - spherical_function(p, lam, r))
        measured = max(measured, diff)
    return CheckResult.of(
        f"ode_vs_2f1[{_label(p)},lam={lam:g}]",
        measured,
        1e-6,
        "max |Phi_ode - Phi_2F1| on 60 radii in [0.01, 5]",
    )


def transformation_check(p: ModelParams, lam: float) -> CheckResult:
    """The ODE solution transported through z = -sinh^2(ell r/2) must
    satisfy the hypergeometric equation; residual tolerance 1e-5."""
    hp = hypergeometric_parameters(p, lam)
    z_lo, z_hi, dz = -2.0, -0.05, 5e-4
    r_hi = (2.0 / p.ell) * math.asinh(math.sqrt(-z_lo)) + 0.05
    sol = solve_eigen_ode(p, lam, r_max=r_hi, h=2e-4)
    count = int(round((z_hi - z_lo) / dz)) + 1
    z = np.array([z_lo + i * dz for i in range(count)])
    f = sol.at((2.0 / p.ell) * np.arcsinh(np.sqrt(-z)))
    measured = hypergeometric_residual(hp, z, f)
    return CheckResult.of(
        f"transformation[{_label(p)},lam={lam:g}]",
        measured,
        1e-5,
        f"hypergeometric residual on uniform z in [{z_lo}, {z_hi}]",
    )


def _residual_uniform4(a: complex, b: complex, c: float, z, f) -> float:
    # Fourth-order five-point stencils on a uniform grid.  The 1e-8
    # reflection tolerance sits below the double-precision noise floor of
    # second-order stencils, so this checker uses the wider stencil.
    z = np.asarray(z, dtype=float)
    f = np.asarray(f, dtype=float)
    h = z[1] - z[0]
    f0 = f[2:-2]
    d1 = (f[:-4] - 8 * f[1:-3] + 8 * f[3:-1] - f[4:]) / (12 * h)
    d2 = (-f[:-4] + 16 * f[1:-3] - 30 * f0 + 16 * f[3:-1] - f[4:]) / (12 * h * h)
    z0 = z[2:-2]
    res = z0 * (1 - z0) * d2 + (c - (a + b + 1) * z0) * d1 - a * b * f0
    return float(np.max(np.abs(res)))


def z_reflection_check(hp: HypergeometricParams) -> CheckResult:
    """u(1-z) must solve the reflected equation with c1 = a+b+1-c.

    u is sampled on s in [-0.95, -0.05] (the kernel's domain); the
    residual operator of the reflected equation is evaluated directly on
    v(z) = u(1-z) for z = 1-s in [1.05, 1.95].  Tolerance 1e-8.
    """
    ds = 2e-3
    count = int(round(0.9 / ds)) + 1
    s = [-0.95 + i * ds for i in range(count)]
    u = [gauss_2f1(hp, si, tol=1e-15).value.real for si in s]
    z = [1.0 - si for si in s]  # decreasing; reverse for an increasing grid
    z.reverse()
    u.reverse()
    c1 = (hp.a + hp.b + 1.0 - hp.c).real
    measured = _residual_uniform4(hp.a, hp.b, c1, z, u)
    return CheckResult.of(
        f"z_reflection[a={hp.a:g},b={hp.b:g},c={hp.c:g}]",
        measured,
        1e-8,
        "reflected-equation residual on uniform z in [1.05, 1.95]",
    )


# ----------------------------------------------------------------------
# entropy bounds


def _golden_min(f: Callable[[float], float], a: float, b: float, tol: float = 1e-8):
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b)


def entropy_bound_scan(n: int, ell_grid: Sequence[float]) -> List[CheckResult]:
    """Scan Q(ell) = (ell + 2/ell)(n-1)/3 over the grid.

    Asserts the lower bound everywhere, locates the minimum at sqrt(2) by
    golden-section refinement, and checks that Q <= n-1 exactly on
    ell in [1, 2] while Q > n-1 outside.
    """
    grid = list(ell_grid)
    lower = entropy_lower_bound(n)
    upper = entropy_upper_bound(n)
    qs = [entropy_of_normalized(ell, n) for ell in grid]

    results = [
        CheckResult.of(
            f"entropy_scan[n={n}]/lower_bound",
            max(lower - q for q in qs),
            1e-12,
            f"max(lower - Q) over {len(grid)} grid points",
        )
    ]

    ell_star = _golden_min(lambda ell: entropy_of_normalized(ell, n), grid[0], grid[-1])
    results.append(
        CheckResult.of(
            f"entropy_scan[n={n}]/minimizer",
            abs(ell_star - math.sqrt(2.0)),
            1e-6,
            f"golden-section minimizer ell* = {ell_star!r}",
        )
    )
    results.append(
        CheckResult.of(
            f"entropy_scan[n={n}]/min_value",
            abs(entropy_of_normalized(ell_star, n) - lower),
            1e-10,
            f"Q(ell*) vs 2*sqrt(2)*(n-1)/3 = {lower!r}",
        )
    )

    inside = [q - upper for ell, q in zip(grid, qs) if 1.0 <= ell <= 2.0]
    outside = [q - upper for ell, q in zip(grid, qs) if not 1.0 <= ell <= 2.0]
    worst_inside = max(inside) if inside else -math.inf
    worst_outside = max(-d for d in outside) if outside else -math.inf
    results.append(
        CheckResult.of(
            f"entropy_scan[n={n}]/upper_bound_band",
            max(worst_inside, worst_outside),
            1e-12,
            "Q <= n-1 on ell in [1,2]; Q > n-1 outside",
        )
    )
    return results


# ----------------------------------------------------------------------
# composite checks used by the battery


def _rigidity_check(n: int) -> CheckResult:
    models = [normalized_model(n, 1.0), normalized_model(n, 2.0)]
    nm1 = n - 1
    measured = 0.0
    for p in models:
        if p.q != float(nm1):
            return CheckResult.of(
                f"rigidity[n={n}]", math.inf, 1e-12, f"Q = {p.q!r} != n-1 exactly"
            )
        for i in range(1, 2001):
            r = 20.0 * i / 2000.0
            dev = abs(log_theta(p, r) - nm1 * math.log(math.sinh(r)))
            measured = max(measured, dev)
    return CheckResult.of(
        f"rigidity[n={n}]",
        measured,
        1e-12,
        "max |log theta - (n-1) log sinh r|, ell in {1, 2}, r in (0, 20]",
    )


def _dr_checks() -> List[CheckResult]:
    results = []
    four = enumerate_lower_bound(64)
    expected = [(1, 2), (2, 4), (4, 8), (8, 16)]
    results.append(
        CheckResult.of(
            "dr/four_cases",
            0.0 if four == expected else 1.0,
            0.0,
            f"enumerate_lower_bound(64) = {four}",
        )
    )

    spaces = enumerate_spaces(max_m=8, max_j=2)
    worst_bound = -math.inf
    mismatches = 0
    worst_kappa = 0.0
    worst_c2 = 0.0
    worst_formula = 0.0
    for s in spaces:
        lower = entropy_lower_bound(s.n)
        upper = entropy_upper_bound(s.n)
        qn = s.normalized_entropy
        worst_bound = max(worst_bound, lower - qn, qn - upper)
        at_lower = s.classification(tol=1e-9).tag is BoundTag.AT_LOWER
        if at_lower != (s.k == 2 * s.m):
            mismatches += 1
        kappa = einstein_constant(s.model).kappa
        worst_kappa = max(worst_kappa, abs(kappa + (s.m + 0.25 * s.k)))
        _, scale = normalize_ricci(s.model)
        c2 = (0.25 * s.k + s.m) / (s.k + s.m)
        worst_c2 = max(worst_c2, abs(scale.c**2 - c2))
        normalized, _ = normalize_ricci(s.model)
        worst_formula = max(worst_formula, abs(qn - normalized.q))
    results.append(
        CheckResult.of(
            "dr/bounds_inequality",
            worst_bound,
            1e-12,
            f"{len(spaces)} spaces with m <= 8, j <= 2",
        )
    )
    results.append(
        CheckResult.of(
            "dr/lower_equality_iff_k_eq_2m",
            float(mismatches),
            0.0,
            "AtLower classification exactly for k = 2m",
        )
    )
    results.append(
        CheckResult.of(
            "dr/einstein_exact", worst_kappa, 0.0, "kappa == -(m + k/4) exactly"
        )
    )
    results.append(
        CheckResult.of(
            "dr/scale_factor", worst_c2, 1e-14, "c^2 == (k/4 + m)/(k + m)"
        )
    )
    results.append(
        CheckResult.of(
            "dr/normalized_entropy_formula",
            worst_formula,
            1e-12,
            "closed form vs generic normalization route",
        )
    )
    return results


def _entropy_estimator_checks(p: ModelParams) -> List[CheckResult]:
    q_sigma = entropy_from_sigma(p, 40.0 / p.ell)
    q_vol = entropy_from_volume(p, 80.0 / p.ell)
    return [
        CheckResult.of(
            f"entropy_sigma[{_label(p)}]",
            abs(q_sigma - p.q),
            1e-8,
            f"sigma estimator at r = 40/ell: {q_sigma!r}",
        ),
        CheckResult.of(
            f"entropy_volume[{_label(p)}]",
            abs(q_vol - p.q),
            5e-2,
            f"volume estimator at r = 80/ell: {q_vol!r}",
        ),
    ]


def _ball_volume_h3_check() -> CheckResult:
    p = ModelParams(3, 2.0, 2.0)
    measured = 0.0
    for r in (1.0, 2.0, 5.0):
        exact = math.pi * (math.sinh(2.0 * r) - 2.0 * r)
        measured = max(measured, abs(ball_volume(p, r, tol=1e-13) - exact))
    return CheckResult.of(
        "ball_volume_h3",
        measured,
        1e-8,
        "vs pi (sinh 2r - 2r) at r in {1, 2, 5}",
    )


def _negative_controls() -> List[CheckResult]:
    p = ModelParams(3, 2.0, 2.0)
    lam = 1.0
    sol = solve_eigen_ode(p, lam, r_max=2.0, h=1e-3)
    perturbed = RadialSolution(
        r_grid=sol.r_grid, phi=sol.phi + 0.01, dphi=sol.dphi, lam=lam, model=p
    )
    res = ode_residual(perturbed)
    floor = 0.009 * perturbed.mu
    results = [
        CheckResult.of(
            "negctrl/ode_perturbation_detected",
            max(0.0, floor - res),
            0.0,
            f"residual {res:.3e} must exceed {floor:.3e}",
        )
    ]

    hp = HypergeometricParams(a=1.0 + 0.0j, b=1.0 + 0.0j, c=2.0)
    ds = 2e-3
    count = int(round(0.9 / ds)) + 1
    s = [-0.95 + i * ds for i in range(count)]
    u = [gauss_2f1(hp, si, tol=1e-15).value.real for si in s]
    z = [1.0 - si for si in s]
    z.reverse()
    u.reverse()
    bad = _residual_uniform4(hp.a, hp.b, hp.c, z, u)  # c1 mis-set to c
    results.append(
        CheckResult.of(
            "negctrl/reflection_wrong_parameter_detected",
            max(0.0, 1e-3 - bad),
            0.0,
            f"residual with c1 = c is {bad:.3e}, floor 1e-3",
        )
    )
    return results


# ----------------------------------------------------------------------
# battery


@dataclass(frozen=True)
class VerifyConfig:
    """Configuration of the battery; the defaults are the standard set."""

    models: Tuple[ModelParams, ...] = STANDARD_MODELS
    name_filter: Optional[str] = None
    inject_failure: bool = False
    scan_dims: Tuple[int, ...] = (3, 4, 7, 13)
    ell_grid: Tuple[float, ...] = tuple(i / 100.0 for i in range(10, 401))
    spectral_lambdas: Tuple[float, ...] = SPECTRAL_LAMBDAS
    transformation_lambdas: Tuple[float, ...] = (0.0, 1.0)


@dataclass(frozen=True)
class VerifyReport:
    results: Tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "results": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "measured": r.measured,
                    "tolerance": r.tolerance,
                    "detail": r.detail,
                }
                for r in self.results
            ],
        }

    def to_text(self) -> str:
        lines = []
        for r in self.results:
            status = "PASS" if r.passed else "FAIL"
            lines.append(
                f"{status}  {r.name}  measured={r.measured:.3e}  "
                f"tol={r.tolerance:.3e}  {r.detail}"
            )
        n_pass = sum(r.passed for r in self.results)
        lines.append(f"{n_pass}/{len(self.results)} checks passed")
        return "\n".join(lines)


def run_all(config: Optional[VerifyConfig] = None) -> VerifyReport:
    """Run the battery; results are sorted by name for a canonical report."""
    cfg = config or VerifyConfig()
    battery: List[Tuple[str, Callable[[], Union[CheckResult, List[CheckResult]]]]] = []

    for p in cfg.models:
        battery.append((f"ledger[{_label(p)}]", lambda p=p: ledger_check(p)))
        battery.append(
            (f"ledger_limits[{_label(p)}]", lambda p=p: ledger_limits_check(p))
        )
        battery.append(
            (f"entropy_estimators[{_label(p)}]", lambda p=p: _entropy_estimator_checks(p))
        )

    for ell in (1.0, 1.2, math.sqrt(2.0), 1.8, 2.0):
        for n in (3, 4, 7):
            p = normalized_model(n, ell)
            battery.append((f"bishop[{_label(p)}]", lambda p=p: bishop_check(p)))

    for p in SPECTRAL_MODELS:
        for lam in cfg.spectral_lambdas:
            battery.append(
                (
                    f"ode_vs_2f1[{_label(p)},lam={lam:g}]",
                    lambda p=p, lam=lam: ode_vs_2f1_check(p, lam),
                )
            )
        for lam in cfg.transformation_lambdas:
            battery.append(
                (
                    f"transformation[{_label(p)},lam={lam:g}]",
                    lambda p=p, lam=lam: transformation_check(p, lam),
                )
            )

    log_hp = HypergeometricParams(a=1.0 + 0.0j, b=1.0 + 0.0j, c=2.0)
    battery.append(("z_reflection[log]", lambda: z_reflection_check(log_hp)))
    model_hp = hypergeometric_parameters(ModelParams(4, 1.0, 2.0), 0.0)
    battery.append(("z_reflection[model]", lambda: z_reflection_check(model_hp)))

    for n in cfg.scan_dims:
        battery.append(
            (f"entropy_scan[n={n}]", lambda n=n: entropy_bound_scan(n, cfg.ell_grid))
        )
        battery.append((f"rigidity[n={n}]", lambda n=n: _rigidity_check(n)))

    battery.append(("dr", _dr_checks))
    battery.append(("ball_volume_h3", _ball_volume_h3_check))
    battery.append(("negctrl", _negative_controls))

    results: List[CheckResult] = []
    for name, thunk in battery:
        if cfg.name_filter and cfg.name_filter not in name:
            continue
        out = thunk()
        if isinstance(out, CheckResult):
            results.append(out)
        else:
            results.extend(out)
    if cfg.inject_failure:
        # test hook for the exit-status contract; exempt from the filter
        results.append(
            CheckResult.of("zz_injected_failure", 1.0, 0.0, "test hook: forced failure")
        )
    results.sort(key=lambda r: r.name)
    return VerifyReport(results=tuple(results))
