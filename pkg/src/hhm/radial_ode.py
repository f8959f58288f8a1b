"""Direct integration of the radial eigenfunction equation

    phi'' + sigma(r) phi' + (q^2/4 + lam^2) phi = 0,

started from a Frobenius series at a small offset r_start > 0 (the origin
is a regular singular point, sigma ~ (n-1)/r).  The solver is the
independent oracle against the hypergeometric evaluation in
:mod:`hhm.special`; the residual checkers here quantify how well a sampled
function satisfies the radial equation or the hypergeometric equation.

Integration is fixed-step classical RK4 on the output grid, with
stability-capped substeps near the origin (see ``_kernels``).  Runs are
deterministic: identical inputs produce bitwise-identical solutions.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from . import _kernels
from .errors import DomainError, GridTooShortError, StepTooLargeError
from .model import HypergeometricParams, ModelParams, sigma

__all__ = [
    "RadialSolution",
    "frobenius_start",
    "solve_eigen_ode",
    "ode_residual",
    "hypergeometric_residual",
    "DEFAULT_R_START",
    "MAX_STEP",
]

DEFAULT_R_START = 1e-4
MAX_STEP = 1e-2


@dataclass(frozen=True)
class RadialSolution:
    """Sampled eigenfunction: phi and phi' on a strictly increasing grid."""

    r_grid: np.ndarray
    phi: np.ndarray
    dphi: np.ndarray
    lam: float
    model: ModelParams

    def __post_init__(self):
        if len(self.r_grid) < 2:
            raise DomainError("solution grid needs at least 2 points")
        if not (len(self.r_grid) == len(self.phi) == len(self.dphi)):
            raise DomainError("grid and value arrays must share length")
        if not np.all(np.diff(self.r_grid) > 0):
            raise DomainError("r_grid must be strictly increasing")
        if not self.r_grid[0] > 0:
            raise DomainError("r_grid must start at a positive radius")

    @property
    def mu(self) -> float:
        """The eigenvalue q^2/4 + lam^2."""
        return 0.25 * self.model.q**2 + self.lam**2

    def at(self, r):
        """Cubic-Hermite dense output of phi at radii inside the grid span.

        Uses the stored derivative values, so the interpolation error is
        O(h^4) like the integrator itself.
        """
        r = np.asarray(r, dtype=float)
        grid = self.r_grid
        if np.any(r < grid[0]) or np.any(r > grid[-1]):
            raise DomainError("interpolation point outside the solution span")
        idx = np.clip(np.searchsorted(grid, r, side="right") - 1, 0, len(grid) - 2)
        h = grid[idx + 1] - grid[idx]
        t = (r - grid[idx]) / h
        h00 = (1 + 2 * t) * (1 - t) ** 2
        h10 = t * (1 - t) ** 2
        h01 = t * t * (3 - 2 * t)
        h11 = t * t * (t - 1)
        val = (
            h00 * self.phi[idx]
            + h10 * h * self.dphi[idx]
            + h01 * self.phi[idx + 1]
            + h11 * h * self.dphi[idx + 1]
        )
        return float(val) if val.ndim == 0 else val


def frobenius_start(
    p: ModelParams, lam: float, r_start: float
) -> Tuple[float, float]:
    """Series values (phi, phi') at a small offset from the origin.

    With mu = q^2/4 + lam^2 and the expansion
    sigma(r) = (n-1)/r + s1 r + O(r^3), s1 = q ell/2 - (n-1) ell^2 / 6,
    the regular solution normalized to phi(0) = 1 starts

        phi(r) = 1 - mu r^2 / (2n) + mu (mu + 2 s1) r^4 / (8 n (n+2)),

    accurate to O(r_start^6).
    """
    if not 0 < r_start <= MAX_STEP:
        raise DomainError(f"r_start must lie in (0, {MAX_STEP}], got {r_start}")
    n = p.n
    mu = 0.25 * p.q**2 + lam**2
    s1 = 0.5 * p.q * p.ell - (n - 1) * p.ell**2 / 6.0
    a2 = -mu / (2.0 * n)
    a4 = mu * (mu + 2.0 * s1) / (8.0 * n * (n + 2.0))
    r2 = r_start * r_start
    phi0 = 1.0 + a2 * r2 + a4 * r2 * r2
    dphi0 = 2.0 * a2 * r_start + 4.0 * a4 * r2 * r_start
    return phi0, dphi0


def solve_eigen_ode(
    p: ModelParams,
    lam: float,
    r_max: float,
    h: float,
    r_start: float = DEFAULT_R_START,
) -> RadialSolution:
    """Integrate the radial equation on the grid r_start + k h covering r_max.

    The equation depends on lam only through lam^2, so solutions for lam
    and -lam are bitwise identical.
    """
    if h > MAX_STEP:
        raise StepTooLargeError(f"step {h} exceeds the ceiling {MAX_STEP}")
    if not h > 0:
        raise DomainError(f"step must be positive, got {h}")
    if not r_max > 0:
        raise DomainError(f"r_max must be positive, got {r_max}")
    if r_max <= r_start:
        raise DomainError(f"r_max = {r_max} must exceed r_start = {r_start}")
    phi0, dphi0 = frobenius_start(p, lam, r_start)
    npts = int(math.ceil((r_max - r_start) / h - 1e-12)) + 1
    mu = 0.25 * p.q**2 + lam**2
    r, phi, dphi = _kernels.radial_rk4(
        p.n, p.ell, p.q, mu, r_start, phi0, dphi0, h, npts, 1.0
    )
    return RadialSolution(r_grid=r, phi=phi, dphi=dphi, lam=lam, model=p)


def ode_residual(sol: RadialSolution) -> float:
    """Max |phi'' + sigma phi' + mu phi| over interior grid points.

    Both derivatives come from second-order central differences on the
    stored samples, independent of the integrator's own derivative values.
    """
    m = len(sol.r_grid)
    if m < 5:
        raise GridTooShortError(f"need at least 5 grid points, got {m}")
    r = sol.r_grid
    f = sol.phi
    h = np.diff(r)
    hm, hp = h[:-1], h[1:]
    fm, f0, fp = f[:-2], f[1:-1], f[2:]
    d1 = (hm * hm * (fp - f0) + hp * hp * (f0 - fm)) / (hm * hp * (hm + hp))
    d2 = 2.0 * (hp * fm - (hm + hp) * f0 + hm * fp) / (hm * hp * (hm + hp))
    sig = np.array([sigma(sol.model, ri) for ri in r[1:-1]])
    res = d2 + sig * d1 + sol.mu * f0
    return float(np.max(np.abs(res)))


def hypergeometric_residual(
    hp_params: HypergeometricParams,
    z_grid: Sequence[float],
    f: Sequence[float],
) -> float:
    """Max residual of the hypergeometric equation on sampled values.

        z(1-z) f'' + (c - (a+b+1) z) f' - a b f

    Derivatives use three-point stencils valid on nonuniform grids
    (second order for f', second order for f'' on uniform spacing).
    The grid must be strictly monotone with at least 5 points.
    """
    z = np.asarray(z_grid, dtype=float)
    fv = np.asarray(f, dtype=float)
    if len(z) != len(fv):
        raise DomainError("z_grid and f must share length")
    if len(z) < 5:
        raise GridTooShortError(f"need at least 5 grid points, got {len(z)}")
    dz = np.diff(z)
    if np.all(dz < 0):
        z, fv, dz = z[::-1], fv[::-1], -dz[::-1]
    elif not np.all(dz > 0):
        raise DomainError("z_grid must be strictly monotone")
    hm, hp = dz[:-1], dz[1:]
    fm, f0, fp = fv[:-2], fv[1:-1], fv[2:]
    d1 = (hm * hm * (fp - f0) + hp * hp * (f0 - fm)) / (hm * hp * (hm + hp))
    d2 = 2.0 * (hp * fm - (hm + hp) * f0 + hm * fp) / (hm * hp * (hm + hp))
    z0 = z[1:-1]
    a, b, c = hp_params.a, hp_params.b, hp_params.c
    res = z0 * (1.0 - z0) * d2 + (c - (a + b + 1.0) * z0) * d1 - a * b * f0
    return float(np.max(np.abs(res)))
