"""Closed-form geometry of hypergeometric-type harmonic manifolds.

A model is the parameter triple (n, ell, q): the integer dimension, the
scale of the sinh/cosh profile (units 1/length) and the volume entropy
(units 1/length).  Everything here is elementary-function arithmetic on
that triple: the volume density of geodesic spheres, their mean curvature,
the Einstein constant, metric rescaling, normalization to Ric = -(n-1),
and classification of the entropy against the bounds

    2*sqrt(2)/3 * (n-1)  <=  Q  <=  n-1

that hold once the metric is normalized.  The upper bound is attained
exactly by the constant-curvature hyperbolic profile.

All functions are pure; values are immutable after construction.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Tuple, Union

from .errors import DomainError, NonNegativeRicciError, NotNormalizedError

__all__ = [
    "ModelParams",
    "EinsteinConstant",
    "ScaleFactor",
    "GeneralizedDensity",
    "BoundTag",
    "BoundClassification",
    "HypergeometricParams",
    "theta",
    "log_theta",
    "sigma",
    "einstein_constant",
    "rescale",
    "normalize_ricci",
    "normalized_model",
    "entropy_of_normalized",
    "entropy_lower_bound",
    "entropy_upper_bound",
    "classify_bounds",
    "hypergeometric_parameters",
    "variable_map",
    "density_from_mean_curvature",
    "mean_curvature_from_density",
]


@dataclass(frozen=True)
class ModelParams:
    """Dimension n >= 3, profile scale ell > 0, volume entropy q > 0."""

    n: int
    ell: float
    q: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 3:
            raise DomainError(f"dimension must be an integer >= 3, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        if not self.ell > 0:
            raise DomainError(f"scale ell must be positive, got {self.ell}")
        if not self.q > 0:
            raise DomainError(f"entropy q must be positive, got {self.q}")
        object.__setattr__(self, "ell", float(self.ell))
        object.__setattr__(self, "q", float(self.q))


@dataclass(frozen=True)
class EinsteinConstant:
    """The constant kappa with Ric = kappa * g (units 1/length^2)."""

    kappa: float


@dataclass(frozen=True)
class ScaleFactor:
    """Dimensionless c > 0 for the metric rescaling g -> c^2 g."""

    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError(f"scale factor must be positive, got {self.c}")


@dataclass(frozen=True)
class GeneralizedDensity:
    """Density profile k * sinh^c1(ell r/2) * cosh^c2(ell r/2).

    Requires coeff > 0, c1 > 0, ell > 0 and c1 + c2 > 0 (so the profile
    grows and the associated entropy is positive).
    """

    coeff: float
    c1: float
    c2: float
    ell: float

    def __post_init__(self):
        if not self.coeff > 0:
            raise DomainError("coeff must be positive")
        if not self.c1 > 0:
            raise DomainError("c1 must be positive")
        if not self.ell > 0:
            raise DomainError("ell must be positive")
        if not self.c1 + self.c2 > 0:
            raise DomainError("c1 + c2 must be positive")

    @classmethod
    def from_model(cls, p: ModelParams) -> "GeneralizedDensity":
        """The (coeff, c1, c2, ell) form reproducing theta/sigma of p."""
        nm1 = p.n - 1
        return cls(
            coeff=(2.0 / p.ell) ** nm1,
            c1=float(nm1),
            c2=2.0 * p.q / p.ell - nm1,
            ell=p.ell,
        )


class BoundTag(Enum):
    BELOW_LOWER = "BelowLower"
    AT_LOWER = "AtLower"
    INTERIOR = "Interior"
    AT_UPPER = "AtUpper"
    ABOVE_UPPER = "AboveUpper"


@dataclass(frozen=True)
class BoundClassification:
    """Position of the entropy of a normalized model within the bounds.

    margin_low  = q - 2*sqrt(2)*(n-1)/3
    margin_high = q - (n-1)

    AtUpper additionally flags the constant-curvature hyperbolic profile,
    which is the only configuration attaining the upper bound.
    """

    tag: BoundTag
    real_hyperbolic: bool
    margin_low: float
    margin_high: float


@dataclass(frozen=True)
class HypergeometricParams:
    """Parameters (a, b; c) of the Gauss hypergeometric equation.

    c must be positive (for the models here c = n/2 >= 3/2).  When built
    from a model with real spectral parameter, b is the conjugate of a.
    """

    a: complex
    b: complex
    c: float

    def __post_init__(self):
        if not self.c > 0:
            raise DomainError(f"c must be positive, got {self.c}")


def theta(p: ModelParams, r: float) -> float:
    """Volume density of the geodesic sphere of radius r.

    theta(r) = (2/ell)^(n-1) sinh^(n-1)(ell r/2) cosh^(2q/ell-(n-1))(ell r/2),
    extended continuously by theta(0) = 0.
    """
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    if r == 0:
        return 0.0
    x = 0.5 * p.ell * r
    nm1 = p.n - 1
    return (2.0 / p.ell) ** nm1 * math.sinh(x) ** nm1 * math.cosh(x) ** (
        2.0 * p.q / p.ell - nm1
    )


def log_theta(p: ModelParams, r: float) -> float:
    """log(theta(p, r)) computed without overflow for large r."""
    if r <= 0:
        raise DomainError(f"radius must be positive, got {r}")
    x = 0.5 * p.ell * r
    nm1 = p.n - 1
    return (
        nm1 * math.log(2.0 / p.ell)
        + nm1 * _log_sinh(x)
        + (2.0 * p.q / p.ell - nm1) * _log_cosh(x)
    )


def _log_sinh(x: float) -> float:
    if x < 350.0:
        return math.log(math.sinh(x))
    return x - math.log(2.0) + math.log1p(-math.exp(-2.0 * x))


def _log_cosh(x: float) -> float:
    if x < 350.0:
        return math.log(math.cosh(x))
    return x - math.log(2.0) + math.log1p(math.exp(-2.0 * x))


def sigma(p: ModelParams, r: float) -> float:
    """Mean curvature of the geodesic sphere of radius r (inward normal).

    sigma(r) = (ell(n-1)/2) coth(ell r/2) + (q - ell(n-1)/2) tanh(ell r/2);
    diverges like (n-1)/r at the origin, tends to q at infinity.
    """
    if r <= 0:
        raise DomainError(f"sigma requires r > 0, got {r}")
    x = 0.5 * p.ell * r
    th = math.tanh(x)
    nm1 = p.n - 1
    return 0.5 * p.ell * (nm1 / th + (2.0 * p.q / p.ell - nm1) * th)


def einstein_constant(p: ModelParams) -> EinsteinConstant:
    """The constant kappa with Ric = kappa * g.

    Reading the r^(n+1) coefficient of the density expansion against the
    second-derivative limit of theta/r^(n-1) gives

        kappa = -(ell/2) * (3q - (n-1) ell),

    which is negative exactly when q > (n-1) ell / 3.
    """
    return EinsteinConstant(-0.5 * p.ell * (3.0 * p.q - (p.n - 1) * p.ell))


def rescale(p: ModelParams, c: Union[float, ScaleFactor]) -> ModelParams:
    """Model of the rescaled metric g -> c^2 g: (n, ell/c, q/c).

    Distances multiply by c, so both inverse-length parameters divide by
    c and the Einstein constant picks up 1/c^2.
    """
    cval = c.c if isinstance(c, ScaleFactor) else float(c)
    if not cval > 0:
        raise DomainError(f"scale factor must be positive, got {cval}")
    return ModelParams(p.n, p.ell / cval, p.q / cval)


def normalize_ricci(p: ModelParams) -> Tuple[ModelParams, ScaleFactor]:
    """Rescale so that Ric = -(n-1); returns (new model, scale factor).

    The factor is c = sqrt(-kappa/(n-1)), defined only for kappa < 0.
    """
    kappa = einstein_constant(p).kappa
    if kappa >= 0:
        raise NonNegativeRicciError(
            f"kappa = {kappa} >= 0: no rescaling reaches Ric = -(n-1)"
        )
    c = math.sqrt(-kappa / (p.n - 1))
    return rescale(p, c), ScaleFactor(c)


def entropy_of_normalized(ell: float, n: int) -> float:
    """Entropy of the Ric = -(n-1) normalized model with profile scale ell.

    Q(ell) = (ell + 2/ell) * (n-1) / 3.  Minimal at ell = sqrt(2) with
    value 2*sqrt(2)*(n-1)/3; equals n-1 exactly at ell in {1, 2}.
    """
    if not ell > 0:
        raise DomainError(f"ell must be positive, got {ell}")
    if int(n) != n or n < 3:
        raise DomainError(f"dimension must be an integer >= 3, got {n}")
    return (ell + 2.0 / ell) * (n - 1) / 3.0


def normalized_model(n: int, ell: float) -> ModelParams:
    """The Ric = -(n-1) model with profile scale ell."""
    return ModelParams(n, ell, entropy_of_normalized(ell, n))


def entropy_lower_bound(n: int) -> float:
    """2*sqrt(2)*(n-1)/3, the entropy minimum over normalized models."""
    return 2.0 * math.sqrt(2.0) * (n - 1) / 3.0


def entropy_upper_bound(n: int) -> float:
    """n-1, attained only by the constant-curvature hyperbolic profile."""
    return float(n - 1)


def classify_bounds(p: ModelParams, tol: float = 1e-9) -> BoundClassification:
    """Locate q of a normalized model against the entropy bounds.

    The model must satisfy |kappa + (n-1)| <= tol.  AtLower/AtUpper are
    tolerance bands of width tol around the bound values; parameter sets
    outside [lower, upper] are classified (not rejected), since scanning
    them is how the bounds are exhibited.
    """
    if not tol > 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    kappa = einstein_constant(p).kappa
    if abs(kappa + (p.n - 1)) > tol:
        raise NotNormalizedError(
            f"model has kappa = {kappa}, expected -(n-1) = {-(p.n - 1)}"
        )
    margin_low = p.q - entropy_lower_bound(p.n)
    margin_high = p.q - entropy_upper_bound(p.n)
    if margin_low < -tol:
        tag = BoundTag.BELOW_LOWER
    elif margin_low <= tol:
        tag = BoundTag.AT_LOWER
    elif margin_high > tol:
        tag = BoundTag.ABOVE_UPPER
    elif margin_high >= -tol:
        tag = BoundTag.AT_UPPER
    else:
        tag = BoundTag.INTERIOR
    return BoundClassification(
        tag=tag,
        real_hyperbolic=(tag is BoundTag.AT_UPPER),
        margin_low=margin_low,
        margin_high=margin_high,
    )


def hypergeometric_parameters(p: ModelParams, lam: float) -> HypergeometricParams:
    """Parameters a = (q/2 + i lam)/ell, b = conj(a), c = n/2."""
    a = complex(0.5 * p.q / p.ell, lam / p.ell)
    return HypergeometricParams(a=a, b=a.conjugate(), c=0.5 * p.n)


def variable_map(p: ModelParams, r: float) -> float:
    """The change of variables z = -sinh^2(ell r/2), strictly decreasing."""
    if r < 0:
        raise DomainError(f"radius must be nonnegative, got {r}")
    s = math.sinh(0.5 * p.ell * r)
    return -s * s


def density_from_mean_curvature(g: GeneralizedDensity) -> Callable[[float], float]:
    """Density r -> coeff * sinh^c1(ell r/2) * cosh^c2(ell r/2).

    This is the profile whose logarithmic derivative is the paired mean
    curvature from :func:`mean_curvature_from_density`.
    """

    def theta_g(r: float) -> float:
        if r < 0:
            raise DomainError(f"radius must be nonnegative, got {r}")
        if r == 0:
            return 0.0
        x = 0.5 * g.ell * r
        return g.coeff * math.sinh(x) ** g.c1 * math.cosh(x) ** g.c2

    return theta_g


def mean_curvature_from_density(g: GeneralizedDensity) -> Callable[[float], float]:
    """Mean curvature r -> (ell/2)(c1 coth(ell r/2) + c2 tanh(ell r/2))."""

    def sigma_g(r: float) -> float:
        if r <= 0:
            raise DomainError(f"mean curvature requires r > 0, got {r}")
        x = 0.5 * g.ell * r
        th = math.tanh(x)
        return 0.5 * g.ell * (g.c1 / th + g.c2 * th)

    return sigma_g
