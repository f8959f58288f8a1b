"""Damek-Ricci spaces from generalized Heisenberg data (k, m).

k is the dimension of the Clifford module v, m the dimension of the
center z.  A pair is admissible when the irreducible module dimension
d_m of the rank-m Clifford algebra divides k.  Admissible pairs give an
(n = k+m+1)-dimensional harmonic space with profile scale ell = 1,
volume entropy q = m + k/2 and Einstein constant -(m + k/4).

After normalizing to Ric = -(n-1) the entropy becomes
(m + k/2) sqrt((k+m)/(k/4+m)); it meets the general lower bound
2 sqrt(2) (n-1) / 3 exactly when k = 2m, which the dimension table allows
for exactly four values of m.
"""

import math
from dataclasses import dataclass
from typing import List, Tuple

from .errors import DomainError, NotAdmissibleError
from .model import (
    BoundClassification,
    ModelParams,
    classify_bounds,
    normalize_ricci,
)

__all__ = [
    "CLIFFORD_DIM_BASE",
    "DamekRicciSpace",
    "irreducible_module_dim",
    "is_admissible",
    "dr_space",
    "dr_normalized_entropy",
    "enumerate_lower_bound",
    "enumerate_spaces",
]

# Dimensions of the irreducible module of the Clifford algebra Cl(m) for
# m = 1..8; periodicity d_{m+8} = 16 d_m extends the table.  The values
# are pinned by unit tests against the low-rank algebra isomorphisms
# (Cl(1) ~ C, Cl(2) ~ H, Cl(8) ~ R(16)) and by reproducing the four-case
# equality classification downstream.
CLIFFORD_DIM_BASE = (2, 4, 4, 8, 8, 8, 8, 16)

_KNOWN_SPACES = {
    (2, 1): "complex hyperbolic plane",
    (4, 2): "lowest-dimensional non-symmetric case",
}


def irreducible_module_dim(m: int) -> int:
    """d_m from the base table with d_{m+8} = 16 d_m periodicity."""
    if int(m) != m or m < 1:
        raise DomainError(f"m must be a positive integer, got {m}")
    m = int(m)
    return CLIFFORD_DIM_BASE[(m - 1) % 8] * 16 ** ((m - 1) // 8)


def is_admissible(k: int, m: int) -> bool:
    """True when d_m divides k, i.e. (k, m) arises from a Clifford module."""
    if int(k) != k or k < 1:
        raise DomainError(f"k must be a positive integer, got {k}")
    return int(k) % irreducible_module_dim(m) == 0


@dataclass(frozen=True)
class DamekRicciSpace:
    """Admissible (k, m) with the derived model (n = k+m+1, ell = 1)."""

    k: int
    m: int

    @property
    def n(self) -> int:
        return self.k + self.m + 1

    @property
    def model(self) -> ModelParams:
        return ModelParams(self.n, 1.0, self.m + 0.5 * self.k)

    @property
    def normalized_entropy(self) -> float:
        return dr_normalized_entropy(self.k, self.m)

    def classification(self, tol: float = 1e-9) -> BoundClassification:
        normalized, _ = normalize_ricci(self.model)
        return classify_bounds(normalized, tol)

    @property
    def note(self) -> str:
        return _KNOWN_SPACES.get((self.k, self.m), "")


def dr_space(k: int, m: int) -> DamekRicciSpace:
    """The Damek-Ricci space for admissible (k, m)."""
    if not is_admissible(k, m):
        raise NotAdmissibleError(
            f"(k={k}, m={m}) is not admissible: d_{m} = "
            f"{irreducible_module_dim(m)} does not divide {k}"
        )
    return DamekRicciSpace(k=int(k), m=int(m))


def dr_normalized_entropy(k: int, m: int) -> float:
    """Entropy after rescaling to Ric = -(n-1).

    (m + k/2) * sqrt((k+m)/(k/4+m)); agrees with running the generic
    normalization on the ell = 1 model.
    """
    if not is_admissible(k, m):
        raise NotAdmissibleError(f"(k={k}, m={m}) is not admissible")
    return (m + 0.5 * k) * math.sqrt((k + m) / (0.25 * k + m))


def _assert_dimension_growth(limit: int) -> None:
    # Completeness guard for the lower-bound scan: for every m >= 9 the
    # module dimension d_m exceeds 2m, so k = 2m is never admissible
    # there.  The explicit check up to max(limit, 16) anchors the
    # induction d_m = 16 d_{m-8} > 32 (m-8) >= 2m, valid for m >= 9.
    for m in range(9, max(limit, 16) + 1):
        if irreducible_module_dim(m) <= 2 * m:
            raise AssertionError(
                f"Clifford dimension table violates d_m > 2m at m = {m}"
            )


def enumerate_lower_bound(max_m: int) -> List[Tuple[int, int]]:
    """All (m, k = 2m) attaining the entropy lower bound, scanning m <= max_m.

    Requires max_m >= 8 so the answer cannot be silently incomplete; the
    table growth assertion guarantees no further cases exist beyond m = 8.
    """
    if int(max_m) != max_m or max_m < 8:
        raise DomainError(f"max_m must be an integer >= 8, got {max_m}")
    _assert_dimension_growth(int(max_m))
    return [(m, 2 * m) for m in range(1, int(max_m) + 1) if is_admissible(2 * m, m)]


def enumerate_spaces(max_m: int, max_j: int) -> List[DamekRicciSpace]:
    """All admissible spaces with m <= max_m and k = j d_m, j <= max_j."""
    if int(max_m) != max_m or max_m < 1:
        raise DomainError(f"max_m must be a positive integer, got {max_m}")
    if int(max_j) != max_j or max_j < 1:
        raise DomainError(f"max_j must be a positive integer, got {max_j}")
    spaces = []
    for m in range(1, int(max_m) + 1):
        d = irreducible_module_dim(m)
        for j in range(1, int(max_j) + 1):
            spaces.append(dr_space(j * d, m))
    return spaces
