"""Entanglement mathematics: MPSRP purities, the L* minimization, and the
normalized full-N-partite entanglement measure for pure states.

The minimum physical simultaneous reduction purity (MPSRP) of a mode of
dimension n_m in a pure parent state with L equal-weight levels is

    P_MP(n_m, L) = mod(L,n_m) ((1+floor(L/n_m))/L)^2
                 + (n_m - mod(L,n_m)) (floor(L/n_m)/L)^2.

L* collects the values of L in 2..n/n_max minimizing the mean normalized
purity M(L) = (1/N) sum_m (n_m P_MP(n_m,L) - 1)/(n_m - 1); the minimum
M* anchors the normalization of the ent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .linalg import PureStateVector, mode_reduction_of_pure
from .modes import ModeStructure


class UnsupportedSystemError(ValueError):
    """Raised for structures that cannot host entanglement (n/n_max < 2)."""


@dataclass(frozen=True)
class LStarSet:
    """Result of the L* minimization.

    Attributes
    ----------
    values : tuple of int
        All L attaining the minimum, ascending.
    min_mean : float
        The minimized objective M*.
    per_L_mean : dict
        Objective value for every L in 2..n/n_max.
    """

    values: tuple[int, ...]
    min_mean: float
    per_L_mean: dict

    @property
    def min(self) -> int:
        return self.values[0]

    def to_json_dict(self, dims: str) -> dict:
        return {
            "dims": dims,
            "Lstar": list(self.values),
            "M_star": self.min_mean,
            "table": {str(L): v for L, v in sorted(self.per_L_mean.items())},
        }


def _mpsrp_fraction(n_m: int, L: int) -> Fraction:
    q, r = divmod(L, n_m)
    return (r * Fraction(1 + q, L) ** 2) + (n_m - r) * Fraction(q, L) ** 2


def mpsrp_purity(n_m: int, L: int) -> float:
    """Minimum physical simultaneous reduction purity of an n_m-level mode
    in an L-level equal-weight pure state.

    Exact rational internally; the float is correctly rounded.
    """
    n_m, L = int(n_m), int(L)
    if n_m < 2:
        raise ValueError(f"mode dimension must be >= 2, got {n_m}")
    if L < 1:
        raise ValueError(f"level count must be >= 1, got {L}")
    return float(_mpsrp_fraction(n_m, L))


def _objective_fraction(s: ModeStructure, L: int) -> Fraction:
    terms = [
        (d * _mpsrp_fraction(d, L) - 1) / (d - 1)
        for d in s.dims
    ]
    return sum(terms, Fraction(0)) / s.N


@lru_cache(maxsize=None)
def _lstar_cached(dims: tuple[int, ...]) -> LStarSet:
    s = ModeStructure(dims)
    if s.n_over_max < 2:
        raise UnsupportedSystemError(
            f"{s} has n/n_max = {s.n_over_max}; no entanglement is possible"
        )
    table = {L: _objective_fraction(s, L) for L in range(2, s.n_over_max + 1)}
    best = min(table.values())
    values = tuple(sorted(L for L, v in table.items() if v == best))
    return LStarSet(values, float(best), {L: float(v) for L, v in table.items()})


def lstar(s: ModeStructure) -> LStarSet:
    """All L in 2..n/n_max minimizing the mean normalized reduction purity.

    Argmin ties are exact (the objective is evaluated in rational
    arithmetic).  Bipartite systems always give values = {n_S}.
    """
    return _lstar_cached(s.dims)


def ent_pure(v: PureStateVector) -> float:
    """The ent of a pure state, normalized to [0, 1].

    Computes the mean normalized reduction purity
    E = (1/N) sum_m (n_m P(rho_m) - 1)/(n_m - 1) and returns
    (1 - E)/(1 - M*) clamped to [0, 1]: exactly 0 on product states and
    exactly 1 on maximally full-N-partite entangled states.
    """
    s = v.structure
    ls = lstar(s)  # raises UnsupportedSystemError for degenerate structures
    acc = 0.0
    for m, d in enumerate(s.dims, start=1):
        red = mode_reduction_of_pure(v, m)
        p = float(np.vdot(red, red).real)
        acc += (d * p - 1.0) / (d - 1.0)
    mean = acc / s.N
    value = (1.0 - mean) / (1.0 - ls.min_mean)
    return min(1.0, max(0.0, value))


def hyperspherical(angles) -> list[float]:
    """Unit-hypersphere coordinates from L-1 polar angles in [0, pi/2].

    x_1 = cos(t_1), x_h = cos(t_h) prod_{i<h} sin(t_i), and the last
    coordinate is the full sine product; the squared coordinates sum to 1.
    """
    angles = [float(a) for a in angles]
    for a in angles:
        if not 0.0 <= a <= math.pi / 2 + 1e-12:
            raise ValueError(f"angle {a} outside [0, pi/2]")
    out = []
    sin_prod = 1.0
    for a in angles:
        out.append(sin_prod * math.cos(a))
        sin_prod *= math.sin(a)
    out.append(sin_prod)
    return out
