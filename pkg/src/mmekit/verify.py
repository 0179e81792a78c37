"""Decomposition sampling and entanglement certification.

A rank-R mixed state rho = sum_k lambda_k |Phi_k><Phi_k| has the pure
decompositions {p_j, |w_j>} generated by isometries: for any D >= R and
any D x D unitary U,

    p_j = sum_k |U_jk|^2 lambda_k,
    |w_j> = (1/sqrt(p_j)) sum_k U_jk sqrt(lambda_k) |Phi_k>.

Certifying an MME candidate means showing the decomposition-averaged
entanglement <E> stays at 1 over many such unitaries; a single unitary
pulling <E> below 1 refutes the candidate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .entcore import ent_pure, lstar, mpsrp_purity
from .linalg import (
    ATOL,
    DensityMatrix,
    PureStateVector,
    basis_state,
    mix,
    mode_reduction_of_pure,
)
from .modes import ModeStructure

P_FLOOR = 1e-14  # decomposition weights below this are dropped as zero


@dataclass(frozen=True)
class SpectralState:
    """Eigen-decomposition {lambda_k, |Phi_k>} feeding the sampler.

    The basis matters when eigenvalues repeat: numerical re-
    diagonalization may then rotate within an eigenspace, so states
    built from known eigenstates should pass them in directly.
    """

    structure: ModeStructure
    spectrum: tuple[float, ...]
    eigenstates: tuple[PureStateVector, ...]

    def __post_init__(self):
        if len(self.spectrum) != len(self.eigenstates):
            raise ValueError("one eigenvalue per eigenstate")
        if any(w <= 0 for w in self.spectrum):
            raise ValueError("spectrum entries must be positive")
        if abs(sum(self.spectrum) - 1.0) > ATOL:
            raise ValueError(f"spectrum sums to {sum(self.spectrum)!r}")
        for v in self.eigenstates:
            if v.structure.dims != self.structure.dims:
                raise ValueError("eigenstate structure mismatch")
        g = np.column_stack([v.amplitudes for v in self.eigenstates])
        if not np.allclose(g.conj().T @ g, np.eye(g.shape[1]), atol=1e-10):
            raise ValueError("eigenstates are not orthonormal")

    @property
    def rank(self) -> int:
        return len(self.spectrum)

    def matrix(self) -> DensityMatrix:
        return mix(list(self.eigenstates), self.spectrum)


def spectral(rho: DensityMatrix, tol: float = 1e-12) -> SpectralState:
    """Eigen-decomposition of a density matrix, eigenvalues descending,
    zeros (below tol) dropped."""
    vals, vecs = np.linalg.eigh(rho.entries)
    order = np.argsort(vals)[::-1]
    spectrum = []
    states = []
    for k in order:
        if vals[k] <= tol:
            continue
        spectrum.append(float(vals[k]))
        amp = vecs[:, k]
        amp = amp / np.linalg.norm(amp)
        states.append(PureStateVector(rho.structure, amp))
    total = sum(spectrum)
    spectrum = [w / total for w in spectrum]
    return SpectralState(rho.structure, tuple(spectrum), tuple(states))


@dataclass(frozen=True)
class DecompositionSample:
    """One decomposition {p_j, |w_j>} with its generating unitary;
    members with p_j = 0 keep their slot with state None and are
    excluded from averages."""

    structure: ModeStructure
    unitary: np.ndarray
    probabilities: tuple[float, ...]
    members: tuple[PureStateVector | None, ...]

    @property
    def D(self) -> int:
        return len(self.probabilities)

    def average_ent(self) -> float:
        return float(
            sum(
                p * ent_pure(w)
                for p, w in zip(self.probabilities, self.members)
                if w is not None
            )
        )


def decompose(state: SpectralState, unitary: np.ndarray) -> DecompositionSample:
    """Apply a D x D unitary to the eigen-ensemble, D >= rank.

    Only the first `rank` columns act; p_j uses the formula weights
    while each member is normalized by its true norm, so tiny unitarity
    slack cannot leak into state validation.
    """
    U = np.asarray(unitary, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"unitary must be square, got shape {U.shape}")
    D = U.shape[0]
    R = state.rank
    if D < R:
        raise ValueError(f"D={D} is smaller than the rank {R}")
    if not np.allclose(U.conj().T @ U, np.eye(D), atol=1e-10):
        raise ValueError("matrix is not unitary within 1e-10")

    roots = np.sqrt(np.asarray(state.spectrum))
    basis = np.column_stack([v.amplitudes for v in state.eigenstates])
    lam = np.asarray(state.spectrum)

    probs = []
    members: list[PureStateVector | None] = []
    for j in range(D):
        p = float(np.sum(np.abs(U[j, :R]) ** 2 * lam))
        if p < P_FLOOR:
            probs.append(0.0)
            members.append(None)
            continue
        raw = basis @ (U[j, :R] * roots)
        raw = raw / np.linalg.norm(raw)
        probs.append(p)
        members.append(PureStateVector(state.structure, raw))
    return DecompositionSample(state.structure, U, tuple(probs), tuple(members))


def u2(theta: float, chi: float) -> np.ndarray:
    """One-parameter-pair 2x2 unitary [[a, b], [-conj(b), conj(a)]] with
    a = cos(theta), b = sin(theta) e^{i chi}."""
    a = math.cos(theta)
    b = math.sin(theta) * complex(math.cos(chi), math.sin(chi))
    return np.array([[a, b], [-np.conj(b), np.conj(a)]], dtype=complex)


def u2_grid(theta_steps: int, chi_steps: int):
    """Half-open grid over theta in [0, pi/2) and chi in [0, 2 pi),
    yielding (theta, chi, U).  theta = k pi/2 / T puts pi/4 on the grid
    whenever T is even."""
    if theta_steps < 1 or chi_steps < 1:
        raise ValueError("grid needs at least one step per axis")
    for i in range(theta_steps):
        theta = (math.pi / 2) * i / theta_steps
        for k in range(chi_steps):
            chi = 2 * math.pi * k / chi_steps
            yield theta, chi, u2(theta, chi)


def haar_unitary(D: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed D x D unitary: QR of a complex Gaussian with the
    R-diagonal phases factored out."""
    if D < 1:
        raise ValueError("D must be positive")
    z = rng.standard_normal((D, D)) + 1j * rng.standard_normal((D, D))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def random_lu_set(s: ModeStructure, seed: int):
    """Independent Haar local unitaries, one per mode; the per-mode rng
    streams are keyed by (seed, mode) so results do not depend on call
    order."""
    from .tgx import LocalUnitarySet

    us = []
    for m, d in enumerate(s.dims, start=1):
        rng = np.random.default_rng([seed, m])
        us.append(haar_unitary(d, rng))
    return LocalUnitarySet(tuple(us))


def as_spectral(state) -> tuple[SpectralState, str]:
    """Coerce to SpectralState plus a provenance note.

    MmeState and SpectralState carry their eigenbasis; a raw
    DensityMatrix is eigen-decomposed, which leaves the basis
    arbitrary inside any degenerate eigenspace (noted when it happens).
    """
    from .mme import MmeState

    if isinstance(state, SpectralState):
        return state, ""
    if isinstance(state, MmeState):
        return (
            SpectralState(state.structure, state.spectrum,
                          tuple(state.eigenstates())),
            "",
        )
    if isinstance(state, DensityMatrix):
        spec = spectral(state)
        note = ""
        if len(set(round(w, 12) for w in spec.spectrum)) < spec.rank:
            note = ("degenerate spectral basis: certificate applies to the "
                    "eigenbasis chosen by the solver")
        return spec, note
    raise TypeError(f"cannot take a spectral view of {type(state).__name__}")


@dataclass(frozen=True)
class EntEstimate:
    """min/argmin of the decomposition-averaged entanglement over the
    sampled unitaries."""

    structure: ModeStructure
    strategy: str
    samples: int
    min_avg: float
    argmin: dict = field(default_factory=dict)
    averages: tuple[float, ...] | None = None
    notes: str = ""


def min_avg_ent(
    state,
    strategy: str = "grid",
    grid: tuple[int, int] = (20, 20),
    Dmin: int | None = None,
    Dmax: int | None = None,
    samples: int = 100,
    seed: int = 0,
    keep_averages: bool = False,
) -> EntEstimate:
    """Minimize the decomposition-averaged entanglement over unitaries.

    `state` may be a SpectralState, an MmeState, or a DensityMatrix
    (eigen-decomposed on the fly).

    strategy "grid": rank must be 2; sweeps the u2 half-open grid.
    strategy "random": Haar unitaries, `samples` per D from Dmin..Dmax
    (defaults: rank .. rank**2), streams keyed by (seed, D, i).

    An MME candidate passes when min_avg stays at 1 within tolerance;
    any lower value names the violating unitary in `argmin`.
    """
    state, notes = as_spectral(state)
    best = math.inf
    argmin: dict = {}
    avgs: list[float] = []
    count = 0

    if strategy == "grid":
        if state.rank != 2:
            raise ValueError(f"grid strategy needs rank 2, got rank {state.rank}")
        T, C = grid
        for theta, chi, U in u2_grid(T, C):
            avg = decompose(state, U).average_ent()
            count += 1
            if keep_averages:
                avgs.append(avg)
            if avg < best:
                best = avg
                argmin = {"theta": theta, "chi": chi}
    elif strategy == "random":
        lo = state.rank if Dmin is None else int(Dmin)
        hi = state.rank**2 if Dmax is None else int(Dmax)
        if lo < state.rank:
            raise ValueError(f"Dmin={lo} below rank {state.rank}")
        if hi < lo:
            raise ValueError(f"Dmax={hi} below Dmin={lo}")
        for D in range(lo, hi + 1):
            for i in range(samples):
                rng = np.random.default_rng([seed, D, i])
                U = haar_unitary(D, rng)
                avg = decompose(state, U).average_ent()
                count += 1
                if keep_averages:
                    avgs.append(avg)
                if avg < best:
                    best = avg
                    argmin = {"D": D, "index": i, "seed": seed}
    else:
        raise ValueError(f"unknown strategy {strategy!r}")

    return EntEstimate(
        state.structure,
        strategy,
        count,
        best,
        argmin,
        tuple(avgs) if keep_averages else None,
        notes,
    )


@dataclass(frozen=True)
class PurityReport:
    """Observed vs expected mode purities across one decomposition."""

    structure: ModeStructure
    L: int
    expected: tuple[float, ...]
    max_deviation: float
    clean: bool


def reduction_purity_report(
    sample: DecompositionSample, L: int | None = None, tol: float = 1e-9
) -> PurityReport:
    """Check every member's mode reductions against the minimal
    single-mode purity floor at L (default: min L* of the structure).

    For genuine MME decompositions every reduction sits exactly on the
    floor, so max_deviation ~ 0 and clean is True.
    """
    s = sample.structure
    if L is None:
        L = lstar(s).min
    expected = tuple(mpsrp_purity(d, L) for d in s.dims)
    worst = 0.0
    for w in sample.members:
        if w is None:
            continue
        for m in range(1, s.N + 1):
            red = mode_reduction_of_pure(w, m)
            p = float(np.vdot(red, red).real)
            worst = max(worst, abs(p - expected[m - 1]))
    return PurityReport(s, L, expected, worst, worst <= tol)


COMPARISON_STRUCTURE = ModeStructure((2, 2, 2, 2))

COMPARISON_KINDS = ("mme", "e_spacewise", "e_selfspace", "separable")


def _two_level_state(a: int, b: int, sign: int) -> PureStateVector:
    s = COMPARISON_STRUCTURE
    amp = np.zeros(s.n, dtype=complex)
    amp[a - 1] = 1 / math.sqrt(2)
    amp[b - 1] = sign / math.sqrt(2)
    return PureStateVector(s, amp)


def comparison_family(kind: str, spectrum) -> DensityMatrix:
    """Rank-2 four-qubit reference mixtures sharing a spectrum, for
    side-by-side certification sweeps.

    kind "mme": equal superpositions on levels {1,16} and {4,13}, a
    compatible pair, so the mixture stays maximally entangled;
    kind "e_spacewise": levels {1,16} and {2,15}, level-disjoint but
    too close (neighboring tuples), so entanglement dips below 1;
    kind "e_selfspace": (|1>+|16>)/sqrt2 and (|1>-|16>)/sqrt2, both ME
    but sharing one subspace, so some mixes lose all entanglement;
    kind "separable": the classical mixture of |1><1| and |16><16|.
    """
    return comparison_family_spectral(kind, spectrum).matrix()


def comparison_family_spectral(kind: str, spectrum) -> SpectralState:
    """The same families with their defining eigenbasis attached, which
    keeps sampling well defined when the spectrum is degenerate."""
    s = COMPARISON_STRUCTURE
    spectrum = tuple(float(w) for w in spectrum)
    if len(spectrum) != 2:
        raise ValueError("families are rank 2: give two weights")
    pairs = {
        "mme": (_two_level_state(1, 16, 1), _two_level_state(4, 13, 1)),
        "e_spacewise": (_two_level_state(1, 16, 1), _two_level_state(2, 15, 1)),
        "e_selfspace": (_two_level_state(1, 16, 1), _two_level_state(1, 16, -1)),
        "separable": (basis_state(s, 1), basis_state(s, 16)),
    }
    if kind not in pairs:
        raise ValueError(f"unknown family {kind!r}; pick one of {sorted(pairs)}")
    return SpectralState(s, spectrum, pairs[kind])
