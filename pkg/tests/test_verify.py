from __future__ import annotations

import math

import numpy as np
import pytest

from mmekit.entcore import ent_pure
from mmekit.linalg import DensityMatrix, PureStateVector, basis_state, mix, outer
from mmekit.mme import construct
from mmekit.modes import ModeStructure, parse_dims
from mmekit.verify import (
    COMPARISON_KINDS,
    SpectralState,
    as_spectral,
    comparison_family,
    comparison_family_spectral,
    decompose,
    haar_unitary,
    min_avg_ent,
    random_lu_set,
    reduction_purity_report,
    spectral,
    u2,
    u2_grid,
)

from reference_values import CERTIFICATE_STATES, SPACEWISE_GRID_MIN_BALANCED


def _certificate(dims: tuple[int, ...]) -> SpectralState:
    state, _ = construct(ModeStructure(dims), CERTIFICATE_STATES[dims], (0.7, 0.3))
    spec, note = as_spectral(state)
    assert note == ""
    return spec


def test_spectral_state_validation() -> None:
    s = ModeStructure((2, 2))
    e1, e4 = basis_state(s, 1), basis_state(s, 4)
    SpectralState(s, (0.7, 0.3), (e1, e4))
    with pytest.raises(ValueError):
        SpectralState(s, (0.7, 0.3, 0.0), (e1, e4))
    with pytest.raises(ValueError):
        SpectralState(s, (1.3, -0.3), (e1, e4))
    with pytest.raises(ValueError):
        SpectralState(s, (0.7, 0.2), (e1, e4))
    with pytest.raises(ValueError):
        SpectralState(s, (0.7, 0.3), (e1, e1))
    other = basis_state(ModeStructure((4,)), 2)
    with pytest.raises(ValueError):
        SpectralState(s, (0.7, 0.3), (e1, other))


def test_spectral_round_trip_descending() -> None:
    s = ModeStructure((2, 2))
    rho = mix([basis_state(s, 2), basis_state(s, 3)], (0.3, 0.7))
    spec = spectral(rho)
    assert spec.spectrum == pytest.approx((0.7, 0.3))
    assert spec.rank == 2
    assert np.allclose(spec.matrix().entries, rho.entries, atol=1e-12)
    assert abs(spec.eigenstates[0].amplitude(3)) == pytest.approx(1.0)


def test_spectral_drops_zero_eigenvalues() -> None:
    s = ModeStructure((2, 2))
    spec = spectral(outer(basis_state(s, 1)))
    assert spec.rank == 1
    assert spec.spectrum == pytest.approx((1.0,))


def test_decompose_identity_recovers_eigenstates() -> None:
    spec = _certificate((2, 5))
    sample = decompose(spec, np.eye(2))
    assert sample.D == 2
    assert sample.probabilities == pytest.approx((0.7, 0.3))
    for member, eigen in zip(sample.members, spec.eigenstates):
        assert abs(np.vdot(member.amplitudes, eigen.amplitudes)) == pytest.approx(1.0)


def test_decompose_probability_formula() -> None:
    spec = _certificate((2, 5))
    U = haar_unitary(3, np.random.default_rng(42))
    sample = decompose(spec, U)
    lam = np.array(spec.spectrum)
    for j in range(3):
        manual = float(np.sum(np.abs(U[j, :2]) ** 2 * lam))
        assert sample.probabilities[j] == pytest.approx(manual, abs=1e-15)
    assert sum(sample.probabilities) == pytest.approx(1.0)


def test_decompose_reconstructs_state() -> None:
    rng = np.random.default_rng(7)
    s = ModeStructure((2, 3))
    g = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
    rho = DensityMatrix(s, (g @ g.conj().T) / np.trace(g @ g.conj().T).real)
    spec = spectral(rho)
    for i in range(50):
        D = spec.rank + int(rng.integers(0, 3))
        U = haar_unitary(D, rng)
        sample = decompose(spec, U)
        rebuilt = sum(
            p * np.outer(w.amplitudes, w.amplitudes.conj())
            for p, w in zip(sample.probabilities, sample.members)
            if w is not None
        )
        assert np.abs(rebuilt - rho.entries).max() < 1e-10, i


def test_decompose_zero_probability_member_is_none() -> None:
    s = ModeStructure((2, 2))
    spec = SpectralState(s, (1.0,), (basis_state(s, 1),))
    sample = decompose(spec, np.eye(2))
    assert sample.probabilities == (1.0, 0.0)
    assert sample.members[1] is None
    assert sample.average_ent() == pytest.approx(0.0)


def test_decompose_validation() -> None:
    spec = _certificate((2, 5))
    with pytest.raises(ValueError):
        decompose(spec, np.ones((2, 3)))
    with pytest.raises(ValueError):
        decompose(spec, np.eye(1))
    with pytest.raises(ValueError):
        decompose(spec, np.ones((2, 2)))


def test_u2_values() -> None:
    assert np.allclose(u2(0.0, 0.0), np.eye(2), atol=1e-15)
    m = u2(math.pi / 4, 0.0)
    r = 1 / math.sqrt(2)
    assert np.allclose(m, [[r, r], [-r, r]], atol=1e-15)
    for theta, chi in [(0.3, 1.1), (1.2, 4.0)]:
        m = u2(theta, chi)
        assert np.allclose(m.conj().T @ m, np.eye(2), atol=1e-15)


def test_u2_grid_shape_and_coverage() -> None:
    pts = list(u2_grid(20, 20))
    assert len(pts) == 400
    thetas = {t for t, _, _ in pts}
    chis = {c for _, c, _ in pts}
    assert math.pi / 4 in thetas  # even theta_steps lands exactly on pi/4
    assert 0.0 in chis
    assert max(thetas) < math.pi / 2
    assert max(chis) < 2 * math.pi
    with pytest.raises(ValueError):
        list(u2_grid(0, 20))
    with pytest.raises(ValueError):
        list(u2_grid(20, 0))


def test_haar_unitary_deterministic_and_unitary() -> None:
    a = haar_unitary(4, np.random.default_rng(9))
    b = haar_unitary(4, np.random.default_rng(9))
    assert np.array_equal(a, b)
    assert np.abs(a.conj().T @ a - np.eye(4)).max() < 1e-12
    assert haar_unitary(1, np.random.default_rng(0)).shape == (1, 1)
    with pytest.raises(ValueError):
        haar_unitary(0, np.random.default_rng(0))


def test_haar_unitary_first_moment() -> None:
    # E|U_00|^2 = 1/D for the Haar measure
    rng = np.random.default_rng(123)
    acc = 0.0
    for _ in range(4000):
        acc += abs(haar_unitary(3, rng)[0, 0]) ** 2
    assert acc / 4000 == pytest.approx(1 / 3, abs=0.02)


def test_random_lu_set_deterministic() -> None:
    s = ModeStructure((2, 3, 4))
    a = random_lu_set(s, 5)
    b = random_lu_set(s, 5)
    for ua, ub in zip(a.unitaries, b.unitaries):
        assert np.array_equal(ua, ub)
    assert [u.shape[0] for u in a.unitaries] == [2, 3, 4]


def test_as_spectral_paths() -> None:
    spec = _certificate((2, 5))
    again, note = as_spectral(spec)
    assert again is spec
    assert note == ""

    rho = spec.matrix()
    from_rho, note = as_spectral(rho)
    assert note == ""
    assert from_rho.spectrum == pytest.approx((0.7, 0.3))

    s = ModeStructure((2, 2))
    degenerate = mix([basis_state(s, 1), basis_state(s, 4)], (0.5, 0.5))
    _, note = as_spectral(degenerate)
    assert "degenerate" in note

    with pytest.raises(TypeError):
        as_spectral(np.eye(4))


def test_grid_certificate_holds_for_published_states() -> None:
    for dims in CERTIFICATE_STATES:
        est = min_avg_ent(_certificate(dims), strategy="grid", keep_averages=True)
        assert est.samples == 400
        assert est.min_avg >= 1 - 1e-9
        assert set(est.argmin) == {"theta", "chi"}
        assert len(est.averages) == 400
        assert min(est.averages) == est.min_avg


def test_grid_strategy_needs_rank_two() -> None:
    s = parse_dims("2x6")
    state, _ = construct(s, [(1, 12), (2, 9), (4, 11)], (0.5, 0.3, 0.2))
    with pytest.raises(ValueError):
        min_avg_ent(state, strategy="grid")


def test_random_strategy_defaults_and_validation() -> None:
    spec = _certificate((2, 5))
    est = min_avg_ent(spec, strategy="random", samples=5)
    assert est.samples == 15  # D in 2..4, five draws each
    assert est.min_avg >= 1 - 1e-9
    assert set(est.argmin) == {"D", "index", "seed"}
    with pytest.raises(ValueError):
        min_avg_ent(spec, strategy="random", Dmin=1)
    with pytest.raises(ValueError):
        min_avg_ent(spec, strategy="random", Dmin=3, Dmax=2)
    with pytest.raises(ValueError):
        min_avg_ent(spec, strategy="annealed")


def test_comparison_family_validation() -> None:
    with pytest.raises(ValueError):
        comparison_family("ghz", (0.5, 0.5))
    with pytest.raises(ValueError):
        comparison_family("mme", (0.5, 0.3, 0.2))
    assert set(COMPARISON_KINDS) == {
        "mme",
        "e_spacewise",
        "e_selfspace",
        "separable",
    }


def test_comparison_mme_matches_construct() -> None:
    s = ModeStructure((2, 2, 2, 2))
    _, rho = construct(s, [(1, 16), (4, 13)], (0.7, 0.3))
    fam = comparison_family("mme", (0.7, 0.3))
    assert np.allclose(fam.entries, rho.entries, atol=1e-14)


def test_selfspace_balanced_hits_zero_on_grid() -> None:
    spec = comparison_family_spectral("e_selfspace", (0.5, 0.5))
    sample = decompose(spec, u2(math.pi / 4, 0.0))
    # the quarter turn rotates (|1>+|16>), (|1>-|16>) back to basis states
    for member in sample.members:
        amps = np.abs(member.amplitudes)
        assert amps.max() == pytest.approx(1.0, abs=1e-12)
    assert sample.average_ent() == pytest.approx(0.0, abs=1e-12)
    est = min_avg_ent(spec, strategy="grid")
    assert est.min_avg == pytest.approx(0.0, abs=1e-12)


def test_selfspace_grid_minimum_closed_form() -> None:
    for lam1 in (0.6, 0.7, 0.9):
        est = min_avg_ent(
            comparison_family_spectral("e_selfspace", (lam1, 1 - lam1)),
            strategy="grid",
        )
        assert est.min_avg == pytest.approx((2 * lam1 - 1) ** 2, abs=1e-12)


def test_spacewise_grid_minimum() -> None:
    balanced = min_avg_ent(
        comparison_family_spectral("e_spacewise", (0.5, 0.5)), strategy="grid"
    )
    assert balanced.min_avg == pytest.approx(SPACEWISE_GRID_MIN_BALANCED, abs=1e-12)
    tilted = min_avg_ent(
        comparison_family_spectral("e_spacewise", (0.7, 0.3)), strategy="grid"
    )
    assert tilted.min_avg == pytest.approx(1 - 0.7 * 0.3, abs=1e-12)


def test_separable_stays_at_zero() -> None:
    est = min_avg_ent(
        comparison_family_spectral("separable", (0.5, 0.5)), strategy="grid"
    )
    assert est.min_avg == pytest.approx(0.0, abs=1e-12)
    assert est.argmin == {"theta": 0.0, "chi": 0.0}


def test_reduction_purity_clean_on_mme_decompositions() -> None:
    spec = _certificate((2, 5))
    rng = np.random.default_rng(0)
    for D in (2, 3, 4):
        sample = decompose(spec, haar_unitary(D, rng))
        report = reduction_purity_report(sample)
        assert report.L == 2
        assert report.expected == pytest.approx((0.5, 0.5))
        assert report.clean
        assert report.max_deviation <= 1e-9


def test_reduction_purity_flags_non_mme() -> None:
    spec = comparison_family_spectral("e_spacewise", (0.5, 0.5))
    sample = decompose(spec, u2(math.pi / 4, 0.0))
    report = reduction_purity_report(sample)
    assert report.expected == pytest.approx((0.5, 0.5, 0.5, 0.5))
    assert not report.clean
    assert report.max_deviation == pytest.approx(0.5, abs=1e-12)


def test_average_ent_weights_members() -> None:
    s = ModeStructure((2, 2))
    bell = PureStateVector(
        s, np.array([1, 0, 0, 1], dtype=complex) / math.sqrt(2)
    )
    spec = SpectralState(s, (0.7, 0.3), (bell, basis_state(s, 2)))
    sample = decompose(spec, np.eye(2))
    assert ent_pure(bell) == pytest.approx(1.0)
    assert sample.average_ent() == pytest.approx(0.7, abs=1e-12)
