"""
Tests for the local-unitary parametrization and the AMID search
"""

import inspect

import numpy as np
import pytest

from qcorr.analysis import amid as amid_module
from qcorr.analysis.amid import (
    AmidConfig,
    AmidObjective,
    LocalUnitaryAngles,
    all_reported_optima,
    amid,
    amid_objective,
    branch_crossover,
    local_unitary,
    reported_optima,
    rotated_projectors,
    starting_points,
    unitary_coefficients,
)
from qcorr.analysis.channels import NoiseKind
from qcorr.analysis.mid import mid
from qcorr.analysis.states import StateKind
from qcorr.config import OptimizerConfig
from qcorr.exceptions import OptimizationError
from qcorr.utils.qlinalg import PAULI, random_density_matrix

from tests.conftest import analytic

X_BASIS = (np.pi / 4, np.pi / 2, np.pi / 2)
Y_BASIS = (np.pi / 4, 0.0, 0.0)


class TestAngles:
    def test_wrong_length(self):
        with pytest.raises(OptimizationError):
            LocalUnitaryAngles((0.0,) * 8)

    def test_non_finite(self):
        with pytest.raises(OptimizationError):
            LocalUnitaryAngles((np.inf,) + (0.0,) * 8)

    def test_reported_order_is_converted(self):
        angles = LocalUnitaryAngles.from_reported((1.0, 2.0, 3.0) * 3)
        assert angles.qubit(0) == (3.0, 1.0, 2.0)
        assert angles.qubit(2) == (3.0, 1.0, 2.0)

    def test_wrapped(self):
        angles = LocalUnitaryAngles((-0.5, 7.0) + (0.0,) * 7).wrapped()
        assert angles.values[0] == pytest.approx(2 * np.pi - 0.5)
        assert angles.values[1] == pytest.approx(7.0 - 2 * np.pi)


class TestLocalUnitary:
    def test_zero_psi_is_identity(self):
        assert np.allclose(local_unitary(0.0, 1.2, 0.4), np.eye(2), atol=1e-15)

    def test_quarter_turn_about_x(self):
        assert np.allclose(local_unitary(np.pi / 2, 0.0, 0.0), 1j * PAULI['x'], atol=1e-15)

    def test_unit_three_sphere(self, rng):
        for psi, theta, phi in rng.uniform(0, 2 * np.pi, size=(20, 3)):
            y = unitary_coefficients(psi, theta, phi)
            assert np.sum(y ** 2) == pytest.approx(1.0, abs=1e-14)

            u = local_unitary(psi, theta, phi)
            assert np.allclose(u @ u.conj().T, np.eye(2), atol=1e-14)
            assert abs(np.linalg.det(u)) == pytest.approx(1.0, abs=1e-14)

    def test_rotated_projectors_at_zero_are_computational(self):
        set_a, set_b = rotated_projectors(LocalUnitaryAngles.zeros())
        for n, p in enumerate(set_a.projectors):
            assert np.allclose(p, np.diag(np.eye(4)[n]), atol=1e-15)
        for k, p in enumerate(set_b.projectors):
            assert np.allclose(p, np.diag(np.eye(2)[k]), atol=1e-15)

    def test_rotated_projectors_are_valid(self, rng):
        for _ in range(10):
            set_a, set_b = rotated_projectors(rng.uniform(0, 2 * np.pi, size=9))
            assert set_a.defects() == []
            assert set_b.defects() == []
            for p in set_a.projectors:
                for q in set_a.projectors:
                    assert np.allclose(p @ q, q @ p, atol=1e-12)


class TestObjective:
    def test_identity_angles_give_mid_for_diagonal_marginals(self):
        rho = analytic(StateKind.GHZ, NoiseKind.Z, 0.5)
        assert amid_objective(rho, LocalUnitaryAngles.zeros()) == pytest.approx(mid(rho).mid, abs=1e-10)

    def test_non_negative(self, rng):
        rho = random_density_matrix(8, rng, rank=2)
        for angles in rng.uniform(0, 2 * np.pi, size=(10, 9)):
            assert amid_objective(rho, angles) >= -1e-9

    def test_fast_path_agrees(self, rng):
        rho = random_density_matrix(8, rng)
        objective = AmidObjective(rho)
        for angles in rng.uniform(0, 2 * np.pi, size=(10, 9)):
            assert objective(angles) == pytest.approx(amid_objective(rho, angles), abs=1e-10)
        assert objective.evaluations == 10

    def test_periodic(self, rng):
        rho = random_density_matrix(8, rng)
        angles = rng.uniform(0, 2 * np.pi, size=9)
        shifted = angles + 2 * np.pi * rng.integers(-2, 3, size=9)
        assert amid_objective(rho, shifted) == pytest.approx(amid_objective(rho, angles), abs=1e-12)

    def test_global_sign_of_unitary_is_irrelevant(self, rng):
        rho = random_density_matrix(8, rng)
        angles = rng.uniform(0, 2 * np.pi, size=9)
        flipped = angles.copy()
        # psi -> psi + pi sends U to -U
        flipped[3] += np.pi
        assert amid_objective(rho, flipped) == pytest.approx(amid_objective(rho, angles), abs=1e-10)

    def test_product_basis_beats_computational_basis_for_ghz_y(self):
        rho = analytic(StateKind.GHZ, NoiseKind.Y, 1.0)
        angles = LocalUnitaryAngles(X_BASIS + Y_BASIS + Y_BASIS)
        assert amid_objective(rho, angles) < mid(rho).mid - 0.01


class TestReportedOptima:
    def test_all_reported(self):
        optima = all_reported_optima()
        assert len(optima) == 5
        assert optima[0] == LocalUnitaryAngles.from_reported(OptimizerConfig.GHZ_X_OPTIMUM)

    def test_ghz_x(self):
        assert reported_optima(StateKind.GHZ, NoiseKind.X) == [
            LocalUnitaryAngles.from_reported(OptimizerConfig.GHZ_X_OPTIMUM)
        ]

    def test_w_x_branches(self):
        early = LocalUnitaryAngles.from_reported(OptimizerConfig.W_X_EARLY_OPTIMUM)
        late = LocalUnitaryAngles.from_reported(OptimizerConfig.W_X_LATE_OPTIMUM)
        assert reported_optima(StateKind.W, NoiseKind.X, kt=0.01) == [early]
        assert reported_optima(StateKind.W, NoiseKind.X, kt=1.0) == [late]
        assert reported_optima(StateKind.W, NoiseKind.X) == [early, late]

    def test_channels_without_optima(self):
        assert reported_optima(StateKind.GHZ, NoiseKind.Z) == []
        assert reported_optima(StateKind.W, NoiseKind.ISO, kt=0.5) == []


class TestStartingPoints:
    def test_config_validation(self):
        with pytest.raises(OptimizationError):
            AmidConfig(restarts=0)
        with pytest.raises(OptimizationError):
            AmidConfig(xatol=-1.0)
        with pytest.raises(OptimizationError):
            AmidConfig(seed=-1)

    def test_layout(self):
        starts = starting_points(AmidConfig(restarts=10, seed=3))
        assert starts.shape == (10, 9)
        assert np.array_equal(starts[0], np.zeros(9))
        for row, optimum in zip(starts[1:6], all_reported_optima()):
            assert np.allclose(row, optimum.as_array())
        assert np.all((starts[6:] >= 0) & (starts[6:] < 2 * np.pi))

    def test_truncated(self):
        starts = starting_points(AmidConfig(restarts=2))
        assert np.array_equal(starts[0], np.zeros(9))
        assert np.allclose(starts[1], all_reported_optima()[0].as_array())

    def test_seeded(self):
        first = starting_points(AmidConfig(restarts=12, seed=7))
        second = starting_points(AmidConfig(restarts=12, seed=7))
        other = starting_points(AmidConfig(restarts=12, seed=8))
        assert np.array_equal(first, second)
        assert not np.array_equal(first[6:], other[6:])

    def test_custom_warm_starts(self):
        config = AmidConfig(restarts=2, warm_starts=(LocalUnitaryAngles((1.0,) * 9),))
        assert np.array_equal(starting_points(config)[1], np.ones(9))


class TestSearch:
    def test_pure_ghz_is_one(self):
        rho = analytic(StateKind.GHZ, NoiseKind.X, 0.0)
        result = amid(rho, AmidConfig(restarts=3, max_evals=300), kt=0.0)
        assert result.amid == pytest.approx(1.0, abs=2e-3)
        assert result.kt == 0.0
        assert result.restarts_used == 3

    def test_value_is_reevaluated_at_argmin(self):
        rho = analytic(StateKind.W, NoiseKind.Z, 0.3)
        result = amid(rho, AmidConfig(restarts=2, max_evals=200))
        assert result.amid == pytest.approx(amid_objective(rho, result.argmin), abs=1e-12)
        assert all(0.0 <= v < 2 * np.pi for v in result.argmin.values)

    def test_deterministic(self):
        rho = analytic(StateKind.W, NoiseKind.ISO, 0.4)
        config = AmidConfig(restarts=8, seed=11, max_evals=200)
        first, second = amid(rho, config), amid(rho, config)
        assert first.amid == second.amid
        assert first.argmin == second.argmin

    @pytest.mark.slow
    def test_equals_mid_for_ghz_under_dephasing(self):
        rho = analytic(StateKind.GHZ, NoiseKind.Z, 0.5)
        result = amid(rho, AmidConfig(restarts=6))
        assert result.amid == pytest.approx(mid(rho).mid, abs=2e-3)

    @pytest.mark.slow
    def test_ghz_x_drops_below_mid(self):
        rho = analytic(StateKind.GHZ, NoiseKind.X, 0.5)
        assert amid(rho, AmidConfig(restarts=6)).amid < 0.5


class TestBranchCrossover:
    def test_locates_sign_change(self, monkeypatch):
        zero = LocalUnitaryAngles.zeros()
        other = LocalUnitaryAngles((1.0,) * 9)
        monkeypatch.setattr(
            amid_module, 'amid_objective', lambda rho, angles: rho if angles == zero else 0.5
        )
        crossing = branch_crossover(lambda kt: kt, [zero, other], [0.0, 0.25, 0.75, 1.0])
        assert crossing == pytest.approx(0.5)

    def test_no_crossing(self, monkeypatch):
        zero = LocalUnitaryAngles.zeros()
        other = LocalUnitaryAngles((1.0,) * 9)
        monkeypatch.setattr(
            amid_module, 'amid_objective', lambda rho, angles: 0.0 if angles == zero else 1.0
        )
        assert branch_crossover(lambda kt: kt, [zero, other], [0.0, 0.5, 1.0]) is None

    def test_needs_two_branches(self):
        with pytest.raises(OptimizationError):
            branch_crossover(lambda kt: kt, [LocalUnitaryAngles.zeros()], [0.0, 1.0])


def test_package_keeps_measure_submodules():
    import qcorr.analysis as analysis

    assert inspect.ismodule(analysis.amid)
    assert inspect.ismodule(analysis.mid)
    assert amid_module.amid is amid


class TestWChannels:
    @pytest.mark.parametrize('noise', list(NoiseKind))
    def test_pure_state_value(self, noise):
        rho = analytic(StateKind.W, noise, 0.0)
        assert amid(rho, AmidConfig(restarts=3)).amid == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.slow
    def test_dephasing_matches_mid(self):
        rho = analytic(StateKind.W, NoiseKind.Z, 0.5)
        assert amid(rho, AmidConfig()).amid == pytest.approx(mid(rho).mid, abs=2e-3)

    @pytest.mark.slow
    @pytest.mark.parametrize('noise', [NoiseKind.X, NoiseKind.Y])
    def test_never_exceeds_mid(self, noise):
        rho = analytic(StateKind.W, noise, 0.5)
        assert amid(rho, AmidConfig()).amid <= mid(rho).mid + 1e-6

    @pytest.mark.slow
    def test_y_noise_late_value(self):
        rho = analytic(StateKind.W, NoiseKind.Y, 3.0)
        value = amid(rho, AmidConfig()).amid
        assert value <= mid(rho).mid + 1e-6
        assert value < 0.56
