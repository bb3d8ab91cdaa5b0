"""
Tests for eigen-projectors, dephasing and MID
"""

import numpy as np
import pytest

from qcorr.analysis.channels import NoiseKind
from qcorr.analysis.mid import (
    ProjectorSet,
    dephase,
    dephase_marginal,
    eigen_projector_sets,
    marginal_projectors,
    mid,
    mutual_information,
)
from qcorr.analysis.states import StateKind
from qcorr.exceptions import DensityMatrixError, DimensionError, ProjectorError
from qcorr.utils.qlinalg import partial_trace, random_density_matrix, von_neumann_entropy

from tests.conftest import ALL_CHANNELS, analytic, channel_id


def computational_set(party: str) -> ProjectorSet:
    dim = 4 if party == 'a' else 2
    return ProjectorSet.from_vectors(party, list(np.eye(dim)))


class TestProjectorSet:
    def test_computational_sets_are_valid(self):
        assert computational_set('a').defects() == []
        assert computational_set('b').defects() == []

    def test_incomplete_set(self):
        partial = ProjectorSet.from_vectors('b', [np.array([1.0, 0.0])])
        assert partial.defects()
        with pytest.raises(ProjectorError):
            partial.verify()

    def test_non_orthogonal_set(self):
        plus = np.array([1.0, 1.0]) / np.sqrt(2)
        skewed = ProjectorSet.from_vectors('b', [np.array([1.0, 0.0]), plus])
        with pytest.raises(ProjectorError):
            skewed.verify()

    def test_unknown_party(self):
        with pytest.raises(ProjectorError):
            ProjectorSet('c', (np.eye(2),))


class TestMarginalProjectors:
    def test_maximally_mixed_gives_computational_basis(self):
        projectors = marginal_projectors(np.eye(2) / 2, 'b').projectors
        assert np.allclose(projectors[0], np.diag([1, 0]), atol=1e-15)
        assert np.allclose(projectors[1], np.diag([0, 1]), atol=1e-15)

    def test_degenerate_diagonal_marginal(self):
        rho_a = partial_trace(analytic(StateKind.GHZ, NoiseKind.X, 0.4), 'a')
        projectors = marginal_projectors(rho_a, 'a').projectors
        diagonals = sorted(int(np.argmax(np.real(np.diag(p)))) for p in projectors)
        assert diagonals == [0, 1, 2, 3]
        for p in projectors:
            assert np.allclose(p, np.diag(np.diag(p)), atol=1e-12)

    def test_w_z_marginal_has_bell_like_projectors(self):
        rho_a = partial_trace(analytic(StateKind.W, NoiseKind.Z, 0.5), 'a')
        projectors = marginal_projectors(rho_a, 'a').projectors

        for sign in (1, -1):
            v = np.array([0, 1, sign, 0]) / np.sqrt(2)
            target = np.outer(v, v)
            assert any(np.allclose(p, target, atol=1e-10) for p in projectors)

    def test_sets_are_complete_for_random_states(self, rng):
        for rank in (1, 2, 8):
            rho = random_density_matrix(8, rng, rank=rank)
            for projector_set in eigen_projector_sets(rho):
                assert projector_set.defects() == []

    def test_dimension_must_match_party(self):
        with pytest.raises(DimensionError):
            marginal_projectors(np.eye(4) / 4, 'b')


class TestDephase:
    def test_ghz_z_loses_coherence(self):
        rho = analytic(StateKind.GHZ, NoiseKind.Z, 0.2)
        pi_rho = dephase(rho, *eigen_projector_sets(rho))
        expected = np.zeros((8, 8))
        expected[0, 0] = expected[7, 7] = 0.5
        assert np.allclose(pi_rho, expected, atol=1e-12)

    def test_diagonal_state_unchanged(self):
        rho = np.diag(np.arange(1, 9) / 36.0).astype(complex)
        pi_rho = dephase(rho, computational_set('a'), computational_set('b'))
        assert np.allclose(pi_rho, rho, atol=1e-15)

    def test_idempotent(self, rng):
        rho = random_density_matrix(8, rng)
        sets = eigen_projector_sets(rho)
        once = dephase(rho, *sets)
        assert np.allclose(dephase(once, *sets), once, atol=1e-12)

    def test_marginals_commute_with_dephasing(self, rng):
        rho = random_density_matrix(8, rng)
        set_a, set_b = eigen_projector_sets(rho)
        pi_rho = dephase(rho, set_a, set_b)

        assert np.allclose(partial_trace(pi_rho, 'a'), dephase_marginal(partial_trace(rho, 'a'), set_a), atol=1e-10)
        assert np.allclose(partial_trace(pi_rho, 'b'), dephase_marginal(partial_trace(rho, 'b'), set_b), atol=1e-10)

    def test_rejects_swapped_parties(self):
        with pytest.raises(ProjectorError):
            dephase(np.eye(8) / 8, computational_set('b'), computational_set('a'))

    def test_rejects_incomplete_set(self):
        partial = ProjectorSet.from_vectors('b', [np.array([1.0, 0.0])])
        with pytest.raises(ProjectorError):
            dephase(np.eye(8) / 8, computational_set('a'), partial)


class TestMutualInformation:
    def test_ghz(self):
        assert mutual_information(analytic(StateKind.GHZ, NoiseKind.X, 0.0)) == pytest.approx(2.0, abs=1e-10)

    def test_product_state(self, basis_state):
        assert mutual_information(basis_state('000')) == pytest.approx(0.0, abs=1e-12)


class TestMid:
    @pytest.mark.parametrize('kt', [0.0, 0.1, 0.7, 2.0, 3.0])
    def test_ghz_x_is_constant(self, kt):
        assert mid(analytic(StateKind.GHZ, NoiseKind.X, kt)).mid == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_one_at_start(self, channel):
        assert mid(analytic(*channel, 0.0)).mid == pytest.approx(1.0, abs=1e-9)

    def test_spot_value(self):
        result = mid(analytic(StateKind.GHZ, NoiseKind.Z, np.log(2) / 6))
        assert result.mid == pytest.approx(0.188722, abs=1e-6)

    def test_product_state_has_none(self, basis_state):
        assert mid(basis_state('000')).mid == pytest.approx(0.0, abs=1e-12)

    @pytest.mark.parametrize('kt', [0.05, 0.4, 1.5])
    def test_w_x_and_w_y_coincide(self, kt):
        x = mid(analytic(StateKind.W, NoiseKind.X, kt)).mid
        y = mid(analytic(StateKind.W, NoiseKind.Y, kt)).mid
        assert x == pytest.approx(y, abs=1e-9)

    def test_result_bookkeeping(self, rng):
        rho = random_density_matrix(8, rng, rank=4)
        result = mid(rho, kt=0.25)

        assert result.kt == 0.25
        assert result.mid == pytest.approx(
            result.mutual_information - result.classical_mutual_information, abs=1e-12
        )
        assert result.s_rho == pytest.approx(von_neumann_entropy(rho), abs=1e-12)
        assert result.s_pi_rho >= result.s_rho - 1e-9
        assert -1e-9 <= result.mid <= result.mutual_information + 1e-9

    def test_marginal_terms_vanish_for_eigen_projectors(self, rng):
        result = mid(random_density_matrix(8, rng))
        assert result.s_a == pytest.approx(result.s_pi_a, abs=1e-9)
        assert result.s_b == pytest.approx(result.s_pi_b, abs=1e-9)

    def test_rejects_invalid_state(self):
        with pytest.raises(DensityMatrixError):
            mid(np.eye(8))
