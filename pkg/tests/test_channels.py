"""
Tests for the closed-form, RK4 and Kraus evolutions
"""

import numpy as np
import pytest

from qcorr.analysis.channels import (
    ChannelPoint,
    NoiseKind,
    coefficients,
    evolve_analytic,
    evolve_kraus,
    evolve_lindblad_numeric,
    evolve_lindblad_trajectory,
    is_trace_preserving,
    jump_operators,
    pauli_kraus,
)
from qcorr.analysis.states import StateKind, density_of, initial_state, w_n
from qcorr.exceptions import ChannelError
from qcorr.utils.qlinalg import partial_trace, validate_density_matrix

from tests.conftest import ALL_CHANNELS, analytic, channel_id

KTS = [0.0, 0.05, 0.3, 1.0, 3.0]


class TestChannelPoint:
    def test_negative_kt(self):
        with pytest.raises(ChannelError):
            ChannelPoint(StateKind.GHZ, NoiseKind.X, -0.1)

    def test_nan_kt(self):
        with pytest.raises(ChannelError):
            ChannelPoint(StateKind.GHZ, NoiseKind.X, float('nan'))

    def test_w_n_has_no_closed_form(self):
        with pytest.raises(ChannelError):
            ChannelPoint(StateKind.WN, NoiseKind.Z, 0.5)

    def test_label(self):
        assert ChannelPoint(StateKind.W, NoiseKind.ISO, 1.0).label == 'w-iso'


class TestCoefficients:
    def test_ghz_x_values(self):
        c = coefficients(ChannelPoint(StateKind.GHZ, NoiseKind.X, np.log(2) / 4))
        assert c['alpha_plus'] == pytest.approx(2.5)
        assert c['alpha_minus'] == pytest.approx(0.5)

    def test_initial_values(self):
        ghz = coefficients(ChannelPoint(StateKind.GHZ, NoiseKind.X, 0.0))
        assert (ghz['alpha_plus'], ghz['alpha_minus']) == (4.0, 0.0)

        w = coefficients(ChannelPoint(StateKind.W, NoiseKind.X, 0.0))
        assert [w[f'alpha_{i}'] for i in range(1, 5)] == [4.0, 0.0, 0.0, 0.0]
        assert (w['beta_plus'], w['beta_minus']) == (2.0, 0.0)

    def test_names(self):
        c = coefficients(ChannelPoint(StateKind.GHZ, NoiseKind.ISO, 0.4))
        assert c.names == ('alpha_tilde_plus', 'alpha_tilde_minus', 'gamma')

    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_bounded(self, channel):
        for kt in KTS:
            values = coefficients(ChannelPoint(*channel, kt)).values.values()
            assert all(-1e-15 <= v <= 4 + 1e-15 for v in values)


class TestAnalytic:
    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_starts_at_initial_state(self, channel):
        expected = density_of(initial_state(channel[0]))
        assert np.allclose(analytic(*channel, 0.0), expected, atol=1e-15)

    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_is_density_matrix(self, channel):
        for kt in KTS:
            rho = analytic(*channel, kt)
            validate_density_matrix(rho)
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)

    def test_ghz_z_coherence(self):
        kt = 0.37
        rho = analytic(StateKind.GHZ, NoiseKind.Z, kt)
        assert rho[0, 7] == pytest.approx(0.5 * np.exp(-6 * kt))

    def test_ghz_z_marginals_do_not_move(self):
        start = analytic(StateKind.GHZ, NoiseKind.Z, 0.0)
        later = analytic(StateKind.GHZ, NoiseKind.Z, 2.0)
        for party in ('a', 'b'):
            assert np.allclose(partial_trace(start, party), partial_trace(later, party), atol=1e-15)

    def test_w_z_entries(self):
        kt = 0.8
        w = np.exp(-4 * kt)
        rho = analytic(StateKind.W, NoiseKind.Z, kt)
        assert rho[1, 2] == pytest.approx(np.sqrt(2) * w / 4)
        assert rho[2, 4] == pytest.approx(w / 4)
        assert rho[1, 1] == pytest.approx(0.5)

    def test_full_decoherence_limits(self):
        assert np.allclose(analytic(StateKind.GHZ, NoiseKind.ISO, 20.0), np.eye(8) / 8, atol=1e-12)
        assert np.allclose(analytic(StateKind.W, NoiseKind.ISO, 20.0), np.eye(8) / 8, atol=1e-12)


class TestKraus:
    @pytest.mark.parametrize('noise', list(NoiseKind))
    def test_trace_preserving(self, noise):
        for kt in KTS:
            assert is_trace_preserving(pauli_kraus(noise, kt))

    def test_rejects_negative_kt(self):
        with pytest.raises(ChannelError):
            pauli_kraus(NoiseKind.X, -1.0)

    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_matches_closed_form(self, channel):
        initial = density_of(initial_state(channel[0]))
        for kt in KTS:
            assert np.allclose(evolve_kraus(initial, channel[1], kt), analytic(*channel, kt), atol=1e-12)

    def test_w_n_one_is_w(self):
        rho = evolve_kraus(density_of(w_n(1.0)), NoiseKind.ISO, 0.6)
        assert np.allclose(rho, analytic(StateKind.W, NoiseKind.ISO, 0.6), atol=1e-12)


class TestLindblad:
    def test_jump_operator_count(self):
        assert len(jump_operators(NoiseKind.X, 1.0)) == 3
        assert len(jump_operators(NoiseKind.ISO, 1.0)) == 9

    def test_zero_time_returns_initial_state(self):
        rho = evolve_lindblad_numeric(StateKind.GHZ, NoiseKind.X, 1.0, 0.0)
        assert np.array_equal(rho, density_of(initial_state(StateKind.GHZ)))

    def test_rejects_non_positive_rate(self):
        with pytest.raises(ChannelError):
            evolve_lindblad_numeric(StateKind.GHZ, NoiseKind.X, 0.0, 1.0)

    def test_rejects_large_step(self):
        with pytest.raises(ChannelError):
            evolve_lindblad_numeric(StateKind.GHZ, NoiseKind.X, 1.0, 1.0, dt=1e-2)

    def test_rejects_unsorted_times(self):
        with pytest.raises(ChannelError):
            evolve_lindblad_trajectory(StateKind.GHZ, NoiseKind.X, 1.0, [0.5, 0.1])

    def test_depends_on_kappa_t_only(self):
        rho = evolve_lindblad_numeric(StateKind.W, NoiseKind.Z, 2.0, 0.25, dt=1e-4)
        assert np.allclose(rho, analytic(StateKind.W, NoiseKind.Z, 0.5), atol=1e-6)

    @pytest.mark.slow
    @pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
    def test_matches_closed_form(self, channel):
        kts = [0.1, 0.5, 1.0]
        samples = evolve_lindblad_trajectory(channel[0], channel[1], 1.0, kts, dt=1e-4)
        for kt, rho in zip(kts, samples):
            assert np.max(np.abs(rho - analytic(*channel, kt))) <= 1e-6
