"""
Tests for the closed-form oracle
"""

import numpy as np
import pytest

from qcorr.analysis.channels import NoiseKind
from qcorr.analysis.mid import dephase, eigen_projector_sets, mid
from qcorr.analysis.reference import (
    UNSUPPORTED,
    pi_w_x_support,
    reference_entropy,
    reference_mid,
    reference_pi_w_x,
    supports_mid,
    xlog2,
)
from qcorr.analysis.states import StateKind
from qcorr.exceptions import ChannelError, UnsupportedFormulaError

from tests.conftest import ALL_CHANNELS, CLOSED_FORM_CHANNELS, analytic, channel_id

GRID = np.linspace(0.0, 3.0, 61)


def test_xlog2_edges():
    assert xlog2(0.0) == 0.0
    assert xlog2(1.0) == 0.0
    assert xlog2(2.0) == pytest.approx(2.0)


@pytest.mark.parametrize('kt', [0.0, 0.5, 3.0])
def test_ghz_x_is_one(kt):
    assert reference_mid(StateKind.GHZ, NoiseKind.X, kt) == 1.0


def test_spot_value():
    value = reference_mid(StateKind.GHZ, NoiseKind.Z, np.log(2) / 6)
    assert value == pytest.approx(0.188722, abs=1e-6)


@pytest.mark.parametrize('channel', ALL_CHANNELS, ids=channel_id)
def test_one_at_start(channel):
    value = reference_mid(*channel, 0.0)
    if supports_mid(*channel):
        assert value == pytest.approx(1.0, abs=1e-12)
    else:
        assert value is UNSUPPORTED


def test_unsupported_marker():
    assert reference_mid(StateKind.W, NoiseKind.Y, 1.0) is UNSUPPORTED
    assert not UNSUPPORTED
    assert repr(UNSUPPORTED) == 'UNSUPPORTED'


@pytest.mark.parametrize('noise', [NoiseKind.Y, NoiseKind.Z, NoiseKind.ISO])
def test_ghz_correlations_vanish(noise):
    assert reference_mid(StateKind.GHZ, noise, 10.0) == pytest.approx(0.0, abs=1e-3)


def test_ghz_x_entropies():
    assert reference_entropy(StateKind.GHZ, NoiseKind.X, 0.0, 'rho') == pytest.approx(0.0, abs=1e-12)
    assert reference_entropy(StateKind.GHZ, NoiseKind.X, 0.0, 'pi_rho') == pytest.approx(1.0, abs=1e-12)
    assert reference_entropy(StateKind.GHZ, NoiseKind.X, 30.0, 'rho') == pytest.approx(2.0, abs=1e-9)


def test_entropy_for_unsupported_channel():
    with pytest.raises(UnsupportedFormulaError):
        reference_entropy(StateKind.W, NoiseKind.X, 0.5, 'rho')


def test_unknown_entropy_kind():
    with pytest.raises(UnsupportedFormulaError):
        reference_entropy(StateKind.GHZ, NoiseKind.Z, 0.5, 'rho_a')


@pytest.mark.parametrize('channel', CLOSED_FORM_CHANNELS, ids=channel_id)
def test_pipeline_agrees_on_grid(channel):
    for kt in GRID:
        result = mid(analytic(*channel, kt))
        assert result.mid == pytest.approx(reference_mid(*channel, kt), abs=1e-8)
        assert result.s_rho == pytest.approx(reference_entropy(*channel, kt, 'rho'), abs=1e-8)
        assert result.s_pi_rho == pytest.approx(reference_entropy(*channel, kt, 'pi_rho'), abs=1e-8)


class TestPiWX:
    def test_rejects_zero(self):
        with pytest.raises(ChannelError):
            reference_pi_w_x(0.0)

    def test_support_mask(self):
        mask = pi_w_x_support()
        assert mask.sum() == 16
        assert np.array_equal(mask, mask.T)

    @pytest.mark.parametrize('kt', [0.1, 0.5, 1.5])
    def test_unit_trace(self, kt):
        assert np.trace(reference_pi_w_x(kt)).real == pytest.approx(1.0, abs=1e-9)

    @pytest.mark.parametrize('kt', [0.1, 0.5])
    def test_pipeline_respects_sparsity(self, kt):
        rho = analytic(StateKind.W, NoiseKind.X, kt)
        pi_rho = dephase(rho, *eigen_projector_sets(rho))
        assert np.max(np.abs(pi_rho[~pi_w_x_support()])) <= 1e-12

