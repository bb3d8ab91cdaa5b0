"""
Shared fixtures for the qcorr test suite
"""

import numpy as np
import pytest

from qcorr.analysis.channels import ChannelPoint, NoiseKind, evolve_analytic
from qcorr.analysis.states import StateKind

ALL_CHANNELS = [
    (state, noise)
    for state in (StateKind.GHZ, StateKind.W)
    for noise in (NoiseKind.X, NoiseKind.Y, NoiseKind.Z, NoiseKind.ISO)
]

CLOSED_FORM_CHANNELS = [
    (StateKind.GHZ, NoiseKind.Y),
    (StateKind.GHZ, NoiseKind.Z),
    (StateKind.GHZ, NoiseKind.ISO),
    (StateKind.W, NoiseKind.Z),
    (StateKind.W, NoiseKind.ISO),
]


def channel_id(channel) -> str:
    return f"{channel[0].value}-{channel[1].value}"


def analytic(state: StateKind, noise: NoiseKind, kt: float) -> np.ndarray:
    return evolve_analytic(ChannelPoint(state, noise, kt))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(1234)


@pytest.fixture
def basis_state():
    """|bits><bits| for a label such as '000'"""
    def make(bits: str) -> np.ndarray:
        rho = np.zeros((8, 8), dtype=np.complex128)
        index = int(bits, 2)
        rho[index, index] = 1.0
        return rho
    return make
