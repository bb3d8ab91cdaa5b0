"""
Three-qubit pure states: GHZ, W and the W_n family
"""

import numpy as np
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Union

from qcorr.config import LinalgConfig, SweepConfigDefaults
from qcorr.exceptions import DimensionError, DensityMatrixError
from qcorr.utils.qlinalg import DensityMatrix

logger = logging.getLogger('qcorr.states')


class StateKind(Enum):
    """Initial states a sweep can start from"""

    GHZ = 'ghz'
    W = 'w'
    WN = 'wn'


@dataclass(frozen=True, eq=False)
class PureState:
    """Length-8 amplitude vector over |q1 q2 q3>"""

    amplitudes: np.ndarray

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amplitudes.shape != (8,):
            raise DimensionError(f"A three-qubit state has 8 amplitudes, got {amplitudes.size}")
        object.__setattr__(self, 'amplitudes', amplitudes)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def amplitude(self, bits: str) -> complex:
        """Amplitude of a basis label such as '010'"""
        return complex(self.amplitudes[int(bits, 2)])


def ghz() -> PureState:
    """(|000> + |111>) / sqrt(2)"""
    amplitudes = np.zeros(8, dtype=np.complex128)
    amplitudes[0b000] = amplitudes[0b111] = 1.0 / np.sqrt(2.0)
    return PureState(amplitudes)


def w_n(n: float, gamma: float = 0.0, delta: float = 0.0) -> PureState:
    """
    W_n family

    |W_n> = (|100> + sqrt(n) e^{i gamma} |010> + sqrt(n+1) e^{i delta} |001>) / sqrt(2 + 2n)

    n = 1 with both phases zero is the standard W state.

    Raises:
        DensityMatrixError: If n < 0
    """
    if not np.isfinite(n) or n < 0:
        raise DensityMatrixError(f"W_n requires n >= 0, got {n}")

    scale = np.sqrt(2.0 + 2.0 * n)
    amplitudes = np.zeros(8, dtype=np.complex128)
    amplitudes[0b100] = 1.0 / scale
    amplitudes[0b010] = np.sqrt(n) * np.exp(1j * gamma) / scale
    amplitudes[0b001] = np.sqrt(n + 1.0) * np.exp(1j * delta) / scale
    return PureState(amplitudes)


def w() -> PureState:
    """(|100> + |010> + sqrt(2) |001>) / 2, the W_n member with n = 1"""
    return w_n(1.0)


def density_of(psi: Union[PureState, np.ndarray]) -> DensityMatrix:
    """
    |psi><psi|

    Raises:
        DensityMatrixError: If psi is not normalized
    """
    if not isinstance(psi, PureState):
        psi = PureState(psi)

    if abs(psi.norm - 1.0) > LinalgConfig.NORM_TOL:
        raise DensityMatrixError(f"State is not normalized (norm {psi.norm:.15g})")

    return np.outer(psi.amplitudes, psi.amplitudes.conj())


def initial_state(
    kind: StateKind,
    n: float = SweepConfigDefaults.WN_N,
    gamma: float = SweepConfigDefaults.WN_GAMMA,
    delta: float = SweepConfigDefaults.WN_DELTA,
) -> PureState:
    """Pure state for a StateKind; the W_n parameters are used only for WN"""
    if kind is StateKind.GHZ:
        return ghz()
    if kind is StateKind.W:
        return w()
    return w_n(n, gamma, delta)
