"""
Time evolution of GHZ and W states under same-axis Pauli and isotropic noise

Three routes to the evolved state are provided:
- evolve_analytic: the closed-form matrices, indexed by the dimensionless kt
- evolve_lindblad_numeric: fixed-step RK4 on the Lindblad equation (oracle)
- evolve_kraus: the exact Pauli channel applied qubit by qubit, for any input
"""

import numpy as np
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Tuple, Union

from qcorr.analysis.states import StateKind, density_of, initial_state
from qcorr.config import ChannelConfig
from qcorr.exceptions import ChannelError, IntegrationError
from qcorr.utils.qlinalg import (
    IDENTITY_2,
    PAULI,
    ComplexMatrix,
    DensityMatrix,
    as_matrix,
    embed,
    validate_density_matrix,
)

logger = logging.getLogger('qcorr.channels')

SQRT2 = np.sqrt(2.0)


class NoiseKind(Enum):
    """Noise models: one Pauli axis on every qubit, or all three (isotropic)"""

    X = 'x'
    Y = 'y'
    Z = 'z'
    ISO = 'iso'

    @property
    def axes(self) -> Tuple[str, ...]:
        if self is NoiseKind.ISO:
            return ('x', 'y', 'z')
        return (self.value,)


@dataclass(frozen=True)
class ChannelPoint:
    """A (state, noise) channel sampled at a given kt"""

    state: StateKind
    noise: NoiseKind
    kt: float

    def __post_init__(self):
        if self.state not in (StateKind.GHZ, StateKind.W):
            logger.error(f"No closed form for initial state {self.state.value}")
            raise ChannelError(f"No closed form for initial state {self.state.value!r}")

        if np.isnan(self.kt) or self.kt < 0:
            logger.error(f"Negative kt: {self.kt}")
            raise ChannelError(f"kt must be >= 0, got {self.kt}")

    @property
    def label(self) -> str:
        return f"{self.state.value}-{self.noise.value}"


@dataclass(frozen=True)
class CoefficientSet:
    """Named coefficients of one channel at one kt"""

    state: StateKind
    noise: NoiseKind
    kt: float
    values: Mapping[str, float] = field(default_factory=dict)

    def __getitem__(self, name: str) -> float:
        return self.values[name]

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(self.values)


def _decays(kt: float) -> Dict[int, float]:
    """e^{-n kt} for the exponents that appear in the closed forms"""
    return {n: float(np.exp(-n * kt)) for n in (2, 4, 6, 8, 12)}


def _w_alphas(e: float) -> Dict[str, float]:
    return {
        'alpha_1': 1 + e + e ** 2 + e ** 3,
        'alpha_2': 1 + e - e ** 2 - e ** 3,
        'alpha_3': 1 - e - e ** 2 + e ** 3,
        'alpha_4': 1 - e + e ** 2 - e ** 3,
    }


def coefficients(point: ChannelPoint) -> CoefficientSet:
    """
    Closed-form coefficients of a channel at point.kt

    Args:
        point: Channel and kt

    Returns:
        CoefficientSet: e.g. alpha_plus / alpha_minus for GHZ-X
    """
    d = _decays(point.kt)
    state, noise = point.state, point.noise

    if state is StateKind.GHZ:
        if noise in (NoiseKind.X, NoiseKind.Y):
            values = {'alpha_plus': 1 + 3 * d[4], 'alpha_minus': 1 - d[4]}
            if noise is NoiseKind.Y:
                values['beta_1'] = 3 * d[2] + d[6]
                values['beta_2'] = d[2] - d[6]
        elif noise is NoiseKind.Z:
            values = {'z': d[6]}
        else:
            values = {
                'alpha_tilde_plus': 1 + 3 * d[8],
                'alpha_tilde_minus': 1 - d[8],
                'gamma': 4 * d[12],
            }
    else:
        if noise in (NoiseKind.X, NoiseKind.Y):
            values = _w_alphas(d[2])
            values['beta_plus'] = 1 + d[6]
            values['beta_minus'] = 1 - d[6]
        elif noise is NoiseKind.Z:
            values = {'w': d[4]}
        else:
            values = {name.replace('alpha', 'alpha_tilde'): v for name, v in _w_alphas(d[4]).items()}
            values['beta_tilde_plus'] = 1 + d[12]
            values['beta_tilde_minus'] = 1 - d[12]
            values['gamma_tilde_plus'] = d[8] + d[12]
            values['gamma_tilde_minus'] = d[8] - d[12]

    return CoefficientSet(state=state, noise=noise, kt=point.kt, values=values)


def _symmetric(size: int, diagonal: Iterable[float], upper: Mapping[Tuple[int, int], float]) -> np.ndarray:
    matrix = np.diag(np.asarray(list(diagonal), dtype=np.complex128))
    for (i, j), value in upper.items():
        matrix[i, j] = value
        matrix[j, i] = value
    return matrix


def _ghz_matrix(c: CoefficientSet) -> np.ndarray:
    if c.noise is NoiseKind.Z:
        half = 0.5
        return _symmetric(8, [half, 0, 0, 0, 0, 0, 0, half], {(0, 7): half * c['z']})

    if c.noise is NoiseKind.ISO:
        plus, minus = c['alpha_tilde_plus'], c['alpha_tilde_minus']
        diagonal = [plus] + [minus] * 6 + [plus]
        return _symmetric(8, diagonal, {(0, 7): c['gamma']}) / 8

    plus, minus = c['alpha_plus'], c['alpha_minus']
    diagonal = [plus] + [minus] * 6 + [plus]

    if c.noise is NoiseKind.X:
        anti = {(0, 7): plus, (1, 6): minus, (2, 5): minus, (3, 4): minus}
    else:
        beta_2 = -c['beta_2']
        anti = {(0, 7): c['beta_1'], (1, 6): beta_2, (2, 5): beta_2, (3, 4): beta_2}

    return _symmetric(8, diagonal, anti) / 8


def _w_matrix(c: CoefficientSet) -> np.ndarray:
    if c.noise is NoiseKind.Z:
        w = c['w']
        return _symmetric(
            8, [0, 2, 1, 0, 1, 0, 0, 0],
            {(1, 2): SQRT2 * w, (1, 4): SQRT2 * w, (2, 4): w},
        ) / 4

    if c.noise is NoiseKind.ISO:
        a1, a2 = c['alpha_tilde_1'], c['alpha_tilde_2']
        a3, a4 = c['alpha_tilde_3'], c['alpha_tilde_4']
        bp, bm = c['beta_tilde_plus'], c['beta_tilde_minus']
        gp, gm = c['gamma_tilde_plus'], c['gamma_tilde_minus']
        return _symmetric(
            8, [a2, a1, bp, bm, bp, bm, a4, a3],
            {
                (1, 2): SQRT2 * gp, (1, 4): SQRT2 * gp, (2, 4): gp,
                (3, 5): gm, (3, 6): SQRT2 * gm, (5, 6): SQRT2 * gm,
            },
        ) / 8

    a1, a2, a3, a4 = c['alpha_1'], c['alpha_2'], c['alpha_3'], c['alpha_4']
    bp, bm = c['beta_plus'], c['beta_minus']
    # Y noise flips the sign of every alpha_2 / alpha_3 coherence
    sign = 1.0 if c.noise is NoiseKind.X else -1.0

    return _symmetric(
        8, [2 * a2, 2 * a1, 2 * bp, 2 * bm, 2 * bp, 2 * bm, 2 * a4, 2 * a3],
        {
            (0, 3): sign * SQRT2 * a2, (0, 5): sign * SQRT2 * a2, (0, 6): sign * a2,
            (1, 2): SQRT2 * a1, (1, 4): SQRT2 * a1, (1, 7): sign * a3,
            (2, 4): a1, (2, 7): sign * SQRT2 * a3,
            (3, 5): a4, (3, 6): SQRT2 * a4,
            (4, 7): sign * SQRT2 * a3,
            (5, 6): SQRT2 * a4,
        },
    ) / 16


def evolve_analytic(point: ChannelPoint) -> DensityMatrix:
    """
    Closed-form evolved state of a GHZ or W channel

    Args:
        point: Channel and kt

    Returns:
        DensityMatrix: 8 x 8 evolved state
    """
    c = coefficients(point)
    if point.state is StateKind.GHZ:
        return _ghz_matrix(c)
    return _w_matrix(c)


# ============================================================================
# NUMERICAL LINDBLAD INTEGRATION
# ============================================================================

def jump_operators(noise: NoiseKind, kappa: float) -> List[ComplexMatrix]:
    """sqrt(kappa) sigma on every qubit, for each axis of the noise"""
    return [
        np.sqrt(kappa) * embed(PAULI[axis], qubit)
        for axis in noise.axes
        for qubit in range(3)
    ]


def liouvillian(operators: Iterable[ComplexMatrix]) -> np.ndarray:
    """
    Superoperator of the dissipator acting on the row-major vectorization of rho

    vec(A rho B) = (A kron B^T) vec(rho)
    """
    operators = list(operators)
    dim = operators[0].shape[0]
    identity = np.eye(dim, dtype=np.complex128)
    generator = np.zeros((dim * dim, dim * dim), dtype=np.complex128)

    for op in operators:
        decay = op.conj().T @ op
        generator += np.kron(op, op.conj())
        generator -= 0.5 * np.kron(decay, identity)
        generator -= 0.5 * np.kron(identity, decay.T)

    return generator


def _rk4_step(generator: np.ndarray, vec: np.ndarray, h: float) -> np.ndarray:
    k1 = generator @ vec
    k2 = generator @ (vec + 0.5 * h * k1)
    k3 = generator @ (vec + 0.5 * h * k2)
    k4 = generator @ (vec + h * k3)
    return vec + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)


def _starting_density(state: Union[StateKind, np.ndarray]) -> DensityMatrix:
    if isinstance(state, StateKind):
        return density_of(initial_state(state))
    return validate_density_matrix(state)


def evolve_lindblad_trajectory(
    state: Union[StateKind, np.ndarray],
    noise: NoiseKind,
    kappa: float,
    times: Iterable[float],
    dt: float = ChannelConfig.DEFAULT_DT,
) -> List[DensityMatrix]:
    """
    RK4 solution of the Lindblad equation sampled at increasing times

    Each interval between samples is split into equal steps no longer than dt.

    Args:
        state: Initial StateKind or an 8 x 8 density matrix
        noise: Noise model
        kappa: Rate of every jump operator (> 0)
        times: Non-decreasing sample times (>= 0)
        dt: Maximum step; must satisfy dt <= 1e-3 / kappa

    Raises:
        ChannelError: For invalid kappa, dt or times
        IntegrationError: If the trace drifts more than 1e-9
    """
    if not np.isfinite(kappa) or kappa <= 0:
        logger.error(f"Invalid rate kappa={kappa}")
        raise ChannelError(f"kappa must be > 0, got {kappa}")

    if not dt > 0 or dt > ChannelConfig.MAX_STEP_FACTOR / kappa * (1 + 1e-12):
        logger.error(f"Step dt={dt} too large for kappa={kappa}")
        raise ChannelError(
            f"dt must be in (0, {ChannelConfig.MAX_STEP_FACTOR / kappa:g}], got {dt}"
        )

    times = [float(t) for t in times]
    if any(t < 0 for t in times) or any(b < a for a, b in zip(times, times[1:])):
        raise ChannelError(f"Sample times must be non-negative and sorted, got {times}")

    rho = _starting_density(state)
    generator = liouvillian(jump_operators(noise, kappa))
    vec = rho.reshape(-1).copy()
    current = 0.0
    samples = []

    for target in times:
        span = target - current
        steps = int(np.ceil(span / dt - 1e-9)) if span > 0 else 0

        if steps:
            h = span / steps
            for _ in range(steps):
                vec = _rk4_step(generator, vec, h)
                block = vec.reshape(8, 8)
                block = 0.5 * (block + block.conj().T)

                drift = abs(np.trace(block) - 1.0)
                if drift > ChannelConfig.TRACE_DRIFT_TOL:
                    logger.error(f"Trace drift {drift:.3e} during RK4 integration")
                    raise IntegrationError(f"Trace drift {drift:.3e} exceeds tolerance")

                vec = block.reshape(-1).copy()

        current = target
        samples.append(vec.reshape(8, 8).copy())

    return samples


def evolve_lindblad_numeric(
    state: Union[StateKind, np.ndarray],
    noise: NoiseKind,
    kappa: float,
    t: float,
    dt: float = ChannelConfig.DEFAULT_DT,
) -> DensityMatrix:
    """RK4 evolved state at time t; t = 0 returns the initial state unchanged"""
    return evolve_lindblad_trajectory(state, noise, kappa, [t], dt)[0]


# ============================================================================
# EXACT KRAUS EVOLUTION
# ============================================================================

def pauli_kraus(noise: NoiseKind, kt: float) -> List[ComplexMatrix]:
    """
    Single-qubit Kraus operators of the noise after time kt

    One axis: rho -> (1+e)/2 rho + (1-e)/2 s rho s with e = exp(-2 kt).
    Isotropic: composition of the three axes, a Pauli channel with
    weights ((1 + 3 e^2)/4, (1 - e^2)/4, (1 - e^2)/4, (1 - e^2)/4).
    """
    if np.isnan(kt) or kt < 0:
        raise ChannelError(f"kt must be >= 0, got {kt}")

    e = float(np.exp(-2.0 * kt))
    keep, flip = 0.5 * (1 + e), 0.5 * (1 - e)

    if noise is NoiseKind.ISO:
        weights = [keep ** 3 + flip ** 3, keep * flip, keep * flip, keep * flip]
        operators = [IDENTITY_2, PAULI['x'], PAULI['y'], PAULI['z']]
    else:
        weights = [keep, flip]
        operators = [IDENTITY_2, PAULI[noise.value]]

    return [np.sqrt(p) * op for p, op in zip(weights, operators) if p > 0]


def is_trace_preserving(kraus_ops: Iterable[ComplexMatrix], tol: float = 1e-12) -> bool:
    """Check sum K^dagger K = I"""
    kraus_ops = list(kraus_ops)
    total = sum(k.conj().T @ k for k in kraus_ops)
    return bool(np.allclose(total, np.eye(kraus_ops[0].shape[0]), atol=tol))


def apply_kraus(rho: DensityMatrix, kraus_ops: Iterable[ComplexMatrix]) -> DensityMatrix:
    """sum K rho K^dagger"""
    return sum(k @ rho @ k.conj().T for k in kraus_ops)


def evolve_kraus(rho0: DensityMatrix, noise: NoiseKind, kt: float) -> DensityMatrix:
    """
    Exact evolved state of any three-qubit input under the noise

    Args:
        rho0: 8 x 8 initial density matrix
        noise: Noise model
        kt: Dimensionless time (>= 0)
    """
    rho = as_matrix(rho0)
    single = pauli_kraus(noise, kt)

    for qubit in range(3):
        rho = apply_kraus(rho, [embed(k, qubit) for k in single])

    return 0.5 * (rho + rho.conj().T)
