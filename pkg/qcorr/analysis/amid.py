"""
Ameliorated measurement-induced disturbance

The measurement on each qubit is the computational basis rotated by a
single-qubit unitary U = y0 I + i (y1 X + y2 Y + y3 Z) parametrized by three
angles (psi, theta, phi). AMID is the infimum over the nine angles of
I(rho) - I(Omega(rho)), found by a multistart Nelder-Mead search.
"""

import numpy as np
import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

from scipy.optimize import minimize

from qcorr.analysis.channels import NoiseKind
from qcorr.analysis.mid import ProjectorSet, dephase
from qcorr.analysis.states import StateKind
from qcorr.config import OptimizerConfig
from qcorr.exceptions import OptimizationError
from qcorr.utils.qlinalg import (
    IDENTITY_2,
    PAULI,
    ComplexMatrix,
    DensityMatrix,
    partial_trace,
    shannon_entropy,
    validate_density_matrix,
    von_neumann_entropy,
)

logger = logging.getLogger('qcorr.amid')

TWO_PI = 2.0 * np.pi
N_ANGLES = 9


@dataclass(frozen=True)
class LocalUnitaryAngles:
    """Nine angles laid out per qubit as (psi, theta, phi)"""

    values: Tuple[float, ...]

    def __post_init__(self):
        values = tuple(float(v) for v in np.asarray(self.values, dtype=float).reshape(-1))
        if len(values) != N_ANGLES:
            raise OptimizationError(f"Expected {N_ANGLES} angles, got {len(values)}")
        if not all(np.isfinite(values)):
            raise OptimizationError("Angles must be finite")
        object.__setattr__(self, 'values', values)

    @classmethod
    def zeros(cls) -> 'LocalUnitaryAngles':
        return cls((0.0,) * N_ANGLES)

    @classmethod
    def from_reported(cls, reported: Sequence[float]) -> 'LocalUnitaryAngles':
        """Convert optima listed per qubit as (theta, phi, psi)"""
        reported = list(reported)
        if len(reported) != N_ANGLES:
            raise OptimizationError(f"Expected {N_ANGLES} angles, got {len(reported)}")

        values = []
        for j in range(3):
            theta, phi, psi = reported[3 * j: 3 * j + 3]
            values.extend([psi, theta, phi])
        return cls(tuple(values))

    @classmethod
    def coerce(cls, angles: Union['LocalUnitaryAngles', Sequence[float]]) -> 'LocalUnitaryAngles':
        if isinstance(angles, cls):
            return angles
        return cls(tuple(angles))

    def qubit(self, j: int) -> Tuple[float, float, float]:
        """(psi, theta, phi) of qubit j (0-based)"""
        return self.values[3 * j: 3 * j + 3]

    def coefficients(self, j: int) -> np.ndarray:
        return unitary_coefficients(*self.qubit(j))

    def as_array(self) -> np.ndarray:
        return np.array(self.values)

    def wrapped(self) -> 'LocalUnitaryAngles':
        """Same angles reduced to [0, 2 pi)"""
        return LocalUnitaryAngles(tuple(np.mod(self.values, TWO_PI)))


@dataclass(frozen=True)
class AmidConfig:
    """Multistart settings; warm_starts=None uses every reported optimum"""

    restarts: int = OptimizerConfig.DEFAULT_RESTARTS
    seed: int = OptimizerConfig.DEFAULT_SEED
    xatol: float = OptimizerConfig.XATOL
    fatol: float = OptimizerConfig.FATOL
    max_evals: int = OptimizerConfig.MAX_EVALS
    initial_step: float = OptimizerConfig.INITIAL_STEP
    warm_starts: Optional[Tuple[LocalUnitaryAngles, ...]] = None

    def __post_init__(self):
        if int(self.restarts) != self.restarts or self.restarts < 1:
            raise OptimizationError(f"restarts must be a positive integer, got {self.restarts}")
        if int(self.seed) != self.seed or self.seed < 0:
            raise OptimizationError(f"seed must be a non-negative integer, got {self.seed}")
        if int(self.max_evals) != self.max_evals or self.max_evals < 1:
            raise OptimizationError(f"max_evals must be a positive integer, got {self.max_evals}")
        for name in ('xatol', 'fatol', 'initial_step'):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise OptimizationError(f"{name} must be > 0, got {value}")


@dataclass(frozen=True)
class AmidResult:
    """Best objective value found and where"""

    kt: Optional[float]
    amid: float
    argmin: LocalUnitaryAngles
    restarts_used: int
    objective_evals: int


def unitary_coefficients(psi: float, theta: float, phi: float) -> np.ndarray:
    """(y0, y1, y2, y3) on the unit 3-sphere"""
    return np.array([
        np.cos(psi),
        np.sin(psi) * np.cos(theta),
        np.sin(psi) * np.sin(theta) * np.sin(phi),
        np.sin(psi) * np.sin(theta) * np.cos(phi),
    ])


def local_unitary(psi: float, theta: float, phi: float) -> ComplexMatrix:
    """U = y0 I + i (y1 X + y2 Y + y3 Z)"""
    y0, y1, y2, y3 = unitary_coefficients(psi, theta, phi)
    return y0 * IDENTITY_2 + 1j * (y1 * PAULI['x'] + y2 * PAULI['y'] + y3 * PAULI['z'])


def rotated_basis(angles: Union[LocalUnitaryAngles, Sequence[float]]) -> ComplexMatrix:
    """U1 x U2 x U3; column n is the rotated image of basis state |n>"""
    values = angles.values if isinstance(angles, LocalUnitaryAngles) else angles
    u1 = local_unitary(*values[0:3])
    u2 = local_unitary(*values[3:6])
    u3 = local_unitary(*values[6:9])
    return np.kron(np.kron(u1, u2), u3)


def rotated_projectors(
    angles: Union[LocalUnitaryAngles, Sequence[float]]
) -> Tuple[ProjectorSet, ProjectorSet]:
    """
    Rotated measurement projectors

    Returns:
        (party a set, party b set): U1 x U2 |ij><ij| U1^dagger x U2^dagger and
        U3 |k><k| U3^dagger
    """
    angles = LocalUnitaryAngles.coerce(angles)
    pair = np.kron(local_unitary(*angles.qubit(0)), local_unitary(*angles.qubit(1)))
    single = local_unitary(*angles.qubit(2))

    return (
        ProjectorSet.from_vectors('a', [pair[:, i] for i in range(4)]),
        ProjectorSet.from_vectors('b', [single[:, k] for k in range(2)]),
    )


def amid_objective(rho: DensityMatrix, angles: Union[LocalUnitaryAngles, Sequence[float]]) -> float:
    """
    S(Omega rho) - S(rho) + sum over parties of S(rho_x) - S(Omega rho_x)

    Evaluated with the rotated projector sets and full entropies.
    """
    rho = validate_density_matrix(rho)
    set_a, set_b = rotated_projectors(angles)
    rho_a, rho_b = partial_trace(rho, 'a'), partial_trace(rho, 'b')

    omega = dephase(rho, set_a, set_b)

    return (
        (von_neumann_entropy(omega) - von_neumann_entropy(rho))
        + (von_neumann_entropy(rho_a) - von_neumann_entropy(set_a.apply(rho_a)))
        + (von_neumann_entropy(rho_b) - von_neumann_entropy(set_b.apply(rho_b)))
    )


class AmidObjective:
    """
    Objective of a fixed state as a function of a length-9 angle array

    Omega(rho) is diagonal in the rotated product basis, so its spectrum is
    the diagonal of V^dagger rho V and the dephased marginals are the
    corresponding marginal distributions.
    """

    def __init__(self, rho: DensityMatrix):
        self.rho = validate_density_matrix(rho)
        self.s_rho = von_neumann_entropy(self.rho)
        self.s_a = von_neumann_entropy(partial_trace(self.rho, 'a'))
        self.s_b = von_neumann_entropy(partial_trace(self.rho, 'b'))
        self.evaluations = 0

    def outcome_distribution(self, x: Sequence[float]) -> np.ndarray:
        basis = rotated_basis(x)
        return np.real(np.einsum('ji,jk,ki->i', basis.conj(), self.rho, basis))

    def __call__(self, x: Sequence[float]) -> float:
        self.evaluations += 1
        p = self.outcome_distribution(x)
        table = p.reshape(4, 2)
        return (
            (shannon_entropy(p) - self.s_rho)
            + (self.s_a - shannon_entropy(table.sum(axis=1)))
            + (self.s_b - shannon_entropy(table.sum(axis=0)))
        )


# ============================================================================
# REPORTED OPTIMA
# ============================================================================

def all_reported_optima() -> Tuple[LocalUnitaryAngles, ...]:
    """Every reported optimum, in a fixed order"""
    return tuple(
        LocalUnitaryAngles.from_reported(values)
        for values in (
            OptimizerConfig.GHZ_X_OPTIMUM,
            OptimizerConfig.W_X_EARLY_OPTIMUM,
            OptimizerConfig.W_X_LATE_OPTIMUM,
            OptimizerConfig.W_Y_EARLY_OPTIMUM,
            OptimizerConfig.W_Y_LATE_OPTIMUM,
        )
    )


def reported_optima(
    state: StateKind, noise: NoiseKind, kt: Optional[float] = None
) -> List[LocalUnitaryAngles]:
    """
    Reported optima that apply to a channel

    For W-X and W-Y the optimum switches branch at a small kt; with kt given
    only the applicable branch is returned, otherwise both (early first).
    Channels without reported optima give an empty list.
    """
    if state is StateKind.GHZ and noise is NoiseKind.X:
        return [LocalUnitaryAngles.from_reported(OptimizerConfig.GHZ_X_OPTIMUM)]

    if state is not StateKind.W or noise not in (NoiseKind.X, NoiseKind.Y):
        return []

    if noise is NoiseKind.X:
        early, late = OptimizerConfig.W_X_EARLY_OPTIMUM, OptimizerConfig.W_X_LATE_OPTIMUM
        switch = OptimizerConfig.W_X_SWITCH_KT
    else:
        early, late = OptimizerConfig.W_Y_EARLY_OPTIMUM, OptimizerConfig.W_Y_LATE_OPTIMUM
        switch = OptimizerConfig.W_Y_SWITCH_KT

    if kt is None:
        branches = [early, late]
    else:
        branches = [early] if kt < switch else [late]

    return [LocalUnitaryAngles.from_reported(values) for values in branches]


# ============================================================================
# OPTIMIZATION
# ============================================================================

def starting_points(config: AmidConfig) -> np.ndarray:
    """
    Starts in order: identity angles, warm starts, uniform draws in [0, 2 pi)^9

    Truncated or padded with random draws to exactly config.restarts rows.
    """
    warm = all_reported_optima() if config.warm_starts is None else config.warm_starts
    fixed = [np.zeros(N_ANGLES)] + [LocalUnitaryAngles.coerce(w).as_array() for w in warm]

    rng = np.random.default_rng(config.seed)
    n_random = max(0, config.restarts - len(fixed))
    random_starts = rng.uniform(0.0, TWO_PI, size=(n_random, N_ANGLES))

    return np.vstack([np.array(fixed), random_starts])[:config.restarts]


def _initial_simplex(x0: np.ndarray, step: float) -> np.ndarray:
    return np.vstack([x0, x0 + step * np.eye(len(x0))])


def _local_search(objective: Callable, x0: np.ndarray, config: AmidConfig):
    return minimize(
        objective,
        x0,
        method='Nelder-Mead',
        options={
            'initial_simplex': _initial_simplex(x0, config.initial_step),
            'xatol': config.xatol,
            'fatol': config.fatol,
            'maxfev': config.max_evals,
            'maxiter': config.max_evals,
            'adaptive': True,
        },
    )


def amid(
    rho: DensityMatrix,
    config: Optional[AmidConfig] = None,
    kt: Optional[float] = None,
) -> AmidResult:
    """
    Minimize the objective over the nine angles

    Each start runs an independent Nelder-Mead search. A later start replaces
    the incumbent only if it is lower by more than the tie tolerance, so the
    earliest start wins ties.

    Args:
        rho: 8 x 8 density matrix
        config: Multistart settings (defaults from OptimizerConfig)
        kt: Optional sweep coordinate carried into the result

    Returns:
        AmidResult: Value re-evaluated at the reported argmin
    """
    config = config or AmidConfig()
    objective = AmidObjective(rho)
    starts = starting_points(config)

    best_value = np.inf
    best_x = starts[0]
    best_index = 0

    for index, x0 in enumerate(starts):
        result = _local_search(objective, x0, config)
        value = float(result.fun)
        if value < best_value - OptimizerConfig.TIE_TOL:
            best_value, best_x, best_index = value, np.asarray(result.x), index

    argmin = LocalUnitaryAngles(tuple(best_x)).wrapped()
    value = amid_objective(objective.rho, argmin)

    logger.debug(
        f"AMID at kt={kt}: {value:.9f} from start {best_index} "
        f"({objective.evaluations} evaluations over {len(starts)} starts)"
    )

    return AmidResult(
        kt=kt,
        amid=value,
        argmin=argmin,
        restarts_used=len(starts),
        objective_evals=objective.evaluations,
    )


def _branch_value(rho: DensityMatrix, angles: LocalUnitaryAngles, refine: bool) -> float:
    if not refine:
        return amid_objective(rho, angles)
    objective = AmidObjective(rho)
    return float(_local_search(objective, angles.as_array(), AmidConfig()).fun)


def branch_crossover(
    rho_of_kt: Callable[[float], DensityMatrix],
    branches: Sequence[LocalUnitaryAngles],
    kt_grid: Sequence[float],
    refine: bool = False,
) -> Optional[float]:
    """
    kt at which the lower of two branches changes

    The objective is evaluated at both branches (optionally after a local
    search started from each) along kt_grid; the first sign change of their
    difference is located by linear interpolation.

    Returns:
        float or None: Crossover kt, None if the same branch is lower everywhere
    """
    if len(branches) != 2:
        raise OptimizationError(f"Need exactly two branches, got {len(branches)}")

    kts = np.asarray(kt_grid, dtype=float)
    gaps = []
    for kt in kts:
        rho = rho_of_kt(float(kt))
        first, second = (_branch_value(rho, b, refine) for b in branches)
        gaps.append(first - second)

    for i in range(1, len(kts)):
        g0, g1 = gaps[i - 1], gaps[i]
        if g0 == 0.0:
            return float(kts[i - 1])
        if g0 * g1 < 0:
            return float(kts[i - 1] + (kts[i] - kts[i - 1]) * g0 / (g0 - g1))

    return None
