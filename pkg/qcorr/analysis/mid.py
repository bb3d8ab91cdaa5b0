"""
Measurement-induced disturbance of a three-qubit state across the 4 x 2 cut
"""

import numpy as np
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from qcorr.config import ProjectorConfig
from qcorr.exceptions import DimensionError, ProjectorError
from qcorr.utils.qlinalg import (
    PARTY_DIMS,
    ComplexMatrix,
    DensityMatrix,
    as_matrix,
    hermitian_eig,
    partial_trace,
    validate_density_matrix,
    von_neumann_entropy,
)

logger = logging.getLogger('qcorr.mid')


@dataclass(frozen=True, eq=False)
class ProjectorSet:
    """Complete family of orthogonal rank-1 projectors on one party"""

    party: str
    projectors: Tuple[ComplexMatrix, ...]

    def __post_init__(self):
        if self.party not in PARTY_DIMS:
            raise ProjectorError(f"Unknown party {self.party!r}")
        object.__setattr__(self, 'projectors', tuple(as_matrix(p) for p in self.projectors))

    @classmethod
    def from_vectors(cls, party: str, vectors: Sequence[np.ndarray]) -> 'ProjectorSet':
        """Rank-1 projectors |v><v| from orthonormal vectors"""
        return cls(party, tuple(np.outer(v, np.conj(v)) for v in vectors))

    @property
    def dim(self) -> int:
        return PARTY_DIMS[self.party]

    def defects(self) -> List[str]:
        """Violations of completeness, orthogonality and idempotence, empty if valid"""
        tol = ProjectorConfig.SET_TOL
        problems = []

        if len(self.projectors) != self.dim:
            problems.append(f"expected {self.dim} projectors, got {len(self.projectors)}")

        for n, p in enumerate(self.projectors):
            if p.shape != (self.dim, self.dim):
                problems.append(f"projector {n} has shape {p.shape}")
                return problems
            if np.max(np.abs(p - p.conj().T)) > tol:
                problems.append(f"projector {n} is not Hermitian")
            for m in range(n + 1, len(self.projectors)):
                if np.max(np.abs(p @ self.projectors[m])) > tol:
                    problems.append(f"projectors {n} and {m} are not orthogonal")
            if np.max(np.abs(p @ p - p)) > tol:
                problems.append(f"projector {n} is not idempotent")

        total = sum(self.projectors)
        if np.max(np.abs(total - np.eye(self.dim))) > tol:
            problems.append("projectors do not sum to the identity")

        return problems

    def verify(self) -> None:
        """
        Raises:
            ProjectorError: If the set is incomplete or not orthogonal
        """
        problems = self.defects()
        if problems:
            logger.error(f"Invalid projector set on party {self.party}: {'; '.join(problems)}")
            raise ProjectorError(f"Invalid projector set on party {self.party}: {problems[0]}")

    def apply(self, marginal: DensityMatrix) -> DensityMatrix:
        """Local dephasing sum P m P of a marginal"""
        marginal = as_matrix(marginal)
        return sum(p @ marginal @ p for p in self.projectors)


@dataclass(frozen=True)
class MidResult:
    """Entropies and correlations of one state, in bits"""

    kt: Optional[float]
    mutual_information: float
    classical_mutual_information: float
    mid: float
    s_rho: float
    s_pi_rho: float
    s_a: float
    s_b: float
    s_pi_a: float
    s_pi_b: float


def _eigenspace_groups(eigenvalues: np.ndarray) -> List[List[int]]:
    """Chain consecutive sorted eigenvalues closer than the degeneracy tolerance"""
    groups = [[0]]
    for i in range(1, len(eigenvalues)):
        if eigenvalues[i - 1] - eigenvalues[i] <= ProjectorConfig.DEGENERACY_TOL:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _aligned_basis(eigenvectors: np.ndarray) -> List[np.ndarray]:
    """Orthonormal basis of span(eigenvectors) built from projected computational vectors"""
    size = eigenvectors.shape[1]
    projector = eigenvectors @ eigenvectors.conj().T
    basis: List[np.ndarray] = []

    for k in range(projector.shape[0]):
        v = projector[:, k].copy()
        # two Gram-Schmidt passes
        for _ in range(2):
            for b in basis:
                v = v - (b.conj() @ v) * b
        norm = np.linalg.norm(v)
        if norm > ProjectorConfig.GRAM_SCHMIDT_DROP:
            basis.append(v / norm)
        if len(basis) == size:
            break

    return basis


def marginal_projectors(marginal: DensityMatrix, party: str) -> ProjectorSet:
    """
    Eigen-projectors of a reduced state

    Inside each degenerate eigenspace the basis is rebuilt from the
    computational basis vectors (ascending index) projected into it, so a
    maximally mixed marginal yields computational-basis projectors.

    Args:
        marginal: Reduced density matrix (4 x 4 for 'a', 2 x 2 for 'b')
        party: 'a' or 'b'

    Returns:
        ProjectorSet: Rank-1 projectors ordered by descending eigenvalue

    Raises:
        DimensionError: If the marginal does not match the party
        DensityMatrixError: If the marginal is not a density matrix
    """
    if party not in PARTY_DIMS:
        raise DimensionError(f"Unknown party {party!r}")

    marginal = validate_density_matrix(marginal)
    if marginal.shape[0] != PARTY_DIMS[party]:
        raise DimensionError(
            f"Party {party} marginal must be {PARTY_DIMS[party]}-dimensional, got {marginal.shape[0]}"
        )

    spectrum = hermitian_eig(marginal)
    vectors: List[np.ndarray] = []

    for group in _eigenspace_groups(spectrum.eigenvalues):
        block = spectrum.eigenvectors[:, group]
        if len(group) == 1:
            vectors.append(block[:, 0])
            continue

        basis = _aligned_basis(block)
        if len(basis) != len(group):
            logger.error(f"Degenerate eigenspace of size {len(group)} rebuilt with {len(basis)} vectors")
            raise ProjectorError("Could not rebuild a degenerate eigenspace basis")
        vectors.extend(basis)

    return ProjectorSet.from_vectors(party, vectors)


def eigen_projector_sets(rho: DensityMatrix) -> Tuple[ProjectorSet, ProjectorSet]:
    """Marginal eigen-projector sets (party a, party b) of a three-qubit state"""
    return (
        marginal_projectors(partial_trace(rho, 'a'), 'a'),
        marginal_projectors(partial_trace(rho, 'b'), 'b'),
    )


def dephase(rho: DensityMatrix, set_a: ProjectorSet, set_b: ProjectorSet) -> DensityMatrix:
    """
    Pi(rho) = sum over (i, k) of (Pa_i x Pb_k) rho (Pa_i x Pb_k)

    Raises:
        ProjectorError: If a set is on the wrong party, incomplete or not orthogonal
        DimensionError: If rho is not 8 x 8
    """
    if set_a.party != 'a' or set_b.party != 'b':
        raise ProjectorError(f"Expected sets on parties (a, b), got ({set_a.party}, {set_b.party})")
    set_a.verify()
    set_b.verify()

    rho = as_matrix(rho)
    if rho.shape != (8, 8):
        raise DimensionError(f"Dephasing expects an 8 x 8 state, got {rho.shape}")

    result = np.zeros_like(rho)
    for pa in set_a.projectors:
        for pb in set_b.projectors:
            joint = np.kron(pa, pb)
            result += joint @ rho @ joint

    return result


def dephase_marginal(marginal: DensityMatrix, projector_set: ProjectorSet) -> DensityMatrix:
    """Sum P m P over one party's projectors"""
    projector_set.verify()
    return projector_set.apply(marginal)


def mutual_information(rho: DensityMatrix) -> float:
    """I = S(rho_a) + S(rho_b) - S(rho)"""
    rho = validate_density_matrix(rho, check_psd=False)
    return (
        von_neumann_entropy(partial_trace(rho, 'a'))
        + von_neumann_entropy(partial_trace(rho, 'b'))
        - von_neumann_entropy(rho)
    )


def mid(rho: DensityMatrix, kt: Optional[float] = None) -> MidResult:
    """
    Measurement-induced disturbance

    M = (S(Pi rho) - S(rho)) + (S(rho_a) - S(Pi rho_a)) + (S(rho_b) - S(Pi rho_b)),
    with the marginal terms computed rather than assumed to vanish.

    Args:
        rho: 8 x 8 density matrix
        kt: Optional sweep coordinate carried into the result

    Returns:
        MidResult: All entropies and the resulting correlation
    """
    rho = validate_density_matrix(rho)
    rho_a, rho_b = partial_trace(rho, 'a'), partial_trace(rho, 'b')

    set_a = marginal_projectors(rho_a, 'a')
    set_b = marginal_projectors(rho_b, 'b')
    pi_rho = dephase(rho, set_a, set_b)

    s_rho = von_neumann_entropy(rho)
    s_a = von_neumann_entropy(rho_a)
    s_b = von_neumann_entropy(rho_b)
    s_pi_rho = von_neumann_entropy(pi_rho)
    s_pi_a = von_neumann_entropy(partial_trace(pi_rho, 'a'))
    s_pi_b = von_neumann_entropy(partial_trace(pi_rho, 'b'))

    disturbance = (s_pi_rho - s_rho) + (s_a - s_pi_a) + (s_b - s_pi_b)
    logger.debug(f"MID at kt={kt}: {disturbance:.12f}")

    return MidResult(
        kt=kt,
        mutual_information=s_a + s_b - s_rho,
        classical_mutual_information=s_pi_a + s_pi_b - s_pi_rho,
        mid=disturbance,
        s_rho=s_rho,
        s_pi_rho=s_pi_rho,
        s_a=s_a,
        s_b=s_b,
        s_pi_a=s_pi_a,
        s_pi_b=s_pi_b,
    )
