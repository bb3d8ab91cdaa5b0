"""
Dense complex linear algebra for three-qubit states

All matrices are square complex128 arrays of dimension 2, 4 or 8. The
computational basis |q1 q2 q3> is ordered with q1 most significant, and
the bipartition used throughout is party 'a' = qubits 1-2 (dimension 4),
party 'b' = qubit 3 (dimension 2).
"""

import numpy as np
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from qcorr.config import LinalgConfig
from qcorr.exceptions import DimensionError, NonHermitianError, DensityMatrixError

logger = logging.getLogger('qcorr.qlinalg')

ComplexMatrix = np.ndarray
DensityMatrix = np.ndarray

PARTY_DIMS = {'a': 4, 'b': 2}

IDENTITY_2 = np.eye(2, dtype=np.complex128)
PAULI = {
    'x': np.array([[0, 1], [1, 0]], dtype=np.complex128),
    'y': np.array([[0, -1j], [1j, 0]], dtype=np.complex128),
    'z': np.array([[1, 0], [0, -1]], dtype=np.complex128),
}


@dataclass(frozen=True, eq=False)
class HermitianSpectrum:
    """Eigenvalues in descending order and the matching orthonormal columns"""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def reconstruct(self) -> ComplexMatrix:
        """V diag(lambda) V^dagger"""
        return (self.eigenvectors * self.eigenvalues) @ self.eigenvectors.conj().T


def as_matrix(entries) -> ComplexMatrix:
    """
    Coerce to a square complex128 matrix of a supported dimension

    Raises:
        DimensionError: If the shape is not n x n with n in {2, 4, 8}, or an
            entry is not finite
    """
    matrix = np.asarray(entries, dtype=np.complex128)

    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"Expected a square matrix, got shape {matrix.shape}")

    if matrix.shape[0] not in LinalgConfig.ALLOWED_DIMS:
        raise DimensionError(
            f"Unsupported dimension {matrix.shape[0]}, expected one of {LinalgConfig.ALLOWED_DIMS}"
        )

    if not np.all(np.isfinite(matrix)):
        raise DimensionError("Matrix has non-finite entries")

    return matrix


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """
    Kronecker product of two matrices

    Raises:
        DimensionError: If the product dimension would exceed 8
    """
    a = as_matrix(a)
    b = as_matrix(b)

    if a.shape[0] * b.shape[0] > LinalgConfig.MAX_DIM:
        raise DimensionError(
            f"Product dimension {a.shape[0] * b.shape[0]} exceeds {LinalgConfig.MAX_DIM}"
        )

    return np.kron(a, b)


def kron_all(*matrices: ComplexMatrix) -> ComplexMatrix:
    """Left-to-right Kronecker product of two or more matrices"""
    if len(matrices) < 2:
        raise DimensionError("kron_all needs at least two factors")

    result = kron(matrices[0], matrices[1])
    for factor in matrices[2:]:
        result = kron(result, factor)
    return result


def embed(operator: ComplexMatrix, qubit: int, n_qubits: int = 3) -> ComplexMatrix:
    """Place a single-qubit operator on `qubit` (0 = most significant)"""
    if not 0 <= qubit < n_qubits:
        raise DimensionError(f"Qubit index {qubit} out of range for {n_qubits} qubits")

    factors = [IDENTITY_2] * n_qubits
    factors[qubit] = as_matrix(operator)
    return kron_all(*factors)


def partial_trace(rho: DensityMatrix, keep: str) -> DensityMatrix:
    """
    Reduced state of one party of the 4 x 2 bipartition

    Args:
        rho: 8 x 8 density matrix
        keep: 'a' keeps qubits 1-2 (4 x 4 result), 'b' keeps qubit 3 (2 x 2)

    Raises:
        DimensionError: If rho is not 8 x 8 or the party label is unknown
    """
    rho = as_matrix(rho)

    if rho.shape != (8, 8):
        raise DimensionError(f"Partial trace expects an 8 x 8 state, got {rho.shape}")

    if keep not in PARTY_DIMS:
        raise DimensionError(f"Unknown party {keep!r}, expected 'a' or 'b'")

    # indices (a, b, a', b')
    blocks = rho.reshape(4, 2, 4, 2)

    if keep == 'a':
        return np.einsum('ijkj->ik', blocks)
    return np.einsum('ijil->jl', blocks)


def hermitian_eig(matrix: ComplexMatrix) -> HermitianSpectrum:
    """
    Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations

    Eigenvalues come back in descending order (ties keep their original
    diagonal order). Each eigenvector is scaled so that its first component
    with modulus above the phase threshold is real and positive.

    Raises:
        DimensionError: For unsupported shapes
        NonHermitianError: If max |A - A^dagger| exceeds the input tolerance
    """
    matrix = as_matrix(matrix)

    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T)))
    if asymmetry > LinalgConfig.HERMITIAN_INPUT_TOL:
        raise NonHermitianError(f"Matrix is not Hermitian (max deviation {asymmetry:.3e})")

    work = 0.5 * (matrix + matrix.conj().T)
    n = work.shape[0]
    vectors = np.eye(n, dtype=np.complex128)
    threshold = LinalgConfig.JACOBI_TOL * max(1.0, float(np.linalg.norm(work)))

    for sweep in range(LinalgConfig.JACOBI_MAX_SWEEPS):
        if _off_diagonal_norm(work) <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                _rotate(work, vectors, p, q)
    else:
        logger.debug(
            f"Jacobi stopped after {LinalgConfig.JACOBI_MAX_SWEEPS} sweeps, "
            f"off-diagonal norm {_off_diagonal_norm(work):.3e}"
        )

    eigenvalues = np.real(np.diag(work)).copy()
    order = np.argsort(-eigenvalues, kind='stable')

    return HermitianSpectrum(
        eigenvalues=eigenvalues[order],
        eigenvectors=_fix_phases(vectors[:, order]),
    )


def _off_diagonal_norm(matrix: np.ndarray) -> float:
    return float(np.linalg.norm(matrix - np.diag(np.diag(matrix))))


def _rotate(work: np.ndarray, vectors: np.ndarray, p: int, q: int) -> None:
    """Annihilate work[p, q] in place and accumulate the rotation into vectors"""
    apq = work[p, q]
    r = abs(apq)
    if r == 0.0:
        return

    phase = apq / r
    theta = 0.5 * np.arctan2(2.0 * r, work[p, p].real - work[q, q].real)
    c, s = np.cos(theta), np.sin(theta)

    # columns of the 2 x 2 block are the eigenvectors of [[app, apq], [apq*, aqq]]
    rotation = np.array([[c, -s], [np.conj(phase) * s, np.conj(phase) * c]])
    pair = [p, q]

    work[:, pair] = work[:, pair] @ rotation
    work[pair, :] = rotation.conj().T @ work[pair, :]
    work[p, q] = 0.0
    work[q, p] = 0.0
    work[p, p] = work[p, p].real
    work[q, q] = work[q, q].real

    vectors[:, pair] = vectors[:, pair] @ rotation


def _fix_phases(vectors: np.ndarray) -> np.ndarray:
    fixed = vectors.copy()
    for k in range(fixed.shape[1]):
        column = fixed[:, k]
        leading = np.flatnonzero(np.abs(column) > LinalgConfig.PHASE_THRESHOLD)
        if leading.size:
            lead = column[leading[0]]
            fixed[:, k] = column * (np.conj(lead) / abs(lead))
    return fixed


def validate_density_matrix(rho, check_psd: bool = True) -> DensityMatrix:
    """
    Check the density-matrix axioms and return rho as a complex128 array

    Args:
        rho: Candidate state
        check_psd: Also require the smallest eigenvalue >= -PSD_TOL

    Raises:
        DimensionError: For unsupported shapes
        DensityMatrixError: If rho is not Hermitian, not unit trace or not PSD
    """
    rho = as_matrix(rho)

    asymmetry = float(np.max(np.abs(rho - rho.conj().T)))
    if asymmetry > LinalgConfig.HERMITIAN_TOL:
        raise DensityMatrixError(f"State is not Hermitian (max deviation {asymmetry:.3e})")

    trace = np.trace(rho)
    if abs(trace - 1.0) > LinalgConfig.TRACE_TOL:
        raise DensityMatrixError(f"State trace is {trace.real:.15g}, expected 1")

    if check_psd:
        smallest = float(hermitian_eig(rho).eigenvalues[-1])
        if smallest < -LinalgConfig.PSD_TOL:
            raise DensityMatrixError(f"State has negative eigenvalue {smallest:.3e}")

    return rho


def shannon_entropy(probabilities: Sequence[float]) -> float:
    """Base-2 Shannon entropy; entries at or below the clip threshold count as zero"""
    p = np.asarray(probabilities, dtype=float)
    p = p[p > LinalgConfig.ENTROPY_CLIP]
    return float(-np.sum(p * np.log2(p)))


def von_neumann_entropy(rho: DensityMatrix) -> float:
    """
    S(rho) = -sum lambda log2 lambda over the Jacobi spectrum

    Raises:
        DensityMatrixError: If rho violates the density-matrix axioms
    """
    rho = validate_density_matrix(rho, check_psd=False)
    eigenvalues = hermitian_eig(rho).eigenvalues

    if eigenvalues[-1] < -LinalgConfig.PSD_TOL:
        raise DensityMatrixError(f"State has negative eigenvalue {eigenvalues[-1]:.3e}")

    return shannon_entropy(eigenvalues)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: Optional[int] = None) -> DensityMatrix:
    """Ginibre-sampled mixed state G G^dagger / tr, optionally rank-deficient"""
    rank = dim if rank is None else rank
    ginibre = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = ginibre @ ginibre.conj().T
    rho = 0.5 * (rho + rho.conj().T)
    return rho / np.trace(rho).real


def random_hermitian(dim: int, rng: np.random.Generator) -> ComplexMatrix:
    """Random Hermitian matrix with standard-normal entries"""
    raw = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return 0.5 * (raw + raw.conj().T)
