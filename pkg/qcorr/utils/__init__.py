"""
Dense linear algebra helpers
"""

from .qlinalg import (
    kron,
    partial_trace,
    hermitian_eig,
    validate_density_matrix,
    von_neumann_entropy,
    shannon_entropy,
)

__all__ = [
    'kron',
    'partial_trace',
    'hermitian_eig',
    'validate_density_matrix',
    'von_neumann_entropy',
    'shannon_entropy',
]
