"""
Custom exception classes for qcorr
"""


class QCorrError(Exception):
    """Base exception for qcorr"""
    pass


class MatrixError(QCorrError):
    """Raised when a matrix is malformed"""
    pass


class DimensionError(MatrixError):
    """Raised when a matrix has an unsupported shape"""
    pass


class NonHermitianError(MatrixError):
    """Raised when a Hermitian input is required but not given"""
    pass


class DensityMatrixError(QCorrError):
    """Raised when a state violates the density-matrix axioms"""
    pass


class ProjectorError(QCorrError):
    """Raised when a projector set is incomplete or not orthogonal"""
    pass


class ChannelError(QCorrError):
    """Raised when a channel evolution request is invalid"""
    pass


class IntegrationError(ChannelError):
    """Raised when numerical integration drifts out of tolerance"""
    pass


class UnsupportedFormulaError(QCorrError):
    """Raised when no closed form exists for the requested channel"""
    pass


class OptimizationError(QCorrError):
    """Raised when the optimizer configuration is invalid"""
    pass


class ValidationError(QCorrError):
    """Raised when a sweep or figure configuration is invalid"""
    pass


class FileOperationError(QCorrError):
    """Raised when file operations fail"""
    pass
