"""
Sweeps, figure export and the acceptance suite
"""

from .pipeline import SweepConfig, CorrelationPoint, sweep, figure
from .validator import validate

__all__ = ['SweepConfig', 'CorrelationPoint', 'sweep', 'figure', 'validate']
