"""
I/O module for result files
"""

from .results_writer import (
    write_sweep_csv,
    write_sweep_json,
    write_validation_report,
    read_sweep_csv,
)

__all__ = [
    'write_sweep_csv',
    'write_sweep_json',
    'write_validation_report',
    'read_sweep_csv',
]
