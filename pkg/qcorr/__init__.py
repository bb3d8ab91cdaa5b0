"""
qcorr - measurement-induced disturbance of noisy three-qubit states
"""

__version__ = '1.0.0'

from .analysis.amid import AmidConfig, AmidResult, LocalUnitaryAngles, amid, amid_objective
from .analysis.channels import ChannelPoint, NoiseKind, evolve_analytic, evolve_kraus
from .analysis.mid import MidResult, mid
from .analysis.states import StateKind, ghz, w, w_n
from .core.pipeline import CorrelationPoint, SweepConfig, figure, sweep

__all__ = [
    '__version__',
    'AmidConfig',
    'AmidResult',
    'LocalUnitaryAngles',
    'amid',
    'amid_objective',
    'ChannelPoint',
    'NoiseKind',
    'evolve_analytic',
    'evolve_kraus',
    'MidResult',
    'mid',
    'StateKind',
    'ghz',
    'w',
    'w_n',
    'CorrelationPoint',
    'SweepConfig',
    'figure',
    'sweep',
]
