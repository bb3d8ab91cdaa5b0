"""
States, noisy channels and correlation measures

The mid and amid functions live in their submodules of the same name.
"""

from .states import StateKind, PureState, ghz, w, w_n, density_of
from .channels import NoiseKind, ChannelPoint, coefficients, evolve_analytic, evolve_kraus
from .mid import ProjectorSet, MidResult, dephase, marginal_projectors
from .amid import LocalUnitaryAngles, AmidConfig, AmidResult, amid_objective
from .reference import UNSUPPORTED, reference_mid, reference_entropy, reference_pi_w_x

__all__ = [
    'StateKind', 'PureState', 'ghz', 'w', 'w_n', 'density_of',
    'NoiseKind', 'ChannelPoint', 'coefficients', 'evolve_analytic', 'evolve_kraus',
    'ProjectorSet', 'MidResult', 'dephase', 'marginal_projectors',
    'LocalUnitaryAngles', 'AmidConfig', 'AmidResult', 'amid_objective',
    'UNSUPPORTED', 'reference_mid', 'reference_entropy', 'reference_pi_w_x',
]
