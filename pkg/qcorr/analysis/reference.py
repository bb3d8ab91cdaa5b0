"""
Closed-form entropies and correlations for the channels that have them

These are independent of the generic pipeline and serve as its oracle.
W-X and W-Y have no closed-form correlation; their dephased state is
available through reference_pi_w_x.
"""

import numpy as np
import logging
from typing import Dict, Tuple, Union

from qcorr.analysis.channels import ChannelPoint, NoiseKind, coefficients
from qcorr.analysis.states import StateKind
from qcorr.exceptions import ChannelError, UnsupportedFormulaError
from qcorr.utils.qlinalg import DensityMatrix

logger = logging.getLogger('qcorr.reference')


class _Unsupported:
    """Marker returned when no closed form exists"""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return 'UNSUPPORTED'

    def __bool__(self) -> bool:
        return False

    def __reduce__(self):
        return (_Unsupported, ())


UNSUPPORTED = _Unsupported()

ENTROPY_KINDS = ('rho', 'pi_rho')


def xlog2(x: float) -> float:
    """x log2 x, zero for x <= 0"""
    return float(x * np.log2(x)) if x > 0 else 0.0


def _xl_sum(*values: float) -> float:
    return sum(xlog2(v) for v in values)


def _w_iso_branches(c) -> Tuple[float, float, float, float]:
    """Eigenvalue numerators (x+, x-, y+, y-) of the coupled W-Iso blocks, over 16"""
    branches = []
    for beta, gamma, alpha in (
        (c['beta_tilde_plus'], c['gamma_tilde_plus'], c['alpha_tilde_1']),
        (c['beta_tilde_minus'], c['gamma_tilde_minus'], c['alpha_tilde_4']),
    ):
        centre = beta + gamma + alpha
        radius = np.sqrt((alpha - beta - gamma) ** 2 + 16 * gamma ** 2)
        branches.extend([centre + radius, centre - radius])
    return tuple(branches)


def _w_z_branches(w: float) -> Tuple[float, float]:
    r = np.sqrt(1 - 2 * w + 17 * w ** 2)
    return 3 + w - r, 3 + w + r


def _entropies(state: StateKind, noise: NoiseKind, kt: float) -> Dict[str, float]:
    """S(rho) and S(Pi rho) in closed form"""
    c = coefficients(ChannelPoint(state, noise, kt))

    if state is StateKind.GHZ:
        if noise is NoiseKind.X:
            core = 0.25 * xlog2(c['alpha_plus']) + 0.75 * xlog2(c['alpha_minus'])
            return {'rho': 2 - core, 'pi_rho': 3 - core}

        if noise is NoiseKind.Y:
            ap, am = c['alpha_plus'], c['alpha_minus']
            b1, b2 = c['beta_1'], c['beta_2']
            core = 0.25 * xlog2(ap) + 0.75 * xlog2(am)
            s_rho = 3 - _xl_sum(ap - b1, ap + b1) / 8 - 3 * _xl_sum(am - b2, am + b2) / 8
            return {'rho': s_rho, 'pi_rho': 3 - core}

        if noise is NoiseKind.Z:
            z = c['z']
            return {'rho': 1 - 0.5 * _xl_sum(1 - z, 1 + z), 'pi_rho': 1.0}

        ap, am, g = c['alpha_tilde_plus'], c['alpha_tilde_minus'], c['gamma']
        return {
            'rho': 3 - 0.75 * xlog2(am) - _xl_sum(ap - g, ap + g) / 8,
            'pi_rho': 3 - 0.25 * xlog2(ap) - 0.75 * xlog2(am),
        }

    if noise is NoiseKind.Z:
        w = c['w']
        lower, upper = _w_z_branches(w)
        return {
            'rho': (11 + w) / 4 - 0.25 * xlog2(1 - w) - _xl_sum(lower, upper) / 8,
            'pi_rho': 1.5 - 0.25 * _xl_sum(1 - w, 1 + w),
        }

    if noise is NoiseKind.ISO:
        a1, a2 = c['alpha_tilde_1'], c['alpha_tilde_2']
        a3, a4 = c['alpha_tilde_3'], c['alpha_tilde_4']
        bp, bm = c['beta_tilde_plus'], c['beta_tilde_minus']
        gp, gm = c['gamma_tilde_plus'], c['gamma_tilde_minus']
        e8 = float(np.exp(-8 * kt))
        return {
            'rho': (7 + e8) / 2
            - _xl_sum(a2, a3, bp - gp, bm - gm) / 8
            - _xl_sum(*_w_iso_branches(c)) / 16,
            'pi_rho': 3 - _xl_sum(a1, a2, a3, a4, bp + gp, bp - gp, bm + gm, bm - gm) / 8,
        }

    raise UnsupportedFormulaError(f"No closed-form entropies for {state.value}-{noise.value}")


def supports_mid(state: StateKind, noise: NoiseKind) -> bool:
    return not (state is StateKind.W and noise in (NoiseKind.X, NoiseKind.Y))


def reference_mid(state: StateKind, noise: NoiseKind, kt: float) -> Union[float, _Unsupported]:
    """
    Closed-form MID in bits, or UNSUPPORTED for W-X and W-Y

    Raises:
        ChannelError: If kt < 0
    """
    if not supports_mid(state, noise):
        return UNSUPPORTED

    c = coefficients(ChannelPoint(state, noise, kt))

    if state is StateKind.GHZ:
        if noise is NoiseKind.X:
            return 1.0

        if noise is NoiseKind.Y:
            ap, am = c['alpha_plus'], c['alpha_minus']
            b1, b2 = c['beta_1'], c['beta_2']
            return (
                _xl_sum(ap - b1, ap + b1) / 8
                + 3 * _xl_sum(am - b2, am + b2) / 8
                - 0.25 * xlog2(ap)
                - 0.75 * xlog2(am)
            )

        if noise is NoiseKind.Z:
            z = c['z']
            return 0.5 * _xl_sum(1 - z, 1 + z)

        ap, g = c['alpha_tilde_plus'], c['gamma']
        return _xl_sum(ap + g, ap - g) / 8 - 0.25 * xlog2(ap)

    if noise is NoiseKind.Z:
        w = c['w']
        return -(5 + w) / 4 - 0.25 * xlog2(1 + w) + _xl_sum(*_w_z_branches(w)) / 8

    a1, a4 = c['alpha_tilde_1'], c['alpha_tilde_4']
    bp, bm = c['beta_tilde_plus'], c['beta_tilde_minus']
    gp, gm = c['gamma_tilde_plus'], c['gamma_tilde_minus']
    e8 = float(np.exp(-8 * kt))
    return (
        -(1 + e8) / 2
        - _xl_sum(a1, a4, bp + gp, bm + gm) / 8
        + _xl_sum(*_w_iso_branches(c)) / 16
    )


def reference_entropy(state: StateKind, noise: NoiseKind, kt: float, which: str) -> float:
    """
    Closed-form S(rho) ('rho') or S(Pi(rho)) ('pi_rho') in bits

    Raises:
        UnsupportedFormulaError: For W-X, W-Y or an unknown kind
    """
    if which not in ENTROPY_KINDS:
        raise UnsupportedFormulaError(f"Unknown entropy kind {which!r}, expected one of {ENTROPY_KINDS}")
    return _entropies(state, noise, kt)[which]


# ============================================================================
# DEPHASED W STATE UNDER X NOISE
# ============================================================================

PI_W_X_SUPPORT = (
    (0, 0), (0, 6), (6, 0), (6, 6),
    (1, 1), (1, 7), (7, 1), (7, 7),
    (2, 2), (4, 4), (2, 4), (4, 2),
    (3, 3), (5, 5), (3, 5), (5, 3),
)


def pi_w_x_support() -> np.ndarray:
    """Boolean mask of the entries that may be nonzero in Pi(rho) for W-X"""
    mask = np.zeros((8, 8), dtype=bool)
    for i, j in PI_W_X_SUPPORT:
        mask[i, j] = True
    return mask


def reference_pi_w_x(kt: float) -> DensityMatrix:
    """
    Dephased W state under X noise in hyperbolic closed form

    The outer 2 x 2 blocks (basis states 000/110 and 001/111) carry absolute
    entries; the inner blocks share the 1/16 prefactor of the evolved state.

    Raises:
        ChannelError: If kt <= 0, where the hyperbolic forms degenerate
    """
    if not np.isfinite(kt) or kt <= 0:
        logger.error(f"reference_pi_w_x needs finite kt > 0, got {kt}")
        raise ChannelError(f"reference_pi_w_x needs finite kt > 0, got {kt}")

    x = float(kt)
    sh, ch = np.sinh, np.cosh
    den = (1 + np.exp(4 * x)) ** 2

    gamma_1 = 2 * np.exp(x) * ch(x) ** 2 * sh(x) * (2 - ch(2 * x) + ch(4 * x) + sh(2 * x)) / den
    gamma_2 = (1 + np.exp(-6 * x) + 8 / den + 2 * np.exp(-3 * x) * sh(x)) / 8
    gamma_3 = (1 - np.exp(-6 * x) + 8 / den - 2 * np.exp(-3 * x) * ch(x)) / 8
    gamma_4 = 2 * np.exp(x) * ch(x) * sh(x) ** 2 * (2 + ch(2 * x) + ch(4 * x) - sh(2 * x)) / den
    eta_1 = np.exp(x) * sh(x) * sh(2 * x) * (2 + 2 * sh(2 * x) + sh(4 * x)) / (2 * den)
    eta_2 = np.exp(x) * ch(x) ** 2 * sh(x) * (2 - 2 * sh(2 * x) + sh(4 * x)) / den

    c = coefficients(ChannelPoint(StateKind.W, NoiseKind.X, kt))
    m = np.zeros((8, 8), dtype=np.complex128)

    m[0, 0], m[6, 6] = gamma_1, gamma_3
    m[0, 6] = m[6, 0] = eta_1
    m[1, 1], m[7, 7] = gamma_2, gamma_4
    m[1, 7] = m[7, 1] = eta_2

    m[2, 2] = m[4, 4] = 2 * c['beta_plus'] / 16
    m[2, 4] = m[4, 2] = c['alpha_1'] / 16
    m[3, 3] = m[5, 5] = 2 * c['beta_minus'] / 16
    m[3, 5] = m[5, 3] = c['alpha_4'] / 16

    return m
