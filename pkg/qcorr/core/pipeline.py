"""
kt sweeps and figure-series export
"""

import os
import logging
from dataclasses import asdict, dataclass
from functools import partial
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from qcorr.analysis.amid import AmidConfig, amid
from qcorr.analysis.channels import ChannelPoint, NoiseKind, evolve_analytic, evolve_kraus
from qcorr.analysis.mid import mid
from qcorr.analysis.states import StateKind, density_of, w_n
from qcorr.config import OptimizerConfig, OutputConfig, SweepConfigDefaults
from qcorr.core.workers import map_ordered
from qcorr.exceptions import ValidationError
from qcorr.io.results_writer import ensure_output_dir, write_sweep_csv
from qcorr.utils.qlinalg import DensityMatrix

logger = logging.getLogger('qcorr.pipeline')


@dataclass(frozen=True)
class SweepConfig:
    """
    One kt sweep

    state and noise accept either the enum or its CLI spelling. The W_n
    parameters only apply to StateKind.WN.

    Raises:
        ValidationError: If any field is out of range
    """

    state: StateKind
    noise: NoiseKind
    measure: str = 'mid'
    kt_min: float = SweepConfigDefaults.KT_MIN
    kt_max: float = SweepConfigDefaults.KT_MAX
    points: int = SweepConfigDefaults.POINTS
    restarts: int = OptimizerConfig.DEFAULT_RESTARTS
    seed: int = OptimizerConfig.DEFAULT_SEED
    output_format: str = SweepConfigDefaults.FORMAT
    output_path: Optional[str] = None
    wn_n: float = SweepConfigDefaults.WN_N
    wn_gamma: float = SweepConfigDefaults.WN_GAMMA
    wn_delta: float = SweepConfigDefaults.WN_DELTA

    def __post_init__(self):
        try:
            object.__setattr__(self, 'state', StateKind(self.state))
            object.__setattr__(self, 'noise', NoiseKind(self.noise))
        except ValueError as e:
            raise ValidationError(str(e))

        problems = []

        if self.measure not in SweepConfigDefaults.MEASURES:
            problems.append(f"measure must be one of {SweepConfigDefaults.MEASURES}, got {self.measure!r}")

        if self.output_format not in SweepConfigDefaults.FORMATS:
            problems.append(f"format must be one of {SweepConfigDefaults.FORMATS}, got {self.output_format!r}")

        if not np.isfinite(self.kt_min) or self.kt_min < 0:
            problems.append(f"kt_min must be >= 0, got {self.kt_min}")

        if not np.isfinite(self.kt_max) or self.kt_max <= self.kt_min:
            problems.append(f"kt_max must exceed kt_min, got {self.kt_max}")

        if int(self.points) != self.points or self.points < 2:
            problems.append(f"points must be an integer >= 2, got {self.points}")

        if int(self.restarts) != self.restarts or self.restarts < 1:
            problems.append(f"restarts must be an integer >= 1, got {self.restarts}")

        if int(self.seed) != self.seed or self.seed < 0:
            problems.append(f"seed must be an integer >= 0, got {self.seed}")

        if not np.isfinite(self.wn_n) or self.wn_n < 0:
            problems.append(f"n must be >= 0, got {self.wn_n}")

        if problems:
            for problem in problems:
                logger.error(f"Invalid sweep configuration: {problem}")
            raise ValidationError('; '.join(problems))

    def grid(self) -> np.ndarray:
        """Uniform kt grid including both endpoints"""
        return np.linspace(self.kt_min, self.kt_max, int(self.points))

    @property
    def label(self) -> str:
        return f"{self.state.value}-{self.noise.value}"

    def amid_config(self) -> AmidConfig:
        return AmidConfig(restarts=int(self.restarts), seed=int(self.seed))

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['state'] = self.state.value
        data['noise'] = self.noise.value
        return data


@dataclass(frozen=True)
class CorrelationPoint:
    """Correlations of the evolved state at one kt, in bits"""

    kt: float
    mid: float
    amid: Optional[float]
    mutual_information: float
    s_rho: float
    s_pi_rho: float
    amid_argmin: Optional[Tuple[float, ...]] = None

    def as_row(self) -> Dict[str, float]:
        return {
            'kt': self.kt,
            'mid': self.mid,
            'amid': np.nan if self.amid is None else self.amid,
            'mutual_information': self.mutual_information,
            's_rho': self.s_rho,
            's_pi_rho': self.s_pi_rho,
        }


def state_at(config: SweepConfig, kt: float) -> DensityMatrix:
    """Evolved state of the configured channel at kt"""
    if config.state is StateKind.WN:
        initial = density_of(w_n(config.wn_n, config.wn_gamma, config.wn_delta))
        return evolve_kraus(initial, config.noise, kt)
    return evolve_analytic(ChannelPoint(config.state, config.noise, kt))


def compute_point(config: SweepConfig, kt: float) -> CorrelationPoint:
    """MID, and AMID when requested, of the evolved state at kt"""
    kt = float(kt)
    rho = state_at(config, kt)
    disturbance = mid(rho, kt)

    amid_value, argmin = None, None
    if config.measure in ('amid', 'both'):
        result = amid(rho, config.amid_config(), kt)
        amid_value, argmin = result.amid, result.argmin.values

    return CorrelationPoint(
        kt=kt,
        mid=disturbance.mid,
        amid=amid_value,
        mutual_information=disturbance.mutual_information,
        s_rho=disturbance.s_rho,
        s_pi_rho=disturbance.s_pi_rho,
        amid_argmin=argmin,
    )


def sweep(
    config: SweepConfig,
    log_callback: Optional[Callable[[str], None]] = None,
    progress_callback: Optional[Callable[[float], None]] = None,
    workers: Optional[int] = None,
) -> List[CorrelationPoint]:
    """
    Evaluate the configured measures on the kt grid

    MID-only sweeps run in-process unless workers is given; AMID sweeps fan
    out over the worker pool.

    Args:
        config: Sweep configuration
        log_callback: Optional function for logging messages
        progress_callback: Optional function for progress updates (0.0-1.0)
        workers: Process count override

    Returns:
        list: One CorrelationPoint per grid point, in grid order
    """
    log = log_callback or logger.info
    grid = config.grid()

    if workers is None and config.measure == 'mid':
        workers = 1

    log(f"Sweeping {config.label} ({config.measure}) over {len(grid)} points "
        f"in [{config.kt_min:g}, {config.kt_max:g}]")

    try:
        points = map_ordered(
            partial(compute_point, config),
            list(grid),
            workers=workers,
            progress_callback=progress_callback,
        )
    except Exception as e:
        logger.error(f"Sweep {config.label} failed: {str(e)}")
        log(f"❌ Sweep {config.label} failed: {str(e)}")
        raise

    mids = [p.mid for p in points]
    log("\n" + "=" * 50)
    log("SWEEP SUMMARY")
    log("=" * 50)
    log(f"Channel: {config.label}")
    log(f"Points: {len(points)}")
    log(f"MID range: [{min(mids):.6f}, {max(mids):.6f}]")

    amids = [p.amid for p in points if p.amid is not None]
    if amids:
        log(f"AMID range: [{min(amids):.6f}, {max(amids):.6f}]")

    return points


# ============================================================================
# FIGURE SERIES
# ============================================================================

@dataclass(frozen=True)
class FigureSeries:
    """One curve of a figure; noise_label overrides the noise in the file name"""

    state: StateKind
    noise: NoiseKind
    measure: str
    noise_label: Optional[str] = None

    def file_name(self, figure_id: int) -> str:
        return OutputConfig.FIGURE_FILE_PATTERN.format(
            id=figure_id,
            state=self.state.value,
            noise=self.noise_label or self.noise.value,
            measure=self.measure,
        )


FIGURE_SERIES: Dict[int, Tuple[FigureSeries, ...]] = {
    1: (
        FigureSeries(StateKind.GHZ, NoiseKind.X, 'mid'),
        FigureSeries(StateKind.GHZ, NoiseKind.X, 'amid'),
        FigureSeries(StateKind.GHZ, NoiseKind.Y, 'both'),
        FigureSeries(StateKind.GHZ, NoiseKind.Z, 'both'),
        FigureSeries(StateKind.GHZ, NoiseKind.ISO, 'both'),
    ),
    2: (
        # X and Y noise share one MID curve
        FigureSeries(StateKind.W, NoiseKind.X, 'mid', noise_label='xy'),
        FigureSeries(StateKind.W, NoiseKind.X, 'amid'),
        FigureSeries(StateKind.W, NoiseKind.Y, 'amid'),
        FigureSeries(StateKind.W, NoiseKind.Z, 'both'),
        FigureSeries(StateKind.W, NoiseKind.ISO, 'both'),
    ),
}


def figure(
    figure_id: int,
    out_dir: str,
    points: int = SweepConfigDefaults.POINTS,
    restarts: int = OptimizerConfig.DEFAULT_RESTARTS,
    seed: int = OptimizerConfig.DEFAULT_SEED,
    log_callback: Optional[Callable[[str], None]] = None,
    progress_callback: Optional[Callable[[float], None]] = None,
    workers: Optional[int] = None,
) -> List[str]:
    """
    Write every series of a figure as CSV into out_dir

    Args:
        figure_id: 1 (GHZ channels) or 2 (W channels)
        out_dir: Output folder, created if missing
        points: Grid points per series on [0, 3]
        restarts: AMID restarts per point
        seed: AMID seed
        log_callback: Optional function for logging messages
        progress_callback: Optional function for progress updates (0.0-1.0)
        workers: Process count override

    Returns:
        list: Paths of the written files, in series order

    Raises:
        ValidationError: If figure_id is unknown
        FileOperationError: If out_dir cannot be written
    """
    log = log_callback or logger.info

    if figure_id not in FIGURE_SERIES:
        logger.error(f"Unknown figure id: {figure_id}")
        raise ValidationError(f"Unknown figure id {figure_id}, expected one of {sorted(FIGURE_SERIES)}")

    ensure_output_dir(out_dir)
    series = FIGURE_SERIES[figure_id]
    written = []

    for index, entry in enumerate(series):
        config = SweepConfig(
            state=entry.state,
            noise=entry.noise,
            measure=entry.measure,
            points=points,
            restarts=restarts,
            seed=seed,
        )

        def series_progress(fraction: float, index: int = index) -> None:
            if progress_callback:
                progress_callback((index + fraction) / len(series))

        log(f"\n[{index + 1}/{len(series)}] {entry.file_name(figure_id)}")
        result = sweep(config, log_callback=log, progress_callback=series_progress, workers=workers)

        path = write_sweep_csv(result, os.path.join(out_dir, entry.file_name(figure_id)))
        log(f"✓ Wrote {path}")
        written.append(path)

    log(f"\n✅ Figure {figure_id} complete: {len(written)} files in {out_dir}")
    logger.info(f"Figure {figure_id} written to {out_dir}")
    return written
