"""
CSV and JSON export of sweeps, figure series and validation reports
"""

import os
import io
import json
import logging
from typing import Any, Dict, Optional, Sequence

import numpy as np
import pandas as pd

from qcorr.config import OutputConfig
from qcorr.exceptions import FileOperationError

logger = logging.getLogger('qcorr.results_writer')


def _round_significant(value: Optional[float]) -> Optional[float]:
    if value is None or not np.isfinite(value):
        return None
    return float(f"{value:.{OutputConfig.SIGNIFICANT_DIGITS}g}")


def points_to_frame(points: Sequence) -> pd.DataFrame:
    """One row per CorrelationPoint; a missing AMID becomes NaN"""
    rows = [point.as_row() for point in points]
    return pd.DataFrame(rows, columns=OutputConfig.CSV_COLUMNS)


def render_sweep_csv(points: Sequence) -> str:
    """CSV text with a header row and 9 significant digits"""
    buffer = io.StringIO()
    points_to_frame(points).to_csv(
        buffer,
        index=False,
        float_format=OutputConfig.FLOAT_FORMAT,
        na_rep='',
        lineterminator='\n',
    )
    return buffer.getvalue()


def render_sweep_json(points: Sequence, config: Optional[Dict[str, Any]] = None) -> str:
    """JSON document with the sweep configuration and one record per point"""
    records = []
    for point in points:
        record = {key: _round_significant(value) for key, value in point.as_row().items()}
        if point.amid_argmin is not None:
            record['amid_argmin'] = [_round_significant(v) for v in point.amid_argmin]
        records.append(record)

    document = {'config': config or {}, 'points': records}
    return json.dumps(document, indent=OutputConfig.JSON_INDENT) + '\n'


def _ensure_parent(path: str) -> None:
    folder = os.path.dirname(os.path.abspath(path))

    if not os.path.exists(folder):
        logger.error(f"Output folder does not exist: {folder}")
        raise FileOperationError(f"Output folder does not exist: {folder}")

    if not os.path.isdir(folder):
        logger.error(f"Path is not a directory: {folder}")
        raise FileOperationError(f"Path is not a directory: {folder}")


def _write_text(path: str, text: str, what: str) -> str:
    _ensure_parent(path)
    try:
        with open(path, 'w', newline='') as f:
            f.write(text)
        logger.debug(f"Saved {what}: {path}")
    except Exception as e:
        logger.error(f"Cannot write {what}: {str(e)}")
        raise FileOperationError(f"Cannot write {what}: {str(e)}")
    return path


def write_sweep_csv(points: Sequence, path: str) -> str:
    """
    Write sweep points as CSV

    Raises:
        FileOperationError: If the folder is missing or the write fails
    """
    return _write_text(path, render_sweep_csv(points), 'CSV file')


def write_sweep_json(points: Sequence, path: str, config: Optional[Dict[str, Any]] = None) -> str:
    """
    Write sweep points as JSON

    Raises:
        FileOperationError: If the folder is missing or the write fails
    """
    return _write_text(path, render_sweep_json(points, config), 'JSON file')


def ensure_output_dir(folder: str) -> str:
    """
    Create folder if needed and check it is writable

    Raises:
        FileOperationError: If the folder cannot be created or written
    """
    try:
        os.makedirs(folder, exist_ok=True)
    except Exception as e:
        logger.error(f"Cannot create output folder {folder}: {str(e)}")
        raise FileOperationError(f"Cannot create output folder {folder}: {str(e)}")

    if not os.path.isdir(folder):
        raise FileOperationError(f"Path is not a directory: {folder}")

    if not os.access(folder, os.W_OK):
        logger.error(f"Output folder is not writable: {folder}")
        raise FileOperationError(f"Output folder is not writable: {folder}")

    return folder


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (np.floating, float)):
        return float(value) if np.isfinite(value) else None
    if isinstance(value, (np.integer,)):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def render_validation_report(report: Dict[str, Any]) -> str:
    """Validation report as indented JSON"""
    return json.dumps(_jsonable(report), indent=OutputConfig.JSON_INDENT) + '\n'


def write_validation_report(report: Dict[str, Any], path: str) -> str:
    """
    Write a validation report as JSON

    Raises:
        FileOperationError: If the folder is missing or the write fails
    """
    return _write_text(path, render_validation_report(report), 'validation report')


def read_sweep_csv(path: str) -> pd.DataFrame:
    """
    Load a sweep CSV written by write_sweep_csv

    Raises:
        FileOperationError: If the file cannot be read or lacks columns
    """
    try:
        frame = pd.read_csv(path)
    except Exception as e:
        logger.error(f"Cannot read CSV file {path}: {str(e)}")
        raise FileOperationError(f"Cannot read CSV file {path}: {str(e)}")

    missing = [c for c in OutputConfig.CSV_COLUMNS if c not in frame.columns]
    if missing:
        raise FileOperationError(f"CSV file {path} is missing columns: {missing}")

    return frame
