"""
Process pool for independent sweep points
"""

import os
import logging
from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar

from qcorr.config import RuntimeConfig

logger = logging.getLogger('qcorr.workers')

T = TypeVar('T')
R = TypeVar('R')


def worker_count() -> int:
    """
    Number of worker processes

    Read from QCORR_THREADS when it holds a positive integer, otherwise the
    CPU count.
    """
    fallback = os.cpu_count() or 1
    raw = os.environ.get(RuntimeConfig.THREADS_ENV_VAR)

    if raw is None or raw.strip() == '':
        return fallback

    try:
        count = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {RuntimeConfig.THREADS_ENV_VAR}={raw!r}: not an integer")
        return fallback

    if count < 1:
        logger.warning(f"Ignoring {RuntimeConfig.THREADS_ENV_VAR}={raw!r}: must be >= 1")
        return fallback

    return count


def _report_progress(progress_callback: Optional[Callable[[float], None]], fraction: float) -> None:
    if progress_callback:
        try:
            progress_callback(fraction)
        except Exception as e:
            logger.warning(f"Progress callback failed: {e}")


def map_ordered(
    fn: Callable[[T], R],
    items: Sequence[T],
    workers: Optional[int] = None,
    progress_callback: Optional[Callable[[float], None]] = None,
) -> List[R]:
    """
    Apply fn to every item, results in input order

    Runs in-process when one worker is requested or there is at most one
    item; otherwise fans out over a multiprocessing Pool. fn and items must
    be picklable in the parallel case.

    Args:
        fn: Pure function of one item
        items: Inputs
        workers: Process count (default: worker_count())
        progress_callback: Called with the completed fraction after each item
    """
    items = list(items)
    total = len(items)
    workers = worker_count() if workers is None else max(1, int(workers))

    if total == 0:
        return []

    if workers == 1 or total == 1:
        results = []
        for i, item in enumerate(items):
            results.append(fn(item))
            _report_progress(progress_callback, (i + 1) / total)
        return results

    results = []
    logger.debug(f"Dispatching {total} items to {min(workers, total)} processes")

    with Pool(processes=min(workers, total)) as pool:
        for done, result in enumerate(pool.imap(fn, items), start=1):
            results.append(result)
            _report_progress(progress_callback, done / total)

    return results
