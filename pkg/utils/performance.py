#utils/performance.py

import os
import time
import logging
import functools
from typing import Dict, Optional

import psutil

# Set up logging
logger = logging.getLogger(__name__)

WORKERS_ENV = "SODCHECK_WORKERS"


def performance_monitor(operation: str):
    """
    Decorator recording wall time and memory change of a call.

    If the result has a ``timing`` attribute it is filled in.

    Args:
        operation: Name of the operation being monitored
    """
    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.time()
            start_memory = psutil.Process().memory_info().rss / 1024 / 1024  # MB

            try:
                result = func(*args, **kwargs)
            except Exception as e:
                logger.error(f"Error during {operation}: {e}")
                raise

            elapsed = time.time() - start_time
            memory_change = psutil.Process().memory_info().rss / 1024 / 1024 - start_memory
            logger.debug(f"Performance stats for {operation}: {elapsed:.2f} seconds, {memory_change:.1f} MB")

            if hasattr(result, "timing"):
                result.timing = {"seconds": round(elapsed, 4), "rss_mb": round(memory_change, 1)}
            return result

        return wrapper
    return decorator


def get_system_info() -> Dict:
    """
    Get the resources relevant for sizing the worker pool.

    Returns:
        Dict with cpu_cores (physical) and memory_gb
    """
    try:
        cpu_count = psutil.cpu_count(logical=False)
        total_memory = psutil.virtual_memory().total / (1024 * 1024 * 1024)  # GB
        system_info = {
            "cpu_cores": cpu_count or 2,  # Fallback to 2 if detection fails
            "memory_gb": round(total_memory, 1),
        }
        logger.debug(f"Detected system capabilities: {system_info}")
        return system_info
    except Exception as e:
        logger.warning(f"Error getting system info: {e}")
        return {"cpu_cores": 2, "memory_gb": 8}


def default_worker_count(requested: Optional[int] = None) -> int:
    """
    Resolve the worker pool size.

    Order: explicit request, then the SODCHECK_WORKERS environment variable,
    then the number of physical cores.
    """
    if requested is not None:
        return max(1, int(requested))

    override = os.environ.get(WORKERS_ENV)
    if override:
        try:
            return max(1, int(override))
        except ValueError:
            logger.warning(f"Ignoring non-integer {WORKERS_ENV}={override!r}")

    return get_system_info()["cpu_cores"]
