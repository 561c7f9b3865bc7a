#utils/logger.py

import sys
import logging
from pathlib import Path
from typing import Optional

# Get the project root directory (parent of the directory containing this file)
project_root = Path(__file__).resolve().parent.parent

# Log directory and file names
log_dir = project_root / 'logs'
LOG_NAME = 'verifier.log'
ERROR_LOG_NAME = 'verifier.error.log'

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

def cleanup_logs(directory: Path = log_dir):
    """Remove the log files left by the previous run."""
    try:
        directory.mkdir(parents=True, exist_ok=True)
        for file in (directory / LOG_NAME, directory / ERROR_LOG_NAME):
            if file.exists():
                file.unlink()
    except Exception as e:
        # stdout carries reports, so complain on stderr
        print(f"Error cleaning up log files: {e}", file=sys.stderr)

def setup_logging(verbose: bool = False, log_to_file: bool = True, directory: Optional[Path] = None) -> logging.Logger:
    """
    Configure the root logger.

    Args:
        verbose: Log at DEBUG instead of INFO
        log_to_file: Also write verifier.log and verifier.error.log
        directory: Where the log files go (default: logs/ in the project root)

    Returns:
        The root logger
    """
    directory = directory or log_dir

    logger = logging.getLogger()
    logger.setLevel(logging.DEBUG if verbose else logging.INFO)
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()

    formatter = logging.Formatter(LOG_FORMAT)

    # Console handler on stderr; stdout is reserved for reports
    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.DEBUG if verbose else logging.WARNING)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if not log_to_file:
        return logger

    cleanup_logs(directory)

    file_handler = logging.FileHandler(str(directory / LOG_NAME))
    file_handler.setFormatter(formatter)
    logger.addHandler(file_handler)

    # Only ERROR and CRITICAL
    error_file_handler = logging.FileHandler(str(directory / ERROR_LOG_NAME))
    error_file_handler.setLevel(logging.ERROR)
    error_file_handler.setFormatter(formatter)
    logger.addHandler(error_file_handler)

    return logger
