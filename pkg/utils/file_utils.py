#utils/file_utils.py

import logging
from pathlib import Path
from typing import Dict

# Set up logging
logger = logging.getLogger(__name__)

def ensure_report_directory(report_path: str) -> bool:
    """
    Create the directory a report will be written into.

    Args:
        report_path: Path of the report file, not the directory

    Returns:
        True if the parent directory is ready, False if it could not be made
    """
    parent = Path(report_path).resolve().parent
    try:
        parent.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        logger.error(f"Cannot create report directory {parent}: {e}")
        return False
    return True

def write_text_file(file_path: str, text: str) -> bool:
    """
    Write a report file, creating its parent directory.

    Args:
        file_path: Destination path
        text: File contents

    Returns:
        True if the file was written, False if there was an error
    """
    if not ensure_report_directory(file_path):
        return False
    try:
        # newline="" keeps the output byte-identical across platforms
        with open(file_path, 'w', encoding='utf-8', newline='') as f:
            f.write(text)
        logger.debug(f"Wrote {len(text)} characters to {file_path}")
        return True
    except Exception as e:
        logger.error(f"Error writing file {file_path}: {e}")
        return False

def read_key_value_file(file_path: str) -> Dict[str, str]:
    """
    Read a key=value configuration file.

    Blank lines and lines starting with '#' are skipped.

    Args:
        file_path: Path to the file

    Returns:
        Mapping of keys to raw string values

    Raises:
        ValueError: If a line has no '=' or an empty key
        OSError: If the file cannot be read
    """
    values: Dict[str, str] = {}
    with open(file_path, 'r', encoding='utf-8') as f:
        for number, raw in enumerate(f, start=1):
            line = raw.strip()
            if not line or line.startswith('#'):
                continue
            key, sep, value = line.partition('=')
            key = key.strip()
            if not sep or not key:
                raise ValueError(f"{file_path}:{number}: expected key=value, got '{line}'")
            values[key] = value.strip()
    logger.debug(f"Loaded {len(values)} settings from {file_path}")
    return values
