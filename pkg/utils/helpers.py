"""
Helper utilities for the simulator CLI and harness
"""

import os
import logging
import hashlib
import platform
from typing import Dict, Any, List

import psutil

logger = logging.getLogger(__name__)

def parse_degree_list(text: str) -> List[float]:
    """
    Parse a comma separated list of angles in degrees, e.g. "10,30,60"

    Raises:
        ValueError: empty list or a non-numeric entry
    """
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise ValueError("expected at least one angle")
    try:
        return [float(item) for item in items]
    except ValueError as e:
        raise ValueError(f"invalid angle list '{text}': {e}") from e

def format_duration(seconds: float) -> str:
    """Wall time as "0.42s", "3m 07s" or "1h 02m"."""
    if seconds < 60:
        return f"{seconds:.2f}s"
    minutes, secs = divmod(int(round(seconds)), 60)
    if minutes < 60:
        return f"{minutes}m {secs:02d}s"
    hours, minutes = divmod(minutes, 60)
    return f"{hours}h {minutes:02d}m"

def format_progress(current: int, total: int, width: int = 20) -> str:
    """Format progress bar"""
    if total == 0:
        return "#" * width

    filled = int(width * current / total)
    bar = "#" * filled + "." * (width - filled)
    percentage = (current / total) * 100

    return f"[{bar}] {percentage:.1f}%"

def sanitize_filename(filename: str) -> str:
    """Sanitize a case name for use as a file or directory name"""
    invalid_chars = '<>:"/\\|?* '
    for char in invalid_chars:
        filename = filename.replace(char, '_')

    filename = filename.strip(' .')

    if len(filename) > 255:
        name, ext = os.path.splitext(filename)
        filename = name[:255 - len(ext)] + ext

    return filename or "case"

def calculate_file_hash(file_path: str, algorithm: str = "sha256") -> str:
    """Calculate file hash"""
    hash_obj = hashlib.new(algorithm)

    with open(file_path, 'rb') as f:
        for chunk in iter(lambda: f.read(4096), b""):
            hash_obj.update(chunk)

    return hash_obj.hexdigest()

def get_system_info() -> Dict[str, Any]:
    """Get system information"""
    try:
        return {
            "platform": platform.platform(),
            "python_version": platform.python_version(),
            "cpu_count": psutil.cpu_count(),
            "memory_total": psutil.virtual_memory().total,
            "memory_available": psutil.virtual_memory().available,
        }

    except Exception as e:
        logger.error(f"Error getting system info: {e}")
        return {"error": str(e)}
