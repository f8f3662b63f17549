"""
Logging configuration for the simulator
"""

import os
import logging
import logging.handlers
from datetime import datetime
from typing import Optional

import psutil

from config import Config
from utils.helpers import format_duration

def setup_logger(logger_name: str = None, level: str = None, log_file: Optional[str] = None) -> logging.Logger:
    """
    Setup logger with file and console handlers

    Args:
        logger_name: Name of the logger (default: root logger)
        level: Logging level (default: from config)
        log_file: Log file path (default: from config)

    Returns:
        Configured logger instance
    """

    # Get or create logger
    if logger_name:
        logger = logging.getLogger(logger_name)
    else:
        logger = logging.getLogger()

    # Set logging level
    if level:
        log_level = getattr(logging, level.upper(), logging.INFO)
    else:
        log_level = getattr(logging, Config.LOG_LEVEL.upper(), logging.INFO)

    logger.setLevel(log_level)

    # Clear existing handlers to avoid duplicates
    logger.handlers.clear()

    detailed_formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(filename)s:%(lineno)d - %(message)s'
    )

    simple_formatter = logging.Formatter(
        '%(asctime)s - %(levelname)s - %(message)s'
    )

    console_handler = logging.StreamHandler()
    console_handler.setLevel(log_level)
    console_handler.setFormatter(simple_formatter)
    logger.addHandler(console_handler)

    log_file = log_file or Config.LOG_FILE
    try:
        log_dir = os.path.dirname(log_file)
        if log_dir and not os.path.exists(log_dir):
            os.makedirs(log_dir)

        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=10*1024*1024,  # 10MB
            backupCount=5
        )
        file_handler.setLevel(log_level)
        file_handler.setFormatter(detailed_formatter)
        logger.addHandler(file_handler)

        # Errors only
        error_log_file = log_file.replace('.log', '_errors.log')
        error_handler = logging.handlers.RotatingFileHandler(
            error_log_file,
            maxBytes=5*1024*1024,  # 5MB
            backupCount=3
        )
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(detailed_formatter)
        logger.addHandler(error_handler)

    except OSError as e:
        logger.error(f"Failed to setup file logging: {e}")

    return logger

def resident_memory_mb() -> float:
    """Resident set size of this process"""
    return psutil.Process(os.getpid()).memory_info().rss / (1024 * 1024)

class PerformanceLogger:
    """
    Logger for run time and memory of simulation work
    """

    def __init__(self):
        self.logger = logging.getLogger('performance')

    def log_processing_time(self, operation: str, duration: float, steps: int = None):
        message = f"{operation} took {format_duration(duration)}"
        if steps:
            rate = steps / duration if duration > 0 else float("inf")
            message += f" for {steps} steps ({rate:.0f} steps/s)"
        self.logger.info(message)

    def log_memory_usage(self, operation: str, memory_mb: float, delta_mb: float = None):
        message = f"{operation} used {memory_mb:.2f} MB memory"
        if delta_mb is not None:
            message += f" ({delta_mb:+.2f} MB)"
        self.logger.info(message)

class LogProcessingTime:
    """Context manager logging wall time and memory of a block"""

    def __init__(self, operation: str, steps: int = None):
        self.operation = operation
        self.steps = steps
        self.start_time = None
        self.start_memory = None
        self.duration = None
        self.performance_logger = PerformanceLogger()

    def __enter__(self):
        self.start_time = datetime.now()
        self.start_memory = resident_memory_mb()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if self.start_time:
            self.duration = (datetime.now() - self.start_time).total_seconds()
            self.performance_logger.log_processing_time(self.operation, self.duration, self.steps)
            memory = resident_memory_mb()
            self.performance_logger.log_memory_usage(self.operation, memory, memory - self.start_memory)
