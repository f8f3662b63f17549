"""
Configuration settings for the aerial manipulation simulator
"""

import os
from dotenv import load_dotenv

load_dotenv()

class Config:
    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")
    LOG_FILE = os.getenv("LOG_FILE", "logs/sim.log")

    # Paths
    OUTPUT_PATH = os.getenv("OUTPUT_PATH", "./output")
    CASES_PATH = os.getenv("CASES_PATH", "./cases")

    # Integration
    DEFAULT_DT = float(os.getenv("DEFAULT_DT", "0.001"))  # seconds
    CONTROL_SUBSTEPS = int(os.getenv("CONTROL_SUBSTEPS", "1"))  # physics steps per control update

    # Estimation
    OBSERVER_GAIN = float(os.getenv("OBSERVER_GAIN", "20.0"))  # 1/s
    CONTACT_THRESHOLD = float(os.getenv("CONTACT_THRESHOLD", "0.3"))  # N

    # Table runs
    TABLE_WORKERS = int(os.getenv("TABLE_WORKERS", "1"))

    # Telemetry
    CSV_FLOAT_FORMAT = os.getenv("CSV_FLOAT_FORMAT", "%.9g")

    @classmethod
    def validate(cls):
        """Validate configuration; output directories are created by whatever writes into them"""
        if cls.DEFAULT_DT <= 0:
            raise ValueError("DEFAULT_DT must be positive")

        if cls.CONTROL_SUBSTEPS < 1:
            raise ValueError("CONTROL_SUBSTEPS must be at least 1")

        if cls.OBSERVER_GAIN <= 0:
            raise ValueError("OBSERVER_GAIN must be positive")

        if cls.CONTACT_THRESHOLD <= 0:
            raise ValueError("CONTACT_THRESHOLD must be positive")

        if cls.TABLE_WORKERS < 1:
            raise ValueError("TABLE_WORKERS must be at least 1")

        return True
