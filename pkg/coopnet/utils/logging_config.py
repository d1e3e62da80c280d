"""
Centralized Logging Configuration for CoopNet
Provides consistent logging setup across all modules
"""

import logging
import sys
from pathlib import Path
from typing import Optional

try:
    from config import LOGS_DIR, LOG_FILE_NAME
except ImportError:
    # Fallback if running standalone (e.g., during tests)
    LOGS_DIR = Path(__file__).parent.parent / "logs"
    LOG_FILE_NAME = "coopnet.log"

LOGS_DIR.mkdir(parents=True, exist_ok=True)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
DATE_FORMAT = '%Y-%m-%d %H:%M:%S'


def setup_logging(
    name: Optional[str] = "coopnet",
    level: int | str = logging.INFO,
    log_file: Optional[Path] = None,
) -> logging.Logger:
    """
    Attach a stderr handler and a file handler to a logger.

    stdout is never used; experiment results only go to CSV files.

    Args:
        name: Logger name; None configures the root logger
        level: Logging level (default: INFO)
        log_file: Defaults to LOGS_DIR / LOG_FILE_NAME

    Returns:
        The configured logger
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    logger.setLevel(level)
    formatter = logging.Formatter(LOG_FORMAT, datefmt=DATE_FORMAT)
    handlers = [
        logging.StreamHandler(sys.stderr),
        logging.FileHandler(log_file or LOGS_DIR / LOG_FILE_NAME, encoding="utf-8"),
    ]
    for handler in handlers:
        handler.setLevel(level)
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    return logger
