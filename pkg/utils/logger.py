"""
Logging configuration for the Shor arithmetic toolkit.
"""
import logging
import os
import sys
from pathlib import Path


def setup_logger(name: str = "shor_arith", level: int = logging.INFO) -> logging.Logger:
    """
    Set up and configure a logger instance.

    Args:
        name: Logger name
        level: Logging level

    Returns:
        Configured logger instance
    """
    # JSON reports go to stdout, so log lines always go to stderr
    log_dir = os.environ.get("SHOR_ARITH_LOG_DIR")

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Clear any existing handlers
    if logger.handlers:
        logger.handlers = []

    log_format = logging.Formatter('%(asctime)s - %(name)s - %(levelname)s - %(message)s')

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(log_format)
    logger.addHandler(console_handler)

    if log_dir:
        logs_path = Path(log_dir)
        logs_path.mkdir(parents=True, exist_ok=True)

        file_handler = logging.FileHandler(logs_path / f"{name}.log")
        file_handler.setFormatter(log_format)
        logger.addHandler(file_handler)

    return logger


def level_from_name(name: str = None) -> int:
    """Resolve a level name (or SHOR_ARITH_LOG_LEVEL) to a logging level."""
    name = name or os.environ.get("SHOR_ARITH_LOG_LEVEL", "WARNING")
    level = logging.getLevelName(name.upper())
    return level if isinstance(level, int) else logging.WARNING
