import logging
import sys
import os
from datetime import datetime


def setup_logging(name):
    """
    Set up logging configuration for a module
    """
    logger = logging.getLogger(name)

    if not logger.handlers:  # Avoid adding handlers multiple times
        logger.setLevel(os.getenv('SKEW_LOG_LEVEL', 'INFO').upper())
        logger.propagate = False

        # Create logs directory if it doesn't exist
        logs_dir = os.getenv('SKEW_LOG_DIR', 'logs')
        os.makedirs(logs_dir, exist_ok=True)

        file_formatter = logging.Formatter(
            '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
        )
        console_formatter = logging.Formatter(
            '%(levelname)s - %(message)s'
        )

        # File handler - separate file for each day
        today = datetime.now().strftime('%Y-%m-%d')
        file_handler = logging.FileHandler(
            os.path.join(logs_dir, f"skew_toolkit_{today}.log")
        )
        file_handler.setFormatter(file_formatter)

        # Console handler on stderr; stdout carries reports
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(console_formatter)
        console_handler.setLevel(logging.WARNING)

        logger.addHandler(file_handler)
        logger.addHandler(console_handler)

    return logger


def set_console_level(level):
    """Raise or lower console verbosity for every logger created so far."""
    for name in list(logging.root.manager.loggerDict):
        for handler in logging.getLogger(name).handlers:
            if isinstance(handler, logging.StreamHandler) and not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)
