import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from src.config import LOGGING_CONFIG

def setup_logger(name: str, log_file: str = None, level=logging.INFO):
    """Function to setup as many loggers as you want"""

    formatter = logging.Formatter('%(asctime)s %(levelname)s [%(name)s] %(message)s')

    logger = logging.getLogger(name)
    logger.setLevel(level)

    # Avoid adding multiple handlers if logger already exists
    if not logger.handlers:
        if log_file:
            log_dir = os.path.dirname(log_file)
            if log_dir and not os.path.exists(log_dir):
                os.makedirs(log_dir, exist_ok=True)
            handler = RotatingFileHandler(log_file, maxBytes=10*1024*1024, backupCount=5, encoding='utf-8')
            handler.setFormatter(formatter)
            logger.addHandler(handler)

        # Console goes to stderr; stdout is reserved for command output
        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setFormatter(formatter)
        logger.addHandler(console_handler)
        logger.propagate = False

    return logger

def get_module_logger(module_name: str):
    """Get logger for a library module"""
    return setup_logger(
        module_name,
        LOGGING_CONFIG["log_file"],
        level=LOGGING_CONFIG["level"]
    )

def get_system_logger():
    """Get logger for system events"""
    return setup_logger(
        "SYSTEM",
        LOGGING_CONFIG["log_file"],
        level=LOGGING_CONFIG["level"]
    )
