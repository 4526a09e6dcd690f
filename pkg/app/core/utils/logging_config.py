"""
Logging configuration manager for the toolkit.
"""
import logging
import os
import sys

LOG_FORMAT = '%(asctime)s - %(threadName)s - %(levelname)s - %(message)s'
LOG_LEVEL_ENV = "BERGMAN_LOG_LEVEL"


class LoggingConfig:
    """Manager for toolkit logging configuration."""

    # Map CLI-friendly names to Python logging levels
    LOG_LEVELS = {
        "Debug": logging.DEBUG,
        "Info": logging.INFO,
        "Warning": logging.WARNING,
        "Error": logging.ERROR
    }

    @staticmethod
    def set_log_level(level_name):
        """Set the log level based on the name."""
        level_name = LoggingConfig._normalize(level_name)
        if level_name not in LoggingConfig.LOG_LEVELS:
            logging.warning(f"Unknown log level: {level_name}, defaulting to Info")
            level_name = "Info"

        log_level = LoggingConfig.LOG_LEVELS[level_name]

        # Set the level for the root logger
        root_logger = logging.getLogger()
        root_logger.setLevel(log_level)

        # Update all handlers
        for handler in root_logger.handlers:
            handler.setLevel(log_level)

        logging.debug(f"Log level set to: {level_name} ({log_level})")
        return log_level

    @staticmethod
    def configure(level_name: str = None):
        """Install the stderr handler once and apply the level from flag or environment."""
        root_logger = logging.getLogger()
        if not root_logger.handlers:
            handler = logging.StreamHandler(sys.stderr)
            handler.setFormatter(logging.Formatter(LOG_FORMAT))
            root_logger.addHandler(handler)
        return LoggingConfig.set_log_level(level_name or os.environ.get(LOG_LEVEL_ENV, "Info"))

    @staticmethod
    def _normalize(level_name) -> str:
        return str(level_name).strip().capitalize()
