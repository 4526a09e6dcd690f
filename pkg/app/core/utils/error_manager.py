import os
import logging
from datetime import datetime
from typing import Optional

from app.domain.errors import MathFlag, ToolkitError


class ErrorManager:
    """Centralized manager for recording toolkit errors and mapping them to exit codes."""

    _instance = None

    @classmethod
    def instance(cls):
        """Singleton pattern to ensure only one error manager exists."""
        if cls._instance is None:
            cls._instance = ErrorManager()
        return cls._instance

    def __init__(self, log_dir: Optional[str] = None):
        """Initialize the error manager."""
        self.logger = logging.getLogger(__name__)
        self.error_log_path = None
        self.set_log_dir(log_dir or os.path.join(os.path.expanduser('~'), '.bergman', 'logs'))

    def set_log_dir(self, log_dir: str):
        """Point the error log at `log_dir`; logging to file is skipped if it cannot be created."""
        try:
            os.makedirs(log_dir, exist_ok=True)
        except OSError as e:
            self.logger.warning(f"Cannot create error log directory {log_dir}: {e}")
            self.error_log_path = None
            return
        self.error_log_path = os.path.join(log_dir, 'errors.log')
        self.logger.debug(f"Error log will be stored at: {self.error_log_path}")

    def log_error(self, error_type: str, message: str):
        """Log error to file with timestamp."""
        if self.error_log_path:
            timestamp = datetime.now().strftime("%Y-%m-%d %H:%M:%S")
            with open(self.error_log_path, 'a', encoding='utf-8') as f:
                f.write(f"[{timestamp}] {error_type}: {message}\n")

        self.logger.error(f"{error_type}: {message}")

    def handle(self, error: BaseException) -> int:
        """Record `error` and return the process exit code it maps to."""
        if isinstance(error, MathFlag):
            category = "Mathematical flag"
        elif isinstance(error, ToolkitError):
            category = "Specification error"
        else:
            category = "Unexpected error"
            self.logger.debug("Unexpected error traceback", exc_info=error)
        self.log_error(category, f"{type(error).__name__}: {error}")
        return self.exit_code(error)

    @staticmethod
    def exit_code(error: Optional[BaseException]) -> int:
        """0 without an error, the toolkit error's own code, else 1."""
        if error is None:
            return 0
        if isinstance(error, ToolkitError):
            return error.exit_code
        return 1
