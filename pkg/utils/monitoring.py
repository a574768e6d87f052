"""
Logging setup and operation monitoring for the CLI and the HTTP API.
"""
import logging
import time
from contextlib import contextmanager
from typing import Any, Dict, Iterator, Optional, Union

from config import APP_CONFIG

logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


def configure_logging(level: Optional[Union[str, int]] = None) -> None:
    """
    Configure root logging once per process.

    Args:
        level: Level name or number, defaults to the configured ``log_level``
    """
    level = level or APP_CONFIG["log_level"]
    if isinstance(level, str):
        level = getattr(logging, level.upper(), logging.WARNING)
    logging.basicConfig(level=level, format=LOG_FORMAT)
    logging.getLogger().setLevel(level)


class OperationMonitor:
    """Call counts, error rates and running average times per operation."""

    def __init__(self):
        """Initialize the monitor."""
        logger.info("Initializing operation monitor")
        self.operations_processed = 0
        self.error_count = 0
        self.avg_response_time = 0.0
        self.performance_by_operation: Dict[str, Dict[str, Any]] = {}

    def log_operation(self, operation: str, execution_time: float, error: Optional[str] = None) -> None:
        """
        Record one finished operation.

        Args:
            operation: Operation name, e.g. ``val`` or ``encode``
            execution_time: Elapsed time in seconds
            error: Error code when the operation failed
        """
        self.operations_processed += 1
        if error:
            self.error_count += 1

        self.avg_response_time = (
            (self.avg_response_time * (self.operations_processed - 1) + execution_time) /
            self.operations_processed
        )

        perf = self.performance_by_operation.setdefault(
            operation, {"count": 0, "avg_time": 0.0, "error_rate": 0.0})
        perf["count"] += 1
        perf["avg_time"] = (perf["avg_time"] * (perf["count"] - 1) + execution_time) / perf["count"]
        perf["error_rate"] = (perf["error_rate"] * (perf["count"] - 1) + (1 if error else 0)) / perf["count"]

        logger.debug(f"Logged operation {operation}, time: {execution_time:.4f}s, error: {error}")

    @contextmanager
    def track(self, operation: str) -> Iterator[None]:
        """Time the enclosed block and record it, marking raised errors."""
        start_time = time.perf_counter()
        error = None
        try:
            yield
        except Exception as e:
            error = getattr(e, "code", type(e).__name__)
            raise
        finally:
            self.log_operation(operation, time.perf_counter() - start_time, error)

    def get_system_health(self) -> Dict[str, Any]:
        """
        Get health metrics.

        Returns:
            Dictionary of health metrics
        """
        return {
            "operations_processed": self.operations_processed,
            "error_rate": self.error_count / max(1, self.operations_processed),
            "avg_response_time": self.avg_response_time,
            "performance_by_operation": self.performance_by_operation,
        }
