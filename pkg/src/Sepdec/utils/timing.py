import functools
import logging
import time

logger = logging.getLogger(__name__)


def timing_logger(operation_name: str):
    """Decorator to log execution time of operations."""

    def decorator(func):
        @functools.wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.perf_counter()
            try:
                result = func(*args, **kwargs)
                duration = time.perf_counter() - start_time
                logger.debug(f"[TIMING] {operation_name} completed in {duration:.3f}s")
                return result
            except Exception as e:
                duration = time.perf_counter() - start_time
                logger.debug(
                    f"[TIMING] {operation_name} failed after {duration:.3f}s: {e}"
                )
                raise

        return wrapper

    return decorator
