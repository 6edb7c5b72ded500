# stdlib
import functools
import time
from typing import Any, Callable, TypeVar

# spikedse absolute
import spikedse.logger as log

F = TypeVar("F", bound=Callable[..., Any])


def benchmark(func: F) -> F:
    """Logs the wall-clock time of every call at DEBUG, failed calls included."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        start = time.perf_counter()
        try:
            return func(*args, **kwargs)
        finally:
            log.debug(f"{func.__module__}.{func.__qualname__}: {time.perf_counter() - start:.3f} s")

    return wrapper  # type: ignore[return-value]
