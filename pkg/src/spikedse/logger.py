"""Process-wide logging on top of loguru.

The library never installs a handler beyond the CRITICAL stderr sink set up
in ``spikedse/__init__.py``; the CLI adds its own sinks for ``-v``/``-vv``.
Messages are attributed to the caller, not to this module.
"""
# stdlib
import os
from typing import Any, Callable, Optional, TextIO, Union

# third party
from loguru import logger

LOG_FORMAT = "[{time:YYYY-MM-DD HH:mm:ss.SSS}][{process.id}][{level}] {name}:{line} {message}"
LEVELS = ("TRACE", "DEBUG", "INFO", "SUCCESS", "WARNING", "ERROR", "CRITICAL")

Sink = Union[str, os.PathLike, TextIO, Callable[[Any], None]]

logger.remove()


def level_for_verbosity(verbose: int) -> Optional[str]:
    """CLI repeat count of ``-v`` to a level; None means stay quiet."""
    if verbose <= 0:
        return None
    return "INFO" if verbose == 1 else "DEBUG"


def add(sink: Sink, level: str = "ERROR") -> int:
    level = level.upper()
    if level not in LEVELS:
        raise ValueError(f"unknown log level {level}")
    # file sinks are shared with sweep workers
    to_file = isinstance(sink, (str, os.PathLike))
    return logger.add(
        sink,
        format=LOG_FORMAT,
        level=level,
        colorize=False,
        backtrace=True,
        diagnose=False,
        enqueue=to_file,
    )


def remove(handler_id: Optional[int] = None) -> None:
    try:
        logger.remove(handler_id)
    except ValueError:
        pass


def _emit(method: str) -> Callable[..., None]:
    def emit(message: Any, *args: Any, **kwargs: Any) -> None:
        try:
            getattr(logger.opt(depth=1), method)(str(message), *args, **kwargs)
        except Exception as e:
            print(f"logging failed: {e}")

    emit.__name__ = method
    return emit


traceback = _emit("exception")
critical = _emit("critical")
error = _emit("error")
warning = _emit("warning")
info = _emit("info")
debug = _emit("debug")
