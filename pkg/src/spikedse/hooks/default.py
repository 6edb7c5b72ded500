# stdlib
from typing import Any

# spikedse absolute
import spikedse.logger as log

# spikedse relative
from .base import Hooks


def _fmt(value: Any) -> str:
    return f"{value:.4g}" if isinstance(value, float) else str(value)


class DefaultHooks(Hooks):
    """Never cancels; heartbeats go to the DEBUG log as sorted key=value pairs."""

    def cancel(self) -> bool:
        return False

    def heartbeat(self, topic: str, subtopic: str, event_type: str, **kwargs: Any) -> None:
        fields = " ".join(f"{k}={_fmt(v)}" for k, v in sorted(kwargs.items()))
        log.debug(f"{topic}/{subtopic} {event_type}: {fields}")

    def finish(self) -> None:
        log.debug("sweep finished")
