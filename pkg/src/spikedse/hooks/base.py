# stdlib
from abc import ABCMeta, abstractmethod
from typing import Any


class Hooks(metaclass=ABCMeta):
    """Callbacks into long-running work.

    `train` reports every finished epoch (topic "train", subtopic "epoch") and
    `run_sweep` every finished trial (topic "sweep", subtopic "trial"); the
    metrics of the event arrive as keyword arguments. `run_sweep` polls
    `cancel` before dispatching and after each trial, and calls `finish` once
    all trials are in.
    """

    @abstractmethod
    def cancel(self) -> bool:
        ...

    @abstractmethod
    def heartbeat(self, topic: str, subtopic: str, event_type: str, **kwargs: Any) -> None:
        ...

    @abstractmethod
    def finish(self) -> None:
        ...
