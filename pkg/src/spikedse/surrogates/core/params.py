# stdlib
from abc import ABCMeta, abstractmethod
from typing import Any, List

# spikedse absolute
from spikedse.exceptions import DomainError
from spikedse.utils.numeric import discretize


class Params(metaclass=ABCMeta):
    """A named, closed hyperparameter domain that enumerates to a sweep grid."""

    def __init__(self, name: str, low: Any, high: Any) -> None:
        if high < low:
            raise DomainError(f"{name}: empty domain [{low}, {high}]")
        self.name = name
        self.low = low
        self.high = high

    def contains(self, value: Any) -> bool:
        return self.low <= value <= self.high

    @abstractmethod
    def grid(self) -> List[Any]:
        ...

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name!r}, {self.low}, {self.high})"


class Float(Params):
    """[low, high] walked in increments of `step`; `high` is always the last point."""

    def __init__(self, name: str, low: float, high: float, step: float) -> None:
        if step <= 0:
            raise DomainError(f"{name}: step must be > 0, got {step}")
        super().__init__(name, float(low), float(high))
        self.step = float(step)

    def grid(self) -> List[float]:
        return discretize(self.low, self.high, self.step)
