# stdlib
from typing import Optional


class SpikeDSEError(Exception):
    """Base class for all errors raised by spikedse. `exit_code` is the CLI status."""

    exit_code = 1


class ConfigError(SpikeDSEError, ValueError):
    exit_code = 2


class DomainError(SpikeDSEError, ValueError):
    exit_code = 2


class UnsupportedSurrogateError(SpikeDSEError, ValueError):
    exit_code = 2


class EventParseError(SpikeDSEError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DivergenceError(SpikeDSEError):
    exit_code = 3


class NumericError(SpikeDSEError, ArithmeticError):
    exit_code = 3

    def __init__(
        self,
        message: str,
        layer: Optional[int] = None,
        timestep: Optional[int] = None,
    ) -> None:
        where = []
        if layer is not None:
            where.append(f"layer={layer}")
        if timestep is not None:
            where.append(f"t={timestep}")
        if where:
            message = f"{message} ({', '.join(where)})"
        super().__init__(message)
        self.layer = layer
        self.timestep = timestep


class ShapeError(SpikeDSEError, ValueError):
    exit_code = 4


class FixedPointOverflowError(SpikeDSEError, OverflowError):
    exit_code = 4


class EmptyInputError(SpikeDSEError):
    exit_code = 5


class SweepCancelled(SpikeDSEError):
    pass
