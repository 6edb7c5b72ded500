# stdlib
from abc import abstractmethod
from typing import Any

# third party
import numpy as np
import torch

# spikedse absolute
from spikedse.exceptions import UnsupportedSurrogateError
from spikedse.surrogates.core.base_plugin import Plugin
from spikedse.surrogates.spec import SurrogateSpec


def array_module(x: Any) -> Any:
    """torch for tensors, numpy for everything else."""
    return torch if isinstance(x, torch.Tensor) else np


class SurrogatePlugin(Plugin):
    """Base class for the surrogate derivatives of the spike function.

    Every method works on python floats, numpy arrays and torch tensors; `x`
    is the distance of the membrane to the threshold, U - U_thr.

    Methods:
        - grad(x, spec): the surrogate of dS/dU.
        - primitive(x, spec): a smooth monotone function from 0 to 1 whose
          derivative is normalization(spec) * grad(x, spec).
        - normalization(spec): the constant linking both.
    """

    @staticmethod
    def type() -> str:
        return "surrogate"

    @staticmethod
    @abstractmethod
    def grad(x: Any, spec: SurrogateSpec, layer: int = 0, timestep: int = 0) -> Any:
        ...

    @staticmethod
    def primitive(x: Any, spec: SurrogateSpec) -> Any:
        raise UnsupportedSurrogateError(
            f"surrogate {spec.kind.value} has no deterministic primitive"
        )

    @staticmethod
    def normalization(spec: SurrogateSpec) -> float:
        raise UnsupportedSurrogateError(
            f"surrogate {spec.kind.value} has no deterministic primitive"
        )

    @classmethod
    def is_deterministic(cls) -> bool:
        return True
