# stdlib
import glob
from os.path import dirname, join
from typing import Any, Type

# third party
import numpy as np
import torch

# spikedse absolute
from spikedse.exceptions import UnsupportedSurrogateError
from spikedse.surrogates.base import SurrogatePlugin  # noqa: F401,E402
from spikedse.surrogates.core.base_plugin import PluginLoader
from spikedse.surrogates.spec import SurrogateKind, SurrogateSpec  # noqa: F401

plugins = glob.glob(join(dirname(__file__), "plugin*.py"))


class Surrogates(PluginLoader):
    def __init__(self) -> None:
        super().__init__(plugins, SurrogatePlugin)


_registry = Surrogates()


def surrogate_type(spec: SurrogateSpec) -> Type[SurrogatePlugin]:
    try:
        return _registry.get_type(SurrogateKind(spec.kind).value)
    except ValueError as e:
        raise UnsupportedSurrogateError(str(e)) from e


def surrogate_grad(
    spec: SurrogateSpec, x: Any, layer: int = 0, timestep: int = 0
) -> Any:
    """Surrogate of dS/dU at x = U - U_thr."""
    return surrogate_type(spec).grad(x, spec, layer=layer, timestep=timestep)


def relaxed_forward(spec: SurrogateSpec, x: Any) -> Any:
    """Smooth stand-in for the spike function; its derivative is
    normalization(spec) * surrogate_grad(spec, x)."""
    return surrogate_type(spec).primitive(x, spec)


def normalization(spec: SurrogateSpec) -> float:
    return surrogate_type(spec).normalization(spec)


def heaviside(x: Any) -> Any:
    """1 where x >= 0, else 0."""
    if isinstance(x, torch.Tensor):
        return (x >= 0).to(x.dtype)
    if np.ndim(x) == 0:
        return 1 if x >= 0 else 0
    return (np.asarray(x) >= 0).astype(np.uint8)


__all__ = [
    "Surrogates",
    "SurrogatePlugin",
    "SurrogateKind",
    "SurrogateSpec",
    "surrogate_grad",
    "relaxed_forward",
    "normalization",
    "heaviside",
]
