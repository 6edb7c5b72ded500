# stdlib
from typing import Any, List

# third party
import numpy as np
import torch

# spikedse absolute
import spikedse.surrogates.base as base
import spikedse.surrogates.core.params as params
from spikedse.surrogates.spec import SurrogateSpec
from spikedse.utils.distributions import keyed_rng


class StochasticSubThresholdPlugin(base.SurrogatePlugin):
    """Stochastic sub-threshold surrogate.

    Above the threshold the gradient is the straight-through value 1. Below
    it the gradient is (u + mu) * sigma2 with u ~ U(-0.5, 0.5). The noise of
    the element with flat index n at (layer, timestep) is the n-th draw of a
    generator keyed by (rng_seed, layer, timestep), so replays are exact.
    """

    @staticmethod
    def name() -> str:
        return "SSO"

    @staticmethod
    def hyperparameter_space(*args: Any, **kwargs: Any) -> List[params.Params]:
        return [params.Float("slope", 0, 1, 0.25)]

    @staticmethod
    def noise(spec: SurrogateSpec, layer: int, timestep: int, size: int) -> np.ndarray:
        rng = keyed_rng(spec.rng_seed, layer, timestep)
        return rng.uniform(-0.5, 0.5, size=size)

    @staticmethod
    def grad(x: Any, spec: SurrogateSpec, layer: int = 0, timestep: int = 0) -> Any:
        if isinstance(x, torch.Tensor):
            draw = StochasticSubThresholdPlugin.noise(spec, layer, timestep, x.numel())
            sub = (torch.as_tensor(draw, dtype=x.dtype).reshape(x.shape) + spec.sso_mu) * spec.sso_sigma2
            return torch.where(x >= 0, torch.ones_like(x), sub)

        arr = np.asarray(x, dtype=np.float64)
        draw = StochasticSubThresholdPlugin.noise(spec, layer, timestep, arr.size)
        sub = (draw.reshape(arr.shape) + spec.sso_mu) * spec.sso_sigma2
        out = np.where(arr >= 0, 1.0, sub)
        return float(out) if np.ndim(x) == 0 else out

    @classmethod
    def is_deterministic(cls) -> bool:
        return False


plugin = StochasticSubThresholdPlugin
